// Copyright 2026 The mcqt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MCQT_CORRECTIONS_H
#define MCQT_CORRECTIONS_H

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mcqt/info_state.h"
#include "mcqt/party.h"
#include "mcqt/statevector.h"

namespace mcqt {

/// A receiver's correction is selected by its sender's two Bell outcomes and
/// the controller's bit.
struct CorrectionKey {
    Bell g;
    Bell h;
    int z;

    /// 0..31, ordered z-major then g then h (the table's row order).
    std::size_t row() const {
        return static_cast<std::size_t>(z) * 16 + static_cast<std::size_t>(g) * 4 + static_cast<std::size_t>(h);
    }
    static CorrectionKey from_row(std::size_t row);
    friend bool operator==(const CorrectionKey &, const CorrectionKey &) = default;
};

inline constexpr std::size_t kCorrectionKeys = 32;

/// first (x) second, optionally times e^{i pi}. `first` acts on the
/// receiver's first qubit.
struct CorrectionEntry {
    PauliFactor first;
    PauliFactor second;
    bool phase_pi;

    std::array<PauliTerm, 2> word(QubitId a, QubitId b) const {
        return {PauliTerm{first, a}, PauliTerm{second, b}};
    }
    /// Same Pauli word; the phase flag is ignored.
    bool same_up_to_phase(const CorrectionEntry &o) const {
        return first == o.first && second == o.second;
    }
    std::string describe() const;
    friend bool operator==(const CorrectionEntry &, const CorrectionEntry &) = default;
};

/// Row-major 4x4 matrix of the entry (phase included). Basis index of the
/// two receiver qubits is bit_first + 2 * bit_second.
std::array<Amp, 16> correction_unitary(const CorrectionEntry &e);

/// Transcribed published entry for `receiver` (Fancy1..Fancy4).
CorrectionEntry table_lookup(Party receiver, const CorrectionKey &key);

/// Thrown by derive_correction when no Pauli pair restores the message.
struct TableDerivationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
/// Thrown by derive_correction when more than one Pauli pair fits.
struct AmbiguousCorrectionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Brute-force oracle: simulates a one-sender protocol on each probe
/// message, forces (g, h, z), and returns the unique Pauli pair that gives
/// fidelity 1 on every probe. phase_pi is set when that pair maps the
/// collapsed state of probes[0] to minus the message. Needs >= 3 probes.
CorrectionEntry derive_correction(const CorrectionKey &key, std::span<const InfoState> probes);

struct TableRow {
    Party receiver;
    CorrectionKey key;
    CorrectionEntry published;
    CorrectionEntry derived;
    bool match;           // same Pauli word
    bool self_inverse;    // U*U = +-I
    bool phase_as_given;  // published phase exact when U is applied
    bool phase_adjoint;   // published phase exact when U^dagger is applied
};

struct TableReport {
    std::vector<TableRow> rows; // 4 receivers x 32 keys
    std::size_t matches = 0;
    std::size_t self_inverse = 0;
    std::size_t phase_as_given = 0;
    std::size_t phase_adjoint = 0;
    bool columns_identical = false;
    std::vector<std::string> notes;
};

/// Compares every transcribed entry against derive_correction (probes drawn
/// from `rng`). Mismatches are reported, never thrown.
TableReport verify_tables(Rng &rng, std::size_t n_probes = 3);

// ---------------------------------------------------------------------------
// Collapsed-state catalog (64 entries, four blocks of 16).

/// Which message's coefficients a catalog block is written in.
enum class InfoBlock : std::uint8_t { P = 0, R = 1, T = 2, V = 3 };

struct EtaIndex {
    InfoBlock block;
    int index_in_block; // 1..16

    /// 1..64 as printed.
    int global() const {
        return 16 * static_cast<int>(block) + index_in_block;
    }
    friend bool operator==(const EtaIndex &, const EtaIndex &) = default;
};

/// Catalog pattern with `coeffs` substituted. Every block uses the same
/// sign pattern; only the coefficient names differ.
StateVector eta_state(const EtaIndex &idx, const InfoState &coeffs);

struct EtaMatch {
    EtaIndex index;
    Amp phase; // collapsed = phase * eta_state(index)
};

struct CatalogCoverageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Finds the unique catalog entry equal to `collapsed` up to global phase
/// (|overlap| > 1 - 1e-9). Throws CatalogCoverageError on zero or several
/// matches.
EtaMatch match_eta(const StateVector &collapsed, const InfoState &coeffs, InfoBlock block);

struct EtaSurvey {
    InfoBlock block;
    std::array<int, kCorrectionKeys> index_by_row{}; // key row -> index_in_block
    std::array<int, 16> hits{};                      // pattern -> number of keys
    bool total = false;
    bool two_to_one = false;
};

/// Runs all 32 one-sender branches for `coeffs` and matches each collapse
/// against the catalog.
EtaSurvey survey_eta_catalog(InfoBlock block, const InfoState &coeffs);

} // namespace mcqt

#endif // MCQT_CORRECTIONS_H
