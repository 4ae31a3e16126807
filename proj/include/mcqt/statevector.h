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

#ifndef MCQT_STATEVECTOR_H
#define MCQT_STATEVECTOR_H

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mcqt {

using Amp = std::complex<double>;
using Rng = std::mt19937_64;

/// Tolerance for single algebraic identities (one gate, one overlap).
inline constexpr double kAlgebraicTol = 1e-12;
/// Tolerance for multi-gate pipelines where rounding accumulates.
inline constexpr double kPipelineTol = 1e-10;
/// Forced measurement branches below this probability are impossible.
inline constexpr double kImpossibleBranchProb = 1e-15;

/// Position of a qubit inside a register. Qubit k is bit k of a basis index.
struct QubitId {
    std::size_t index;

    constexpr explicit QubitId(std::size_t i) : index(i) {
    }
    friend constexpr bool operator==(QubitId, QubitId) = default;
    friend constexpr auto operator<=>(QubitId, QubitId) = default;
};

/// Thrown when a forced measurement outcome has (numerically) zero probability.
struct ImpossibleBranchError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Thrown when a dense state would exceed the configured qubit cap.
struct SizeCapError : std::length_error {
    using std::length_error::length_error;
};

/// Upper bound on dense register size.
///
/// The default admits the 17-qubit channel; anything larger (the 25-qubit
/// global protocol state) must be requested explicitly.
struct DenseCap {
    std::size_t max_qubits = 17;

    static constexpr std::size_t kStandardQubits = 17;
    static constexpr std::size_t kLargeQubits = 26;

    static constexpr DenseCap standard() {
        return DenseCap{kStandardQubits};
    }
    static constexpr DenseCap large() {
        return DenseCap{kLargeQubits};
    }
    static constexpr DenseCap from_flag(bool allow_large) {
        return allow_large ? large() : standard();
    }
    void check(std::size_t n_qubits) const;
};

enum class Gate1 : std::uint8_t { H, X, Z };

/// Single-qubit Pauli factor. XZ is the operator product X*Z (Z acts first).
enum class PauliFactor : std::uint8_t { I, X, Z, XZ };

struct PauliTerm {
    PauliFactor factor;
    QubitId qubit;
};

/// The Bell basis, indexed 0..3 as kappa+, kappa-, lambda+, lambda-.
///
///     KappaPlus   = (|00> + |11>)/sqrt2
///     KappaMinus  = (|00> - |11>)/sqrt2
///     LambdaPlus  = (|01> + |10>)/sqrt2
///     LambdaMinus = (|01> - |10>)/sqrt2
///
/// Kets are written with the first qubit of the pair leftmost.
enum class Bell : std::uint8_t { KappaPlus = 0, KappaMinus = 1, LambdaPlus = 2, LambdaMinus = 3 };

inline constexpr std::array<Bell, 4> kAllBell = {Bell::KappaPlus, Bell::KappaMinus, Bell::LambdaPlus,
                                                 Bell::LambdaMinus};

/// Bell outcome read off the computational bits after the basis change
/// CNOT(first -> second) then H(first). Index is bit_first + 2 * bit_second.
inline constexpr std::array<Bell, 4> kBellFromMeasuredBits = {
    Bell::KappaPlus,   // first=0, second=0
    Bell::KappaMinus,  // first=1, second=0
    Bell::LambdaPlus,  // first=0, second=1
    Bell::LambdaMinus, // first=1, second=1
};

/// Short symbols used in reports and on the command line: k+, k-, l+, l-.
std::string_view bell_symbol(Bell b);
Bell parse_bell_symbol(std::string_view s);
std::string_view pauli_name(PauliFactor f);

/// 2x2 matrix of a Pauli factor, row-major.
std::array<Amp, 4> pauli_matrix(PauliFactor f);

/// Basis index of a ket written as a bit string, first character = qubit 0.
/// ket_index("01") == 2.
std::uint64_t ket_index(std::string_view bits);

struct MeasureResult {
    int bit;
    double probability;
};

/// Dense register of 2^n complex amplitudes, little-endian qubit order.
///
/// Gates and measurements mutate in place. Measurements leave the measured
/// qubits in the post-measurement state instead of removing them, so qubit
/// ids stay stable across a protocol run.
class StateVector {
  public:
    /// |basis_index> on n qubits.
    static StateVector basis(std::size_t n_qubits, std::uint64_t basis_index, DenseCap cap = {});
    /// Takes ownership of the amplitudes; length must be a power of two and
    /// every entry finite. The state is not renormalized.
    static StateVector from_amplitudes(std::vector<Amp> amplitudes, DenseCap cap = {});

    std::size_t num_qubits() const {
        return n_qubits_;
    }
    std::uint64_t size() const {
        return amps_.size();
    }
    std::span<const Amp> amplitudes() const {
        return amps_;
    }
    Amp operator[](std::uint64_t i) const {
        return amps_[i];
    }

    double norm() const;
    /// Rescales to unit norm and returns the previous norm.
    double normalize();
    void scale(Amp factor);

    void apply(Gate1 gate, QubitId q);
    void apply_cnot(QubitId control, QubitId target);
    void apply_pauli(PauliFactor factor, QubitId q);
    void apply_pauli_word(std::span<const PauliTerm> word);
    /// Applies an arbitrary 2x2 (row-major) matrix. Used by tests and by the
    /// gate kernels above.
    void apply_matrix(const std::array<Amp, 4> &m, QubitId q);

    /// Probability that qubit q reads 1.
    double probability_one(QubitId q) const;

  private:
    StateVector(std::size_t n, std::vector<Amp> amps) : n_qubits_(n), amps_(std::move(amps)) {
    }
    void check_qubit(QubitId q) const;

    friend StateVector tensor(const StateVector &low, const StateVector &high);
    friend StateVector permute_qubits(const StateVector &s, std::span<const std::size_t> new_position);
    friend StateVector contract(const StateVector &s, std::span<const QubitId> qubits, const StateVector &bra);
    friend MeasureResult measure_qubit(StateVector &s, QubitId q, int bit);

    std::size_t n_qubits_;
    std::vector<Amp> amps_;
};

/// low (x) high: qubits of `low` keep their ids, qubits of `high` are shifted
/// up by low.num_qubits(). No size cap is applied.
StateVector tensor(const StateVector &low, const StateVector &high);

/// Moves old qubit k to position new_position[k]. new_position must be a
/// permutation of 0..n-1.
StateVector permute_qubits(const StateVector &s, std::span<const std::size_t> new_position);

/// (<bra|_qubits (x) I)|s>. `bra` is a state on qubits.size() qubits, its qubit
/// j matched to qubits[j]. The result lives on the remaining qubits in
/// ascending id order and is not renormalized.
StateVector contract(const StateVector &s, std::span<const QubitId> qubits, const StateVector &bra);

Amp overlap(const StateVector &a, const StateVector &b);
/// |<a|b>|^2; insensitive to global phase.
double fidelity(const StateVector &a, const StateVector &b);
/// Euclidean distance between amplitude vectors (phase sensitive).
double distance(const StateVector &a, const StateVector &b);

/// Computational-basis measurement, outcome drawn from `rng`.
MeasureResult measure_qubit(StateVector &s, QubitId q, Rng &rng);
/// Computational-basis measurement with the outcome forced to `bit`.
MeasureResult measure_qubit(StateVector &s, QubitId q, int bit);

struct BellResult {
    Bell outcome;
    double probability;
};

/// Born probabilities of the four Bell outcomes on (a, b).
std::array<double, 4> bell_probabilities(const StateVector &s, QubitId a, QubitId b);

/// Bell-state measurement on (a, b), a being the first qubit of the pair.
/// Afterwards (a, b) hold the measured Bell state, so the collapsed state is
/// exactly the Bell projection of the input, renormalized.
BellResult bsm(StateVector &s, QubitId a, QubitId b, Rng &rng);
BellResult bsm(StateVector &s, QubitId a, QubitId b, Bell forced);

} // namespace mcqt

#endif // MCQT_STATEVECTOR_H
