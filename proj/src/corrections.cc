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

#include "mcqt/corrections.h"

#include <cmath>

#include "mcqt/protocol.h"

namespace mcqt {

namespace {

using PF = PauliFactor;

struct PublishedRow {
    int g, h, z;
    CorrectionEntry left;  // Fancy1 (table 1) or Fancy3 (table 2)
    CorrectionEntry right; // Fancy2 or Fancy4
};

// Transcribed row by row, both operation columns kept separately.
constexpr CorrectionEntry e(PF a, PF b, bool pi = false) {
    return {a, b, pi};
}

// clang-format off
const std::array<PublishedRow, 32> kTable1 = {{
    {0, 0, 0, e(PF::I, PF::I), e(PF::I, PF::I)},
    {0, 1, 0, e(PF::I, PF::Z), e(PF::I, PF::Z)},
    {0, 2, 0, e(PF::I, PF::X), e(PF::I, PF::X)},
    {0, 3, 0, e(PF::I, PF::XZ), e(PF::I, PF::XZ)},
    {1, 0, 0, e(PF::Z, PF::I), e(PF::Z, PF::I)},
    {1, 1, 0, e(PF::Z, PF::Z), e(PF::Z, PF::Z)},
    {1, 2, 0, e(PF::Z, PF::X), e(PF::Z, PF::X)},
    {1, 3, 0, e(PF::Z, PF::XZ), e(PF::Z, PF::XZ)},
    {2, 0, 0, e(PF::X, PF::I), e(PF::X, PF::I)},
    {2, 1, 0, e(PF::X, PF::Z), e(PF::X, PF::Z)},
    {2, 2, 0, e(PF::X, PF::X), e(PF::X, PF::X)},
    {2, 3, 0, e(PF::X, PF::XZ), e(PF::X, PF::XZ)},
    {3, 0, 0, e(PF::XZ, PF::I), e(PF::XZ, PF::I)},
    {3, 1, 0, e(PF::XZ, PF::Z), e(PF::XZ, PF::Z)},
    {3, 2, 0, e(PF::XZ, PF::X), e(PF::XZ, PF::X)},
    {3, 3, 0, e(PF::XZ, PF::XZ), e(PF::XZ, PF::XZ)},
    {0, 0, 1, e(PF::XZ, PF::XZ), e(PF::XZ, PF::XZ)},
    {0, 1, 1, e(PF::XZ, PF::X), e(PF::XZ, PF::X)},
    {0, 2, 1, e(PF::XZ, PF::Z), e(PF::XZ, PF::Z)},
    {0, 3, 1, e(PF::XZ, PF::I), e(PF::XZ, PF::I)},
    {1, 0, 1, e(PF::X, PF::XZ), e(PF::X, PF::XZ)},
    {1, 1, 1, e(PF::X, PF::X), e(PF::X, PF::X)},
    {1, 2, 1, e(PF::X, PF::Z, true), e(PF::X, PF::Z, true)},
    {1, 3, 1, e(PF::X, PF::I, true), e(PF::X, PF::I, true)},
    {2, 0, 1, e(PF::Z, PF::XZ), e(PF::Z, PF::XZ)},
    {2, 1, 1, e(PF::Z, PF::X, true), e(PF::Z, PF::X, true)},
    {2, 2, 1, e(PF::Z, PF::Z), e(PF::Z, PF::Z)},
    {2, 3, 1, e(PF::Z, PF::I), e(PF::Z, PF::I)},
    {3, 0, 1, e(PF::I, PF::XZ), e(PF::I, PF::XZ)},
    {3, 1, 1, e(PF::I, PF::X, true), e(PF::I, PF::X, true)},
    {3, 2, 1, e(PF::I, PF::Z), e(PF::I, PF::Z)},
    {3, 3, 1, e(PF::I, PF::I), e(PF::I, PF::I)},
}};

const std::array<PublishedRow, 32> kTable2 = {{
    {0, 0, 0, e(PF::I, PF::I), e(PF::I, PF::I)},
    {0, 1, 0, e(PF::I, PF::Z), e(PF::I, PF::Z)},
    {0, 2, 0, e(PF::I, PF::X), e(PF::I, PF::X)},
    {0, 3, 0, e(PF::I, PF::XZ), e(PF::I, PF::XZ)},
    {1, 0, 0, e(PF::Z, PF::I), e(PF::Z, PF::I)},
    {1, 1, 0, e(PF::Z, PF::Z), e(PF::Z, PF::Z)},
    {1, 2, 0, e(PF::Z, PF::X), e(PF::Z, PF::X)},
    {1, 3, 0, e(PF::Z, PF::XZ), e(PF::Z, PF::XZ)},
    {2, 0, 0, e(PF::X, PF::I), e(PF::X, PF::I)},
    {2, 1, 0, e(PF::X, PF::Z), e(PF::X, PF::Z)},
    {2, 2, 0, e(PF::X, PF::X), e(PF::X, PF::X)},
    {2, 3, 0, e(PF::X, PF::XZ), e(PF::X, PF::XZ)},
    {3, 0, 0, e(PF::XZ, PF::I), e(PF::XZ, PF::I)},
    {3, 1, 0, e(PF::XZ, PF::Z), e(PF::XZ, PF::Z)},
    {3, 2, 0, e(PF::XZ, PF::X), e(PF::XZ, PF::X)},
    {3, 3, 0, e(PF::XZ, PF::XZ), e(PF::XZ, PF::XZ)},
    {0, 0, 1, e(PF::XZ, PF::XZ), e(PF::XZ, PF::XZ)},
    {0, 1, 1, e(PF::XZ, PF::X), e(PF::XZ, PF::X)},
    {0, 2, 1, e(PF::XZ, PF::Z), e(PF::XZ, PF::Z)},
    {0, 3, 1, e(PF::XZ, PF::I), e(PF::XZ, PF::I)},
    {1, 0, 1, e(PF::X, PF::XZ), e(PF::X, PF::XZ)},
    {1, 1, 1, e(PF::X, PF::X), e(PF::X, PF::X)},
    {1, 2, 1, e(PF::X, PF::Z, true), e(PF::X, PF::Z, true)},
    {1, 3, 1, e(PF::X, PF::I, true), e(PF::X, PF::I, true)},
    {2, 0, 1, e(PF::Z, PF::XZ), e(PF::Z, PF::XZ)},
    {2, 1, 1, e(PF::Z, PF::X, true), e(PF::Z, PF::X, true)},
    {2, 2, 1, e(PF::Z, PF::Z), e(PF::Z, PF::Z)},
    {2, 3, 1, e(PF::Z, PF::I), e(PF::Z, PF::I)},
    {3, 0, 1, e(PF::I, PF::XZ), e(PF::I, PF::XZ)},
    {3, 1, 1, e(PF::I, PF::X, true), e(PF::I, PF::X, true)},
    {3, 2, 1, e(PF::I, PF::Z), e(PF::I, PF::Z)},
    {3, 3, 1, e(PF::I, PF::I), e(PF::I, PF::I)},
}};
// clang-format on

const PublishedRow &find_row(const std::array<PublishedRow, 32> &table, const CorrectionKey &key) {
    for (const PublishedRow &r : table) {
        if (r.g == static_cast<int>(key.g) && r.h == static_cast<int>(key.h) && r.z == key.z) {
            return r;
        }
    }
    throw std::logic_error("correction table has no row for key");
}

void check_key(const CorrectionKey &key) {
    if (key.z != 0 && key.z != 1) {
        throw std::invalid_argument("controller bit must be 0 or 1");
    }
}

constexpr std::array<PF, 4> kAllPauli = {PF::I, PF::X, PF::Z, PF::XZ};

using Mat4 = std::array<Amp, 16>;

Mat4 matmul(const Mat4 &a, const Mat4 &b) {
    Mat4 c{};
    for (int r = 0; r < 4; r++) {
        for (int k = 0; k < 4; k++) {
            for (int col = 0; col < 4; col++) {
                c[r * 4 + col] += a[r * 4 + k] * b[k * 4 + col];
            }
        }
    }
    return c;
}

Mat4 adjoint(const Mat4 &a) {
    Mat4 b{};
    for (int r = 0; r < 4; r++) {
        for (int c = 0; c < 4; c++) {
            b[c * 4 + r] = std::conj(a[r * 4 + c]);
        }
    }
    return b;
}

StateVector apply4(const Mat4 &u, const StateVector &s) {
    std::vector<Amp> out(4);
    auto a = s.amplitudes();
    for (int r = 0; r < 4; r++) {
        for (int c = 0; c < 4; c++) {
            out[r] += u[r * 4 + c] * a[c];
        }
    }
    return StateVector::from_amplitudes(std::move(out));
}

/// U*U equals +I or -I.
bool squares_to_sign_identity(const Mat4 &u) {
    Mat4 sq = matmul(u, u);
    for (double sign : {1.0, -1.0}) {
        bool ok = true;
        for (int r = 0; r < 4 && ok; r++) {
            for (int c = 0; c < 4; c++) {
                Amp want = r == c ? Amp(sign) : Amp(0);
                if (std::abs(sq[r * 4 + c] - want) > kAlgebraicTol) {
                    ok = false;
                    break;
                }
            }
        }
        if (ok) {
            return true;
        }
    }
    return false;
}

StateVector collapsed_receiver(const CorrectionKey &key, const InfoState &probe) {
    const std::array<InfoState, 1> in = {probe};
    return receiver_state(in, OutcomeRecord{{key.g, key.h}, key.z});
}

} // namespace

CorrectionKey CorrectionKey::from_row(std::size_t row) {
    if (row >= kCorrectionKeys) {
        throw std::out_of_range("correction row must be 0..31");
    }
    return {kAllBell[(row / 4) % 4], kAllBell[row % 4], static_cast<int>(row / 16)};
}

std::string CorrectionEntry::describe() const {
    std::string w = std::string(pauli_name(first)) + " (x) " + std::string(pauli_name(second));
    return phase_pi ? "-(" + w + ")" : w;
}

std::array<Amp, 16> correction_unitary(const CorrectionEntry &e) {
    auto a = pauli_matrix(e.first);
    auto b = pauli_matrix(e.second);
    Amp phase = e.phase_pi ? Amp(-1) : Amp(1);
    Mat4 u{};
    // index = bit_first + 2 * bit_second; (b (x) a) in that basis.
    for (int r = 0; r < 4; r++) {
        for (int c = 0; c < 4; c++) {
            u[r * 4 + c] = phase * a[(r & 1) * 2 + (c & 1)] * b[(r >> 1) * 2 + (c >> 1)];
        }
    }
    return u;
}

CorrectionEntry table_lookup(Party receiver, const CorrectionKey &key) {
    check_key(key);
    switch (receiver) {
    case Party::Fancy1:
        return find_row(kTable1, key).left;
    case Party::Fancy2:
        return find_row(kTable1, key).right;
    case Party::Fancy3:
        return find_row(kTable2, key).left;
    case Party::Fancy4:
        return find_row(kTable2, key).right;
    default:
        throw std::invalid_argument("only receivers have correction tables, got " + std::string(party_name(receiver)));
    }
}

CorrectionEntry derive_correction(const CorrectionKey &key, std::span<const InfoState> probes) {
    check_key(key);
    if (probes.size() < 3) {
        throw std::invalid_argument("derive_correction needs at least 3 probe messages");
    }
    std::vector<StateVector> collapsed;
    for (const InfoState &p : probes) {
        collapsed.push_back(collapsed_receiver(key, p));
    }
    std::vector<CorrectionEntry> fits;
    for (PF a : kAllPauli) {
        for (PF b : kAllPauli) {
            CorrectionEntry cand{a, b, false};
            auto word = cand.word(QubitId(0), QubitId(1));
            bool all = true;
            for (std::size_t k = 0; k < probes.size() && all; k++) {
                StateVector r = collapsed[k];
                r.apply_pauli_word(word);
                all = std::abs(fidelity(probes[k].to_state(), r) - 1.0) <= kPipelineTol;
            }
            if (all) {
                fits.push_back(cand);
            }
        }
    }
    std::string where = "key (" + std::to_string(static_cast<int>(key.g)) + "," +
                        std::to_string(static_cast<int>(key.h)) + "," + std::to_string(key.z) + ")";
    if (fits.empty()) {
        throw TableDerivationError("no Pauli pair restores the message for " + where);
    }
    if (fits.size() > 1) {
        throw AmbiguousCorrectionError(std::to_string(fits.size()) + " Pauli pairs fit " + where);
    }
    CorrectionEntry found = fits[0];
    StateVector r = collapsed[0];
    r.apply_pauli_word(found.word(QubitId(0), QubitId(1)));
    found.phase_pi = overlap(probes[0].to_state(), r).real() < 0;
    return found;
}

TableReport verify_tables(Rng &rng, std::size_t n_probes) {
    std::vector<InfoState> probes;
    for (std::size_t k = 0; k < n_probes; k++) {
        probes.push_back(InfoState::random(rng));
    }
    std::array<CorrectionEntry, kCorrectionKeys> derived;
    std::vector<StateVector> collapsed0;
    for (std::size_t row = 0; row < kCorrectionKeys; row++) {
        CorrectionKey key = CorrectionKey::from_row(row);
        derived[row] = derive_correction(key, probes);
        collapsed0.push_back(collapsed_receiver(key, probes[0]));
    }

    TableReport rep;
    StateVector target = probes[0].to_state();
    for (Party receiver : kReceivers) {
        for (std::size_t row = 0; row < kCorrectionKeys; row++) {
            CorrectionKey key = CorrectionKey::from_row(row);
            TableRow tr{receiver, key, table_lookup(receiver, key), derived[row], false, false, false, false};
            Mat4 u = correction_unitary(tr.published);
            tr.match = tr.published.same_up_to_phase(tr.derived);
            tr.self_inverse = squares_to_sign_identity(u);
            if (tr.match) {
                Amp direct = overlap(target, apply4(u, collapsed0[row]));
                Amp adj = overlap(target, apply4(adjoint(u), collapsed0[row]));
                tr.phase_as_given = std::abs(direct - Amp(1)) <= kPipelineTol;
                tr.phase_adjoint = std::abs(adj - Amp(1)) <= kPipelineTol;
            }
            rep.matches += tr.match;
            rep.self_inverse += tr.self_inverse;
            rep.phase_as_given += tr.phase_as_given;
            rep.phase_adjoint += tr.phase_adjoint;
            if (!tr.match) {
                rep.notes.push_back(std::string(party_name(receiver)) + " row " + std::to_string(row) +
                                    ": published " + tr.published.describe() + ", derived " +
                                    tr.derived.describe());
            }
            rep.rows.push_back(tr);
        }
    }

    rep.columns_identical = true;
    for (std::size_t row = 0; row < kCorrectionKeys; row++) {
        CorrectionKey key = CorrectionKey::from_row(row);
        CorrectionEntry ref = table_lookup(Party::Fancy1, key);
        for (Party p : kReceivers) {
            rep.columns_identical = rep.columns_identical && table_lookup(p, key) == ref;
        }
    }
    rep.notes.push_back("Pauli words compared up to global phase; the e^{i pi} markers agree with the simulated "
                        "phase in " +
                        std::to_string(rep.phase_as_given) + "/" + std::to_string(rep.rows.size()) +
                        " rows when U is applied and " + std::to_string(rep.phase_adjoint) + "/" +
                        std::to_string(rep.rows.size()) + " rows when U^dagger is applied");
    return rep;
}

// ---------------------------------------------------------------------------
// Catalog. Pattern k (1..16) places c00, c01, c10, c11 on the listed kets
// with the listed signs. The first printed entry carries the label 2; it is
// taken to be pattern 1.

namespace {

struct EtaPattern {
    std::array<const char *, 4> kets;
    std::array<int, 4> signs;
};

// clang-format off
const std::array<EtaPattern, 16> kEtaPatterns = {{
    {{"11", "10", "01", "00"}, {+1, -1, -1, +1}},
    {{"11", "10", "01", "00"}, {+1, +1, -1, -1}},
    {{"11", "10", "01", "00"}, {+1, -1, +1, -1}},
    {{"11", "10", "01", "00"}, {+1, +1, +1, +1}},
    {{"10", "11", "00", "01"}, {-1, +1, +1, -1}},
    {{"10", "11", "00", "01"}, {-1, -1, +1, +1}},
    {{"10", "11", "00", "01"}, {-1, +1, -1, +1}},
    {{"10", "11", "00", "01"}, {-1, -1, -1, -1}},
    {{"01", "00", "11", "10"}, {-1, +1, +1, -1}},
    {{"01", "00", "11", "10"}, {-1, -1, +1, +1}},
    {{"01", "00", "11", "10"}, {-1, +1, -1, +1}},
    {{"01", "00", "11", "10"}, {-1, -1, -1, -1}},
    {{"00", "01", "10", "11"}, {+1, -1, -1, +1}},
    {{"00", "01", "10", "11"}, {+1, +1, -1, -1}},
    {{"00", "01", "10", "11"}, {+1, -1, +1, -1}},
    {{"00", "01", "10", "11"}, {+1, +1, +1, +1}},
}};
// clang-format on

} // namespace

StateVector eta_state(const EtaIndex &idx, const InfoState &coeffs) {
    if (idx.index_in_block < 1 || idx.index_in_block > 16) {
        throw std::out_of_range("catalog index within a block must be 1..16");
    }
    const EtaPattern &p = kEtaPatterns[static_cast<std::size_t>(idx.index_in_block - 1)];
    std::vector<Amp> a(4);
    for (std::size_t k = 0; k < 4; k++) {
        a[ket_index(p.kets[k])] += static_cast<double>(p.signs[k]) * coeffs.coeffs()[k];
    }
    return StateVector::from_amplitudes(std::move(a));
}

EtaMatch match_eta(const StateVector &collapsed, const InfoState &coeffs, InfoBlock block) {
    if (collapsed.num_qubits() != 2) {
        throw std::invalid_argument("catalog states are two-qubit");
    }
    std::vector<EtaMatch> found;
    for (int k = 1; k <= 16; k++) {
        EtaIndex idx{block, k};
        Amp ov = overlap(eta_state(idx, coeffs), collapsed);
        if (std::abs(ov) > 1 - 1e-9) {
            found.push_back({idx, ov});
        }
    }
    if (found.size() != 1) {
        throw CatalogCoverageError("collapsed state matches " + std::to_string(found.size()) +
                                   " catalog entries, expected exactly one");
    }
    return found[0];
}

EtaSurvey survey_eta_catalog(InfoBlock block, const InfoState &coeffs) {
    EtaSurvey s;
    s.block = block;
    s.total = true;
    for (std::size_t row = 0; row < kCorrectionKeys; row++) {
        StateVector c = collapsed_receiver(CorrectionKey::from_row(row), coeffs);
        try {
            int k = match_eta(c, coeffs, block).index.index_in_block;
            s.index_by_row[row] = k;
            s.hits[static_cast<std::size_t>(k - 1)]++;
        } catch (const CatalogCoverageError &) {
            s.total = false;
        }
    }
    s.two_to_one = s.total;
    for (int h : s.hits) {
        s.two_to_one = s.two_to_one && h == 2;
    }
    return s;
}

} // namespace mcqt
