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

#include "mcqt/statevector.h"

#include <gtest/gtest.h>

#include "oracle.h"

namespace mcqt {
namespace {

using oracle::Mat;

TEST(KetIndex, FirstCharacterIsQubitZero) {
    EXPECT_EQ(ket_index("0"), 0u);
    EXPECT_EQ(ket_index("1"), 1u);
    EXPECT_EQ(ket_index("01"), 2u);
    EXPECT_EQ(ket_index("10"), 1u);
    EXPECT_EQ(ket_index("110"), 3u);
    EXPECT_THROW(ket_index("0a"), std::invalid_argument);
}

TEST(StateVector, BasisAndAmplitudeValidation) {
    StateVector s = StateVector::basis(3, 5);
    EXPECT_EQ(s.num_qubits(), 3u);
    EXPECT_EQ(s[5], Amp(1));
    EXPECT_DOUBLE_EQ(s.norm(), 1.0);
    EXPECT_THROW(StateVector::basis(2, 4), std::out_of_range);
    EXPECT_THROW(StateVector::from_amplitudes({1, 0, 0}), std::invalid_argument);
    EXPECT_THROW(StateVector::from_amplitudes({Amp(NAN), 0}), std::invalid_argument);
}

TEST(StateVector, CapRejectsOversizedRegisters) {
    EXPECT_NO_THROW(StateVector::basis(17, 0));
    EXPECT_THROW(StateVector::basis(18, 0), SizeCapError);
    EXPECT_THROW(StateVector::basis(27, 0, DenseCap::large()), SizeCapError);
    EXPECT_EQ(DenseCap::from_flag(true).max_qubits, 26u);
}

TEST(Gates, HadamardOnZero) {
    StateVector s = StateVector::basis(1, 0);
    s.apply(Gate1::H, QubitId(0));
    EXPECT_NEAR(s[0].real(), 1 / std::sqrt(2.0), kAlgebraicTol);
    EXPECT_NEAR(s[1].real(), 1 / std::sqrt(2.0), kAlgebraicTol);
}

TEST(Gates, XZOnOneKeepsTheSign) {
    // X*Z|1> = X(-|1>) = -|0>.
    StateVector s = StateVector::basis(1, 1);
    s.apply_pauli(PauliFactor::XZ, QubitId(0));
    EXPECT_NEAR(s[0].real(), -1.0, kAlgebraicTol);
    EXPECT_NEAR(std::abs(s[1]), 0.0, kAlgebraicTol);
    auto m = pauli_matrix(PauliFactor::XZ);
    EXPECT_EQ(m[0], Amp(0));
    EXPECT_EQ(m[1], Amp(-1));
    EXPECT_EQ(m[2], Amp(1));
    EXPECT_EQ(m[3], Amp(0));
}

TEST(Gates, CnotFlipsTargetOnlyWhenControlSet) {
    StateVector s = StateVector::basis(2, ket_index("10"));
    s.apply_cnot(QubitId(0), QubitId(1));
    EXPECT_EQ(s[ket_index("11")], Amp(1));
    StateVector t = StateVector::basis(2, ket_index("01"));
    t.apply_cnot(QubitId(0), QubitId(1));
    EXPECT_EQ(t[ket_index("01")], Amp(1));
    EXPECT_THROW(t.apply_cnot(QubitId(0), QubitId(0)), std::invalid_argument);
}

// Every kernel against the Kronecker-product oracle on random 4-qubit states.
TEST(Gates, KernelsMatchMatrixOracle) {
    Rng rng(101);
    const std::size_t n = 4;
    for (int trial = 0; trial < 20; trial++) {
        StateVector s = oracle::random_state(n, rng);
        for (std::size_t q = 0; q < n; q++) {
            struct Case {
                Gate1 g;
                Mat m;
            };
            for (const Case &c : {Case{Gate1::H, oracle::hadamard()}, Case{Gate1::X, oracle::pauli_x()},
                                  Case{Gate1::Z, oracle::pauli_z()}}) {
                StateVector t = s;
                t.apply(c.g, QubitId(q));
                oracle::Vec want = oracle::embed(c.m, q, n) * oracle::to_vec(s);
                EXPECT_LT((oracle::to_vec(t) - want).norm(), kAlgebraicTol);
            }
            for (PauliFactor f : {PauliFactor::I, PauliFactor::X, PauliFactor::Z, PauliFactor::XZ}) {
                StateVector t = s;
                t.apply_pauli(f, QubitId(q));
                oracle::Vec want = oracle::embed(oracle::single(pauli_matrix(f)), q, n) * oracle::to_vec(s);
                EXPECT_LT((oracle::to_vec(t) - want).norm(), kAlgebraicTol);
            }
            for (std::size_t r = 0; r < n; r++) {
                if (r == q) {
                    continue;
                }
                StateVector t = s;
                t.apply_cnot(QubitId(q), QubitId(r));
                oracle::Vec want = oracle::cnot(q, r, n) * oracle::to_vec(s);
                EXPECT_LT((oracle::to_vec(t) - want).norm(), kAlgebraicTol);
            }
        }
    }
}

TEST(Gates, NormPreservedUnderRandomCircuits) {
    Rng rng(7);
    std::uniform_int_distribution<int> pick(0, 4);
    std::uniform_int_distribution<std::size_t> qubit(0, 5);
    for (int trial = 0; trial < 10; trial++) {
        StateVector s = oracle::random_state(6, rng);
        for (int step = 0; step < 200; step++) {
            std::size_t a = qubit(rng), b = qubit(rng);
            switch (pick(rng)) {
            case 0:
                s.apply(Gate1::H, QubitId(a));
                break;
            case 1:
                s.apply(Gate1::X, QubitId(a));
                break;
            case 2:
                s.apply_pauli(PauliFactor::XZ, QubitId(a));
                break;
            default:
                if (a != b) {
                    s.apply_cnot(QubitId(a), QubitId(b));
                }
            }
        }
        EXPECT_NEAR(s.norm(), 1.0, kPipelineTol);
    }
}

TEST(Tensor, LowOperandKeepsItsQubitIds) {
    StateVector low = StateVector::basis(1, 1);
    StateVector high = StateVector::basis(2, ket_index("01"));
    StateVector t = tensor(low, high);
    EXPECT_EQ(t.num_qubits(), 3u);
    EXPECT_EQ(t[ket_index("101")], Amp(1));
}

TEST(Permute, MovesQubitsAndRejectsNonBijections) {
    StateVector s = StateVector::basis(3, ket_index("100"));
    const std::array<std::size_t, 3> perm = {2, 0, 1};
    StateVector p = permute_qubits(s, perm);
    EXPECT_EQ(p[ket_index("001")], Amp(1));
    const std::array<std::size_t, 3> bad = {0, 0, 1};
    EXPECT_THROW(permute_qubits(s, bad), std::invalid_argument);
}

TEST(Permute, RoundTripIsIdentity) {
    Rng rng(3);
    StateVector s = oracle::random_state(5, rng);
    std::array<std::size_t, 5> perm = {3, 0, 4, 1, 2};
    std::array<std::size_t, 5> inv{};
    for (std::size_t k = 0; k < 5; k++) {
        inv[perm[k]] = k;
    }
    EXPECT_LT(distance(permute_qubits(permute_qubits(s, perm), inv), s), kAlgebraicTol);
}

TEST(Contract, ProjectsOntoBra) {
    Rng rng(5);
    StateVector a = oracle::random_state(1, rng);
    StateVector b = oracle::random_state(2, rng);
    StateVector joint = tensor(a, b); // a on 0, b on 1..2
    const std::array<QubitId, 2> qs = {QubitId(1), QubitId(2)};
    StateVector r = contract(joint, qs, b);
    EXPECT_LT(distance(r, a), kAlgebraicTol);
}

TEST(Overlap, FidelityIgnoresGlobalPhase) {
    Rng rng(9);
    StateVector a = oracle::random_state(3, rng);
    StateVector b = a;
    b.scale(std::polar(1.0, 0.7));
    EXPECT_NEAR(fidelity(a, b), 1.0, kAlgebraicTol);
    EXPECT_GT(distance(a, b), 0.1);
}

TEST(Measure, GhzForcedZero) {
    StateVector s = StateVector::basis(3, 0);
    s.apply(Gate1::H, QubitId(2));
    s.apply_cnot(QubitId(2), QubitId(0));
    s.apply_cnot(QubitId(2), QubitId(1));
    MeasureResult r = measure_qubit(s, QubitId(2), 0);
    EXPECT_NEAR(r.probability, 0.5, kAlgebraicTol);
    EXPECT_NEAR(std::abs(s[0]), 1.0, kAlgebraicTol);
}

TEST(Measure, ImpossibleForcedOutcomeThrows) {
    StateVector s = StateVector::basis(2, 0);
    EXPECT_THROW(measure_qubit(s, QubitId(0), 1), ImpossibleBranchError);
    EXPECT_THROW(measure_qubit(s, QubitId(0), 2), std::invalid_argument);
}

TEST(Measure, SampledFrequenciesFollowBornRule) {
    Rng rng(11);
    int ones = 0;
    const int n = 4000;
    for (int k = 0; k < n; k++) {
        StateVector s = StateVector::from_amplitudes({std::sqrt(0.2), std::sqrt(0.8)});
        ones += measure_qubit(s, QubitId(0), rng).bit;
    }
    EXPECT_NEAR(ones / double(n), 0.8, 0.03);
}

// The measured-bits map: prepare each Bell state by hand, rotate it with
// CNOT then H, and read the computational bits.
TEST(BellMeasurement, MeasuredBitsMapOracle) {
    for (Bell b : kAllBell) {
        StateVector s = oracle::bell_by_hand(b);
        s.apply_cnot(QubitId(0), QubitId(1));
        s.apply(Gate1::H, QubitId(0));
        std::uint64_t idx = 0;
        for (std::uint64_t i = 0; i < 4; i++) {
            if (std::abs(s[i]) > 0.5) {
                idx = i;
            }
        }
        EXPECT_EQ(kBellFromMeasuredBits[idx], b);
    }
}

TEST(BellMeasurement, EachBellStateIsCertain) {
    for (Bell b : kAllBell) {
        StateVector s = oracle::bell_by_hand(b);
        auto p = bell_probabilities(s, QubitId(0), QubitId(1));
        for (Bell c : kAllBell) {
            EXPECT_NEAR(p[static_cast<int>(c)], b == c ? 1.0 : 0.0, kAlgebraicTol);
        }
        BellResult r = bsm(s, QubitId(0), QubitId(1), b);
        EXPECT_NEAR(r.probability, 1.0, kAlgebraicTol);
        EXPECT_NEAR(fidelity(s, oracle::bell_by_hand(b)), 1.0, kAlgebraicTol);
    }
}

TEST(BellMeasurement, ForcedCollapseIsTheBellProjection) {
    Rng rng(21);
    StateVector s = oracle::random_state(4, rng);
    for (Bell b : kAllBell) {
        StateVector t = s;
        BellResult r = bsm(t, QubitId(1), QubitId(3), b);
        // Projector |b><b| on (1,3) built from the hand-written Bell state.
        const std::array<QubitId, 2> pair = {QubitId(1), QubitId(3)};
        StateVector rest = contract(s, pair, oracle::bell_by_hand(b));
        EXPECT_NEAR(r.probability, rest.norm() * rest.norm(), kAlgebraicTol);
        // The collapsed state is bell(1,3) (x) rest(0,2) up to ordering.
        StateVector again = contract(t, pair, oracle::bell_by_hand(b));
        rest.normalize();
        EXPECT_NEAR(std::abs(overlap(rest, again)), 1.0, kAlgebraicTol);
        EXPECT_LT(distance(rest, again), kAlgebraicTol); // no stray phase
    }
}

TEST(BellMeasurement, ProbabilitiesSumToOneAndSamplingIsValid) {
    Rng rng(33);
    StateVector s = oracle::random_state(3, rng);
    auto p = bell_probabilities(s, QubitId(2), QubitId(0));
    EXPECT_NEAR(p[0] + p[1] + p[2] + p[3], 1.0, kAlgebraicTol);
    StateVector t = s;
    BellResult r = bsm(t, QubitId(2), QubitId(0), rng);
    EXPECT_NEAR(r.probability, p[static_cast<int>(r.outcome)], kAlgebraicTol);
    EXPECT_NEAR(t.norm(), 1.0, kAlgebraicTol);
}

TEST(BellMeasurement, ImpossibleForcedOutcomeLeavesStateUsable) {
    StateVector s = oracle::bell_by_hand(Bell::KappaPlus);
    StateVector before = s;
    EXPECT_THROW(bsm(s, QubitId(0), QubitId(1), Bell::LambdaMinus), ImpossibleBranchError);
    EXPECT_LT(distance(s, before), kAlgebraicTol);
}

TEST(BellSymbols, RoundTrip) {
    for (Bell b : kAllBell) {
        EXPECT_EQ(parse_bell_symbol(bell_symbol(b)), b);
    }
    EXPECT_THROW(parse_bell_symbol("x+"), std::invalid_argument);
}

} // namespace
} // namespace mcqt
