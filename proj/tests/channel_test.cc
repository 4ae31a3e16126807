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

#include "mcqt/channel.h"

#include <gtest/gtest.h>

#include "oracle.h"

namespace mcqt {
namespace {

TEST(BellStates, MatchHandWrittenDefinitions) {
    for (Bell b : kAllBell) {
        EXPECT_LT(distance(bell_state(b), oracle::bell_by_hand(b)), kAlgebraicTol);
    }
}

TEST(GhzStage, SeventeenQubits) {
    StateVector s = prepare_ghz_stage(8);
    EXPECT_EQ(s.num_qubits(), 17u);
    EXPECT_NEAR(s[0].real(), 1 / std::sqrt(2.0), kAlgebraicTol);
    EXPECT_NEAR(s[(1u << 17) - 1].real(), 1 / std::sqrt(2.0), kAlgebraicTol);
    MeasureResult r = measure_qubit(s, QubitId(16), 0);
    EXPECT_NEAR(r.probability, 0.5, kAlgebraicTol);
    EXPECT_NEAR(std::abs(s[0]), 1.0, kAlgebraicTol);
}

// Three qubits, by hand: H on 3, CNOT 3->1, 3->2, H on 2, CNOT 2->1.
// |000> -> (|000> + |111>)/sqrt2 -> H on 2 -> CNOT(2->1) gives
// (kappa+ |0> - lambda- |1>)/sqrt2.
TEST(ChannelCircuit, OnePairHasMinusSign) {
    StateVector c = prepare_channel_circuit(1);
    StateVector minus = tensor(oracle::bell_by_hand(Bell::KappaPlus), StateVector::basis(1, 0));
    StateVector lm = tensor(oracle::bell_by_hand(Bell::LambdaMinus), StateVector::basis(1, 1));
    std::vector<Amp> want(8);
    for (std::uint64_t i = 0; i < 8; i++) {
        want[i] = (minus[i] - lm[i]) / std::sqrt(2.0);
    }
    EXPECT_LT(distance(c, StateVector::from_amplitudes(want)), kAlgebraicTol);
    EXPECT_EQ(circuit_branch_sign(1), -1);
}

class ChannelSweep : public ::testing::TestWithParam<std::size_t> {};

TEST_P(ChannelSweep, CircuitMatchesAnalyticWithBranchSign) {
    std::size_t k = GetParam();
    StateVector circuit = prepare_channel_circuit(k);
    int sign = k % 2 == 0 ? 1 : -1;
    EXPECT_EQ(circuit_branch_sign(k), sign);
    EXPECT_LT(distance(circuit, build_channel_analytic(k, sign)), kAlgebraicTol);
    EXPECT_GT(distance(circuit, build_channel_analytic(k, -sign)), 1.0);
    EXPECT_NEAR(circuit.norm(), 1.0, kPipelineTol);
}

INSTANTIATE_TEST_SUITE_P(Pairs, ChannelSweep, ::testing::Values(1, 2, 3, 8));

TEST(ChannelAnalytic, RejectsBadSign) {
    EXPECT_THROW(build_channel_analytic(2, 0), std::invalid_argument);
}

TEST(ChannelLayout, RolesForFourSenders) {
    ChannelLayout l = ChannelLayout::standard(8);
    EXPECT_TRUE(l.has_roles());
    EXPECT_EQ(l.by_role("A").index, 0u);
    EXPECT_EQ(l.by_role("P").index, 1u);
    EXPECT_EQ(l.by_role("A'").index, 2u);
    EXPECT_EQ(l.by_role("Q").index, 3u);
    EXPECT_EQ(l.by_role("D'").index, 14u);
    EXPECT_EQ(l.by_role("W").index, 15u);
    EXPECT_EQ(l.by_role("E").index, 16u);
    EXPECT_THROW(l.by_role("Z"), std::out_of_range);
    EXPECT_FALSE(ChannelLayout::standard(3).has_roles());
}

TEST(ChannelLayout, FromPositionsValidatesBijection) {
    std::map<int, std::size_t> ok = {{1, 2}, {2, 0}, {3, 1}};
    ChannelLayout l = ChannelLayout::from_positions(1, ok);
    EXPECT_EQ(l.by_label(1).index, 2u);
    std::map<int, std::size_t> clash = {{1, 0}, {2, 0}, {3, 1}};
    EXPECT_THROW(ChannelLayout::from_positions(1, clash), std::invalid_argument);
    std::map<int, std::size_t> missing = {{1, 0}, {2, 1}};
    EXPECT_THROW(ChannelLayout::from_positions(1, missing), std::invalid_argument);
}

TEST(ChannelLayout, RelabelMovesAmplitudes) {
    std::map<int, std::size_t> pos = {{1, 2}, {2, 0}, {3, 1}};
    ChannelLayout l = ChannelLayout::from_positions(1, pos);
    StateVector s = StateVector::basis(3, ket_index("100")); // label 1 set
    StateVector r = relabel(s, l);
    EXPECT_EQ(r[ket_index("001")], Amp(1));
}

TEST(ChannelCap, SeventeenQubitsWithoutOptIn) {
    EXPECT_NO_THROW(prepare_channel_circuit(8));
    EXPECT_THROW(prepare_channel_circuit(9), SizeCapError);
}

} // namespace
} // namespace mcqt
