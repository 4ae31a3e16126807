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

#include <gtest/gtest.h>

#include "mcqt/protocol.h"
#include "oracle.h"

namespace mcqt {
namespace {

constexpr Bell kp = Bell::KappaPlus;
constexpr Bell lm = Bell::LambdaMinus;

std::vector<InfoState> probes(std::uint64_t seed, int n = 3) {
    Rng rng(seed);
    std::vector<InfoState> out;
    for (int k = 0; k < n; k++) {
        out.push_back(InfoState::random(rng));
    }
    return out;
}

TEST(TableLookup, PublishedExamples) {
    CorrectionEntry a = table_lookup(Party::Fancy1, {kp, kp, 0});
    EXPECT_EQ(a, (CorrectionEntry{PauliFactor::I, PauliFactor::I, false}));
    CorrectionEntry b = table_lookup(Party::Fancy1, {kp, kp, 1});
    EXPECT_EQ(b, (CorrectionEntry{PauliFactor::XZ, PauliFactor::XZ, false}));
    CorrectionEntry c = table_lookup(Party::Fancy3, {lm, lm, 1});
    EXPECT_EQ(c, (CorrectionEntry{PauliFactor::I, PauliFactor::I, false}));
    CorrectionEntry d = table_lookup(Party::Fancy2, {Bell::KappaMinus, Bell::LambdaPlus, 1});
    EXPECT_EQ(d, (CorrectionEntry{PauliFactor::X, PauliFactor::Z, true}));
    EXPECT_THROW(table_lookup(Party::Alice, {kp, kp, 0}), std::invalid_argument);
    EXPECT_THROW(table_lookup(Party::Fancy1, {kp, kp, 2}), std::invalid_argument);
}

TEST(CorrectionKey, RowRoundTrip) {
    for (std::size_t r = 0; r < kCorrectionKeys; r++) {
        EXPECT_EQ(CorrectionKey::from_row(r).row(), r);
    }
    EXPECT_THROW(CorrectionKey::from_row(32), std::out_of_range);
}

TEST(CorrectionUnitary, FirstFactorActsOnLowBit) {
    auto u = correction_unitary({PauliFactor::X, PauliFactor::I, false});
    // |00> (index 0) -> |10> (index 1)
    EXPECT_EQ(u[1 * 4 + 0], Amp(1));
    auto v = correction_unitary({PauliFactor::I, PauliFactor::Z, true});
    EXPECT_EQ(v[0], Amp(-1));
    EXPECT_EQ(v[2 * 4 + 2], Amp(1));
}

TEST(DeriveCorrection, PublishedExamples) {
    auto p = probes(1);
    EXPECT_TRUE(derive_correction({kp, kp, 0}, p).same_up_to_phase({PauliFactor::I, PauliFactor::I, false}));
    EXPECT_TRUE(derive_correction({kp, kp, 1}, p).same_up_to_phase({PauliFactor::XZ, PauliFactor::XZ, false}));
}

TEST(DeriveCorrection, NeedsThreeProbes) {
    auto p = probes(2, 2);
    EXPECT_THROW(derive_correction({kp, kp, 0}, p), std::invalid_argument);
}

TEST(DeriveCorrection, EveryKeyMatchesTheTableUpToPhase) {
    auto p = probes(3);
    for (std::size_t r = 0; r < kCorrectionKeys; r++) {
        CorrectionKey k = CorrectionKey::from_row(r);
        CorrectionEntry d = derive_correction(k, p);
        for (Party rx : kReceivers) {
            EXPECT_TRUE(table_lookup(rx, k).same_up_to_phase(d)) << "row " << r;
        }
    }
}

TEST(DeriveCorrection, StableAcrossProbeSets) {
    auto a = probes(10), b = probes(20, 5);
    for (std::size_t r = 0; r < kCorrectionKeys; r++) {
        CorrectionKey k = CorrectionKey::from_row(r);
        EXPECT_TRUE(derive_correction(k, a).same_up_to_phase(derive_correction(k, b)));
    }
}

// Apply every table entry to the simulator's collapsed state directly.
TEST(TableProperty, CorrectionRestoresMessage) {
    Rng rng(44);
    for (int trial = 0; trial < 5; trial++) {
        InfoState in = InfoState::random(rng);
        const std::array<InfoState, 1> one = {in};
        for (std::size_t r = 0; r < kCorrectionKeys; r++) {
            CorrectionKey k = CorrectionKey::from_row(r);
            StateVector c = receiver_state(one, OutcomeRecord{{k.g, k.h}, k.z});
            auto word = table_lookup(Party::Fancy1, k).word(QubitId(0), QubitId(1));
            c.apply_pauli_word(word);
            EXPECT_NEAR(fidelity(c, in.to_state()), 1.0, kPipelineTol);
        }
    }
}

TEST(TableProperty, EntriesAreSelfInverseUpToSign) {
    for (Party rx : kReceivers) {
        for (std::size_t r = 0; r < kCorrectionKeys; r++) {
            auto u = correction_unitary(table_lookup(rx, CorrectionKey::from_row(r)));
            oracle::Mat m(4, 4);
            for (int i = 0; i < 16; i++) {
                m(i / 4, i % 4) = u[i];
            }
            oracle::Mat sq = m * m;
            double plus = (sq - oracle::Mat::Identity(4, 4)).norm();
            double minus = (sq + oracle::Mat::Identity(4, 4)).norm();
            EXPECT_LT(std::min(plus, minus), kAlgebraicTol);
        }
    }
}

TEST(TableProperty, PhaseEntriesWorkWithoutThePhase) {
    Rng rng(45);
    InfoState in = InfoState::random(rng);
    const std::array<InfoState, 1> one = {in};
    int phased = 0;
    for (std::size_t r = 0; r < kCorrectionKeys; r++) {
        CorrectionKey k = CorrectionKey::from_row(r);
        CorrectionEntry e = table_lookup(Party::Fancy1, k);
        if (!e.phase_pi) {
            continue;
        }
        phased++;
        StateVector c = receiver_state(one, OutcomeRecord{{k.g, k.h}, k.z});
        CorrectionEntry bare{e.first, e.second, false};
        c.apply_pauli_word(bare.word(QubitId(0), QubitId(1)));
        EXPECT_NEAR(fidelity(c, in.to_state()), 1.0, kPipelineTol);
    }
    EXPECT_EQ(phased, 4);
}

TEST(VerifyTables, FullSweep) {
    Rng rng(5);
    TableReport rep = verify_tables(rng);
    EXPECT_EQ(rep.rows.size(), 128u);
    EXPECT_EQ(rep.matches, 128u);
    EXPECT_EQ(rep.self_inverse, 128u);
    EXPECT_TRUE(rep.columns_identical);
    for (const TableRow &r : rep.rows) {
        if (r.key.g == Bell::KappaMinus && r.key.h == Bell::LambdaPlus && r.key.z == 1) {
            EXPECT_TRUE(r.match);
            EXPECT_TRUE(r.published.phase_pi);
        }
    }
}

TEST(EtaState, PublishedExamples) {
    std::array<Amp, 4> v = {Amp(0.1, 0.2), Amp(0.3, -0.1), Amp(-0.5, 0.4), Amp(0.2, 0.1)};
    double n = 0;
    for (Amp a : v) {
        n += std::norm(a);
    }
    for (Amp &a : v) {
        a /= std::sqrt(n);
    }
    InfoState p(v);
    StateVector id = eta_state({InfoBlock::P, 16}, p);
    EXPECT_LT(distance(id, p.to_state()), kAlgebraicTol);
    EXPECT_EQ(EtaIndex({InfoBlock::V, 16}).global(), 64);

    StateVector first = eta_state({InfoBlock::P, 1}, p);
    // p00|11> - p01|10> - p10|01> + p11|00>
    EXPECT_EQ(first[ket_index("11")], v[0]);
    EXPECT_EQ(first[ket_index("10")], -v[1]);
    EXPECT_EQ(first[ket_index("01")], -v[2]);
    EXPECT_EQ(first[ket_index("00")], v[3]);
    EXPECT_THROW(eta_state({InfoBlock::P, 0}, p), std::out_of_range);
}

TEST(MatchEta, KappaKappaBranches) {
    Rng rng(6);
    InfoState in = InfoState::random(rng);
    const std::array<InfoState, 1> one = {in};
    StateVector z1 = receiver_state(one, OutcomeRecord{{kp, kp}, 1});
    EXPECT_EQ(match_eta(z1, in, InfoBlock::P).index.index_in_block, 1);
    StateVector z0 = receiver_state(one, OutcomeRecord{{kp, kp}, 0});
    EtaMatch m = match_eta(z0, in, InfoBlock::R);
    EXPECT_EQ(m.index.global(), 32);
    EXPECT_NEAR(std::abs(m.phase), 1.0, 1e-9);
}

TEST(MatchEta, UnrelatedStateIsNotCovered) {
    Rng rng(7);
    InfoState in = InfoState::random(rng);
    StateVector other = oracle::random_state(2, rng);
    EXPECT_THROW(match_eta(other, in, InfoBlock::P), CatalogCoverageError);
}

TEST(EtaSurvey, TotalAndTwoToOne) {
    Rng rng(8);
    for (InfoBlock b : {InfoBlock::P, InfoBlock::R, InfoBlock::T, InfoBlock::V}) {
        EtaSurvey s = survey_eta_catalog(b, InfoState::random(rng));
        EXPECT_TRUE(s.total);
        EXPECT_TRUE(s.two_to_one);
        // each pattern is reached once with z = 0 and once with z = 1
        std::array<int, 16> z0{}, z1{};
        for (std::size_t r = 0; r < kCorrectionKeys; r++) {
            (r < 16 ? z0 : z1)[static_cast<std::size_t>(s.index_by_row[r] - 1)]++;
        }
        for (int k = 0; k < 16; k++) {
            EXPECT_EQ(z0[k], 1);
            EXPECT_EQ(z1[k], 1);
        }
    }
}

} // namespace
} // namespace mcqt
