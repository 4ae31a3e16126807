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

#ifndef MCQT_EFFICIENCY_H
#define MCQT_EFFICIENCY_H

#include <string>
#include <vector>

namespace mcqt {

/// tau = 100 * q_s / (q_u + b_t), as a percentage.
struct EfficiencyRecord {
    int q_s; // quantum information bits transmitted
    int q_u; // channel qubits
    int b_t; // classical bits
    double tau;
};

EfficiencyRecord intrinsic_efficiency(int q_s, int q_u, int b_t);

/// Classical bits: two per Bell measurement, and each single-qubit
/// measurement result is sent to every receiver.
int classical_cost(int n_bsm, int n_sm, int n_receivers);

struct ComparisonRow {
    std::string ref;
    int senders;
    int receivers;
    int n_bsm;
    int n_sm;
    int printed_crc; // as printed; some rows list b_t, others q_u + b_t
    EfficiencyRecord computed;
    double published_tau;
    double tolerance;

    double deviation() const;
    bool pass() const;
};

struct ComparisonReport {
    std::vector<ComparisonRow> rows;
    /// b_t counted from an actual four-sender transcript.
    int transcript_bits = 0;
    bool transcript_matches = false;
};

/// The four published comparison rows, recomputed. `transcript_bits` is the
/// bit count of a real four-sender run, checked against the "ours" row.
ComparisonReport reproduce_comparison(int transcript_bits);

} // namespace mcqt

#endif // MCQT_EFFICIENCY_H
