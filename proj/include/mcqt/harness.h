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

#ifndef MCQT_HARNESS_H
#define MCQT_HARNESS_H

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mcqt/protocol.h"
#include "mcqt/report.h"

namespace mcqt {

/// Raised for malformed user input (bad spec strings, bad input files).
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class RunMode : std::uint8_t { Sampled, Forced, Exhaustive };

struct RunConfig {
    std::size_t senders = 4;
    std::uint64_t seed = 1;
    /// Messages read from a file; random from `seed` when empty.
    std::optional<std::string> input_path;
    RunMode mode = RunMode::Sampled;
    std::size_t samples = 1;
    /// Raw SPEC of forced mode; parsed once the sender count is known.
    std::string forced_spec;
    std::string mode_text = "sampled:1";
    Engine engine = Engine::Structured;
    bool allow_large_dense = false;
    unsigned workers = 1;
};

/// "sampled:N", "forced:SPEC" or "exhaustive"; fills mode, samples and
/// forced_spec.
void parse_mode(const std::string &text, RunConfig &cfg);

/// SPEC: 2s comma-separated symbols from {k+, k-, l+, l-} followed by the
/// controller bit, e.g. "k+,l-,0".
OutcomeRecord parse_forced_spec(const std::string &spec, std::size_t senders);

/// {"senders": [[[re, im] x 4] x S]}; unnormalized states are rejected.
std::vector<InfoState> parse_inputs(const Json &doc);
std::vector<InfoState> load_inputs(const std::string &path);

std::vector<InfoState> random_inputs(std::size_t senders, Rng &rng);

Json branch_record(const ProtocolReport &r);

Report channel_report(std::size_t pairs, bool verify, bool allow_large_dense = false);
Report run_report(const RunConfig &cfg);
/// Tables, collapsed-state catalog and the global expansion.
Report tables_report(std::uint64_t seed);
/// Controller gating: `draws` random message sets for four senders.
Report gating_report(std::uint64_t seed, std::size_t draws);
Report efficiency_report();

} // namespace mcqt

#endif // MCQT_HARNESS_H
