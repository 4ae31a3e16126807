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

#ifndef MCQT_REPORT_H
#define MCQT_REPORT_H

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace mcqt {

using Json = nlohmann::json;

struct Assertion {
    std::string name;
    Json expected;
    Json measured;
    double tolerance = 0;
    bool pass = false;
};

/// Machine-readable verification report. Keys serialize sorted, so equal
/// contents give byte-identical output.
class Report {
  public:
    Json config = Json::object();
    std::optional<std::uint64_t> seed;
    Json branches = Json::array();
    Json efficiency = Json::array();
    /// Extra named sections (tables, catalog map, ...).
    Json extra = Json::object();
    std::vector<std::string> notes;

    /// |measured - expected| <= tol.
    bool check_close(const std::string &name, double expected, double measured, double tol);
    /// measured < bound.
    bool check_below(const std::string &name, double bound, double measured);
    /// Exact equality of JSON values.
    bool check_equal(const std::string &name, const Json &expected, const Json &measured);
    void add(Assertion a);

    const std::vector<Assertion> &assertions() const {
        return assertions_;
    }
    bool all_pass() const;

    Json to_json() const;
    std::string dump() const;
    /// One line per assertion, numbers at 4 decimals.
    std::string summary() const;

  private:
    std::vector<Assertion> assertions_;
};

/// Numbers for console output: 4 decimals, scientific below 1e-3.
std::string format_number(double x);

} // namespace mcqt

#endif // MCQT_REPORT_H
