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

#include "mcqt/report.h"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace mcqt {

std::string format_number(double x) {
    char buf[64];
    if (x != 0 && std::abs(x) < 1e-3) {
        std::snprintf(buf, sizeof buf, "%.3e", x);
    } else {
        std::snprintf(buf, sizeof buf, "%.4f", x);
    }
    return buf;
}

bool Report::check_close(const std::string &name, double expected, double measured, double tol) {
    bool ok = std::isfinite(measured) && std::abs(measured - expected) <= tol;
    add({name, expected, measured, tol, ok});
    return ok;
}

bool Report::check_below(const std::string &name, double bound, double measured) {
    bool ok = measured < bound;
    add({name, "< " + format_number(bound), measured, 0, ok});
    return ok;
}

bool Report::check_equal(const std::string &name, const Json &expected, const Json &measured) {
    bool ok = expected == measured;
    add({name, expected, measured, 0, ok});
    return ok;
}

void Report::add(Assertion a) {
    assertions_.push_back(std::move(a));
}

bool Report::all_pass() const {
    for (const Assertion &a : assertions_) {
        if (!a.pass) {
            return false;
        }
    }
    return true;
}

Json Report::to_json() const {
    Json j;
    j["config"] = config;
    j["seed"] = seed ? Json(*seed) : Json(nullptr);
    Json as = Json::array();
    for (const Assertion &a : assertions_) {
        as.push_back({{"name", a.name},
                      {"expected", a.expected},
                      {"measured", a.measured},
                      {"tolerance", a.tolerance},
                      {"pass", a.pass}});
    }
    j["assertions"] = as;
    j["branches"] = branches;
    j["efficiency"] = efficiency;
    j["pass"] = all_pass();
    if (!notes.empty()) {
        j["notes"] = notes;
    }
    for (auto it = extra.begin(); it != extra.end(); ++it) {
        j[it.key()] = it.value();
    }
    return j;
}

std::string Report::dump() const {
    return to_json().dump(2) + "\n";
}

namespace {

std::string show(const Json &v) {
    if (v.is_number_float()) {
        return format_number(v.get<double>());
    }
    if (v.is_string()) {
        return v.get<std::string>();
    }
    return v.dump();
}

} // namespace

std::string Report::summary() const {
    std::ostringstream os;
    for (const Assertion &a : assertions_) {
        os << (a.pass ? "PASS " : "FAIL ") << a.name << ": measured " << show(a.measured) << ", expected "
           << show(a.expected);
        if (a.tolerance > 0) {
            os << " (tol " << format_number(a.tolerance) << ")";
        }
        os << "\n";
    }
    return os.str();
}

} // namespace mcqt
