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

// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>

#include "mcqt/corrections.h"
#include "mcqt/efficiency.h"
#include "mcqt/harness.h"
#include "mcqt/protocol.h"

namespace {

using namespace mcqt;

struct Outcome {
    bool pass;
    std::string detail;
};

int failures = 0;

void criterion(int n, const char *name, double time_limit_s, const std::function<Outcome()> &body) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o{false, ""};
    try {
        o = body();
    } catch (const std::exception &e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool in_time = time_limit_s <= 0 || secs < time_limit_s;
    bool ok = o.pass && in_time;
    failures += !ok;
    char limit[32] = "";
    if (time_limit_s > 0) {
        std::snprintf(limit, sizeof limit, " < %.0fs", time_limit_s);
    }
    std::printf("%s [%d] %s: %s (%.2fs%s)\n", ok ? "PASS" : "FAIL", n, name, o.detail.c_str(), secs, limit);
    std::fflush(stdout);
}

std::string fmt(const char *f, double a, double b = 0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

double assertion_value(const Report &r, const std::string &name) {
    for (const Assertion &a : r.assertions()) {
        if (a.name == name) {
            return a.measured.get<double>();
        }
    }
    throw std::runtime_error("missing assertion " + name);
}

} // namespace

int main() {
    criterion(1, "channel circuit equals analytic state", 5, [] {
        double worst = 0;
        bool ok = true;
        for (std::size_t k : {1, 2, 3, 8}) {
            Report r = channel_report(k, true);
            ok = ok && r.all_pass();
            worst = std::max(worst, assertion_value(r, "circuit_vs_analytic_distance"));
        }
        return Outcome{ok && worst < 1e-12, fmt("max L2 distance %.3e over pairs {1,2,3,8}, sign (-1)^k", worst)};
    });

    criterion(2, "exhaustive reduced protocol", 30, [] {
        bool ok = true;
        double worst_f = 0, worst_p = 0, worst_sum = 0;
        std::size_t branches = 0;
        for (std::size_t s : {1, 2}) {
            RunConfig cfg;
            cfg.senders = s;
            cfg.seed = 1000 + s;
            cfg.mode = RunMode::Exhaustive;
            cfg.engine = Engine::Dense;
            Report r = run_report(cfg);
            ok = ok && r.all_pass() && r.branches.size() == branch_count(s);
            branches += r.branches.size();
            double p = 1.0 / static_cast<double>(branch_count(s));
            double sum = 0;
            for (const Json &b : r.branches) {
                for (const Json &f : b["fidelity"]) {
                    worst_f = std::max(worst_f, std::abs(f.get<double>() - 1));
                }
                worst_p = std::max(worst_p, std::abs(b["probability"].get<double>() - p));
                sum += b["probability"].get<double>();
            }
            worst_sum = std::max(worst_sum, std::abs(sum - 1));
        }
        ok = ok && branches == 32 + 512 && worst_f <= 1e-9 && worst_p <= 1e-12 && worst_sum <= 1e-10;
        return Outcome{ok, std::to_string(branches) + " branches, " +
                               fmt("max |F-1| %.2e, max |p-p0| %.2e", worst_f, worst_p) +
                               fmt(", |sum-1| %.2e", worst_sum)};
    });

    criterion(3, "full four-sender protocol, structured engine", 60, [] {
        Rng pick(2026);
        std::uniform_int_distribution<std::uint64_t> branch(0, branch_count(4) - 1);
        double worst_f = 0, worst_p = 0;
        int runs = 0;
        const double p0 = std::pow(2.0, -17);
        for (std::uint64_t set = 0; set < 20; set++) {
            Rng rng(500 + set);
            std::vector<InfoState> in = random_inputs(4, rng);
            for (int k = 0; k < 26; k++) {
                ProtocolReport r = run_protocol(in, OutcomeRecord::from_branch_index(4, branch(pick)));
                for (double f : r.fidelity) {
                    worst_f = std::max(worst_f, std::abs(f - 1));
                }
                worst_p = std::max(worst_p, std::abs(r.branch_probability - p0));
                runs++;
            }
        }
        bool ok = runs >= 512 && worst_f <= 1e-9 && worst_p <= 1e-12;
        return Outcome{ok, std::to_string(runs) + " forced branches over 20 input sets, " +
                               fmt("max |F-1| %.2e, max |p-2^-17| %.2e", worst_f, worst_p)};
    });

    criterion(4, "controller gating", 0, [] {
        Report r = gating_report(77, 20);
        return Outcome{r.all_pass(), fmt("pre-broadcast mixture diff %.2e, blind fidelity mean %.4f",
                                         assertion_value(r, "pre_broadcast_mixture"),
                                         assertion_value(r, "fidelity_without_controller_mean"))};
    });

    criterion(5, "correction tables", 30, [] {
        Rng rng(5);
        TableReport t = verify_tables(rng);
        bool ok = t.matches == 128 && t.self_inverse == 128 && t.columns_identical;
        return Outcome{ok, std::to_string(t.matches) + "/128 match, " + std::to_string(t.self_inverse) +
                               "/128 self-inverse, columns identical: " + (t.columns_identical ? "yes" : "no")};
    });

    criterion(6, "collapsed-state catalog", 0, [] {
        Rng rng(6);
        bool ok = true;
        std::string detail;
        for (InfoBlock b : {InfoBlock::P, InfoBlock::R, InfoBlock::T, InfoBlock::V}) {
            EtaSurvey s = survey_eta_catalog(b, InfoState::random(rng));
            ok = ok && s.total && s.two_to_one;
            detail += std::string(detail.empty() ? "" : ", ") + "block " + std::to_string(static_cast<int>(b)) +
                      (s.total && s.two_to_one ? " total 2-to-1" : " incomplete");
        }
        return Outcome{ok, detail};
    });

    criterion(7, "efficiency comparison", 0, [] {
        Report r = efficiency_report();
        std::string d;
        for (const Json &row : r.efficiency) {
            d += row["ref"].get<std::string>() + fmt(" %.4f (dev %.4f), ", row["tau_computed"].get<double>(),
                                                      row["deviation"].get<double>());
        }
        d += "transcript b_t " + std::to_string(static_cast<int>(assertion_value(r, "transcript_bits_ours")));
        return Outcome{r.all_pass(), d};
    });

    criterion(8, "global expansion normalization", 0, [] {
        Rng rng(8);
        ExpansionSummary s = expansion_coefficients(random_inputs(4, rng));
        const double p256 = 1 / (256 * std::numbers::sqrt2);
        const double p64 = 1 / (64 * std::numbers::sqrt2);
        double t = static_cast<double>(s.terms);
        bool ok = std::abs(s.sum_squares - 1) <= 1e-9 && std::abs(s.max_abs - p256) <= 1e-12 &&
                  std::abs(s.min_abs - p256) <= 1e-12;
        return Outcome{ok, "1/(256*sqrt(2)) normalizes: " + fmt("sum |c|^2 = %.12f; 1/(64*sqrt(2)) would give %.1f",
                                                                 s.sum_squares, t * p64 * p64)};
    });

    criterion(9, "determinism", 0, [] {
        RunConfig cfg;
        cfg.senders = 4;
        cfg.seed = 9;
        parse_mode("sampled:64", cfg);
        bool same_seed = run_report(cfg).dump() == run_report(cfg).dump();
        RunConfig ex;
        ex.senders = 2;
        ex.seed = 10;
        ex.mode = RunMode::Exhaustive;
        ex.workers = 1;
        std::string one = run_report(ex).dump();
        ex.workers = 4;
        bool same_workers = one == run_report(ex).dump();
        return Outcome{same_seed && same_workers, std::string("same seed byte-identical: ") +
                                                      (same_seed ? "yes" : "no") +
                                                      ", exhaustive 1 vs 4 workers identical: " +
                                                      (same_workers ? "yes" : "no")};
    });

    std::printf("%d of 9 criteria failed\n", failures);
    return failures;
}
