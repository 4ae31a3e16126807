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

#include "mcqt/cli.h"

#include <fstream>
#include <optional>

#include "CLI11.hpp"
#include "mcqt/harness.h"

namespace mcqt {

namespace {

bool write_file(const std::string &path, const std::string &text, std::ostream &err) {
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        err << "error: cannot write '" << path << "'\n";
        return false;
    }
    f << text;
    return static_cast<bool>(f);
}

/// Error record written in place of a report when a command cannot run.
void write_error(const std::string &out_path, const std::string &command, const std::string &message,
                 std::ostream &err) {
    if (out_path.empty()) {
        return;
    }
    Json j = {{"command", command}, {"error", message}, {"pass", false}};
    write_file(out_path, j.dump(2) + "\n", err);
}

int finish(const Report &rep, const std::string &out_path, std::ostream &out, std::ostream &err) {
    out << rep.summary();
    for (const std::string &n : rep.notes) {
        out << "note: " << n << "\n";
    }
    if (!out_path.empty() && !write_file(out_path, rep.dump(), err)) {
        return kExitUsage;
    }
    bool ok = rep.all_pass();
    out << (ok ? "all checks passed" : "verification FAILED") << "\n";
    return ok ? kExitPass : kExitVerificationFailed;
}

} // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Controlled multi-party teleportation simulator"};
    app.require_subcommand(1);
    std::string out_path;

    auto *prep = app.add_subcommand("prepare-channel", "Build the channel circuit and optionally verify it");
    std::size_t pairs = 8;
    bool verify = false;
    bool prep_large = false;
    prep->add_option("--pairs", pairs, "Number of Bell pairs")->check(CLI::PositiveNumber);
    prep->add_flag("--verify", verify, "Compare the circuit with the analytic state");
    prep->add_flag("--allow-large-dense", prep_large, "Allow dense registers above 17 qubits");
    prep->add_option("--out", out_path, "Write the JSON report here");

    auto *run = app.add_subcommand("run", "Run the teleportation protocol");
    RunConfig cfg;
    std::optional<std::size_t> senders;
    std::string input, mode = "sampled:1", engine = "structured";
    run->add_option("--senders", senders, "Number of senders (1-4)")->check(CLI::Range(1, 4));
    auto *seed_opt = run->add_option("--seed", cfg.seed, "Seed for random messages and sampling");
    auto *input_opt = run->add_option("--input", input, "JSON file with the senders' messages");
    input_opt->excludes(seed_opt);
    run->add_option("--mode", mode, "sampled:N | forced:SPEC | exhaustive");
    run->add_option("--engine", engine, "dense | structured");
    run->add_flag("--allow-large-dense", cfg.allow_large_dense, "Allow dense registers above 17 qubits");
    run->add_option("--workers", cfg.workers, "Threads for exhaustive enumeration")->check(CLI::Range(1, 256));
    run->add_option("--out", out_path, "Write the JSON report here");

    auto *tables = app.add_subcommand("verify-tables", "Check the correction tables and the state catalog");
    std::uint64_t tables_seed = 7;
    tables->add_option("--seed", tables_seed, "Seed for probe messages");
    tables->add_option("--out", out_path, "Write the JSON report here");

    auto *gating = app.add_subcommand("verify-gating", "Check that receivers need the controller's bit");
    std::uint64_t gating_seed = 11;
    std::size_t draws = 20;
    gating->add_option("--seed", gating_seed, "Seed for random messages");
    gating->add_option("--draws", draws, "Number of random message sets")->check(CLI::PositiveNumber);
    gating->add_option("--out", out_path, "Write the JSON report here");

    auto *eff = app.add_subcommand("efficiency", "Recompute the intrinsic-efficiency comparison");
    eff->add_option("--out", out_path, "Write the JSON report here");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kExitPass;
    } catch (const CLI::ParseError &e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return kExitPass;
        }
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    std::string command = app.get_subcommands().front()->get_name();
    try {
        if (*prep) {
            return finish(channel_report(pairs, verify, prep_large), out_path, out, err);
        }
        if (*run) {
            parse_mode(mode, cfg);
            cfg.engine = parse_engine(engine);
            if (!input.empty()) {
                cfg.input_path = input;
                std::size_t in_count = load_inputs(input).size();
                if (senders && *senders != in_count) {
                    throw UsageError("--senders " + std::to_string(*senders) + " disagrees with the " +
                                     std::to_string(in_count) + " senders in '" + input + "'");
                }
            } else {
                cfg.senders = senders.value_or(4);
            }
            return finish(run_report(cfg), out_path, out, err);
        }
        if (*tables) {
            return finish(tables_report(tables_seed), out_path, out, err);
        }
        if (*gating) {
            return finish(gating_report(gating_seed, draws), out_path, out, err);
        }
        return finish(efficiency_report(), out_path, out, err);
    } catch (const UsageError &e) {
        err << "error: " << e.what() << "\n";
        write_error(out_path, command, e.what(), err);
        return kExitUsage;
    } catch (const SizeCapError &e) {
        err << "error: " << e.what() << "\n";
        write_error(out_path, command, e.what(), err);
        return kExitUsage;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << "\n";
        write_error(out_path, command, e.what(), err);
        return kExitUsage;
    } catch (const std::exception &e) {
        // Impossible forced branches and derivation failures land here.
        err << "verification error: " << e.what() << "\n";
        write_error(out_path, command, e.what(), err);
        return kExitVerificationFailed;
    }
}

} // namespace mcqt
