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

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mcqt/corrections.h"
#include "mcqt/efficiency.h"
#include "mcqt/harness.h"
#include "mcqt/protocol.h"

namespace py = pybind11;

namespace {

using namespace mcqt;

std::vector<InfoState> to_inputs(const std::vector<std::array<Amp, 4>> &raw) {
    std::vector<InfoState> out;
    out.reserve(raw.size());
    for (const auto &c : raw) {
        out.emplace_back(c);
    }
    return out;
}

py::dict to_dict(const ProtocolReport &r) {
    py::dict d;
    d["branch_index"] = r.outcome.branch_index();
    std::vector<std::string> bell;
    for (Bell b : r.outcome.bell) {
        bell.emplace_back(bell_symbol(b));
    }
    d["bell"] = bell;
    d["z"] = r.outcome.z.value_or(-1);
    d["probability"] = r.branch_probability;
    d["fidelity"] = r.fidelity;
    d["classical_bits"] = r.classical_bits_sent;
    return d;
}

RunOptions options(const std::string &engine, unsigned workers) {
    RunOptions o;
    o.engine = parse_engine(engine);
    o.workers = workers;
    return o;
}

} // namespace

PYBIND11_MODULE(_mcqt, m) {
    m.doc() = "Controlled multi-party teleportation simulator";

    py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);
    py::register_exception<SizeCapError>(m, "SizeCapError", PyExc_ValueError);
    py::register_exception<ImpossibleBranchError>(m, "ImpossibleBranchError", PyExc_ValueError);

    m.def("branch_count", &branch_count, py::arg("senders"));
    m.def("protocol_classical_bits", &protocol_classical_bits, py::arg("senders"));

    m.def(
        "random_inputs",
        [](std::size_t senders, std::uint64_t seed) {
            Rng rng(seed);
            std::vector<std::array<Amp, 4>> out;
            for (const InfoState &s : random_inputs(senders, rng)) {
                out.push_back(s.coeffs());
            }
            return out;
        },
        py::arg("senders"), py::arg("seed"));

    m.def(
        "run_forced",
        [](const std::vector<std::array<Amp, 4>> &inputs, const std::string &spec, const std::string &engine) {
            auto in = to_inputs(inputs);
            return to_dict(run_protocol(in, parse_forced_spec(spec, in.size()), options(engine, 1)));
        },
        py::arg("inputs"), py::arg("spec"), py::arg("engine") = "structured");

    m.def(
        "run_sampled",
        [](const std::vector<std::array<Amp, 4>> &inputs, std::uint64_t seed, const std::string &engine) {
            auto in = to_inputs(inputs);
            Rng rng(seed);
            return to_dict(run_protocol(in, rng, options(engine, 1)));
        },
        py::arg("inputs"), py::arg("seed"), py::arg("engine") = "structured");

    m.def(
        "run_exhaustive",
        [](const std::vector<std::array<Amp, 4>> &inputs, const std::string &engine, unsigned workers) {
            auto in = to_inputs(inputs);
            std::vector<ProtocolReport> all;
            {
                py::gil_scoped_release release;
                all = run_exhaustive(in, options(engine, workers));
            }
            py::list out;
            for (const ProtocolReport &r : all) {
                out.append(to_dict(r));
            }
            return out;
        },
        py::arg("inputs"), py::arg("engine") = "structured", py::arg("workers") = 1);

    m.def(
        "correction",
        [](int receiver, const std::string &g, const std::string &h, int z) {
            if (receiver < 1 || receiver > 4) {
                throw py::value_error("receiver must be 1..4");
            }
            CorrectionKey key{parse_bell_symbol(g), parse_bell_symbol(h), z};
            return table_lookup(kReceivers[receiver - 1], key).describe();
        },
        py::arg("receiver"), py::arg("g"), py::arg("h"), py::arg("z"));

    m.def(
        "intrinsic_efficiency",
        [](int q_s, int q_u, int b_t) { return intrinsic_efficiency(q_s, q_u, b_t).tau; },
        py::arg("q_s"), py::arg("q_u"), py::arg("b_t"));

    // Reports come back as JSON text; the package wrapper decodes them.
    m.def(
        "channel_report_json",
        [](std::size_t pairs, bool verify, bool allow_large_dense) {
            return channel_report(pairs, verify, allow_large_dense).dump();
        },
        py::arg("pairs") = 8, py::arg("verify") = false, py::arg("allow_large_dense") = false);
    m.def(
        "run_report_json",
        [](std::size_t senders, std::uint64_t seed, const std::string &mode, const std::string &engine,
           bool allow_large_dense, unsigned workers) {
            RunConfig cfg;
            cfg.senders = senders;
            cfg.seed = seed;
            parse_mode(mode, cfg);
            cfg.engine = parse_engine(engine);
            cfg.allow_large_dense = allow_large_dense;
            cfg.workers = workers;
            py::gil_scoped_release release;
            return run_report(cfg).dump();
        },
        py::arg("senders") = 4, py::arg("seed") = 1, py::arg("mode") = "sampled:1",
        py::arg("engine") = "structured", py::arg("allow_large_dense") = false, py::arg("workers") = 1);
    m.def(
        "tables_report_json", [](std::uint64_t seed) { return tables_report(seed).dump(); }, py::arg("seed") = 7);
    m.def(
        "gating_report_json",
        [](std::uint64_t seed, std::size_t draws) { return gating_report(seed, draws).dump(); },
        py::arg("seed") = 11, py::arg("draws") = 20);
    m.def("efficiency_report_json", [] { return efficiency_report().dump(); });
}
