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

#include "mcqt/protocol.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <thread>

namespace mcqt {

namespace {

constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

void check_senders(std::size_t s) {
    if (s < 1 || s > kMaxSenders) {
        throw std::invalid_argument("sender count must be 1..4, got " + std::to_string(s));
    }
}

std::vector<std::size_t> bsm_sequence(const RunOptions &opts, std::size_t senders) {
    std::size_t n = 2 * senders;
    if (opts.bsm_order.empty()) {
        std::vector<std::size_t> order(n);
        for (std::size_t m = 0; m < n; m++) {
            order[m] = m;
        }
        return order;
    }
    if (opts.bsm_order.size() != n) {
        throw std::invalid_argument("measurement order must list all " + std::to_string(n) + " Bell measurements");
    }
    std::vector<bool> seen(n, false);
    for (std::size_t m : opts.bsm_order) {
        if (m >= n || seen[m]) {
            throw std::invalid_argument("measurement order is not a permutation");
        }
        seen[m] = true;
    }
    return opts.bsm_order;
}

std::size_t sample_index(std::span<const double> probs, Rng &rng) {
    double total = 0;
    for (double p : probs) {
        total += p;
    }
    std::uniform_real_distribution<double> u(0.0, total);
    double x = u(rng);
    std::size_t pick = probs.size() - 1;
    for (std::size_t k = 0; k < probs.size(); k++) {
        if (x < probs[k]) {
            pick = k;
            break;
        }
        x -= probs[k];
    }
    while (probs[pick] <= kImpossibleBranchProb) {
        pick = (pick + probs.size() - 1) % probs.size();
    }
    return pick;
}

/// Where each measurement outcome comes from.
struct Chooser {
    const OutcomeRecord *forced = nullptr;
    Rng *rng = nullptr;
};

StateVector bell_pair_bra(Bell g, Bell h) {
    return tensor(bell_state(g), bell_state(h));
}

StateVector apply_unitary4(const std::array<Amp, 16> &u, const StateVector &s) {
    std::vector<Amp> out(4);
    auto a = s.amplitudes();
    for (std::size_t r = 0; r < 4; r++) {
        for (std::size_t c = 0; c < 4; c++) {
            out[r] += u[r * 4 + c] * a[c];
        }
    }
    return StateVector::from_amplitudes(std::move(out));
}

/// Receiver i's (P, Q) state from a block whose measured qubits hold the
/// Bell states (g, h); phase fixed by the contraction.
StateVector block_receiver(const StateVector &block, Bell g, Bell h) {
    const std::array<QubitId, 4> measured = {StructuredState::kMessage0, StructuredState::kSender0,
                                             StructuredState::kMessage1, StructuredState::kSender1};
    return contract(block, measured, bell_pair_bra(g, h));
}

// ---------------------------------------------------------------------------
// Engines. Both expose the same steps so one driver runs either.

class DenseRunner {
  public:
    DenseRunner(std::span<const InfoState> inputs, const RunOptions &opts)
        : layout_{inputs.size(), opts.layout ? *opts.layout : ChannelLayout::standard(2 * inputs.size())},
          state_(assemble_dense(inputs, layout_.channel, opts.cap)) {
    }

    BellResult bell(std::size_t m, Bell forced) {
        auto [a, b] = site(m);
        return bsm(state_, a, b, forced);
    }
    BellResult bell(std::size_t m, Rng &rng) {
        auto [a, b] = site(m);
        std::array<double, 4> p = bell_probabilities(state_, a, b);
        return bsm(state_, a, b, kAllBell[sample_index(p, rng)]);
    }
    MeasureResult controller(int forced) {
        return measure_qubit(state_, layout_.controller(), forced);
    }
    MeasureResult controller(Rng &rng) {
        double one = state_.probability_one(layout_.controller());
        std::array<double, 2> p = {1 - one, one};
        return controller(static_cast<int>(sample_index(p, rng)));
    }
    void correct(std::size_t i, const CorrectionEntry &e) {
        auto word = e.word(layout_.receiver(i, 0), layout_.receiver(i, 1));
        state_.apply_pauli_word(word);
    }
    DensityMatrix receiver_density(std::size_t i) const {
        const std::array<QubitId, 2> keep = {layout_.receiver(i, 0), layout_.receiver(i, 1)};
        return partial_trace(state_, keep);
    }
    DensityMatrix receivers_density() const {
        return partial_trace(state_, receiver_qubits());
    }
    /// Receivers' joint state once every other qubit has been measured.
    StateVector receivers_after(const OutcomeRecord &outcome) const {
        std::vector<QubitId> measured;
        StateVector bra = StateVector::basis(1, static_cast<std::uint64_t>(*outcome.z));
        std::optional<StateVector> pairs;
        for (std::size_t m = 0; m < outcome.bell.size(); m++) {
            auto [a, b] = site(m);
            measured.push_back(a);
            measured.push_back(b);
            StateVector pb = bell_state(outcome.bell[m]);
            pairs = pairs ? tensor(*pairs, pb) : pb;
        }
        measured.push_back(layout_.controller());
        bra = tensor(*pairs, bra);
        StateVector r = contract(state_, measured, bra);
        return to_receiver_order(r, measured);
    }

  private:
    std::pair<QubitId, QubitId> site(std::size_t m) const {
        std::size_t i = m / 2;
        int w = static_cast<int>(m % 2);
        return {layout_.message(i, w), layout_.sender_channel(i, w)};
    }
    std::vector<QubitId> receiver_qubits() const {
        std::vector<QubitId> keep;
        for (std::size_t i = 0; i < layout_.senders; i++) {
            keep.push_back(layout_.receiver(i, 0));
            keep.push_back(layout_.receiver(i, 1));
        }
        return keep;
    }
    /// contract() leaves survivors in ascending id order; reorder them to
    /// P Q R S ... .
    StateVector to_receiver_order(const StateVector &r, const std::vector<QubitId> &measured) const {
        std::vector<std::size_t> survivors;
        for (std::size_t k = 0; k < layout_.num_qubits(); k++) {
            if (std::find(measured.begin(), measured.end(), QubitId(k)) == measured.end()) {
                survivors.push_back(k);
            }
        }
        auto wanted = receiver_qubits();
        std::vector<std::size_t> new_position(survivors.size());
        for (std::size_t rank = 0; rank < survivors.size(); rank++) {
            auto it = std::find(wanted.begin(), wanted.end(), QubitId(survivors[rank]));
            new_position[rank] = static_cast<std::size_t>(it - wanted.begin());
        }
        return permute_qubits(r, new_position);
    }

    ProtocolLayout layout_;
    StateVector state_;
};

class StructuredRunner {
  public:
    explicit StructuredRunner(std::span<const InfoState> inputs) : state_(assemble_structured(inputs)) {
    }

    BellResult bell(std::size_t m, Bell forced) {
        auto per = branch_probabilities(m);
        return collapse(m, forced, per);
    }
    BellResult bell(std::size_t m, Rng &rng) {
        auto per = branch_probabilities(m);
        std::array<double, 4> total = totals(per);
        return collapse(m, kAllBell[sample_index(total, rng)], per);
    }
    MeasureResult controller(int forced) {
        if (forced != 0 && forced != 1) {
            throw std::invalid_argument("controller bit must be 0 or 1");
        }
        double p = std::norm(state_.weight[forced]);
        if (p <= kImpossibleBranchProb) {
            throw ImpossibleBranchError("forced controller bit " + std::to_string(forced) + " has probability " +
                                        std::to_string(p));
        }
        state_.weight[forced] /= std::sqrt(p);
        state_.weight[1 - forced] = 0;
        z_ = forced;
        return {forced, p};
    }
    MeasureResult controller(Rng &rng) {
        std::array<double, 2> p = {std::norm(state_.weight[0]), std::norm(state_.weight[1])};
        return controller(static_cast<int>(sample_index(p, rng)));
    }
    void correct(std::size_t i, const CorrectionEntry &e) {
        auto word = e.word(StructuredState::kReceiver0, StructuredState::kReceiver1);
        state_.blocks[z_][i].apply_pauli_word(word);
    }
    DensityMatrix receiver_density(std::size_t i) const {
        // Branches are orthogonal through the controller qubit, so the
        // receiver sees the weighted mixture of per-branch reduced states.
        const std::array<QubitId, 2> keep = {StructuredState::kReceiver0, StructuredState::kReceiver1};
        std::vector<double> w;
        std::vector<DensityMatrix> parts;
        for (int z = 0; z < 2; z++) {
            double p = std::norm(state_.weight[z]);
            if (p == 0) {
                continue;
            }
            w.push_back(p);
            parts.push_back(partial_trace(state_.blocks[z][i], keep));
        }
        return DensityMatrix::weighted_sum(w, parts);
    }
    DensityMatrix receivers_density(const std::vector<Bell> &bell) const {
        std::vector<double> w;
        std::vector<StateVector> joint;
        for (int z = 0; z < 2; z++) {
            double p = std::norm(state_.weight[z]);
            if (p == 0) {
                continue;
            }
            w.push_back(p);
            joint.push_back(branch_receivers(z, bell));
        }
        return DensityMatrix::mixture(w, joint);
    }
    StateVector receivers_after(const OutcomeRecord &outcome) const {
        return branch_receivers(*outcome.z, outcome.bell);
    }

  private:
    StateVector branch_receivers(int z, const std::vector<Bell> &bell) const {
        std::optional<StateVector> joint;
        for (std::size_t i = 0; i < state_.senders(); i++) {
            StateVector r = block_receiver(state_.blocks[z][i], bell[2 * i], bell[2 * i + 1]);
            joint = joint ? tensor(*joint, r) : r;
        }
        joint->normalize();
        return *joint;
    }
    std::pair<QubitId, QubitId> site(std::size_t m) const {
        return m % 2 == 0 ? std::pair{StructuredState::kMessage0, StructuredState::kSender0}
                          : std::pair{StructuredState::kMessage1, StructuredState::kSender1};
    }
    std::array<std::array<double, 4>, 2> branch_probabilities(std::size_t m) const {
        std::array<std::array<double, 4>, 2> per{};
        auto [a, b] = site(m);
        for (int z = 0; z < 2; z++) {
            if (state_.weight[z] != Amp{}) {
                per[z] = bell_probabilities(state_.blocks[z][m / 2], a, b);
            }
        }
        return per;
    }
    std::array<double, 4> totals(const std::array<std::array<double, 4>, 2> &per) const {
        std::array<double, 4> t{};
        for (int z = 0; z < 2; z++) {
            for (std::size_t k = 0; k < 4; k++) {
                t[k] += std::norm(state_.weight[z]) * per[z][k];
            }
        }
        return t;
    }
    BellResult collapse(std::size_t m, Bell outcome, const std::array<std::array<double, 4>, 2> &per) {
        std::size_t k = static_cast<std::size_t>(outcome);
        double p = totals(per)[k];
        if (p <= kImpossibleBranchProb) {
            throw ImpossibleBranchError("forced Bell outcome " + std::string(bell_symbol(outcome)) +
                                        " has probability " + std::to_string(p));
        }
        auto [a, b] = site(m);
        for (int z = 0; z < 2; z++) {
            if (state_.weight[z] == Amp{}) {
                continue;
            }
            if (per[z][k] <= kImpossibleBranchProb) {
                state_.weight[z] = 0;
                continue;
            }
            bsm(state_.blocks[z][m / 2], a, b, outcome);
            state_.weight[z] *= std::sqrt(per[z][k] / p);
        }
        return {outcome, p};
    }

    StructuredState state_;
    int z_ = 0;
};

template <typename Runner>
ProtocolReport drive(Runner runner, std::span<const InfoState> inputs, const Chooser &choose,
                     const std::vector<std::size_t> &order) {
    std::size_t s = inputs.size();
    ProtocolReport rep;
    rep.outcome.bell.resize(2 * s);
    double prob = 1;
    for (std::size_t m : order) {
        BellResult r = choose.forced ? runner.bell(m, choose.forced->bell[m]) : runner.bell(m, *choose.rng);
        rep.outcome.bell[m] = r.outcome;
        prob *= r.probability;
    }
    MeasureResult zr = choose.forced ? runner.controller(*choose.forced->z) : runner.controller(*choose.rng);
    rep.outcome.z = zr.bit;
    prob *= zr.probability;
    rep.branch_probability = prob;

    for (std::size_t i = 0; i < s; i++) {
        runner.correct(i, table_lookup(kReceivers[i], rep.outcome.key(i)));
        rep.fidelity.push_back(runner.receiver_density(i).expectation(inputs[i].to_state()));
    }

    for (std::size_t m = 0; m < 2 * s; m++) {
        rep.transcript.push_back({kSenders[m / 2], kReceivers[m / 2], rep.outcome.bell[m]});
    }
    for (std::size_t i = 0; i < s; i++) {
        rep.transcript.push_back({Party::Elle, kReceivers[i], zr.bit});
    }
    for (const ClassicalMessage &msg : rep.transcript) {
        rep.classical_bits_sent += msg.bits();
    }
    return rep;
}

void check_forced(const OutcomeRecord &forced, std::size_t senders) {
    if (forced.bell.size() != 2 * senders) {
        throw std::invalid_argument("forced record has " + std::to_string(forced.bell.size()) +
                                    " Bell outcomes, expected " + std::to_string(2 * senders));
    }
    if (!forced.z || (*forced.z != 0 && *forced.z != 1)) {
        throw std::invalid_argument("forced record needs a controller bit of 0 or 1");
    }
}

} // namespace

// ---------------------------------------------------------------------------

std::string_view engine_name(Engine e) {
    return e == Engine::Dense ? "dense" : "structured";
}

Engine parse_engine(std::string_view s) {
    if (s == "dense") {
        return Engine::Dense;
    }
    if (s == "structured") {
        return Engine::Structured;
    }
    throw std::invalid_argument("unknown engine '" + std::string(s) + "' (expected dense or structured)");
}

CorrectionKey OutcomeRecord::key(std::size_t sender) const {
    if (!z) {
        throw std::logic_error("controller bit not measured yet");
    }
    return {bell.at(2 * sender), bell.at(2 * sender + 1), *z};
}

std::uint64_t OutcomeRecord::branch_index() const {
    std::uint64_t idx = 0;
    for (Bell b : bell) {
        idx = idx * 4 + static_cast<std::uint64_t>(b);
    }
    return idx * 2 + static_cast<std::uint64_t>(z.value_or(0));
}

OutcomeRecord OutcomeRecord::from_branch_index(std::size_t senders, std::uint64_t index) {
    check_senders(senders);
    if (index >= branch_count(senders)) {
        throw std::out_of_range("branch index out of range");
    }
    OutcomeRecord r;
    r.z = static_cast<int>(index % 2);
    index /= 2;
    r.bell.resize(2 * senders);
    for (std::size_t m = 2 * senders; m-- > 0;) {
        r.bell[m] = kAllBell[index % 4];
        index /= 4;
    }
    return r;
}

std::uint64_t branch_count(std::size_t senders) {
    return (std::uint64_t{1} << (4 * senders)) * 2;
}

int protocol_classical_bits(std::size_t senders) {
    return static_cast<int>(2 * (2 * senders) + senders);
}

ProtocolLayout ProtocolLayout::standard(std::size_t senders) {
    check_senders(senders);
    return {senders, ChannelLayout::standard(2 * senders)};
}

QubitId ProtocolLayout::message(std::size_t sender, int which) const {
    return QubitId(2 * sender + static_cast<std::size_t>(which));
}

QubitId ProtocolLayout::sender_channel(std::size_t sender, int which) const {
    int label = static_cast<int>(4 * sender) + (which == 0 ? 1 : 3);
    return QubitId(2 * senders + channel.by_label(label).index);
}

QubitId ProtocolLayout::receiver(std::size_t sender, int which) const {
    int label = static_cast<int>(4 * sender) + (which == 0 ? 2 : 4);
    return QubitId(2 * senders + channel.by_label(label).index);
}

QubitId ProtocolLayout::controller() const {
    return QubitId(2 * senders + channel.by_label(channel.controller_label()).index);
}

StateVector StructuredState::to_dense(DenseCap cap) const {
    std::size_t s = senders();
    cap.check(6 * s + 1);
    ProtocolLayout layout = ProtocolLayout::standard(s);
    // Block qubit k of sender i -> dense position.
    std::vector<std::size_t> new_position(6 * s + 1);
    for (std::size_t i = 0; i < s; i++) {
        new_position[6 * i + 0] = layout.message(i, 0).index;
        new_position[6 * i + 1] = layout.message(i, 1).index;
        new_position[6 * i + 2] = layout.sender_channel(i, 0).index;
        new_position[6 * i + 3] = layout.receiver(i, 0).index;
        new_position[6 * i + 4] = layout.sender_channel(i, 1).index;
        new_position[6 * i + 5] = layout.receiver(i, 1).index;
    }
    new_position[6 * s] = layout.controller().index;

    std::vector<Amp> total(std::uint64_t{1} << (6 * s + 1));
    for (int z = 0; z < 2; z++) {
        if (weight[z] == Amp{}) {
            continue;
        }
        StateVector prod = blocks[z][0];
        for (std::size_t i = 1; i < s; i++) {
            prod = tensor(prod, blocks[z][i]);
        }
        prod = tensor(prod, StateVector::basis(1, static_cast<std::uint64_t>(z)));
        StateVector placed = permute_qubits(prod, new_position);
        auto a = placed.amplitudes();
        for (std::uint64_t k = 0; k < a.size(); k++) {
            total[k] += weight[z] * a[k];
        }
    }
    return StateVector::from_amplitudes(std::move(total), cap);
}

StateVector assemble_dense(std::span<const InfoState> inputs, DenseCap cap) {
    check_senders(inputs.size());
    return assemble_dense(inputs, ChannelLayout::standard(2 * inputs.size()), cap);
}

StateVector assemble_dense(std::span<const InfoState> inputs, const ChannelLayout &layout, DenseCap cap) {
    std::size_t s = inputs.size();
    check_senders(s);
    if (layout.n_pairs() != 2 * s) {
        throw std::invalid_argument("channel layout must have two pairs per sender");
    }
    cap.check(6 * s + 1);
    StateVector messages = inputs[0].to_state();
    for (std::size_t i = 1; i < s; i++) {
        messages = tensor(messages, inputs[i].to_state());
    }
    StateVector channel = relabel(build_channel_analytic(2 * s, +1, DenseCap::large()), layout);
    return tensor(messages, channel);
}

StructuredState assemble_structured(std::span<const InfoState> inputs) {
    check_senders(inputs.size());
    StructuredState st;
    st.weight = {kInvSqrt2, kInvSqrt2};
    const std::array<Bell, 2> pair_kind = {Bell::KappaPlus, Bell::LambdaMinus};
    for (int z = 0; z < 2; z++) {
        StateVector pairs = tensor(bell_state(pair_kind[z]), bell_state(pair_kind[z]));
        for (const InfoState &in : inputs) {
            st.blocks[z].push_back(tensor(in.to_state(), pairs));
        }
    }
    return st;
}

ProtocolReport run_protocol(std::span<const InfoState> inputs, const OutcomeRecord &forced, const RunOptions &opts) {
    check_senders(inputs.size());
    check_forced(forced, inputs.size());
    Chooser c{&forced, nullptr};
    auto order = bsm_sequence(opts, inputs.size());
    if (opts.engine == Engine::Dense) {
        return drive(DenseRunner(inputs, opts), inputs, c, order);
    }
    return drive(StructuredRunner(inputs), inputs, c, order);
}

ProtocolReport run_protocol(std::span<const InfoState> inputs, Rng &rng, const RunOptions &opts) {
    check_senders(inputs.size());
    Chooser c{nullptr, &rng};
    auto order = bsm_sequence(opts, inputs.size());
    if (opts.engine == Engine::Dense) {
        return drive(DenseRunner(inputs, opts), inputs, c, order);
    }
    return drive(StructuredRunner(inputs), inputs, c, order);
}

namespace {

template <typename Runner>
std::vector<ProtocolReport> enumerate(const Runner &prototype, std::span<const InfoState> inputs,
                                      const RunOptions &opts) {
    std::size_t s = inputs.size();
    std::uint64_t n = branch_count(s);
    auto order = bsm_sequence(opts, s);
    std::vector<ProtocolReport> out(n);
    unsigned workers = std::max(1u, opts.workers);
    std::vector<std::exception_ptr> errors(workers);
    auto work = [&](unsigned w) {
        try {
            for (std::uint64_t b = w; b < n; b += workers) {
                OutcomeRecord rec = OutcomeRecord::from_branch_index(s, b);
                out[b] = drive(prototype, inputs, Chooser{&rec, nullptr}, order);
            }
        } catch (...) {
            errors[w] = std::current_exception();
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; w++) {
            pool.emplace_back(work, w);
        }
        for (std::thread &t : pool) {
            t.join();
        }
    }
    for (const auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return out;
}

} // namespace

std::vector<ProtocolReport> run_exhaustive(std::span<const InfoState> inputs, const RunOptions &opts) {
    check_senders(inputs.size());
    if (opts.engine == Engine::Dense) {
        return enumerate(DenseRunner(inputs, opts), inputs, opts);
    }
    return enumerate(StructuredRunner(inputs), inputs, opts);
}

namespace {

template <typename Runner>
void force_bells(Runner &runner, std::span<const Bell> bell, const RunOptions &opts) {
    auto order = bsm_sequence(opts, bell.size() / 2);
    for (std::size_t m : order) {
        runner.bell(m, bell[m]);
    }
}

void check_bells(std::span<const InfoState> inputs, std::span<const Bell> bell) {
    check_senders(inputs.size());
    if (bell.size() != 2 * inputs.size()) {
        throw std::invalid_argument("expected two Bell outcomes per sender");
    }
}

} // namespace

StateVector receiver_state(std::span<const InfoState> inputs, const OutcomeRecord &outcome, const RunOptions &opts) {
    check_senders(inputs.size());
    check_forced(outcome, inputs.size());
    if (opts.engine == Engine::Dense) {
        DenseRunner r(inputs, opts);
        force_bells(r, outcome.bell, opts);
        r.controller(*outcome.z);
        StateVector v = r.receivers_after(outcome);
        v.normalize();
        return v;
    }
    StructuredRunner r(inputs);
    force_bells(r, outcome.bell, opts);
    r.controller(*outcome.z);
    return r.receivers_after(outcome);
}

DensityMatrix pre_broadcast_state(std::span<const InfoState> inputs, std::span<const Bell> bell_outcomes,
                                  const RunOptions &opts) {
    check_bells(inputs, bell_outcomes);
    if (opts.engine == Engine::Dense) {
        DenseRunner r(inputs, opts);
        force_bells(r, bell_outcomes, opts);
        return r.receivers_density();
    }
    StructuredRunner r(inputs);
    force_bells(r, bell_outcomes, opts);
    return r.receivers_density(std::vector<Bell>(bell_outcomes.begin(), bell_outcomes.end()));
}

std::vector<double> fidelity_without_controller(std::span<const InfoState> inputs,
                                                std::span<const Bell> bell_outcomes, int assumed_z,
                                                const RunOptions &opts) {
    check_bells(inputs, bell_outcomes);
    OutcomeRecord rec{std::vector<Bell>(bell_outcomes.begin(), bell_outcomes.end()), assumed_z};
    auto score = [&](auto &runner) {
        force_bells(runner, bell_outcomes, opts);
        std::vector<double> f;
        for (std::size_t i = 0; i < inputs.size(); i++) {
            DensityMatrix rho = runner.receiver_density(i);
            CorrectionEntry e = table_lookup(kReceivers[i], rec.key(i));
            auto word = e.word(QubitId(0), QubitId(1));
            rho.conjugate_pauli_word(word);
            f.push_back(rho.expectation(inputs[i].to_state()));
        }
        return f;
    };
    if (opts.engine == Engine::Dense) {
        DenseRunner r(inputs, opts);
        return score(r);
    }
    StructuredRunner r(inputs);
    return score(r);
}

namespace {

/// U|message> for the published correction of receiver i under `key`.
StateVector term_receiver(std::size_t i, const CorrectionKey &key, const InfoState &in) {
    return apply_unitary4(correction_unitary(table_lookup(kReceivers[i], key)), in.to_state());
}

} // namespace

Amp expansion_coefficient_structured(std::span<const InfoState> inputs, const OutcomeRecord &term) {
    check_senders(inputs.size());
    check_forced(term, inputs.size());
    StructuredState st = assemble_structured(inputs);
    int z = *term.z;
    Amp c = st.weight[z];
    for (std::size_t i = 0; i < inputs.size(); i++) {
        StateVector r = block_receiver(st.blocks[z][i], term.bell[2 * i], term.bell[2 * i + 1]);
        c *= overlap(term_receiver(i, term.key(i), inputs[i]), r);
    }
    return c;
}

Amp expansion_coefficient_dense(std::span<const InfoState> inputs, const OutcomeRecord &term, DenseCap cap) {
    check_senders(inputs.size());
    check_forced(term, inputs.size());
    RunOptions opts;
    opts.engine = Engine::Dense;
    opts.cap = cap;
    // No measurement here: project the untouched global state.
    DenseRunner r(inputs, opts);
    StateVector receivers = r.receivers_after(term);
    std::optional<StateVector> target;
    for (std::size_t i = 0; i < inputs.size(); i++) {
        StateVector t = term_receiver(i, term.key(i), inputs[i]);
        target = target ? tensor(*target, t) : t;
    }
    return overlap(*target, receivers);
}

ExpansionSummary expansion_coefficients(std::span<const InfoState> inputs) {
    std::size_t s = inputs.size();
    check_senders(s);
    StructuredState st = assemble_structured(inputs);
    // factor[z][i][g*4+h]
    std::array<std::vector<std::array<Amp, 16>>, 2> factor;
    for (int z = 0; z < 2; z++) {
        factor[z].resize(s);
        for (std::size_t i = 0; i < s; i++) {
            for (std::size_t gh = 0; gh < 16; gh++) {
                CorrectionKey key{kAllBell[gh / 4], kAllBell[gh % 4], z};
                StateVector r = block_receiver(st.blocks[z][i], key.g, key.h);
                factor[z][i][gh] = overlap(term_receiver(i, key, inputs[i]), r);
            }
        }
    }
    ExpansionSummary sum;
    sum.senders = s;
    sum.min_abs = std::numeric_limits<double>::infinity();
    std::uint64_t per_branch = std::uint64_t{1} << (4 * s);
    for (int z = 0; z < 2; z++) {
        for (std::uint64_t t = 0; t < per_branch; t++) {
            Amp c = st.weight[z];
            std::uint64_t rest = t;
            for (std::size_t i = s; i-- > 0;) {
                c *= factor[z][i][rest % 16];
                rest /= 16;
            }
            double a = std::abs(c);
            sum.min_abs = std::min(sum.min_abs, a);
            sum.max_abs = std::max(sum.max_abs, a);
            sum.sum_squares += a * a;
            sum.terms++;
        }
    }
    return sum;
}

} // namespace mcqt
