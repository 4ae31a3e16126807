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

#ifndef MCQT_PROTOCOL_H
#define MCQT_PROTOCOL_H

#include <array>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "mcqt/channel.h"
#include "mcqt/corrections.h"
#include "mcqt/density_matrix.h"
#include "mcqt/info_state.h"
#include "mcqt/party.h"
#include "mcqt/statevector.h"

namespace mcqt {

// Controlled multi-party teleportation: s senders (1..4) each teleport a
// two-qubit message to their receiver over a 2s-pair channel plus one
// controller qubit. Each sender makes two Bell measurements, one per
// message qubit; the controller then measures its qubit and every receiver
// applies the Pauli correction keyed by (g, h, z).
//
// Register layout of the dense engine, for s senders:
//   0 .. 2s-1    message qubits, sender i at (2i, 2i+1)
//   2s .. 6s     the channel in ChannelLayout order (label L at 2s + L - 1
//                for the standard layout)
// so that, e.g., for the full protocol qubits are
//   p q r s t u v w A P A' Q B R B' S C T C' U D V D' W E.

enum class Engine : std::uint8_t { Dense, Structured };

std::string_view engine_name(Engine e);
Engine parse_engine(std::string_view s);

/// Outcomes in canonical order: bell[2i] and bell[2i+1] are sender i's
/// measurements on (first message qubit, A-type qubit) and (second message
/// qubit, A'-type qubit). z is the controller bit once measured.
struct OutcomeRecord {
    std::vector<Bell> bell;
    std::optional<int> z;

    std::size_t senders() const {
        return bell.size() / 2;
    }
    CorrectionKey key(std::size_t sender) const;
    /// Canonical branch index: digits (bell[0], ..., bell[2s-1]) base 4,
    /// then z as the least significant binary digit.
    std::uint64_t branch_index() const;
    static OutcomeRecord from_branch_index(std::size_t senders, std::uint64_t index);
    friend bool operator==(const OutcomeRecord &, const OutcomeRecord &) = default;
};

std::uint64_t branch_count(std::size_t senders);

struct ClassicalMessage {
    Party from;
    Party to;
    std::variant<Bell, int> payload; // Bell outcome (2 bits) or controller bit

    int bits() const {
        return std::holds_alternative<Bell>(payload) ? 2 : 1;
    }
    friend bool operator==(const ClassicalMessage &, const ClassicalMessage &) = default;
};

struct ProtocolReport {
    OutcomeRecord outcome;
    double branch_probability = 0;
    std::vector<double> fidelity; // one per receiver
    std::vector<ClassicalMessage> transcript;
    int classical_bits_sent = 0;
};

/// Bits on the classical channel for s senders: 2 per Bell measurement plus
/// one controller bit per receiver.
int protocol_classical_bits(std::size_t senders);

struct RunOptions {
    Engine engine = Engine::Structured;
    DenseCap cap = DenseCap::standard();
    /// Execution order of the 2s Bell measurements (a permutation of
    /// 0..2s-1); empty means canonical. Reports are always canonical.
    std::vector<std::size_t> bsm_order;
    /// Worker threads for exhaustive enumeration.
    unsigned workers = 1;
    /// Channel placement for the dense engine; standard when unset.
    std::optional<ChannelLayout> layout;
};

/// Qubit ids of the dense register for s senders.
struct ProtocolLayout {
    std::size_t senders;
    ChannelLayout channel;

    static ProtocolLayout standard(std::size_t senders);
    std::size_t num_qubits() const {
        return 6 * senders + 1;
    }
    QubitId message(std::size_t sender, int which) const;
    QubitId sender_channel(std::size_t sender, int which) const;
    QubitId receiver(std::size_t sender, int which) const;
    QubitId controller() const;
};

/// Per-branch factorization of the global state. Conditioned on the
/// controller bit z the channel is a product of Bell pairs, so the global
/// state is sum_z weight[z] (block[z][0] (x) ... (x) block[z][s-1]) |z>.
/// Each block is 6 qubits: message (0, 1), then A P A' Q at 2..5.
struct StructuredState {
    std::array<Amp, 2> weight;
    std::array<std::vector<StateVector>, 2> blocks;

    static constexpr QubitId kMessage0{0};
    static constexpr QubitId kMessage1{1};
    static constexpr QubitId kSender0{2};
    static constexpr QubitId kReceiver0{3};
    static constexpr QubitId kSender1{4};
    static constexpr QubitId kReceiver1{5};

    std::size_t senders() const {
        return blocks[0].size();
    }
    /// Dense equivalent in ProtocolLayout::standard order.
    StateVector to_dense(DenseCap cap = DenseCap::large()) const;
};

StateVector assemble_dense(std::span<const InfoState> inputs, DenseCap cap = DenseCap::standard());
StateVector assemble_dense(std::span<const InfoState> inputs, const ChannelLayout &layout, DenseCap cap);
StructuredState assemble_structured(std::span<const InfoState> inputs);

/// One run with every outcome forced. `forced.z` must be set.
ProtocolReport run_protocol(std::span<const InfoState> inputs, const OutcomeRecord &forced,
                            const RunOptions &opts = {});
/// One run with outcomes drawn from `rng`.
ProtocolReport run_protocol(std::span<const InfoState> inputs, Rng &rng, const RunOptions &opts = {});
/// Every branch, ordered by canonical branch index. Dense enumeration for
/// more than two senders requires a large cap.
std::vector<ProtocolReport> run_exhaustive(std::span<const InfoState> inputs, const RunOptions &opts = {});

/// Joint state of the receivers (P Q R S ... order) after the forced
/// measurements, before any correction. `outcome.z` must be set. The
/// phase is that of (<Bell outcomes| <z|) applied to the global state.
StateVector receiver_state(std::span<const InfoState> inputs, const OutcomeRecord &outcome,
                           const RunOptions &opts = {});

/// Receivers' density matrix after the Bell measurements but before the
/// controller's bit is known.
DensityMatrix pre_broadcast_state(std::span<const InfoState> inputs, std::span<const Bell> bell_outcomes,
                                  const RunOptions &opts = {});

/// Per-receiver fidelity when each receiver applies the correction for
/// `assumed_z` to the pre-broadcast state without waiting for the
/// controller.
std::vector<double> fidelity_without_controller(std::span<const InfoState> inputs,
                                                std::span<const Bell> bell_outcomes, int assumed_z,
                                                const RunOptions &opts = {});

/// Expansion of the global state over all (Bell outcomes, z) terms, each
/// term being Bell pairs (x) U|message> per receiver (x) |z> with U the
/// published correction. Coefficients are computed with the structured
/// factorization.
struct ExpansionSummary {
    std::size_t senders = 0;
    std::uint64_t terms = 0;
    double min_abs = 0;
    double max_abs = 0;
    double sum_squares = 0;
};

ExpansionSummary expansion_coefficients(std::span<const InfoState> inputs);
/// Single coefficient for one term, by the dense route (contracting the
/// assembled global state). Used to cross-check the structured route.
Amp expansion_coefficient_dense(std::span<const InfoState> inputs, const OutcomeRecord &term,
                                DenseCap cap = DenseCap::standard());
Amp expansion_coefficient_structured(std::span<const InfoState> inputs, const OutcomeRecord &term);

} // namespace mcqt

#endif // MCQT_PROTOCOL_H
