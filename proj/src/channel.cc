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

#include "mcqt/channel.h"

#include <numbers>

namespace mcqt {

namespace {

constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;
constexpr std::string_view kSenderRoles = "ABCD";
constexpr std::string_view kReceiverRoles = "PQRSTUVW";

void check_pairs(std::size_t n_pairs, DenseCap cap) {
    if (n_pairs == 0) {
        throw std::invalid_argument("channel needs at least one pair");
    }
    cap.check(2 * n_pairs + 1);
}

QubitId label_qubit(int label) {
    return QubitId(static_cast<std::size_t>(label - 1));
}

} // namespace

StateVector bell_state(Bell kind) {
    std::vector<Amp> a(4);
    switch (kind) {
    case Bell::KappaPlus:
        a[ket_index("00")] = kInvSqrt2;
        a[ket_index("11")] = kInvSqrt2;
        break;
    case Bell::KappaMinus:
        a[ket_index("00")] = kInvSqrt2;
        a[ket_index("11")] = -kInvSqrt2;
        break;
    case Bell::LambdaPlus:
        a[ket_index("01")] = kInvSqrt2;
        a[ket_index("10")] = kInvSqrt2;
        break;
    case Bell::LambdaMinus:
        a[ket_index("01")] = kInvSqrt2;
        a[ket_index("10")] = -kInvSqrt2;
        break;
    }
    return StateVector::from_amplitudes(std::move(a));
}

ChannelLayout::ChannelLayout(std::size_t n_pairs, std::vector<std::size_t> position)
    : n_pairs_(n_pairs), position_(std::move(position)) {
    if (n_pairs_ % 2 != 0 || n_pairs_ > 8) {
        return;
    }
    for (std::size_t i = 0; i < n_pairs_ / 2; i++) {
        int base = static_cast<int>(4 * i);
        std::string sender(1, kSenderRoles[i]);
        role_to_label_[sender] = base + 1;
        role_to_label_[sender + "'"] = base + 3;
        role_to_label_[std::string(1, kReceiverRoles[2 * i])] = base + 2;
        role_to_label_[std::string(1, kReceiverRoles[2 * i + 1])] = base + 4;
    }
    role_to_label_["E"] = controller_label();
}

ChannelLayout ChannelLayout::standard(std::size_t n_pairs) {
    if (n_pairs == 0) {
        throw std::invalid_argument("channel needs at least one pair");
    }
    std::vector<std::size_t> pos(2 * n_pairs + 1);
    for (std::size_t k = 0; k < pos.size(); k++) {
        pos[k] = k;
    }
    return ChannelLayout(n_pairs, std::move(pos));
}

ChannelLayout ChannelLayout::from_positions(std::size_t n_pairs, const std::map<int, std::size_t> &label_to_position) {
    if (n_pairs == 0) {
        throw std::invalid_argument("channel needs at least one pair");
    }
    std::size_t n = 2 * n_pairs + 1;
    if (label_to_position.size() != n) {
        throw std::invalid_argument("layout must place every one of the " + std::to_string(n) + " channel labels");
    }
    std::vector<std::size_t> pos(n);
    std::vector<bool> used(n, false);
    for (const auto &[label, p] : label_to_position) {
        if (label < 1 || static_cast<std::size_t>(label) > n) {
            throw std::invalid_argument("channel label " + std::to_string(label) + " out of range");
        }
        if (p >= n || used[p]) {
            throw std::invalid_argument("layout is not a bijection onto register positions");
        }
        used[p] = true;
        pos[static_cast<std::size_t>(label - 1)] = p;
    }
    return ChannelLayout(n_pairs, std::move(pos));
}

QubitId ChannelLayout::by_label(int label) const {
    if (label < 1 || static_cast<std::size_t>(label) > num_qubits()) {
        throw std::out_of_range("channel label " + std::to_string(label) + " out of range");
    }
    return QubitId(position_[static_cast<std::size_t>(label - 1)]);
}

QubitId ChannelLayout::by_role(const std::string &role) const {
    auto it = role_to_label_.find(role);
    if (it == role_to_label_.end()) {
        throw std::out_of_range("no qubit with role '" + role + "' in a " + std::to_string(n_pairs_) +
                                "-pair layout");
    }
    return by_label(it->second);
}

int circuit_branch_sign(std::size_t n_pairs) {
    return n_pairs % 2 == 0 ? 1 : -1;
}

StateVector prepare_ghz_stage(std::size_t n_pairs, DenseCap cap) {
    check_pairs(n_pairs, cap);
    std::size_t n = 2 * n_pairs + 1;
    StateVector s = StateVector::basis(n, 0, cap);
    QubitId controller = label_qubit(static_cast<int>(n));
    s.apply(Gate1::H, controller);
    for (std::size_t label = 1; label < n; label++) {
        s.apply_cnot(controller, label_qubit(static_cast<int>(label)));
    }
    return s;
}

StateVector prepare_channel_circuit(std::size_t n_pairs, DenseCap cap) {
    StateVector s = prepare_ghz_stage(n_pairs, cap);
    for (std::size_t j = 0; j < n_pairs; j++) {
        s.apply(Gate1::H, label_qubit(static_cast<int>(2 * j + 2)));
    }
    // Listed from the last pair down, matching the circuit figure; the
    // CNOTs act on disjoint pairs so order does not matter.
    for (std::size_t j = n_pairs; j-- > 0;) {
        s.apply_cnot(label_qubit(static_cast<int>(2 * j + 2)), label_qubit(static_cast<int>(2 * j + 1)));
    }
    return s;
}

StateVector build_channel_analytic(std::size_t n_pairs, int branch_sign, DenseCap cap) {
    check_pairs(n_pairs, cap);
    if (branch_sign != 1 && branch_sign != -1) {
        throw std::invalid_argument("branch sign must be +1 or -1");
    }
    StateVector zero_branch = bell_state(Bell::KappaPlus);
    StateVector one_branch = bell_state(Bell::LambdaMinus);
    for (std::size_t j = 1; j < n_pairs; j++) {
        zero_branch = tensor(zero_branch, bell_state(Bell::KappaPlus));
        one_branch = tensor(one_branch, bell_state(Bell::LambdaMinus));
    }
    zero_branch = tensor(zero_branch, StateVector::basis(1, 0));
    one_branch = tensor(one_branch, StateVector::basis(1, 1));
    auto a = zero_branch.amplitudes();
    auto b = one_branch.amplitudes();
    std::vector<Amp> out(a.size());
    for (std::size_t i = 0; i < out.size(); i++) {
        out[i] = (a[i] + static_cast<double>(branch_sign) * b[i]) * kInvSqrt2;
    }
    return StateVector::from_amplitudes(std::move(out), cap);
}

StateVector relabel(const StateVector &channel, const ChannelLayout &layout) {
    if (channel.num_qubits() != layout.num_qubits()) {
        throw std::invalid_argument("layout has " + std::to_string(layout.num_qubits()) + " qubits but state has " +
                                    std::to_string(channel.num_qubits()));
    }
    auto pos = layout.positions();
    return permute_qubits(channel, pos);
}

} // namespace mcqt
