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

#include "mcqt/statevector.h"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace mcqt {

namespace {

constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

std::uint64_t bit(std::size_t q) {
    return std::uint64_t{1} << q;
}

/// Zeroes every amplitude whose bit q differs from `value`.
void project_bit(std::vector<Amp> &amps, std::size_t q, int value) {
    std::uint64_t mask = bit(q);
    std::uint64_t want = value ? mask : 0;
    for (std::uint64_t i = 0; i < amps.size(); i++) {
        if ((i & mask) != want) {
            amps[i] = 0;
        }
    }
}

double prob_bit(std::span<const Amp> amps, std::size_t q, int value) {
    std::uint64_t mask = bit(q);
    std::uint64_t want = value ? mask : 0;
    double p = 0;
    for (std::uint64_t i = 0; i < amps.size(); i++) {
        if ((i & mask) == want) {
            p += std::norm(amps[i]);
        }
    }
    return p;
}

void require_distinct(QubitId a, QubitId b) {
    if (a == b) {
        throw std::invalid_argument("two-qubit operation needs distinct qubits, got " + std::to_string(a.index) +
                                    " twice");
    }
}

} // namespace

void DenseCap::check(std::size_t n_qubits) const {
    if (n_qubits > max_qubits) {
        throw SizeCapError("dense state of " + std::to_string(n_qubits) + " qubits exceeds cap of " +
                           std::to_string(max_qubits) + (max_qubits < kLargeQubits ? " (large states need opt-in)" : ""));
    }
}

std::string_view bell_symbol(Bell b) {
    switch (b) {
    case Bell::KappaPlus:
        return "k+";
    case Bell::KappaMinus:
        return "k-";
    case Bell::LambdaPlus:
        return "l+";
    case Bell::LambdaMinus:
        return "l-";
    }
    throw std::invalid_argument("bad Bell value");
}

Bell parse_bell_symbol(std::string_view s) {
    for (Bell b : kAllBell) {
        if (s == bell_symbol(b)) {
            return b;
        }
    }
    throw std::invalid_argument("unknown Bell symbol '" + std::string(s) + "' (expected k+, k-, l+ or l-)");
}

std::string_view pauli_name(PauliFactor f) {
    switch (f) {
    case PauliFactor::I:
        return "I";
    case PauliFactor::X:
        return "X";
    case PauliFactor::Z:
        return "Z";
    case PauliFactor::XZ:
        return "XZ";
    }
    throw std::invalid_argument("bad PauliFactor value");
}

std::array<Amp, 4> pauli_matrix(PauliFactor f) {
    switch (f) {
    case PauliFactor::I:
        return {1, 0, 0, 1};
    case PauliFactor::X:
        return {0, 1, 1, 0};
    case PauliFactor::Z:
        return {1, 0, 0, -1};
    case PauliFactor::XZ:
        // X * Z
        return {0, -1, 1, 0};
    }
    throw std::invalid_argument("bad PauliFactor value");
}

std::uint64_t ket_index(std::string_view bits) {
    std::uint64_t index = 0;
    for (std::size_t k = 0; k < bits.size(); k++) {
        if (bits[k] == '1') {
            index |= bit(k);
        } else if (bits[k] != '0') {
            throw std::invalid_argument("ket must contain only 0 and 1: " + std::string(bits));
        }
    }
    return index;
}

StateVector StateVector::basis(std::size_t n_qubits, std::uint64_t basis_index, DenseCap cap) {
    if (n_qubits == 0) {
        throw std::invalid_argument("state needs at least one qubit");
    }
    cap.check(n_qubits);
    if (basis_index >= bit(n_qubits)) {
        throw std::out_of_range("basis index " + std::to_string(basis_index) + " out of range for " +
                                std::to_string(n_qubits) + " qubits");
    }
    std::vector<Amp> amps(bit(n_qubits));
    amps[basis_index] = 1;
    return StateVector(n_qubits, std::move(amps));
}

StateVector StateVector::from_amplitudes(std::vector<Amp> amplitudes, DenseCap cap) {
    std::size_t n = 0;
    while (bit(n) < amplitudes.size()) {
        n++;
    }
    if (amplitudes.size() < 2 || bit(n) != amplitudes.size()) {
        throw std::invalid_argument("amplitude count must be a power of two >= 2, got " +
                                    std::to_string(amplitudes.size()));
    }
    cap.check(n);
    for (const Amp &a : amplitudes) {
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
            throw std::invalid_argument("amplitudes must be finite");
        }
    }
    return StateVector(n, std::move(amplitudes));
}

void StateVector::check_qubit(QubitId q) const {
    if (q.index >= n_qubits_) {
        throw std::out_of_range("qubit " + std::to_string(q.index) + " out of range for " +
                                std::to_string(n_qubits_) + "-qubit state");
    }
}

double StateVector::norm() const {
    double t = 0;
    for (const Amp &a : amps_) {
        t += std::norm(a);
    }
    return std::sqrt(t);
}

double StateVector::normalize() {
    double n = norm();
    if (n == 0) {
        throw std::domain_error("cannot normalize the zero vector");
    }
    scale(1.0 / n);
    return n;
}

void StateVector::scale(Amp factor) {
    for (Amp &a : amps_) {
        a *= factor;
    }
}

void StateVector::apply_matrix(const std::array<Amp, 4> &m, QubitId q) {
    check_qubit(q);
    std::uint64_t stride = bit(q.index);
    for (std::uint64_t base = 0; base < amps_.size(); base += 2 * stride) {
        for (std::uint64_t i = base; i < base + stride; i++) {
            Amp a0 = amps_[i];
            Amp a1 = amps_[i + stride];
            amps_[i] = m[0] * a0 + m[1] * a1;
            amps_[i + stride] = m[2] * a0 + m[3] * a1;
        }
    }
}

void StateVector::apply(Gate1 gate, QubitId q) {
    check_qubit(q);
    std::uint64_t stride = bit(q.index);
    for (std::uint64_t base = 0; base < amps_.size(); base += 2 * stride) {
        for (std::uint64_t i = base; i < base + stride; i++) {
            Amp &a0 = amps_[i];
            Amp &a1 = amps_[i + stride];
            switch (gate) {
            case Gate1::H: {
                Amp s = (a0 + a1) * kInvSqrt2;
                Amp d = (a0 - a1) * kInvSqrt2;
                a0 = s;
                a1 = d;
                break;
            }
            case Gate1::X:
                std::swap(a0, a1);
                break;
            case Gate1::Z:
                a1 = -a1;
                break;
            }
        }
    }
}

void StateVector::apply_cnot(QubitId control, QubitId target) {
    check_qubit(control);
    check_qubit(target);
    require_distinct(control, target);
    std::uint64_t c = bit(control.index);
    std::uint64_t t = bit(target.index);
    for (std::uint64_t i = 0; i < amps_.size(); i++) {
        if ((i & c) && !(i & t)) {
            std::swap(amps_[i], amps_[i | t]);
        }
    }
}

void StateVector::apply_pauli(PauliFactor factor, QubitId q) {
    switch (factor) {
    case PauliFactor::I:
        check_qubit(q);
        break;
    case PauliFactor::X:
        apply(Gate1::X, q);
        break;
    case PauliFactor::Z:
        apply(Gate1::Z, q);
        break;
    case PauliFactor::XZ:
        apply(Gate1::Z, q);
        apply(Gate1::X, q);
        break;
    }
}

void StateVector::apply_pauli_word(std::span<const PauliTerm> word) {
    for (const PauliTerm &t : word) {
        apply_pauli(t.factor, t.qubit);
    }
}

double StateVector::probability_one(QubitId q) const {
    check_qubit(q);
    return prob_bit(amps_, q.index, 1);
}

StateVector tensor(const StateVector &low, const StateVector &high) {
    std::vector<Amp> out(low.size() * high.size());
    for (std::uint64_t h = 0; h < high.size(); h++) {
        for (std::uint64_t l = 0; l < low.size(); l++) {
            out[(h << low.n_qubits_) | l] = low.amps_[l] * high.amps_[h];
        }
    }
    return StateVector(low.n_qubits_ + high.n_qubits_, std::move(out));
}

StateVector permute_qubits(const StateVector &s, std::span<const std::size_t> new_position) {
    std::size_t n = s.n_qubits_;
    if (new_position.size() != n) {
        throw std::invalid_argument("permutation size " + std::to_string(new_position.size()) +
                                    " does not match qubit count " + std::to_string(n));
    }
    std::vector<bool> seen(n, false);
    for (std::size_t p : new_position) {
        if (p >= n || seen[p]) {
            throw std::invalid_argument("qubit relabeling is not a bijection");
        }
        seen[p] = true;
    }
    std::vector<Amp> out(s.size());
    for (std::uint64_t i = 0; i < s.size(); i++) {
        std::uint64_t j = 0;
        for (std::size_t k = 0; k < n; k++) {
            if (i & bit(k)) {
                j |= bit(new_position[k]);
            }
        }
        out[j] = s.amps_[i];
    }
    return StateVector(n, std::move(out));
}

StateVector contract(const StateVector &s, std::span<const QubitId> qubits, const StateVector &bra) {
    if (qubits.size() != bra.n_qubits_) {
        throw std::invalid_argument("bra has " + std::to_string(bra.n_qubits_) + " qubits but " +
                                    std::to_string(qubits.size()) + " were named");
    }
    if (qubits.size() >= s.n_qubits_) {
        throw std::invalid_argument("contraction must leave at least one qubit");
    }
    std::uint64_t used = 0;
    for (QubitId q : qubits) {
        s.check_qubit(q);
        if (used & bit(q.index)) {
            throw std::invalid_argument("qubit listed twice in contraction");
        }
        used |= bit(q.index);
    }
    std::vector<std::size_t> rest;
    for (std::size_t k = 0; k < s.n_qubits_; k++) {
        if (!(used & bit(k))) {
            rest.push_back(k);
        }
    }
    std::vector<Amp> out(bit(rest.size()));
    for (std::uint64_t r = 0; r < out.size(); r++) {
        std::uint64_t base = 0;
        for (std::size_t j = 0; j < rest.size(); j++) {
            if (r & bit(j)) {
                base |= bit(rest[j]);
            }
        }
        Amp acc = 0;
        for (std::uint64_t b = 0; b < bra.size(); b++) {
            std::uint64_t idx = base;
            for (std::size_t j = 0; j < qubits.size(); j++) {
                if (b & bit(j)) {
                    idx |= bit(qubits[j].index);
                }
            }
            acc += std::conj(bra.amps_[b]) * s.amps_[idx];
        }
        out[r] = acc;
    }
    return StateVector(rest.size(), std::move(out));
}

Amp overlap(const StateVector &a, const StateVector &b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw std::invalid_argument("overlap of states with different qubit counts");
    }
    Amp acc = 0;
    auto x = a.amplitudes();
    auto y = b.amplitudes();
    for (std::uint64_t i = 0; i < x.size(); i++) {
        acc += std::conj(x[i]) * y[i];
    }
    return acc;
}

double fidelity(const StateVector &a, const StateVector &b) {
    return std::clamp(std::norm(overlap(a, b)), 0.0, 1.0);
}

double distance(const StateVector &a, const StateVector &b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw std::invalid_argument("distance between states with different qubit counts");
    }
    double t = 0;
    auto x = a.amplitudes();
    auto y = b.amplitudes();
    for (std::uint64_t i = 0; i < x.size(); i++) {
        t += std::norm(x[i] - y[i]);
    }
    return std::sqrt(t);
}

MeasureResult measure_qubit(StateVector &s, QubitId q, Rng &rng) {
    double p1 = s.probability_one(q);
    double p0 = prob_bit(s.amplitudes(), q.index, 0);
    std::uniform_real_distribution<double> u(0.0, p0 + p1);
    int b = u(rng) < p1 ? 1 : 0;
    // Rounding can land on an empty branch at the boundary.
    if ((b == 1 ? p1 : p0) <= kImpossibleBranchProb) {
        b ^= 1;
    }
    return measure_qubit(s, q, b);
}

MeasureResult measure_qubit(StateVector &s, QubitId q, int bit_value) {
    if (bit_value != 0 && bit_value != 1) {
        throw std::invalid_argument("measurement outcome must be 0 or 1");
    }
    double p = bit_value ? s.probability_one(q) : prob_bit(s.amplitudes(), q.index, 0);
    if (p <= kImpossibleBranchProb) {
        throw ImpossibleBranchError("forced outcome " + std::to_string(bit_value) + " on qubit " +
                                    std::to_string(q.index) + " has probability " + std::to_string(p));
    }
    project_bit(s.amps_, q.index, bit_value);
    s.scale(1.0 / std::sqrt(p));
    return {bit_value, p};
}

namespace {

std::array<double, 4> basis_changed_probabilities(const StateVector &t, QubitId a, QubitId b) {
    std::array<double, 4> probs{};
    std::uint64_t ma = bit(a.index);
    std::uint64_t mb = bit(b.index);
    auto amps = t.amplitudes();
    for (std::uint64_t i = 0; i < amps.size(); i++) {
        int k = ((i & ma) ? 1 : 0) + ((i & mb) ? 2 : 0);
        probs[static_cast<std::size_t>(kBellFromMeasuredBits[k])] += std::norm(amps[i]);
    }
    return probs;
}

void to_bell_frame(StateVector &s, QubitId a, QubitId b) {
    s.apply_cnot(a, b);
    s.apply(Gate1::H, a);
}

void from_bell_frame(StateVector &s, QubitId a, QubitId b) {
    s.apply(Gate1::H, a);
    s.apply_cnot(a, b);
}

} // namespace

std::array<double, 4> bell_probabilities(const StateVector &s, QubitId a, QubitId b) {
    require_distinct(a, b);
    StateVector t = s;
    to_bell_frame(t, a, b);
    return basis_changed_probabilities(t, a, b);
}

namespace {

/// Expects `s` already in the Bell frame of (a, b); leaves it in the
/// computational frame.
BellResult bsm_collapse(StateVector &s, QubitId a, QubitId b, Bell outcome, double p) {
    if (p <= kImpossibleBranchProb) {
        from_bell_frame(s, a, b);
        throw ImpossibleBranchError("forced Bell outcome " + std::string(bell_symbol(outcome)) + " on (" +
                                    std::to_string(a.index) + ", " + std::to_string(b.index) + ") has probability " +
                                    std::to_string(p));
    }
    int k = 0;
    while (kBellFromMeasuredBits[k] != outcome) {
        k++;
    }
    measure_qubit(s, a, k & 1);
    measure_qubit(s, b, (k >> 1) & 1);
    from_bell_frame(s, a, b);
    return {outcome, p};
}

} // namespace

BellResult bsm(StateVector &s, QubitId a, QubitId b, Rng &rng) {
    require_distinct(a, b);
    to_bell_frame(s, a, b);
    auto probs = basis_changed_probabilities(s, a, b);
    double total = probs[0] + probs[1] + probs[2] + probs[3];
    std::uniform_real_distribution<double> u(0.0, total);
    double x = u(rng);
    std::size_t pick = 3;
    for (std::size_t k = 0; k < 4; k++) {
        if (x < probs[k]) {
            pick = k;
            break;
        }
        x -= probs[k];
    }
    while (probs[pick] <= kImpossibleBranchProb) {
        pick = (pick + 3) % 4;
    }
    return bsm_collapse(s, a, b, kAllBell[pick], probs[pick]);
}

BellResult bsm(StateVector &s, QubitId a, QubitId b, Bell forced) {
    require_distinct(a, b);
    to_bell_frame(s, a, b);
    auto probs = basis_changed_probabilities(s, a, b);
    return bsm_collapse(s, a, b, forced, probs[static_cast<std::size_t>(forced)]);
}

} // namespace mcqt
