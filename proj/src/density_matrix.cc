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

#include "mcqt/density_matrix.h"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace mcqt {

namespace {

std::uint64_t bit(std::size_t q) {
    return std::uint64_t{1} << q;
}

} // namespace

DensityMatrix DensityMatrix::pure(const StateVector &s) {
    double w = 1.0;
    return mixture(std::span<const double>(&w, 1), std::span<const StateVector>(&s, 1));
}

DensityMatrix DensityMatrix::mixture(std::span<const double> weights, std::span<const StateVector> states) {
    if (states.empty() || weights.size() != states.size()) {
        throw std::invalid_argument("mixture needs one weight per state and at least one state");
    }
    DensityMatrix rho(states[0].num_qubits());
    for (std::size_t k = 0; k < states.size(); k++) {
        if (states[k].num_qubits() != rho.n_qubits_) {
            throw std::invalid_argument("mixture states differ in qubit count");
        }
        auto a = states[k].amplitudes();
        for (std::uint64_t i = 0; i < rho.dim_; i++) {
            Amp ai = weights[k] * a[i];
            if (ai == Amp{}) {
                continue;
            }
            for (std::uint64_t j = 0; j < rho.dim_; j++) {
                rho.entries_[i * rho.dim_ + j] += ai * std::conj(a[j]);
            }
        }
    }
    return rho;
}

DensityMatrix DensityMatrix::weighted_sum(std::span<const double> weights, std::span<const DensityMatrix> parts) {
    if (parts.empty() || weights.size() != parts.size()) {
        throw std::invalid_argument("weighted_sum needs one weight per matrix and at least one matrix");
    }
    DensityMatrix rho(parts[0].n_qubits_);
    for (std::size_t k = 0; k < parts.size(); k++) {
        if (parts[k].n_qubits_ != rho.n_qubits_) {
            throw std::invalid_argument("weighted_sum matrices differ in qubit count");
        }
        for (std::size_t e = 0; e < rho.entries_.size(); e++) {
            rho.entries_[e] += weights[k] * parts[k].entries_[e];
        }
    }
    return rho;
}

Amp DensityMatrix::trace() const {
    Amp t = 0;
    for (std::uint64_t i = 0; i < dim_; i++) {
        t += entries_[i * dim_ + i];
    }
    return t;
}

double DensityMatrix::hermiticity_error() const {
    double worst = 0;
    for (std::uint64_t i = 0; i < dim_; i++) {
        for (std::uint64_t j = i; j < dim_; j++) {
            worst = std::max(worst, std::abs(entries_[i * dim_ + j] - std::conj(entries_[j * dim_ + i])));
        }
    }
    return worst;
}

double DensityMatrix::min_eigenvalue() const {
    Eigen::MatrixXcd m(dim_, dim_);
    for (std::uint64_t i = 0; i < dim_; i++) {
        for (std::uint64_t j = 0; j < dim_; j++) {
            m(i, j) = entries_[i * dim_ + j];
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

double DensityMatrix::purity() const {
    // Tr(rho^2) = sum_ij |rho_ij|^2 for Hermitian rho.
    double t = 0;
    for (const Amp &e : entries_) {
        t += std::norm(e);
    }
    return t;
}

double DensityMatrix::expectation(const StateVector &psi) const {
    if (psi.num_qubits() != n_qubits_) {
        throw std::invalid_argument("expectation: state and density matrix differ in qubit count");
    }
    auto a = psi.amplitudes();
    Amp acc = 0;
    for (std::uint64_t i = 0; i < dim_; i++) {
        Amp row = 0;
        for (std::uint64_t j = 0; j < dim_; j++) {
            row += entries_[i * dim_ + j] * a[j];
        }
        acc += std::conj(a[i]) * row;
    }
    return std::clamp(acc.real(), 0.0, 1.0);
}

void DensityMatrix::conjugate_pauli_word(std::span<const PauliTerm> word) {
    // P rho P^dagger, with P a signed permutation: (P rho P^dag)_{P(i),P(j)} =
    // s(i) rho_ij conj(s(j)). Build P's action on basis vectors through a
    // StateVector so the sign conventions stay in one place.
    std::vector<std::uint64_t> image(dim_);
    std::vector<Amp> sign(dim_);
    for (std::uint64_t i = 0; i < dim_; i++) {
        StateVector e = StateVector::basis(n_qubits_, i, DenseCap::large());
        e.apply_pauli_word(word);
        auto a = e.amplitudes();
        auto it = std::find_if(a.begin(), a.end(), [](const Amp &x) { return x != Amp{}; });
        image[i] = static_cast<std::uint64_t>(it - a.begin());
        sign[i] = *it;
    }
    std::vector<Amp> out(entries_.size());
    for (std::uint64_t i = 0; i < dim_; i++) {
        for (std::uint64_t j = 0; j < dim_; j++) {
            out[image[i] * dim_ + image[j]] = sign[i] * entries_[i * dim_ + j] * std::conj(sign[j]);
        }
    }
    entries_ = std::move(out);
}

DensityMatrix partial_trace(const StateVector &s, std::span<const QubitId> keep) {
    if (keep.empty()) {
        throw std::invalid_argument("partial trace needs at least one kept qubit");
    }
    std::size_t n = s.num_qubits();
    std::uint64_t keep_mask = 0;
    for (QubitId q : keep) {
        if (q.index >= n) {
            throw std::out_of_range("kept qubit " + std::to_string(q.index) + " out of range");
        }
        if (keep_mask & bit(q.index)) {
            throw std::invalid_argument("kept qubit listed twice");
        }
        keep_mask |= bit(q.index);
    }
    std::vector<std::size_t> traced;
    for (std::size_t k = 0; k < n; k++) {
        if (!(keep_mask & bit(k))) {
            traced.push_back(k);
        }
    }

    DensityMatrix rho(keep.size());
    std::uint64_t dim = rho.dim_;
    std::vector<std::uint64_t> keep_offset(dim);
    for (std::uint64_t i = 0; i < dim; i++) {
        std::uint64_t off = 0;
        for (std::size_t j = 0; j < keep.size(); j++) {
            if (i & bit(j)) {
                off |= bit(keep[j].index);
            }
        }
        keep_offset[i] = off;
    }

    auto amps = s.amplitudes();
    std::vector<Amp> slice(dim);
    std::uint64_t n_env = bit(traced.size());
    for (std::uint64_t e = 0; e < n_env; e++) {
        std::uint64_t base = 0;
        for (std::size_t j = 0; j < traced.size(); j++) {
            if (e & bit(j)) {
                base |= bit(traced[j]);
            }
        }
        bool any = false;
        for (std::uint64_t i = 0; i < dim; i++) {
            slice[i] = amps[base | keep_offset[i]];
            any = any || slice[i] != Amp{};
        }
        if (!any) {
            continue;
        }
        for (std::uint64_t i = 0; i < dim; i++) {
            if (slice[i] == Amp{}) {
                continue;
            }
            for (std::uint64_t j = 0; j < dim; j++) {
                rho.entries_[i * dim + j] += slice[i] * std::conj(slice[j]);
            }
        }
    }
    return rho;
}

double max_abs_diff(const DensityMatrix &a, const DensityMatrix &b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw std::invalid_argument("comparing density matrices of different sizes");
    }
    double worst = 0;
    for (std::uint64_t i = 0; i < a.dim(); i++) {
        for (std::uint64_t j = 0; j < a.dim(); j++) {
            worst = std::max(worst, std::abs(a(i, j) - b(i, j)));
        }
    }
    return worst;
}

} // namespace mcqt
