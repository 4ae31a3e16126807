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

#ifndef MCQT_DENSITY_MATRIX_H
#define MCQT_DENSITY_MATRIX_H

#include <span>
#include <vector>

#include "mcqt/statevector.h"

namespace mcqt {

/// Read-only mixed state over a handful of qubits, row-major 2^n x 2^n.
/// Produced by partial_trace or by mixing pure projectors; there is no
/// mixed-state evolution beyond Pauli conjugation.
class DensityMatrix {
  public:
    static DensityMatrix pure(const StateVector &s);
    /// weights[i] * |states[i]><states[i]|, summed. States must share a size.
    static DensityMatrix mixture(std::span<const double> weights, std::span<const StateVector> states);
    /// weights[i] * parts[i], summed. Parts must share a size.
    static DensityMatrix weighted_sum(std::span<const double> weights, std::span<const DensityMatrix> parts);

    std::size_t num_qubits() const {
        return n_qubits_;
    }
    std::uint64_t dim() const {
        return dim_;
    }
    Amp operator()(std::uint64_t row, std::uint64_t col) const {
        return entries_[row * dim_ + col];
    }

    Amp trace() const;
    /// max |rho_ij - conj(rho_ji)|
    double hermiticity_error() const;
    double min_eigenvalue() const;
    /// Tr(rho^2).
    double purity() const;
    /// <psi|rho|psi>.
    double expectation(const StateVector &psi) const;

    /// rho -> P rho P^dagger for a Pauli word P.
    void conjugate_pauli_word(std::span<const PauliTerm> word);

  private:
    DensityMatrix(std::size_t n) : n_qubits_(n), dim_(std::uint64_t{1} << n), entries_(dim_ * dim_) {
    }

    friend DensityMatrix partial_trace(const StateVector &s, std::span<const QubitId> keep);

    std::size_t n_qubits_;
    std::uint64_t dim_;
    std::vector<Amp> entries_;
};

/// Reduced density matrix over `keep`. Kept qubit j of the result is
/// keep[j], so the caller controls the output ordering.
DensityMatrix partial_trace(const StateVector &s, std::span<const QubitId> keep);

/// Largest entrywise absolute difference.
double max_abs_diff(const DensityMatrix &a, const DensityMatrix &b);

} // namespace mcqt

#endif // MCQT_DENSITY_MATRIX_H
