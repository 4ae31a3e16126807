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

#ifndef MCQT_CHANNEL_H
#define MCQT_CHANNEL_H

#include <map>
#include <string>
#include <vector>

#include "mcqt/statevector.h"

namespace mcqt {

/// Bell pair on two qubits; qubit 0 is the leftmost ket symbol.
StateVector bell_state(Bell kind);

/// Placement of the channel qubits in a register.
///
/// Channel qubits carry labels 1..2k+1: pair j (0-based) is labels
/// (2j+1, 2j+2) and label 2k+1 is the controller. For an even pair count the
/// pairs are also grouped into senders: sender i owns labels 4i+1 and 4i+3
/// (roles A and A' for the first sender, B and B' for the second, ...) and its
/// receiver owns 4i+2 and 4i+4 (roles P and Q, then R and S, ...). The
/// controller has role E.
class ChannelLayout {
  public:
    /// Label L sits at register position L-1.
    static ChannelLayout standard(std::size_t n_pairs);
    /// Arbitrary placement; must be a bijection from labels 1..2k+1 onto
    /// positions 0..2k.
    static ChannelLayout from_positions(std::size_t n_pairs, const std::map<int, std::size_t> &label_to_position);

    std::size_t n_pairs() const {
        return n_pairs_;
    }
    std::size_t num_qubits() const {
        return 2 * n_pairs_ + 1;
    }
    int controller_label() const {
        return static_cast<int>(2 * n_pairs_ + 1);
    }
    QubitId by_label(int label) const;
    /// Role names: A, A', B, B', C, C', D, D', P, Q, R, S, T, U, V, W, E.
    /// Roles exist only for an even pair count of at most eight.
    QubitId by_role(const std::string &role) const;
    bool has_roles() const {
        return !role_to_label_.empty();
    }
    /// new_position[L-1] for every label L; feeds permute_qubits.
    std::vector<std::size_t> positions() const {
        return position_;
    }

  private:
    ChannelLayout(std::size_t n_pairs, std::vector<std::size_t> position);

    std::size_t n_pairs_;
    std::vector<std::size_t> position_;
    std::map<std::string, int> role_to_label_;
};

/// Steps 1-3 of the channel circuit: |0...0>, H on the controller, then
/// CNOT from the controller onto every pair qubit in ascending order. The
/// result is the (2k+1)-qubit GHZ state.
StateVector prepare_ghz_stage(std::size_t n_pairs, DenseCap cap = {});

/// Full channel circuit: the GHZ stage, then H on the even label of each
/// pair and CNOT(even -> odd) within each pair. Produces
/// (kappa+^k |0> + (-1)^k lambda-^k |1>)/sqrt2 in standard layout.
StateVector prepare_channel_circuit(std::size_t n_pairs, DenseCap cap = {});

/// (kappa+^k |0> + branch_sign * lambda-^k |1>)/sqrt2 assembled from tensor
/// products, standard layout.
StateVector build_channel_analytic(std::size_t n_pairs, int branch_sign, DenseCap cap = {});

/// Branch sign the circuit produces for k pairs: (-1)^k.
int circuit_branch_sign(std::size_t n_pairs);

/// Moves a standard-layout channel state into `layout`.
StateVector relabel(const StateVector &channel, const ChannelLayout &layout);

} // namespace mcqt

#endif // MCQT_CHANNEL_H
