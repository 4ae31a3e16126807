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

#ifndef MCQT_INFO_STATE_H
#define MCQT_INFO_STATE_H

#include <array>

#include "mcqt/statevector.h"

namespace mcqt {

/// A sender's two-qubit message c00|00> + c01|01> + c10|10> + c11|11>.
///
/// Coefficients are stored in ket order; the leftmost ket symbol is the
/// sender's first qubit. Construction rejects states whose squared norm is
/// more than kPipelineTol away from 1; nothing is renormalized silently.
class InfoState {
  public:
    explicit InfoState(const std::array<Amp, 4> &coeffs);

    /// Haar-random message (normalized complex Gaussian vector).
    static InfoState random(Rng &rng);

    const std::array<Amp, 4> &coeffs() const {
        return coeffs_;
    }
    /// c_{mu nu}
    Amp coeff(int mu, int nu) const {
        return coeffs_[static_cast<std::size_t>(2 * mu + nu)];
    }
    /// As a 2-qubit register: c_{mu nu} at basis index mu + 2 nu.
    StateVector to_state() const;

  private:
    std::array<Amp, 4> coeffs_;
};

} // namespace mcqt

#endif // MCQT_INFO_STATE_H
