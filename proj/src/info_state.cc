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

#include "mcqt/info_state.h"

#include <cmath>

namespace mcqt {

InfoState::InfoState(const std::array<Amp, 4> &coeffs) : coeffs_(coeffs) {
    double n2 = 0;
    for (const Amp &c : coeffs_) {
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
            throw std::invalid_argument("message coefficients must be finite");
        }
        n2 += std::norm(c);
    }
    if (std::abs(n2 - 1.0) > kPipelineTol) {
        throw std::invalid_argument("message state is not normalized: sum |c|^2 = " + std::to_string(n2));
    }
}

InfoState InfoState::random(Rng &rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    std::array<Amp, 4> c;
    double n2 = 0;
    for (Amp &x : c) {
        x = Amp(g(rng), g(rng));
        n2 += std::norm(x);
    }
    double inv = 1.0 / std::sqrt(n2);
    for (Amp &x : c) {
        x *= inv;
    }
    return InfoState(c);
}

StateVector InfoState::to_state() const {
    std::vector<Amp> a(4);
    a[ket_index("00")] = coeffs_[0];
    a[ket_index("01")] = coeffs_[1];
    a[ket_index("10")] = coeffs_[2];
    a[ket_index("11")] = coeffs_[3];
    return StateVector::from_amplitudes(std::move(a));
}

} // namespace mcqt
