// Copyright 2026 The homsim Authors
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

#include "homsim/momentum_grid.h"

#include <cmath>

#include "homsim/errors.h"

namespace homsim {

std::string MomentumLabel::str() const {
    return "(" + std::to_string(ix) + ", " + std::to_string(iy) + ")";
}

MomentumGrid::MomentumGrid(int n, double k_max) : n_(n), k_max_(k_max) {
    if (n < 3) {
        throw ValidationError("grid size must be at least 3, got " + std::to_string(n));
    }
    if (n % 2 == 0) {
        throw ValidationError(
            "grid size must be odd so the grid contains k = 0 and is closed under k -> -k, got " + std::to_string(n));
    }
    if (!(k_max > 0) || !std::isfinite(k_max)) {
        throw ValidationError("k_max must be a positive finite number");
    }
}

bool MomentumGrid::contains(MomentumLabel k) const {
    int h = half();
    return k.ix >= -h && k.ix <= h && k.iy >= -h && k.iy <= h;
}

uint32_t MomentumGrid::index(MomentumLabel k) const {
    int h = half();
    return static_cast<uint32_t>((k.ix + h) * n_ + (k.iy + h));
}

MomentumLabel MomentumGrid::label(uint32_t index) const {
    int h = half();
    int i = static_cast<int>(index);
    return {i / n_ - h, i % n_ - h};
}

double MomentumGrid::kx(MomentumLabel k) const {
    return k_max_ * k.ix / half();
}

double MomentumGrid::ky(MomentumLabel k) const {
    return k_max_ * k.iy / half();
}

MomentumGrid build_grid(int n, double k_max) {
    return MomentumGrid(n, k_max);
}

}  // namespace homsim
