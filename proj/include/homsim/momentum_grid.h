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

#ifndef HOMSIM_MOMENTUM_GRID_H
#define HOMSIM_MOMENTUM_GRID_H

#include <cstddef>
#include <cstdint>
#include <compare>
#include <string>

namespace homsim {

/// Integer transverse-momentum label. (0, 0) is the beam axis.
struct MomentumLabel {
    int32_t ix = 0;
    int32_t iy = 0;

    constexpr MomentumLabel operator-() const {
        return {-ix, -iy};
    }
    constexpr bool is_origin() const {
        return ix == 0 && iy == 0;
    }
    constexpr auto operator<=>(const MomentumLabel &) const = default;

    std::string str() const;
};

/// Odd n x n grid of transverse momenta, symmetric about the origin.
///
/// Momenta are dimensionless, in units of the down-conversion cone radius.
/// Labels run over [-half, half] on each axis and map to physical momentum
/// k = k_max * label / half.
class MomentumGrid {
   public:
    /// Throws ValidationError unless n is odd, n >= 3 and k_max > 0.
    MomentumGrid(int n, double k_max);

    int n() const {
        return n_;
    }
    int half() const {
        return (n_ - 1) / 2;
    }
    double k_max() const {
        return k_max_;
    }
    size_t mode_count() const {
        return static_cast<size_t>(n_) * static_cast<size_t>(n_);
    }

    bool contains(MomentumLabel k) const;
    /// Row-major flat index with ix as the slow axis. Requires contains(k).
    uint32_t index(MomentumLabel k) const;
    MomentumLabel label(uint32_t index) const;
    double kx(MomentumLabel k) const;
    double ky(MomentumLabel k) const;

    bool operator==(const MomentumGrid &) const = default;

   private:
    int n_;
    double k_max_;
};

MomentumGrid build_grid(int n, double k_max);

}  // namespace homsim

#endif
