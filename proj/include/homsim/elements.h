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

#ifndef HOMSIM_ELEMENTS_H
#define HOMSIM_ELEMENTS_H

#include <span>
#include <string>
#include <vector>

#include "homsim/biphoton_state.h"

namespace homsim {

/// Phase imprinted per momentum mode, in radians. Stored unwrapped.
class PhaseMask {
   public:
    /// One value per grid mode, indexed like MomentumGrid::index.
    PhaseMask(MomentumGrid grid, std::vector<double> phases);

    const MomentumGrid &grid() const {
        return grid_;
    }
    double phase(MomentumLabel k) const {
        return phases_[grid_.index(k)];
    }
    std::span<const double> phases() const {
        return phases_;
    }

    bool operator==(const PhaseMask &) const = default;

   private:
    MomentumGrid grid_;
    std::vector<double> phases_;
};

/// Step of height `jump` across the vertical line kx = 0: jump for kx > 0,
/// zero for kx < 0, jump / 2 on the line itself.
PhaseMask step_mask(double jump, const MomentumGrid &grid);

/// Arbitrary per-mode mask, values indexed like MomentumGrid::index.
PhaseMask pixel_mask(std::span<const double> values, const MomentumGrid &grid);

/// Reads an n x n whitespace-separated matrix of radians. Row r holds
/// iy = half - r (top row is +ky); column c holds ix = c - half.
PhaseMask read_mask_file(const std::string &path, const MomentumGrid &grid);
PhaseMask parse_mask_text(const std::string &text, const MomentumGrid &grid);

/// phase(k0) - phase(-k0), reduced to (-pi, pi].
double relative_phase(const PhaseMask &mask, MomentumLabel k0);

/// Multiplies every amplitude by exp(i phase(k_arm)).
BiphotonState apply_mask(const BiphotonState &state, const PhaseMask &mask, Arm arm);

/// Reflects the arm's transverse labels k -> -k and counts the reflection.
BiphotonState apply_mirror(const BiphotonState &state, Arm arm);

/// Sets (does not accumulate) the arm's path delay in meters.
BiphotonState set_delay(const BiphotonState &state, Arm arm, double delay);

/// Two-photon coherence: gamma(dL) = exp(-dL^2 / (2 l_c^2)).
struct CoherenceModel {
    double coherence_length;  // meters

    explicit CoherenceModel(double coherence_length);
    bool operator==(const CoherenceModel &) const = default;
};

double gamma(const CoherenceModel &model, double delay_difference);

/// l_c = (sqrt(ln 2) / pi) * lambda0^2 / dlambda.
///
/// Both photons of a CW-pumped pair pass a Gaussian filter of intensity FWHM
/// dlambda, so the joint spectrum is F(w0 + W) F(w0 - W) and the interference
/// term goes as its Fourier transform at 2 W dL / c.
inline constexpr double kFilterCoherenceFactor = 0.26501036351939691;

CoherenceModel coherence_from_filter(double center_wavelength, double bandwidth_fwhm);

/// 810 nm degenerate photons behind a 3 nm bandpass filter.
CoherenceModel default_coherence();

}  // namespace homsim

#endif
