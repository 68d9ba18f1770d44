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

#ifndef HOMSIM_BIPHOTON_STATE_H
#define HOMSIM_BIPHOTON_STATE_H

#include <array>
#include <complex>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "homsim/momentum_grid.h"

namespace homsim {

using Complex = std::complex<double>;

enum class Arm : uint8_t { signal = 0, idler = 1 };

constexpr Arm other_arm(Arm arm) {
    return arm == Arm::signal ? Arm::idler : Arm::signal;
}

const char *arm_name(Arm arm);

/// Per-arm bookkeeping carried alongside the amplitudes.
struct ArmState {
    uint32_t mirror_count = 0;
    double delay = 0;  // meters

    bool operator==(const ArmState &) const = default;
};

/// One nonzero amplitude of |signal-mode> |idler-mode>, keyed by grid indices.
struct PairAmplitude {
    uint32_t signal;
    uint32_t idler;
    Complex amplitude;

    bool operator==(const PairAmplitude &) const = default;
};

/// Sparse two-photon transverse-momentum state.
///
/// Entries are kept sorted by (signal, idler) with no duplicates. The state is
/// an immutable value; every operation returns a new state.
class BiphotonState {
   public:
    /// Takes ownership of the entries, sorts them and rejects duplicates,
    /// out-of-grid indices and non-finite amplitudes. Does not normalize.
    BiphotonState(MomentumGrid grid, std::vector<PairAmplitude> entries, std::array<ArmState, 2> arms = {});

    const MomentumGrid &grid() const {
        return grid_;
    }
    std::span<const PairAmplitude> entries() const {
        return entries_;
    }
    const ArmState &arm(Arm a) const {
        return arms_[static_cast<size_t>(a)];
    }
    const std::array<ArmState, 2> &arms() const {
        return arms_;
    }

    /// Amplitude of |s>|i>; zero when the pair is not stored.
    Complex amplitude(MomentumLabel s, MomentumLabel i) const;
    double norm_squared() const;

    /// Same grid, new amplitudes and arm data. Used by optical elements.
    BiphotonState with(std::vector<PairAmplitude> entries, std::array<ArmState, 2> arms) const;

    bool operator==(const BiphotonState &) const = default;

   private:
    MomentumGrid grid_;
    std::vector<PairAmplitude> entries_;
    std::array<ArmState, 2> arms_;
};

/// Post-selected state (c_plus |k0>_s|-k0>_i + c_minus |-k0>_s|k0>_i).
struct TwoModeState {
    MomentumLabel k0;
    Complex c_plus;
    Complex c_minus;

    /// Phase of c_minus relative to c_plus, in (-pi, pi].
    double relative_phase() const;
};

struct SpdcOptions {
    /// Radial Gaussian amplitude envelope exp(-|k|^2 / (2 w^2)) in physical
    /// momentum units. Infinity gives the flat thin-crystal state.
    double envelope_width = std::numeric_limits<double>::infinity();
};

/// Collinear down-conversion state: sum over k of w(k) |k>_s |-k>_i, normalized.
BiphotonState spdc_state(const MomentumGrid &grid, const SpdcOptions &options = {});

/// Projects onto the pair {(k0, -k0), (-k0, k0)} and renormalizes. The global
/// phase is fixed so that c_plus is real and non-negative.
TwoModeState post_select(const BiphotonState &state, MomentumLabel k0);

/// The two-mode state (|k0,-k0> + e^{i phi} |-k0,k0>) / sqrt(2).
TwoModeState two_mode_state(MomentumLabel k0, double phi);

/// Embeds a two-mode state into a full state on the given grid.
BiphotonState to_state(const TwoModeState &state, const MomentumGrid &grid);

/// Swaps the signal and idler labels of every amplitude (and the arm data).
BiphotonState exchange(const BiphotonState &state);
TwoModeState exchange(const TwoModeState &state);

/// <a|b>. Throws ValidationError on grid mismatch.
Complex inner_product(const BiphotonState &a, const BiphotonState &b);

/// <psi| exchange |psi>, computed directly from the two amplitudes.
double exchange_expectation(const TwoModeState &state);
double exchange_expectation(const BiphotonState &state);

}  // namespace homsim

#endif
