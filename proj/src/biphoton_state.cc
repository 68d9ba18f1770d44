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

#include "homsim/biphoton_state.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "homsim/errors.h"

namespace homsim {

namespace {

bool pair_less(const PairAmplitude &a, const PairAmplitude &b) {
    return a.signal != b.signal ? a.signal < b.signal : a.idler < b.idler;
}

double wrap_phase(double x) {
    double r = std::remainder(x, 2 * std::numbers::pi);
    return r <= -std::numbers::pi ? r + 2 * std::numbers::pi : r;
}

}  // namespace

const char *arm_name(Arm arm) {
    return arm == Arm::signal ? "signal" : "idler";
}

BiphotonState::BiphotonState(MomentumGrid grid, std::vector<PairAmplitude> entries, std::array<ArmState, 2> arms)
    : grid_(grid), entries_(std::move(entries)), arms_(arms) {
    const auto modes = grid_.mode_count();
    for (const auto &e : entries_) {
        if (e.signal >= modes || e.idler >= modes) {
            throw ValidationError("amplitude references a mode outside the grid");
        }
        if (!std::isfinite(e.amplitude.real()) || !std::isfinite(e.amplitude.imag())) {
            throw ValidationError("amplitudes must be finite");
        }
    }
    std::sort(entries_.begin(), entries_.end(), pair_less);
    auto dup = std::adjacent_find(entries_.begin(), entries_.end(), [](const auto &a, const auto &b) {
        return a.signal == b.signal && a.idler == b.idler;
    });
    if (dup != entries_.end()) {
        throw ValidationError("duplicate mode pair in biphoton state");
    }
}

Complex BiphotonState::amplitude(MomentumLabel s, MomentumLabel i) const {
    if (!grid_.contains(s) || !grid_.contains(i)) {
        return 0;
    }
    PairAmplitude key{grid_.index(s), grid_.index(i), 0};
    auto it = std::lower_bound(entries_.begin(), entries_.end(), key, pair_less);
    if (it == entries_.end() || it->signal != key.signal || it->idler != key.idler) {
        return 0;
    }
    return it->amplitude;
}

double BiphotonState::norm_squared() const {
    double total = 0;
    for (const auto &e : entries_) {
        total += std::norm(e.amplitude);
    }
    return total;
}

BiphotonState BiphotonState::with(std::vector<PairAmplitude> entries, std::array<ArmState, 2> arms) const {
    return BiphotonState(grid_, std::move(entries), arms);
}

double TwoModeState::relative_phase() const {
    return wrap_phase(std::arg(c_minus) - std::arg(c_plus));
}

BiphotonState spdc_state(const MomentumGrid &grid, const SpdcOptions &options) {
    if (!(options.envelope_width > 0)) {
        throw ValidationError("SPDC envelope width must be positive");
    }
    const bool flat = std::isinf(options.envelope_width);
    std::vector<PairAmplitude> entries;
    entries.reserve(grid.mode_count());
    double total = 0;
    for (uint32_t m = 0; m < grid.mode_count(); m++) {
        MomentumLabel k = grid.label(m);
        double w = 1;
        if (!flat) {
            double r2 = grid.kx(k) * grid.kx(k) + grid.ky(k) * grid.ky(k);
            w = std::exp(-r2 / (2 * options.envelope_width * options.envelope_width));
        }
        total += w * w;
        entries.push_back({m, grid.index(-k), w});
    }
    const double scale = flat ? 1.0 / static_cast<double>(grid.n()) : 1.0 / std::sqrt(total);
    for (auto &e : entries) {
        e.amplitude *= scale;
    }
    return BiphotonState(grid, std::move(entries));
}

TwoModeState post_select(const BiphotonState &state, MomentumLabel k0) {
    if (k0.is_origin()) {
        throw ValidationError("post-selection at k0 = 0 is undefined: the mode has no distinct partner");
    }
    if (!state.grid().contains(k0)) {
        throw ValidationError("k0 " + k0.str() + " lies outside the grid");
    }
    Complex plus = state.amplitude(k0, -k0);
    Complex minus = state.amplitude(-k0, k0);
    double weight = std::norm(plus) + std::norm(minus);
    if (!(weight > 0)) {
        throw ValidationError("state has zero weight on the pair " + k0.str() + " / " + (-k0).str());
    }
    double scale = 1 / std::sqrt(weight);
    Complex global = std::abs(plus) > 0 ? std::polar(1.0, -std::arg(plus)) : std::polar(1.0, -std::arg(minus));
    return {k0, plus * scale * global, minus * scale * global};
}

TwoModeState two_mode_state(MomentumLabel k0, double phi) {
    if (k0.is_origin()) {
        throw ValidationError("k0 = 0 has no distinct partner mode");
    }
    const double r = std::numbers::sqrt2 / 2;
    return {k0, r, std::polar(r, phi)};
}

BiphotonState to_state(const TwoModeState &state, const MomentumGrid &grid) {
    if (!grid.contains(state.k0) || state.k0.is_origin()) {
        throw ValidationError("k0 " + state.k0.str() + " is not a valid non-zero grid mode");
    }
    uint32_t p = grid.index(state.k0);
    uint32_t m = grid.index(-state.k0);
    std::vector<PairAmplitude> entries;
    if (state.c_plus != Complex(0)) {
        entries.push_back({p, m, state.c_plus});
    }
    if (state.c_minus != Complex(0)) {
        entries.push_back({m, p, state.c_minus});
    }
    return BiphotonState(grid, std::move(entries));
}

BiphotonState exchange(const BiphotonState &state) {
    std::vector<PairAmplitude> swapped;
    swapped.reserve(state.entries().size());
    for (const auto &e : state.entries()) {
        swapped.push_back({e.idler, e.signal, e.amplitude});
    }
    return state.with(std::move(swapped), {state.arms()[1], state.arms()[0]});
}

TwoModeState exchange(const TwoModeState &state) {
    return {state.k0, state.c_minus, state.c_plus};
}

Complex inner_product(const BiphotonState &a, const BiphotonState &b) {
    if (!(a.grid() == b.grid())) {
        throw ValidationError("inner product of states on different grids");
    }
    Complex total = 0;
    auto ea = a.entries();
    auto eb = b.entries();
    size_t i = 0, j = 0;
    while (i < ea.size() && j < eb.size()) {
        if (pair_less(ea[i], eb[j])) {
            i++;
        } else if (pair_less(eb[j], ea[i])) {
            j++;
        } else {
            total += std::conj(ea[i].amplitude) * eb[j].amplitude;
            i++;
            j++;
        }
    }
    return total;
}

double exchange_expectation(const TwoModeState &state) {
    // exchange swaps c_plus and c_minus.
    return 2 * (std::conj(state.c_plus) * state.c_minus).real();
}

double exchange_expectation(const BiphotonState &state) {
    return inner_product(state, exchange(state)).real();
}

}  // namespace homsim
