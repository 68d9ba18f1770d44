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

#include "homsim/elements.h"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "homsim/errors.h"
#include "homsim/number.h"

namespace homsim {

PhaseMask::PhaseMask(MomentumGrid grid, std::vector<double> phases) : grid_(grid), phases_(std::move(phases)) {
    if (phases_.size() != grid_.mode_count()) {
        throw ValidationError(
            "phase mask has " + std::to_string(phases_.size()) + " values but the grid has " +
            std::to_string(grid_.mode_count()) + " modes");
    }
    for (double p : phases_) {
        if (!std::isfinite(p)) {
            throw ValidationError("phase mask values must be finite");
        }
    }
}

PhaseMask step_mask(double jump, const MomentumGrid &grid) {
    if (!std::isfinite(jump)) {
        throw ValidationError("phase jump must be finite");
    }
    std::vector<double> phases(grid.mode_count());
    for (uint32_t m = 0; m < phases.size(); m++) {
        int ix = grid.label(m).ix;
        phases[m] = ix > 0 ? jump : ix < 0 ? 0.0 : jump / 2;
    }
    return PhaseMask(grid, std::move(phases));
}

PhaseMask pixel_mask(std::span<const double> values, const MomentumGrid &grid) {
    return PhaseMask(grid, std::vector<double>(values.begin(), values.end()));
}

PhaseMask parse_mask_text(const std::string &text, const MomentumGrid &grid) {
    const int n = grid.n();
    const int h = grid.half();
    std::vector<double> phases(grid.mode_count());
    std::istringstream lines(text);
    std::string line;
    int row = 0;
    while (std::getline(lines, line)) {
        std::istringstream words(line);
        std::string word;
        int col = 0;
        bool any = false;
        while (words >> word) {
            any = true;
            if (row >= n || col >= n) {
                throw ValidationError("phase matrix is larger than " + std::to_string(n) + " x " + std::to_string(n));
            }
            auto v = parse_number(word);
            if (!v) {
                throw ValidationError(
                    "phase matrix row " + std::to_string(row + 1) + ", column " + std::to_string(col + 1) +
                    ": not a finite number: '" + word + "'");
            }
            phases[grid.index({col - h, h - row})] = *v;
            col++;
        }
        if (!any) {
            continue;
        }
        if (col != n) {
            throw ValidationError(
                "phase matrix row " + std::to_string(row + 1) + " has " + std::to_string(col) + " values, expected " +
                std::to_string(n));
        }
        row++;
    }
    if (row != n) {
        throw ValidationError("phase matrix has " + std::to_string(row) + " rows, expected " + std::to_string(n));
    }
    return PhaseMask(grid, std::move(phases));
}

PhaseMask read_mask_file(const std::string &path, const MomentumGrid &grid) {
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("cannot open phase file '" + path + "'");
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_mask_text(buffer.str(), grid);
}

double relative_phase(const PhaseMask &mask, MomentumLabel k0) {
    if (k0.is_origin()) {
        throw ValidationError("relative phase at k0 = 0 is undefined");
    }
    if (!mask.grid().contains(k0)) {
        throw ValidationError("k0 " + k0.str() + " lies outside the mask grid");
    }
    double r = std::remainder(mask.phase(k0) - mask.phase(-k0), 2 * std::numbers::pi);
    return r <= -std::numbers::pi ? r + 2 * std::numbers::pi : r;
}

BiphotonState apply_mask(const BiphotonState &state, const PhaseMask &mask, Arm arm) {
    if (!(state.grid() == mask.grid())) {
        throw ValidationError("phase mask grid does not match the state grid");
    }
    auto phases = mask.phases();
    std::vector<PairAmplitude> out(state.entries().begin(), state.entries().end());
    for (auto &e : out) {
        double p = phases[arm == Arm::signal ? e.signal : e.idler];
        if (p != 0) {
            e.amplitude *= std::polar(1.0, p);
        }
    }
    return state.with(std::move(out), state.arms());
}

BiphotonState apply_mirror(const BiphotonState &state, Arm arm) {
    const auto &grid = state.grid();
    std::vector<PairAmplitude> out(state.entries().begin(), state.entries().end());
    for (auto &e : out) {
        uint32_t &m = arm == Arm::signal ? e.signal : e.idler;
        m = grid.index(-grid.label(m));
    }
    auto arms = state.arms();
    arms[static_cast<size_t>(arm)].mirror_count++;
    return state.with(std::move(out), arms);
}

BiphotonState set_delay(const BiphotonState &state, Arm arm, double delay) {
    if (!std::isfinite(delay)) {
        throw ValidationError("delay must be finite");
    }
    auto arms = state.arms();
    arms[static_cast<size_t>(arm)].delay = delay;
    return state.with(std::vector<PairAmplitude>(state.entries().begin(), state.entries().end()), arms);
}

CoherenceModel::CoherenceModel(double coherence_length) : coherence_length(coherence_length) {
    if (!(coherence_length > 0) || !std::isfinite(coherence_length)) {
        throw ValidationError("coherence length must be positive and finite");
    }
}

double gamma(const CoherenceModel &model, double delay_difference) {
    double x = delay_difference / model.coherence_length;
    return std::exp(-0.5 * x * x);
}

CoherenceModel coherence_from_filter(double center_wavelength, double bandwidth_fwhm) {
    if (!(center_wavelength > 0) || !std::isfinite(center_wavelength)) {
        throw ValidationError("center wavelength must be positive");
    }
    if (!(bandwidth_fwhm > 0) || !std::isfinite(bandwidth_fwhm)) {
        throw ValidationError("filter bandwidth must be positive");
    }
    if (bandwidth_fwhm >= center_wavelength) {
        throw ValidationError("filter bandwidth must be smaller than the center wavelength");
    }
    return CoherenceModel(kFilterCoherenceFactor * center_wavelength * center_wavelength / bandwidth_fwhm);
}

CoherenceModel default_coherence() {
    return coherence_from_filter(810e-9, 3e-9);
}

}  // namespace homsim
