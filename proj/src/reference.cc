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

#include "homsim/reference.h"

#include <cmath>

#include "homsim/errors.h"

namespace homsim::serial {

namespace {

ScanResult assemble(
    std::span<const double> axis, std::span<const double> p, double base, const CountingModel &counting, uint64_t seed,
    uint32_t trials) {
    ScanResult scan;
    scan.axis.assign(axis.begin(), axis.end());
    const double exposure = counting.integration_time * trials;
    scan.accidental_counts = counting.accidental_rate * exposure;
    scan.baseline_counts = counting.pair_rate * exposure * base;
    for (size_t i = 0; i < axis.size(); i++) {
        double expected = counting.pair_rate * exposure * p[i] + scan.accidental_counts;
        uint64_t raw = sample_point(expected / trials, seed, i, trials);
        scan.expected.push_back(expected);
        scan.raw.push_back(raw);
        scan.normalized.push_back((static_cast<double>(raw) - scan.accidental_counts) / scan.baseline_counts);
        scan.standard_error.push_back(std::sqrt(static_cast<double>(raw)) / scan.baseline_counts);
    }
    return scan;
}

}  // namespace

std::vector<uint64_t> sample_counts(std::span<const double> expected, uint64_t seed, uint32_t trials) {
    std::vector<uint64_t> out;
    out.reserve(expected.size());
    for (size_t i = 0; i < expected.size(); i++) {
        out.push_back(sample_point(expected[i], seed, i, trials));
    }
    return out;
}

ScanResult delay_scan(
    const ImperfectionModel &model, double phi, std::span<const double> delays, uint64_t seed, uint32_t trials) {
    model.validate();
    if (delays.empty()) {
        throw ValidationError("delay list must not be empty");
    }
    const double base = model.baseline_probability();
    std::vector<double> p;
    for (double dl : delays) {
        p.push_back(base * analytic_rate(phi, dl, model));
    }
    return assemble(delays, p, base, model.counting(), seed, trials);
}

ScanResult phase_scan(const ImperfectionModel &model, std::span<const double> phis, uint64_t seed, uint32_t trials) {
    model.validate();
    if (phis.empty()) {
        throw ValidationError("phase list must not be empty");
    }
    const double base = model.baseline_probability();
    std::vector<double> p;
    for (double phi : phis) {
        p.push_back(base * analytic_rate(phi, 0, model));
    }
    return assemble(phis, p, base, model.counting(), seed, trials);
}

std::vector<double> evaluate_circuits(
    std::span<const Circuit> circuits, const BiphotonState &source, MomentumLabel k0) {
    std::vector<double> p;
    p.reserve(circuits.size());
    for (const auto &c : circuits) {
        p.push_back(run(c, source, k0).p_cc);
    }
    return p;
}

MultimodeMap multimode_map(const PhaseMask &mask, const MomentumGrid &grid, const ImperfectionModel &model, double delay) {
    model.validate();
    if (!(mask.grid() == grid)) {
        throw ValidationError("phase mask grid does not match the map grid");
    }
    const double contrast = model.split_visibility() * model.mu * gamma(model.coherence, delay);
    MultimodeMap map{grid, {}};
    for (MomentumLabel k0 : half_plane_labels(grid)) {
        double phi = relative_phase(mask, k0);
        map.entries.push_back({k0, phi, 1 - contrast * std::cos(phi)});
    }
    return map;
}

}  // namespace homsim::serial
