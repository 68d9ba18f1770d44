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

#include "homsim/coincidence.h"

#include <cmath>
#include <limits>
#include <random>

#include "homsim/errors.h"

namespace homsim {

namespace {

uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

void check_axis(std::span<const double> axis, const char *what) {
    if (axis.empty()) {
        throw ValidationError(std::string(what) + " list must not be empty");
    }
    for (double x : axis) {
        if (!std::isfinite(x)) {
            throw ValidationError(std::string(what) + " values must be finite");
        }
    }
}

}  // namespace

void CountingModel::validate() const {
    if (!(pair_rate > 0) || !std::isfinite(pair_rate)) {
        throw ValidationError("pair rate must be positive");
    }
    if (!(integration_time > 0) || !std::isfinite(integration_time)) {
        throw ValidationError("integration time must be positive");
    }
    if (!(accidental_rate >= 0) || !std::isfinite(accidental_rate)) {
        throw ValidationError("accidental rate must be non-negative");
    }
}

void ImperfectionModel::validate() const {
    Beamsplitter{transmittance, reflectance}.validate();
    if (!(mu >= 0 && mu <= 1)) {
        throw ValidationError("mode overlap mu must lie in [0, 1]");
    }
    counting().validate();
}

double ImperfectionModel::split_visibility() const {
    return 2 * transmittance * reflectance / baseline_probability();
}

double ImperfectionModel::baseline_probability() const {
    return transmittance * transmittance + reflectance * reflectance;
}

ImperfectionModel ideal_model() {
    return {};
}

double analytic_rate(double phi, double delay, const ImperfectionModel &model) {
    return 1 - model.split_visibility() * model.mu * gamma(model.coherence, delay) * std::cos(phi);
}

double CosineModel::operator()(double phi) const {
    return alpha * (1 - std::cos(phi)) + beta;
}

void ScanResult::validate() const {
    size_t n = axis.size();
    if (raw.size() != n || expected.size() != n || normalized.size() != n || standard_error.size() != n) {
        throw ValidationError("scan columns have unequal lengths");
    }
}

uint64_t substream_seed(uint64_t seed, uint64_t index) {
    return splitmix64(seed ^ splitmix64(index + 0x632BE59BD9B4E019ULL));
}

uint64_t sample_point(double expected, uint64_t seed, uint64_t index, uint32_t trials) {
    if (!(expected >= 0) || !std::isfinite(expected)) {
        throw ValidationError("expected counts must be finite and non-negative");
    }
    if (expected == 0) {
        return 0;
    }
    std::mt19937_64 rng(substream_seed(seed, index));
    std::poisson_distribution<uint64_t> poisson(expected);
    uint64_t total = 0;
    for (uint32_t t = 0; t < trials; t++) {
        total += poisson(rng);
    }
    return total;
}

std::vector<uint64_t> sample_counts(std::span<const double> expected, uint64_t seed, uint32_t trials) {
    for (double e : expected) {
        if (!(e >= 0) || !std::isfinite(e)) {
            throw ValidationError("expected counts must be finite and non-negative");
        }
    }
    std::vector<uint64_t> out(expected.size());
    const auto n = static_cast<int64_t>(expected.size());
#pragma omp parallel for schedule(static)
    for (int64_t i = 0; i < n; i++) {
        out[i] = sample_point(expected[i], seed, static_cast<uint64_t>(i), trials);
    }
    return out;
}

ScanResult assemble_scan(
    std::span<const double> axis,
    std::span<const double> p_cc,
    double baseline_probability,
    const CountingModel &counting,
    uint64_t seed,
    uint32_t trials) {
    counting.validate();
    if (axis.size() != p_cc.size()) {
        throw ValidationError("axis and probability lists differ in length");
    }
    if (!(baseline_probability > 0)) {
        throw ValidationError("baseline coincidence probability must be positive");
    }
    if (trials == 0) {
        throw ValidationError("trials must be at least 1");
    }
    ScanResult scan;
    scan.axis.assign(axis.begin(), axis.end());
    const double exposure = counting.integration_time * trials;
    scan.accidental_counts = counting.accidental_rate * exposure;
    scan.baseline_counts = counting.pair_rate * exposure * baseline_probability;
    scan.expected.resize(axis.size());
    for (size_t i = 0; i < axis.size(); i++) {
        scan.expected[i] = counting.pair_rate * exposure * p_cc[i] + scan.accidental_counts;
    }
    // Draw per trial-length window, so each trial sees one integration time.
    std::vector<double> per_trial(scan.expected.size());
    for (size_t i = 0; i < per_trial.size(); i++) {
        per_trial[i] = scan.expected[i] / trials;
    }
    scan.raw = sample_counts(per_trial, seed, trials);
    scan.normalized.resize(axis.size());
    scan.standard_error.resize(axis.size());
    for (size_t i = 0; i < axis.size(); i++) {
        double counts = static_cast<double>(scan.raw[i]);
        scan.normalized[i] = (counts - scan.accidental_counts) / scan.baseline_counts;
        scan.standard_error[i] = std::sqrt(counts) / scan.baseline_counts;
    }
    return scan;
}

ScanResult delay_scan(
    const ImperfectionModel &model, double phi, std::span<const double> delays, uint64_t seed, uint32_t trials) {
    model.validate();
    check_axis(delays, "delay");
    const double base = model.baseline_probability();
    std::vector<double> p(delays.size());
    const auto n = static_cast<int64_t>(delays.size());
#pragma omp parallel for schedule(static)
    for (int64_t i = 0; i < n; i++) {
        p[i] = base * analytic_rate(phi, delays[i], model);
    }
    return assemble_scan(delays, p, base, model.counting(), seed, trials);
}

ScanResult phase_scan(const ImperfectionModel &model, std::span<const double> phis, uint64_t seed, uint32_t trials) {
    model.validate();
    check_axis(phis, "phase");
    const double base = model.baseline_probability();
    std::vector<double> p(phis.size());
    const auto n = static_cast<int64_t>(phis.size());
#pragma omp parallel for schedule(static)
    for (int64_t i = 0; i < n; i++) {
        p[i] = base * analytic_rate(phis[i], 0, model);
    }
    return assemble_scan(phis, p, base, model.counting(), seed, trials);
}

ScanResult phase_scan(
    const CosineModel &law, double baseline_counts, std::span<const double> phis, uint64_t seed, uint32_t trials) {
    check_axis(phis, "phase");
    if (!(baseline_counts > 0) || !std::isfinite(baseline_counts)) {
        throw ValidationError("baseline counts must be positive");
    }
    std::vector<double> p(phis.size());
    for (size_t i = 0; i < phis.size(); i++) {
        p[i] = law(phis[i]);
        if (p[i] < 0) {
            throw ValidationError("cosine law gives a negative rate");
        }
    }
    // Unit pair rate and probability-per-baseline scaling: expected = baseline * C.
    CountingModel counting{baseline_counts, 1, 0};
    return assemble_scan(phis, p, 1, counting, seed, trials);
}

std::vector<double> evaluate_circuits(
    std::span<const Circuit> circuits, const BiphotonState &source, MomentumLabel k0) {
    std::vector<double> p(circuits.size());
    const auto n = static_cast<int64_t>(circuits.size());
    // Exceptions may not cross the parallel region.
    std::vector<std::string> errors(circuits.size());
#pragma omp parallel for schedule(dynamic, 4)
    for (int64_t i = 0; i < n; i++) {
        try {
            p[i] = run(circuits[i], source, k0).p_cc;
        } catch (const std::exception &e) {
            errors[i] = e.what();
        }
    }
    for (const auto &e : errors) {
        if (!e.empty()) {
            throw ValidationError(e);
        }
    }
    return p;
}

ScanResult circuit_scan(
    std::span<const double> axis,
    std::span<const Circuit> circuits,
    const BiphotonState &source,
    MomentumLabel k0,
    const CountingModel &counting,
    uint64_t seed,
    uint32_t trials) {
    check_axis(axis, "scan axis");
    if (axis.size() != circuits.size()) {
        throw ValidationError("one circuit per scan point is required");
    }
    Circuit distinguishable = circuits.front();
    distinguishable.mode_overlap = 0;
    double base = run(distinguishable, source, k0).p_cc;
    auto p = evaluate_circuits(circuits, source, k0);
    return assemble_scan(axis, p, base, counting, seed, trials);
}

ScanResult delay_scan(
    const Circuit &circuit,
    const BiphotonState &source,
    MomentumLabel k0,
    const CountingModel &counting,
    std::span<const double> delays,
    uint64_t seed,
    uint32_t trials) {
    check_axis(delays, "delay");
    std::vector<Circuit> circuits;
    circuits.reserve(delays.size());
    for (double dl : delays) {
        circuits.push_back(with_idler_delay(circuit, dl));
    }
    return circuit_scan(delays, circuits, source, k0, counting, seed, trials);
}

std::vector<MomentumLabel> half_plane_labels(const MomentumGrid &grid) {
    const int h = grid.half();
    std::vector<MomentumLabel> labels;
    labels.reserve((grid.mode_count() - 1) / 2);
    for (int iy = 1; iy <= h; iy++) {
        labels.push_back({0, iy});
    }
    for (int ix = 1; ix <= h; ix++) {
        for (int iy = -h; iy <= h; iy++) {
            labels.push_back({ix, iy});
        }
    }
    return labels;
}

MultimodeMap multimode_map(const PhaseMask &mask, const MomentumGrid &grid, const ImperfectionModel &model, double delay) {
    model.validate();
    if (!(mask.grid() == grid)) {
        throw ValidationError("phase mask grid does not match the map grid");
    }
    const double contrast = model.split_visibility() * model.mu * gamma(model.coherence, delay);
    auto labels = half_plane_labels(grid);
    MultimodeMap map{grid, std::vector<MapEntry>(labels.size())};
    const auto n = static_cast<int64_t>(labels.size());
#pragma omp parallel for schedule(static)
    for (int64_t i = 0; i < n; i++) {
        double phi = relative_phase(mask, labels[i]);
        map.entries[i] = {labels[i], phi, 1 - contrast * std::cos(phi)};
    }
    return map;
}

MultimodeMap propagated_map(const Circuit &circuit, const BiphotonState &source, const CollectionPattern &collection_for) {
    Circuit distinguishable = circuit;
    distinguishable.mode_overlap = 0;
    const auto &grid = source.grid();
    auto labels = half_plane_labels(grid);
    MultimodeMap map{grid, std::vector<MapEntry>(labels.size())};
    const auto n = static_cast<int64_t>(labels.size());
    std::vector<std::string> errors(labels.size());
#pragma omp parallel for schedule(dynamic, 64)
    for (int64_t i = 0; i < n; i++) {
        const MomentumLabel k0 = labels[i];
        try {
            auto fibers = collection_for(k0);
            double p = run_with_collection(circuit, source, k0, fibers).p_cc;
            double base = run_with_collection(distinguishable, source, k0, fibers).p_cc;
            auto propagated = propagate_arms(circuit, to_state(post_select(source, k0), grid));
            double phi = std::numeric_limits<double>::quiet_NaN();
            Complex plus = propagated.amplitude(k0, -k0), minus = propagated.amplitude(-k0, k0);
            if (std::abs(plus) > 0 && std::abs(minus) > 0) {
                phi = TwoModeState{k0, plus, minus}.relative_phase();
            }
            map.entries[i] = {k0, phi, p / base};
        } catch (const std::exception &e) {
            errors[i] = e.what();
        }
    }
    for (const auto &e : errors) {
        if (!e.empty()) {
            throw ValidationError(e);
        }
    }
    return map;
}

}  // namespace homsim
