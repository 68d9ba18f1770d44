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

#ifndef HOMSIM_COINCIDENCE_H
#define HOMSIM_COINCIDENCE_H

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "homsim/elements.h"
#include "homsim/interferometer.h"

namespace homsim {

/// Count-rate parameters. The defaults (1e4 pairs/s, 1 s per point, no
/// accidentals) are arbitrary desk-scale choices.
struct CountingModel {
    double pair_rate = 1e4;         // detected pairs per second
    double integration_time = 1;    // seconds per scan point
    double accidental_rate = 0;     // coincidences per second

    void validate() const;
};

/// Sources of reduced visibility: an unbalanced split and imperfect spatial
/// mode overlap, plus the counting parameters.
struct ImperfectionModel {
    double transmittance = 0.5;
    double reflectance = 0.5;
    double mu = 1;  // mode overlap in [0, 1]
    double accidental_rate = 0;
    double pair_rate = 1e4;
    double integration_time = 1;
    CoherenceModel coherence = default_coherence();

    void validate() const;
    CountingModel counting() const {
        return {pair_rate, integration_time, accidental_rate};
    }
    /// 2TR / (T^2 + R^2).
    double split_visibility() const;
    /// Distinguishable-photon coincidence probability T^2 + R^2.
    double baseline_probability() const;
};

ImperfectionModel ideal_model();

/// C(phi, dL) = 1 - V mu gamma(dL) cos(phi), normalized to the far-delay baseline.
double analytic_rate(double phi, double delay, const ImperfectionModel &model);

/// C(phi) = alpha (1 - cos phi) + beta.
struct CosineModel {
    double alpha;
    double beta;
    double operator()(double phi) const;
};

struct ScanResult {
    std::vector<double> axis;       // delay in meters, or phase in radians
    std::vector<uint64_t> raw;      // sampled coincidence counts
    std::vector<double> expected;   // noiseless expected counts
    std::vector<double> normalized; // (raw - accidentals) / baseline
    std::vector<double> standard_error;
    double accidental_counts = 0;   // expected accidentals per point
    double baseline_counts = 0;     // expected far-delay coincidences per point

    size_t size() const {
        return axis.size();
    }
    void validate() const;
};

/// Substream seed for one scan point; independent of evaluation order.
uint64_t substream_seed(uint64_t seed, uint64_t index);

/// One point's count: the sum of `trials` independent Poisson draws of mean
/// `expected` from the point's substream.
uint64_t sample_point(double expected, uint64_t seed, uint64_t index, uint32_t trials = 1);

/// Independent Poisson draws, one substream per point. Throws on negative or
/// non-finite expectations.
std::vector<uint64_t> sample_counts(std::span<const double> expected, uint64_t seed, uint32_t trials = 1);

/// Builds a scan from per-point coincidence probabilities. expected counts are
/// trials * (pair_rate * time * p + accidental_rate * time); the baseline for
/// normalization is the given distinguishable-photon probability.
ScanResult assemble_scan(
    std::span<const double> axis,
    std::span<const double> p_cc,
    double baseline_probability,
    const CountingModel &counting,
    uint64_t seed,
    uint32_t trials = 1);

ScanResult delay_scan(
    const ImperfectionModel &model, double phi, std::span<const double> delays, uint64_t seed, uint32_t trials = 1);

ScanResult phase_scan(
    const ImperfectionModel &model, std::span<const double> phis, uint64_t seed, uint32_t trials = 1);

/// Synthetic phase scan drawn from an explicit cosine law at the given
/// baseline (far-delay) counts per point.
ScanResult phase_scan(
    const CosineModel &law, double baseline_counts, std::span<const double> phis, uint64_t seed, uint32_t trials = 1);

/// Runs every circuit (in parallel) and returns p_cc per circuit.
std::vector<double> evaluate_circuits(
    std::span<const Circuit> circuits, const BiphotonState &source, MomentumLabel k0);

/// Full-propagation scan over arbitrary circuits sharing one baseline, which is
/// the first circuit's p_cc with the photons made distinguishable.
ScanResult circuit_scan(
    std::span<const double> axis,
    std::span<const Circuit> circuits,
    const BiphotonState &source,
    MomentumLabel k0,
    const CountingModel &counting,
    uint64_t seed,
    uint32_t trials = 1);

/// Full-propagation delay scan: the idler delay is set to each value in turn.
ScanResult delay_scan(
    const Circuit &circuit,
    const BiphotonState &source,
    MomentumLabel k0,
    const CountingModel &counting,
    std::span<const double> delays,
    uint64_t seed,
    uint32_t trials = 1);

struct MapEntry {
    MomentumLabel k0;
    double relative_phase;
    double rate;
};

/// Normalized coincidence rate per momentum pair. One entry per pair, taken
/// from the half-plane ix > 0 plus the upper half of the line ix = 0.
struct MultimodeMap {
    MomentumGrid grid;
    std::vector<MapEntry> entries;
};

MultimodeMap multimode_map(
    const PhaseMask &mask, const MomentumGrid &grid, const ImperfectionModel &model, double delay = 0);

/// Fibers to use when the pair k0 is selected.
using CollectionPattern = std::function<std::vector<CollectionMode>(MomentumLabel k0)>;

/// Map computed by running the full circuit at every pair, each normalized by
/// the same pair's distinguishable-photon coincidence probability. The
/// relative phase is read from the propagated two-mode amplitudes (NaN when
/// the propagated pair is no longer anti-correlated).
MultimodeMap propagated_map(const Circuit &circuit, const BiphotonState &source, const CollectionPattern &collection_for);

/// Pair labels in map order.
std::vector<MomentumLabel> half_plane_labels(const MomentumGrid &grid);

}  // namespace homsim

#endif
