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

#ifndef HOMSIM_REFERENCE_H
#define HOMSIM_REFERENCE_H

// Single-threaded reference versions of the parallel scan and map kernels.
// Results must be bit-identical to the OpenMP versions for any thread count.

#include "homsim/coincidence.h"

namespace homsim::serial {

std::vector<uint64_t> sample_counts(std::span<const double> expected, uint64_t seed, uint32_t trials = 1);

ScanResult delay_scan(
    const ImperfectionModel &model, double phi, std::span<const double> delays, uint64_t seed, uint32_t trials = 1);

ScanResult phase_scan(
    const ImperfectionModel &model, std::span<const double> phis, uint64_t seed, uint32_t trials = 1);

std::vector<double> evaluate_circuits(
    std::span<const Circuit> circuits, const BiphotonState &source, MomentumLabel k0);

MultimodeMap multimode_map(
    const PhaseMask &mask, const MomentumGrid &grid, const ImperfectionModel &model, double delay = 0);

}  // namespace homsim::serial

#endif
