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

#ifndef HOMSIM_ANALYSIS_H
#define HOMSIM_ANALYSIS_H

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "homsim/coincidence.h"

namespace homsim {

struct FitParameter {
    std::string name;
    double value;
    double error;  // one standard deviation
};

struct FitResult {
    std::vector<FitParameter> parameters;
    double residual_sum_squares = 0;
    bool converged = false;
    int iterations = 0;
    std::string diagnostics;

    /// Throws std::out_of_range for an unknown name.
    const FitParameter &get(const std::string &name) const;
    double value(const std::string &name) const {
        return get(name).value;
    }
    double error(const std::string &name) const {
        return get(name).error;
    }
};

/// Far-delay window: |dL| > 3 l_c, where gamma < 0.012.
inline constexpr double kBaselineWindow = 3.0;

struct NormalizedValues {
    std::vector<double> values;
    std::vector<double> errors;
    double baseline;
};

/// Divides (value - offset) by the mean of (value - offset) over the far-delay
/// points. Needs at least three of them.
NormalizedValues normalize_values(
    std::span<const double> axis,
    std::span<const double> values,
    std::span<const double> errors,
    double coherence_length,
    double offset = 0);

/// Renormalizes raw counts against their own far-delay baseline after
/// subtracting the scan's accidentals. Sets baseline_counts to the measured
/// baseline.
ScanResult normalize_scan(const ScanResult &raw, double coherence_length);

enum class VisibilityKind { dip, peak };

const char *visibility_kind_name(VisibilityKind kind);

struct VisibilityReport {
    double v;
    VisibilityKind kind;
    double extremum;       // normalized C at the dL = 0 sample
    double baseline = 1;   // normalized data has unit baseline
    bool out_of_range = false;  // raw v fell outside [0, 1] and was clamped
    bool kind_mismatch = false; // e.g. a dip requested but the center is above baseline
};

/// v_dip = (C - C_min) / C and v_peak = (C_max - C) / C on normalized data,
/// taking the extremum at the sample closest to dL = 0.
VisibilityReport visibility(std::span<const double> axis, std::span<const double> normalized, VisibilityKind kind);

/// Fit weights for a scan: standard errors with a floor of one count, so empty
/// bins keep a finite weight. The count scale is baseline_counts when set, else
/// recovered from any nonzero bin as sqrt(raw) / stderr. Empty when the scan
/// carries no usable errors.
std::vector<double> poisson_sigmas(const ScanResult &scan);

/// Peak if the dL = 0 sample sits above the unit baseline, else dip.
VisibilityKind infer_visibility_kind(std::span<const double> axis, std::span<const double> normalized);

/// |amplitude| / offset from a Gaussian fit.
double fitted_visibility(const FitResult &gaussian);

/// Weighted linear least squares for C = alpha (1 - cos phi) + beta. With
/// sigmas the parameter errors come from the given uncertainties; with empty
/// sigmas (unit weights) they come from the residual variance. Needs five or
/// more distinct phases spanning at least pi.
FitResult fit_cosine(std::span<const double> phis, std::span<const double> values, std::span<const double> sigmas = {});

/// Levenberg-Marquardt fit of offset + amplitude exp(-(x - center)^2 / (2 sigma^2)).
///
/// Initialization: offset from the outer quarter of the scan on each side,
/// center at the point furthest from that offset, amplitude its excursion and
/// sigma half the full width at half that excursion. A fit whose center leaves
/// the scan window or whose sigma collapses is reported as not converged.
FitResult fit_gaussian(std::span<const double> axis, std::span<const double> values, std::span<const double> sigmas = {});

/// Inverts C = alpha (1 - cos phi) + beta for phi in [0, pi]. Accepts
/// (C - beta) / alpha up to 1e-6 outside [0, 2] and clamps.
double retrieve_phase(double c, double alpha = 1, double beta = 0);

}  // namespace homsim

#endif
