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

#include "homsim/analysis.h"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

#include "homsim/errors.h"

namespace homsim {

const FitParameter &FitResult::get(const std::string &name) const {
    for (const auto &p : parameters) {
        if (p.name == name) {
            return p;
        }
    }
    throw std::out_of_range("no fit parameter named '" + name + "'");
}

NormalizedValues normalize_values(
    std::span<const double> axis,
    std::span<const double> values,
    std::span<const double> errors,
    double coherence_length,
    double offset) {
    if (axis.size() != values.size() || (!errors.empty() && errors.size() != values.size())) {
        throw ValidationError("scan columns have unequal lengths");
    }
    if (!(coherence_length > 0)) {
        throw ValidationError("coherence length must be positive");
    }
    double sum = 0;
    size_t count = 0;
    for (size_t i = 0; i < axis.size(); i++) {
        if (std::abs(axis[i]) > kBaselineWindow * coherence_length) {
            sum += values[i] - offset;
            count++;
        }
    }
    if (count < 3) {
        throw ValidationError(
            "normalization needs at least 3 points with |dL| > 3 l_c, found " + std::to_string(count));
    }
    NormalizedValues out;
    out.baseline = sum / static_cast<double>(count);
    if (!(out.baseline > 0)) {
        throw ValidationError("far-delay baseline is not positive");
    }
    for (size_t i = 0; i < values.size(); i++) {
        out.values.push_back((values[i] - offset) / out.baseline);
        if (!errors.empty()) {
            out.errors.push_back(errors[i] / out.baseline);
        }
    }
    return out;
}

ScanResult normalize_scan(const ScanResult &raw, double coherence_length) {
    raw.validate();
    std::vector<double> counts(raw.raw.begin(), raw.raw.end());
    std::vector<double> errors;
    for (double c : counts) {
        errors.push_back(std::sqrt(c));
    }
    auto n = normalize_values(raw.axis, counts, errors, coherence_length, raw.accidental_counts);
    ScanResult out = raw;
    out.normalized = std::move(n.values);
    out.standard_error = std::move(n.errors);
    out.baseline_counts = n.baseline;
    return out;
}

const char *visibility_kind_name(VisibilityKind kind) {
    return kind == VisibilityKind::dip ? "dip" : "peak";
}

namespace {

size_t center_index(std::span<const double> axis) {
    if (axis.empty()) {
        throw ValidationError("scan is empty");
    }
    size_t best = 0;
    for (size_t i = 1; i < axis.size(); i++) {
        if (std::abs(axis[i]) < std::abs(axis[best])) {
            best = i;
        }
    }
    return best;
}

}  // namespace

VisibilityKind infer_visibility_kind(std::span<const double> axis, std::span<const double> normalized) {
    if (axis.size() != normalized.size()) {
        throw ValidationError("scan columns have unequal lengths");
    }
    return normalized[center_index(axis)] > 1 ? VisibilityKind::peak : VisibilityKind::dip;
}

VisibilityReport visibility(std::span<const double> axis, std::span<const double> normalized, VisibilityKind kind) {
    if (axis.size() != normalized.size()) {
        throw ValidationError("scan columns have unequal lengths");
    }
    VisibilityReport r;
    r.kind = kind;
    r.extremum = normalized[center_index(axis)];
    double v = kind == VisibilityKind::dip ? (r.baseline - r.extremum) / r.baseline
                                           : (r.extremum - r.baseline) / r.baseline;
    r.kind_mismatch = kind == VisibilityKind::dip ? r.extremum > r.baseline : r.extremum < r.baseline;
    r.out_of_range = v < 0 || v > 1;
    r.v = std::clamp(v, 0.0, 1.0);
    return r;
}

double fitted_visibility(const FitResult &gaussian) {
    return std::abs(gaussian.value("amplitude")) / gaussian.value("offset");
}

std::vector<double> poisson_sigmas(const ScanResult &scan) {
    scan.validate();
    double scale = scan.baseline_counts;
    for (size_t i = 0; !(scale > 0) && i < scan.size(); i++) {
        if (scan.raw[i] > 0 && scan.standard_error[i] > 0) {
            scale = std::sqrt(static_cast<double>(scan.raw[i])) / scan.standard_error[i];
        }
    }
    if (!(scale > 0) || !std::isfinite(scale)) {
        return {};
    }
    std::vector<double> sigmas(scan.size());
    for (size_t i = 0; i < scan.size(); i++) {
        sigmas[i] = std::max(scan.standard_error[i], 1 / scale);
    }
    return sigmas;
}

FitResult fit_cosine(std::span<const double> phis, std::span<const double> values, std::span<const double> sigmas) {
    const size_t n = phis.size();
    if (values.size() != n || (!sigmas.empty() && sigmas.size() != n)) {
        throw ValidationError("fit inputs have unequal lengths");
    }
    std::set<double> distinct(phis.begin(), phis.end());
    if (distinct.size() < 5) {
        throw ValidationError("cosine fit needs at least 5 distinct phase values");
    }
    if (*distinct.rbegin() - *distinct.begin() < std::numbers::pi - 1e-12) {
        throw ValidationError("cosine fit needs phases spanning at least pi");
    }

    // Normal equations for y = alpha x + beta with x = 1 - cos phi.
    double sw = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < n; i++) {
        double w = 1;
        if (!sigmas.empty()) {
            if (!(sigmas[i] > 0)) {
                throw ValidationError("fit uncertainties must be positive");
            }
            w = 1 / (sigmas[i] * sigmas[i]);
        }
        double x = 1 - std::cos(phis[i]);
        sw += w;
        sx += w * x;
        sy += w * values[i];
        sxx += w * x * x;
        sxy += w * x * values[i];
    }
    double det = sw * sxx - sx * sx;
    if (!(det > 1e-12 * sw * sxx)) {
        throw ValidationError("cosine fit design matrix is degenerate");
    }
    double alpha = (sw * sxy - sx * sy) / det;
    double beta = (sxx * sy - sx * sxy) / det;

    double rss = 0;
    for (size_t i = 0; i < n; i++) {
        double w = sigmas.empty() ? 1 : 1 / (sigmas[i] * sigmas[i]);
        double r = values[i] - (alpha * (1 - std::cos(phis[i])) + beta);
        rss += w * r * r;
    }
    double s2 = sigmas.empty() ? rss / static_cast<double>(n - 2) : 1.0;

    FitResult fit;
    fit.parameters = {
        {"alpha", alpha, std::sqrt(sw / det * s2)},
        {"beta", beta, std::sqrt(sxx / det * s2)},
    };
    fit.residual_sum_squares = rss;
    fit.converged = std::isfinite(alpha) && std::isfinite(beta);
    fit.iterations = 1;
    return fit;
}

namespace {

using Vec4 = Eigen::Vector4d;
using Mat4 = Eigen::Matrix4d;

// Parameters in scaled coordinates u = (x - mid) / scale: amplitude, center, sigma, offset.
struct GaussianProblem {
    std::vector<double> u, y, w;

    double rss(const Vec4 &p) const {
        double total = 0;
        for (size_t i = 0; i < u.size(); i++) {
            double d = (u[i] - p[1]) / p[2];
            double r = y[i] - (p[3] + p[0] * std::exp(-0.5 * d * d));
            total += w[i] * r * r;
        }
        return total;
    }

    void normal_equations(const Vec4 &p, Mat4 &h, Vec4 &g) const {
        h.setZero();
        g.setZero();
        for (size_t i = 0; i < u.size(); i++) {
            double d = (u[i] - p[1]) / p[2];
            double e = std::exp(-0.5 * d * d);
            Vec4 j(e, p[0] * e * d / p[2], p[0] * e * d * d / p[2], 1.0);
            double r = y[i] - (p[3] + p[0] * e);
            h += w[i] * j * j.transpose();
            g += w[i] * r * j;
        }
    }
};

Vec4 initial_guess(const std::vector<double> &u, const std::vector<double> &y) {
    const size_t n = u.size();
    const double lo = u.front(), hi = u.back();
    const double quarter = 0.25 * (hi - lo);
    double sum = 0;
    size_t count = 0;
    for (size_t i = 0; i < n; i++) {
        if (u[i] <= lo + quarter || u[i] >= hi - quarter) {
            sum += y[i];
            count++;
        }
    }
    double offset = sum / static_cast<double>(count);
    size_t peak = 0;
    for (size_t i = 1; i < n; i++) {
        if (std::abs(y[i] - offset) > std::abs(y[peak] - offset)) {
            peak = i;
        }
    }
    double amplitude = y[peak] - offset;
    double half = std::abs(amplitude) / 2;

    // Linear interpolation of the half-excursion crossings on each side.
    auto crossing = [&](int step) -> std::optional<double> {
        for (int i = static_cast<int>(peak); i + step >= 0 && i + step < static_cast<int>(n); i += step) {
            double a = std::abs(y[i] - offset), b = std::abs(y[i + step] - offset);
            if (a >= half && b < half) {
                double t = (a - half) / (a - b);
                return u[i] + t * (u[i + step] - u[i]);
            }
        }
        return std::nullopt;
    };
    auto left = crossing(-1);
    auto right = crossing(+1);
    double width;
    if (left && right) {
        width = (*right - *left) / 2;
    } else if (left) {
        width = u[peak] - *left;
    } else if (right) {
        width = *right - u[peak];
    } else {
        width = (hi - lo) / 4;
    }
    if (!(width > 0)) {
        width = (hi - lo) / 4;
    }
    return {amplitude, u[peak], width, offset};
}

}  // namespace

FitResult fit_gaussian(std::span<const double> axis, std::span<const double> values, std::span<const double> sigmas) {
    const size_t n = axis.size();
    if (values.size() != n || (!sigmas.empty() && sigmas.size() != n)) {
        throw ValidationError("fit inputs have unequal lengths");
    }
    if (n < 7) {
        throw ValidationError("Gaussian fit needs at least 7 points");
    }
    std::vector<size_t> order(n);
    for (size_t i = 0; i < n; i++) {
        order[i] = i;
    }
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return axis[a] < axis[b]; });

    const double lo = axis[order.front()], hi = axis[order.back()];
    if (!(hi > lo)) {
        throw ValidationError("Gaussian fit needs a non-degenerate axis");
    }
    const double mid = 0.5 * (lo + hi), scale = 0.5 * (hi - lo);

    GaussianProblem problem;
    for (size_t i : order) {
        problem.u.push_back((axis[i] - mid) / scale);
        problem.y.push_back(values[i]);
        double w = 1;
        if (!sigmas.empty()) {
            if (!(sigmas[i] > 0)) {
                throw ValidationError("fit uncertainties must be positive");
            }
            w = 1 / (sigmas[i] * sigmas[i]);
        }
        problem.w.push_back(w);
    }

    Vec4 p = initial_guess(problem.u, problem.y);
    double rss = problem.rss(p);
    double lambda = 1e-3;
    FitResult fit;
    bool done = false;
    constexpr int kMaxIterations = 500;
    Mat4 h;
    Vec4 g;
    for (fit.iterations = 0; fit.iterations < kMaxIterations && !done; fit.iterations++) {
        problem.normal_equations(p, h, g);
        if (g.cwiseAbs().maxCoeff() <= 1e-15 * std::max(1.0, rss)) {
            done = true;
            break;
        }
        bool accepted = false;
        while (!accepted && lambda < 1e16) {
            Mat4 damped = h;
            damped.diagonal() += lambda * h.diagonal().cwiseMax(1e-12);
            Vec4 step = damped.ldlt().solve(g);
            Vec4 trial = p + step;
            double trial_rss = std::isfinite(trial.sum()) && trial[2] != 0 ? problem.rss(trial) : INFINITY;
            if (trial_rss <= rss) {
                bool small = (step.cwiseAbs().array() <= 1e-12 * (trial.cwiseAbs().array() + 1e-12)).all();
                p = trial;
                rss = trial_rss;
                lambda = std::max(lambda / 10, 1e-12);
                accepted = true;
                if (small || rss == 0) {
                    done = true;
                }
            } else {
                lambda *= 10;
            }
        }
        if (!accepted) {
            // No downhill step at any damping: at a minimum to working precision.
            done = true;
        }
    }

    p[2] = std::abs(p[2]);
    problem.normal_equations(p, h, g);
    Mat4 cov = h.inverse() * (sigmas.empty() ? rss / static_cast<double>(n - 4) : 1.0);

    const double center = mid + p[1] * scale;
    const double sigma = p[2] * scale;
    fit.parameters = {
        {"amplitude", p[0], std::sqrt(std::max(cov(0, 0), 0.0))},
        {"center", center, std::sqrt(std::max(cov(1, 1), 0.0)) * scale},
        {"sigma", sigma, std::sqrt(std::max(cov(2, 2), 0.0)) * scale},
        {"offset", p[3], std::sqrt(std::max(cov(3, 3), 0.0))},
    };
    fit.residual_sum_squares = rss;

    fit.converged = done;
    if (!done) {
        fit.diagnostics = "no convergence after " + std::to_string(fit.iterations) + " iterations";
    } else if (!std::isfinite(p.sum()) || !cov.allFinite()) {
        fit.converged = false;
        fit.diagnostics = "fit parameters or covariance are not finite";
    } else if (!(sigma > 1e-9 * scale)) {
        fit.converged = false;
        fit.diagnostics = "Gaussian width collapsed to zero";
    } else if (center < lo || center > hi) {
        fit.converged = false;
        fit.diagnostics = "fitted center lies outside the scan window";
    }
    return fit;
}

double retrieve_phase(double c, double alpha, double beta) {
    if (!(alpha > 0) || !std::isfinite(alpha) || !std::isfinite(beta) || !std::isfinite(c)) {
        throw ValidationError("phase retrieval needs finite C, beta and positive alpha");
    }
    double u = (c - beta) / alpha;
    if (u < -1e-6 || u > 2 + 1e-6) {
        throw ValidationError("normalized rate is outside the invertible range [beta, 2 alpha + beta]");
    }
    return std::acos(1 - std::clamp(u, 0.0, 2.0));
}

}  // namespace homsim
