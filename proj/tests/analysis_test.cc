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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "homsim/analysis.h"
#include "homsim/errors.h"

namespace homsim {
namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> span_axis(double lc, int n, double span) {
    std::vector<double> v;
    for (int i = 0; i < n; i++) {
        v.push_back(-span * lc + 2 * span * lc * i / (n - 1));
    }
    return v;
}

std::vector<double> phase_axis(int n) {
    std::vector<double> v;
    for (int j = 0; j < n; j++) {
        v.push_back(2 * kPi * j / (n - 1));
    }
    return v;
}

TEST(NormalizeScan, PiScanHasUnitBaselineAndDoubleCenter) {
    auto m = ideal_model();
    double lc = m.coherence.coherence_length;
    auto axis = span_axis(lc, 41, 6);
    auto raw = delay_scan(m, kPi, axis, 12);
    auto n = normalize_scan(raw, lc);
    double far = 0;
    int count = 0;
    for (size_t i = 0; i < axis.size(); i++) {
        if (std::abs(axis[i]) > 3 * lc) {
            far += n.normalized[i];
            count++;
        }
    }
    EXPECT_NEAR(far / count, 1, 1e-12);
    EXPECT_NEAR(n.normalized[20], 2, 0.05);
}

TEST(NormalizeScan, ConstantScanIsAllOnes) {
    double lc = 1e-5;
    auto axis = span_axis(lc, 21, 5);
    std::vector<double> values(axis.size(), 731.0), errors(axis.size(), 2.0);
    auto n = normalize_values(axis, values, errors, lc);
    for (size_t i = 0; i < axis.size(); i++) {
        EXPECT_EQ(n.values[i], 1.0);
        EXPECT_NEAR(n.errors[i], 2.0 / 731, 1e-15);
    }
    EXPECT_EQ(n.baseline, 731.0);
}

TEST(NormalizeScan, NeedsFarDelayPoints) {
    double lc = 1e-5;
    auto axis = span_axis(lc, 21, 0.9);
    std::vector<double> values(axis.size(), 5.0), errors(axis.size(), 1.0);
    EXPECT_THROW(normalize_values(axis, values, errors, lc), ValidationError);
    std::vector<double> two = {-4 * lc, 0, 4 * lc};
    std::vector<double> v3 = {1, 1, 1}, e3 = {1, 1, 1};
    EXPECT_THROW(normalize_values(two, v3, e3, lc), ValidationError);
}

TEST(NormalizeScan, SubtractsAccidentals) {
    auto m = ideal_model();
    m.accidental_rate = 2000;
    double lc = m.coherence.coherence_length;
    auto axis = span_axis(lc, 41, 6);
    auto raw = delay_scan(m, 0, axis, 4);
    raw.raw = std::vector<uint64_t>(raw.expected.begin(), raw.expected.end());
    auto n = normalize_scan(raw, lc);
    double far = 0;
    int count = 0;
    for (size_t i = 0; i < axis.size(); i++) {
        if (std::abs(axis[i]) > 3 * lc) {
            far += static_cast<double>(raw.raw[i]) - raw.accidental_counts;
            count++;
        }
    }
    EXPECT_NEAR(n.normalized[20], 0, 1e-12);
    EXPECT_NEAR(n.baseline_counts, far / count, 1e-9);
    EXPECT_LT(std::abs(n.baseline_counts - 5000), 10);
}

TEST(NormalizeScan, IdempotentOnNormalizedData) {
    auto m = ideal_model();
    double lc = m.coherence.coherence_length;
    auto axis = span_axis(lc, 61, 8);
    auto once = normalize_scan(delay_scan(m, 2.0, axis, 77), lc);
    std::vector<double> vals = once.normalized, errs = once.standard_error;
    auto twice = normalize_values(axis, vals, errs, lc);
    for (size_t i = 0; i < axis.size(); i++) {
        EXPECT_NEAR(twice.values[i], vals[i], 1e-12);
        EXPECT_NEAR(twice.errors[i], errs[i], 1e-12);
    }
}

TEST(Visibility, IdealScansAreExactlyOne) {
    auto m = ideal_model();
    double lc = m.coherence.coherence_length;
    auto axis = span_axis(lc, 41, 5);
    std::vector<double> dip, peak;
    for (double x : axis) {
        dip.push_back(analytic_rate(0, x, m));
        peak.push_back(analytic_rate(kPi, x, m));
    }
    auto vd = visibility(axis, dip, VisibilityKind::dip);
    auto vp = visibility(axis, peak, VisibilityKind::peak);
    EXPECT_EQ(vd.v, 1.0);
    EXPECT_EQ(vp.v, 1.0);
    EXPECT_FALSE(vd.kind_mismatch);
    EXPECT_FALSE(vp.out_of_range);
    EXPECT_EQ(infer_visibility_kind(axis, dip), VisibilityKind::dip);
    EXPECT_EQ(infer_visibility_kind(axis, peak), VisibilityKind::peak);
}

TEST(Visibility, ReducedContrastPeak) {
    ImperfectionModel m = ideal_model();
    m.mu = 0.89;
    double lc = m.coherence.coherence_length;
    auto axis = span_axis(lc, 41, 5);
    std::vector<double> peak;
    for (double x : axis) {
        peak.push_back(analytic_rate(kPi, x, m));
    }
    auto v = visibility(axis, peak, VisibilityKind::peak);
    EXPECT_NEAR(v.v, 0.89, 1e-12);
    EXPECT_NEAR(v.extremum, 1.89, 1e-12);
}

TEST(Visibility, FlagsMismatchAndClamps) {
    std::vector<double> axis = {-2, -1, 0, 1, 2};
    std::vector<double> peak = {1, 1.2, 1.5, 1.2, 1};
    auto v = visibility(axis, peak, VisibilityKind::dip);
    EXPECT_TRUE(v.kind_mismatch);
    std::vector<double> huge = {1, 1, 3, 1, 1};
    auto w = visibility(axis, huge, VisibilityKind::peak);
    EXPECT_TRUE(w.out_of_range);
    EXPECT_EQ(w.v, 1.0);
}

TEST(FitCosine, ExactModelRecovered) {
    auto phis = phase_axis(13);
    for (double alpha : {0.5, 0.75, 1.0}) {
        for (double beta : {0.0, 0.2, 0.5}) {
            std::vector<double> c;
            for (double p : phis) {
                c.push_back(alpha * (1 - std::cos(p)) + beta);
            }
            auto f = fit_cosine(phis, c);
            EXPECT_TRUE(f.converged);
            EXPECT_NEAR(f.value("alpha"), alpha, 1e-12);
            EXPECT_NEAR(f.value("beta"), beta, 1e-12);
            EXPECT_NEAR(f.residual_sum_squares, 0, 1e-20);
        }
    }
}

TEST(FitCosine, DegenerateDesignsRejected) {
    std::vector<double> same(13, 1.0), vals(13, 0.5);
    EXPECT_THROW(fit_cosine(same, vals), ValidationError);
    std::vector<double> four = {0, 1, 2, 3.5}, v4 = {0, 1, 1, 2};
    EXPECT_THROW(fit_cosine(four, v4), ValidationError);
    std::vector<double> narrow = {0, 0.2, 0.4, 0.6, 0.8, 1.0}, v6(6, 1.0);
    EXPECT_THROW(fit_cosine(narrow, v6), ValidationError);
    // Phases that differ by whole turns give one regressor value.
    std::vector<double> turns = {0, 2 * kPi, 4 * kPi, 6 * kPi, 8 * kPi}, v5(5, 1.0);
    EXPECT_THROW(fit_cosine(turns, v5), ValidationError);
    auto phis = phase_axis(13);
    std::vector<double> bad_sigma(13, 0.0);
    std::vector<double> c(13, 1.0);
    EXPECT_THROW(fit_cosine(phis, c, bad_sigma), ValidationError);
}

TEST(FitCosine, NoisyGeneratorWithinTolerance) {
    auto phis = phase_axis(13);
    auto scan = phase_scan(CosineModel{0.89, 0.12}, 1e4, phis, 2024);
    auto f = fit_cosine(scan.axis, scan.normalized, poisson_sigmas(scan));
    EXPECT_NEAR(f.value("alpha"), 0.89, 0.03);
    EXPECT_NEAR(f.value("beta"), 0.12, 0.03);
    EXPECT_GT(f.error("alpha"), 0);
    EXPECT_GT(f.error("beta"), 0);
}

TEST(FitCosine, UncertaintyCalibrationOverSeeds) {
    auto phis = phase_axis(13);
    int covered = 0;
    for (uint64_t seed = 0; seed < 100; seed++) {
        auto scan = phase_scan(CosineModel{0.89, 0.12}, 1e4, phis, seed);
        auto f = fit_cosine(scan.axis, scan.normalized, poisson_sigmas(scan));
        if (std::abs(f.value("alpha") - 0.89) <= 2 * f.error("alpha")) {
            covered++;
        }
    }
    EXPECT_GE(covered, 90);
}

TEST(FitGaussian, NoiselessDipExact) {
    auto m = ideal_model();
    double lc = m.coherence.coherence_length;
    auto axis = span_axis(lc, 41, 5);
    std::vector<double> c;
    for (double x : axis) {
        c.push_back(analytic_rate(0, x, m));
    }
    auto f = fit_gaussian(axis, c);
    ASSERT_TRUE(f.converged) << f.diagnostics;
    EXPECT_NEAR(f.value("amplitude"), -1, 1e-6);
    EXPECT_NEAR(f.value("center"), 0, 1e-6 * lc);
    EXPECT_NEAR(f.value("sigma") / lc, 1, 1e-6);
    EXPECT_NEAR(f.value("offset"), 1, 1e-6);
    EXPECT_NEAR(fitted_visibility(f), 1, 1e-6);
}

TEST(FitGaussian, NoisyWidthWithinTwoPercent) {
    auto m = ideal_model();
    double lc = m.coherence.coherence_length;
    auto axis = span_axis(lc, 41, 5);
    for (double phi : {0.0, kPi}) {
        auto scan = normalize_scan(delay_scan(m, phi, axis, 31), lc);
        auto f = fit_gaussian(scan.axis, scan.normalized, poisson_sigmas(scan));
        ASSERT_TRUE(f.converged) << f.diagnostics;
        EXPECT_NEAR(f.value("sigma") / lc, 1, 0.02);
        EXPECT_GT(f.error("sigma"), 0);
    }
}

TEST(FitGaussian, OffCenterPeak) {
    std::vector<double> x, y;
    for (int i = 0; i < 50; i++) {
        x.push_back(i * 0.2 - 3);
        y.push_back(0.3 + 2.5 * std::exp(-std::pow(x.back() - 1.7, 2) / (2 * 0.6 * 0.6)));
    }
    auto f = fit_gaussian(x, y);
    ASSERT_TRUE(f.converged) << f.diagnostics;
    EXPECT_NEAR(f.value("center"), 1.7, 1e-8);
    EXPECT_NEAR(f.value("sigma"), 0.6, 1e-8);
    EXPECT_NEAR(f.value("amplitude"), 2.5, 1e-8);
    EXPECT_NEAR(f.value("offset"), 0.3, 1e-8);
}

TEST(FitGaussian, MonotoneDataIsFlagged) {
    std::vector<double> x, y;
    for (int i = 0; i < 21; i++) {
        x.push_back(i);
        y.push_back(0.1 * i);
    }
    auto f = fit_gaussian(x, y);
    EXPECT_FALSE(f.converged);
    EXPECT_FALSE(f.diagnostics.empty());
}

TEST(FitGaussian, TooFewPointsRejected) {
    std::vector<double> x = {0, 1, 2, 3, 4, 5}, y = {1, 1, 0, 1, 1, 1};
    EXPECT_THROW(fit_gaussian(x, y), ValidationError);
}

TEST(PoissonSigmas, OneCountFloor) {
    ScanResult s;
    s.axis = {0, 1, 2};
    s.raw = {0, 4, 100};
    s.expected = {0, 4, 100};
    s.normalized = {0, 0.08, 2};
    s.standard_error = {0, 0.04, 0.2};
    auto sig = poisson_sigmas(s);
    ASSERT_EQ(sig.size(), 3u);
    EXPECT_NEAR(sig[0], 0.02, 1e-15);
    EXPECT_EQ(sig[1], 0.04);
    s.baseline_counts = 10;
    EXPECT_NEAR(poisson_sigmas(s)[0], 0.1, 1e-15);
    s.baseline_counts = 0;
    s.raw = {0, 0, 0};
    EXPECT_TRUE(poisson_sigmas(s).empty());
}

TEST(RetrievePhase, EndpointsAndRoundTrip) {
    EXPECT_EQ(retrieve_phase(0), 0);
    EXPECT_DOUBLE_EQ(retrieve_phase(2), kPi);
    auto m = ideal_model();
    for (int j = 0; j < 100; j++) {
        double phi = kPi * j / 99;
        EXPECT_NEAR(retrieve_phase(analytic_rate(phi, 0, m)), phi, 1e-9);
    }
    EXPECT_NEAR(retrieve_phase(0.12 + 0.89, 0.89, 0.12), kPi / 2, 1e-12);
}

TEST(RetrievePhase, ToleranceAndRejection) {
    EXPECT_EQ(retrieve_phase(-5e-7), 0);
    EXPECT_DOUBLE_EQ(retrieve_phase(2 + 5e-7), kPi);
    EXPECT_THROW(retrieve_phase(-1e-3), ValidationError);
    EXPECT_THROW(retrieve_phase(2.01), ValidationError);
    EXPECT_THROW(retrieve_phase(1, 0, 0), ValidationError);
}

}  // namespace
}  // namespace homsim
