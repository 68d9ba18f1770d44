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
#include <omp.h>

#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "homsim/coincidence.h"
#include "homsim/errors.h"
#include "homsim/reference.h"

namespace homsim {
namespace {

constexpr double kPi = std::numbers::pi;

ImperfectionModel unbalanced(double t) {
    ImperfectionModel m = ideal_model();
    m.transmittance = t;
    m.reflectance = 1 - t;
    return m;
}

std::vector<double> delays(double lc, int n, double span = 5) {
    std::vector<double> v;
    for (int i = 0; i < n; i++) {
        v.push_back(-span * lc + 2 * span * lc * i / (n - 1));
    }
    return v;
}

TEST(AnalyticRate, IdealValues) {
    auto m = ideal_model();
    EXPECT_EQ(analytic_rate(0, 0, m), 0);
    EXPECT_EQ(analytic_rate(kPi, 0, m), 2);
    EXPECT_NEAR(analytic_rate(kPi / 2, 0, m), 1, 1e-15);
}

TEST(AnalyticRate, UnbalancedSplit) {
    auto m = unbalanced(0.6);
    EXPECT_NEAR(m.split_visibility(), 0.48 / 0.52, 1e-15);
    EXPECT_NEAR(analytic_rate(kPi, 0, m), 1 + 0.48 / 0.52, 1e-12);
    EXPECT_NEAR(analytic_rate(kPi, 0, m), 1.923, 1e-3);
}

TEST(AnalyticRate, PeriodicEvenAndBounded) {
    auto m = unbalanced(0.7);
    m.mu = 0.8;
    double vm = m.split_visibility() * m.mu;
    for (int i = 0; i < 50; i++) {
        double phi = -3 + 0.37 * i, dl = (i - 25) * 3e-6;
        EXPECT_NEAR(analytic_rate(phi, dl, m), analytic_rate(phi + 2 * kPi, dl, m), 1e-12);
        EXPECT_EQ(analytic_rate(phi, dl, m), analytic_rate(-phi, dl, m));
        EXPECT_EQ(analytic_rate(phi, dl, m), analytic_rate(phi, -dl, m));
        EXPECT_GE(analytic_rate(phi, dl, m), 1 - vm - 1e-15);
        EXPECT_LE(analytic_rate(phi, dl, m), 1 + vm + 1e-15);
    }
}

TEST(ImperfectionModel, Validation) {
    auto m = ideal_model();
    m.mu = 1.2;
    EXPECT_THROW(m.validate(), ValidationError);
    m = unbalanced(0.5);
    m.reflectance = 0.6;
    EXPECT_THROW(m.validate(), ValidationError);
    m = ideal_model();
    m.pair_rate = 0;
    EXPECT_THROW(m.validate(), ValidationError);
    m = ideal_model();
    m.accidental_rate = -1;
    EXPECT_THROW(m.validate(), ValidationError);
}

TEST(DelayScan, DipPeakAndFlat) {
    auto m = ideal_model();
    double lc = m.coherence.coherence_length;
    auto axis = delays(lc, 41, 3);
    auto dip = delay_scan(m, 0, axis, 1);
    auto peak = delay_scan(m, kPi, axis, 1);
    auto flat = delay_scan(m, kPi / 2, axis, 1);
    ASSERT_EQ(dip.size(), 41u);
    EXPECT_EQ(dip.expected[20], 0);
    EXPECT_EQ(peak.expected[20], 2 * peak.baseline_counts);
    for (size_t i = 0; i < 41; i++) {
        EXPECT_GE(dip.expected[i], dip.expected[20]);
        EXPECT_LE(peak.expected[i], peak.expected[20]);
        EXPECT_NEAR(dip.expected[i], dip.expected[40 - i], 1e-9);
        EXPECT_NEAR(flat.expected[i] / flat.baseline_counts, 1, 1e-12);
        if (i > 0 && i <= 20) {
            EXPECT_LE(dip.expected[i], dip.expected[i - 1]);
        }
    }
    EXPECT_THROW(delay_scan(m, 0, std::vector<double>{}, 1), ValidationError);
}

TEST(DelayScan, ExpectedCountsIncludeAccidentals) {
    auto m = ideal_model();
    m.accidental_rate = 50;
    m.pair_rate = 2000;
    m.integration_time = 3;
    std::vector<double> axis = {1.0};
    auto s = delay_scan(m, 0, axis, 4, 2);
    EXPECT_NEAR(s.expected[0], 2 * (2000 * 3 * 0.5 + 50 * 3), 1e-9);
    EXPECT_NEAR(s.accidental_counts, 300, 1e-12);
    EXPECT_NEAR(s.baseline_counts, 6000, 1e-12);
    EXPECT_NEAR(s.normalized[0], (s.raw[0] - 300.0) / 6000, 1e-15);
    EXPECT_NEAR(s.standard_error[0], std::sqrt(double(s.raw[0])) / 6000, 1e-15);
}

TEST(PhaseScan, IdealCosineAndPeriodicity) {
    auto m = ideal_model();
    std::vector<double> phis;
    for (int j = 0; j < 13; j++) {
        phis.push_back(2 * kPi * j / 12);
    }
    auto s = phase_scan(m, phis, 9);
    for (size_t j = 0; j < phis.size(); j++) {
        EXPECT_NEAR(s.expected[j] / s.baseline_counts, 1 - std::cos(phis[j]), 1e-12);
    }
    EXPECT_NEAR(s.expected.front(), s.expected.back(), 1e-9);
    EXPECT_THROW(phase_scan(m, std::vector<double>{}, 1), ValidationError);
}

TEST(PhaseScan, StructuralFloorFromImperfections) {
    auto m = unbalanced(0.62);
    m.mu = 0.93;
    double alpha = m.split_visibility() * m.mu;
    std::vector<double> phis = {0, 1, 2, 3};
    auto s = phase_scan(m, phis, 3);
    for (size_t j = 0; j < phis.size(); j++) {
        EXPECT_NEAR(s.expected[j] / s.baseline_counts, alpha * (1 - std::cos(phis[j])) + (1 - alpha), 1e-12);
    }
}

TEST(PhaseScan, CosineLawGenerator) {
    CosineModel law{0.89, 0.12};
    EXPECT_NEAR(law(0), 0.12, 1e-15);
    EXPECT_NEAR(law(kPi), 1.9, 1e-15);
    std::vector<double> phis = {0, kPi / 2, kPi};
    auto s = phase_scan(law, 1e4, phis, 5);
    EXPECT_NEAR(s.expected[0], 1200, 1e-9);
    EXPECT_NEAR(s.expected[1], 1.01e4, 1e-9);
    EXPECT_NEAR(s.expected[2], 1.9e4, 1e-9);
    EXPECT_THROW(phase_scan(CosineModel{1, -0.5}, 1e4, phis, 5), ValidationError);
}

TEST(SampleCounts, ZeroMeanAndConcentration) {
    std::vector<double> e = {0, 0, 1e4, 1e4, 1e4};
    for (uint64_t seed : {0ull, 1ull, 42ull}) {
        auto c = sample_counts(e, seed);
        EXPECT_EQ(c[0], 0u);
        EXPECT_EQ(c[1], 0u);
        for (int i = 2; i < 5; i++) {
            EXPECT_LE(std::abs(static_cast<double>(c[i]) - 1e4), 500);
        }
        EXPECT_EQ(c, sample_counts(e, seed));
    }
    EXPECT_NE(sample_counts(e, 1), sample_counts(e, 2));
    EXPECT_THROW(sample_counts(std::vector<double>{-1}, 0), ValidationError);
    EXPECT_THROW(sample_counts(std::vector<double>{NAN}, 0), ValidationError);
}

TEST(SampleCounts, PointsAreOrderIndependent) {
    std::vector<double> e(50);
    for (size_t i = 0; i < e.size(); i++) {
        e[i] = 10.0 * i;
    }
    auto full = sample_counts(e, 17);
    for (size_t i = 0; i < e.size(); i++) {
        EXPECT_EQ(full[i], sample_point(e[i], 17, i));
    }
    std::vector<double> prefix(e.begin(), e.begin() + 10);
    auto head = sample_counts(prefix, 17);
    EXPECT_TRUE(std::equal(head.begin(), head.end(), full.begin()));
}

TEST(SampleCounts, TrialsSumIndependentWindows) {
    double total = 0;
    const int points = 2000;
    std::vector<double> e(points, 4.0);
    auto c = sample_counts(e, 3, 5);
    for (auto x : c) {
        total += static_cast<double>(x);
    }
    double mean = total / points;
    EXPECT_NEAR(mean, 20, 5 * std::sqrt(20.0 / points));
}

TEST(SampleCounts, PoissonMeanAndVariance) {
    const int points = 20000;
    std::vector<double> e(points, 7.5);
    auto c = sample_counts(e, 8);
    double s = 0, s2 = 0;
    for (auto x : c) {
        s += x;
        s2 += double(x) * x;
    }
    double mean = s / points, var = s2 / points - mean * mean;
    EXPECT_NEAR(mean, 7.5, 5 * std::sqrt(7.5 / points));
    EXPECT_NEAR(var / 7.5, 1, 0.05);
}

class ThreadCounts : public ::testing::TestWithParam<int> {
   protected:
    void SetUp() override {
        saved_ = omp_get_max_threads();
        omp_set_num_threads(GetParam());
    }
    void TearDown() override {
        omp_set_num_threads(saved_);
    }
    int saved_ = 1;
};

TEST_P(ThreadCounts, SamplerMatchesSerial) {
    std::vector<double> e(1000);
    for (size_t i = 0; i < e.size(); i++) {
        e[i] = 0.5 * i;
    }
    EXPECT_EQ(sample_counts(e, 123, 3), serial::sample_counts(e, 123, 3));
}

bool same_scan(const ScanResult &a, const ScanResult &b) {
    return a.axis == b.axis && a.raw == b.raw && a.expected == b.expected && a.normalized == b.normalized &&
           a.standard_error == b.standard_error && a.baseline_counts == b.baseline_counts &&
           a.accidental_counts == b.accidental_counts;
}

TEST_P(ThreadCounts, ScansMatchSerial) {
    auto m = unbalanced(0.55);
    m.mu = 0.9;
    m.accidental_rate = 3;
    auto axis = delays(m.coherence.coherence_length, 301);
    EXPECT_TRUE(same_scan(delay_scan(m, 1.0, axis, 9, 2), serial::delay_scan(m, 1.0, axis, 9, 2)));
    std::vector<double> phis;
    for (int j = 0; j < 97; j++) {
        phis.push_back(j * 0.07);
    }
    EXPECT_TRUE(same_scan(phase_scan(m, phis, 4), serial::phase_scan(m, phis, 4)));
}

TEST_P(ThreadCounts, CircuitsMatchSerial) {
    auto g = build_grid(9, 1.0);
    auto src = spdc_state(g);
    std::vector<Circuit> circuits;
    for (int j = 0; j < 60; j++) {
        auto c = with_idler_delay(hom_circuit(g, {2, 1}, 0.1 * j), (j - 30) * 2e-6);
        c.beamsplitter = Beamsplitter::from_transmittance(0.3 + 0.005 * j);
        circuits.push_back(c);
    }
    EXPECT_EQ(evaluate_circuits(circuits, src, {2, 1}), serial::evaluate_circuits(circuits, src, {2, 1}));
}

TEST_P(ThreadCounts, MapMatchesSerial) {
    auto g = build_grid(31, 1.0);
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> u(-5, 5);
    std::vector<double> v(g.mode_count());
    for (auto &x : v) {
        x = u(rng);
    }
    auto mask = pixel_mask(v, g);
    auto m = unbalanced(0.45);
    auto a = multimode_map(mask, g, m, 1e-5);
    auto b = serial::multimode_map(mask, g, m, 1e-5);
    ASSERT_EQ(a.entries.size(), b.entries.size());
    for (size_t i = 0; i < a.entries.size(); i++) {
        EXPECT_EQ(a.entries[i].k0, b.entries[i].k0);
        EXPECT_EQ(a.entries[i].rate, b.entries[i].rate);
        EXPECT_EQ(a.entries[i].relative_phase, b.entries[i].relative_phase);
    }
}

INSTANTIATE_TEST_SUITE_P(Parallel, ThreadCounts, ::testing::Values(1, 2, 3, 8));

TEST(CircuitScan, MatchesAnalyticModel) {
    auto g = build_grid(11, 1.0);
    auto src = spdc_state(g);
    MomentumLabel k0{2, 0};
    for (double t : {0.5, 0.6}) {
        auto m = unbalanced(t);
        auto c = hom_circuit(g, k0, 2.0);
        c.beamsplitter = Beamsplitter::from_transmittance(t);
        auto axis = delays(m.coherence.coherence_length, 21);
        auto full = delay_scan(c, src, k0, m.counting(), axis, 5);
        auto closed = delay_scan(m, 2.0, axis, 5);
        EXPECT_NEAR(full.baseline_counts, closed.baseline_counts, 1e-6);
        for (size_t i = 0; i < axis.size(); i++) {
            EXPECT_NEAR(full.expected[i], closed.expected[i], 1e-6);
        }
    }
}

TEST(CircuitScan, RejectsMismatchedInputs) {
    auto g = build_grid(5, 1.0);
    std::vector<Circuit> circuits = {hom_circuit(g, {1, 0}, 0)};
    std::vector<double> axis = {0, 1};
    EXPECT_THROW(circuit_scan(axis, circuits, spdc_state(g), {1, 0}, {}, 0), ValidationError);
    auto bad = circuits;
    bad[0].beamsplitter = Beamsplitter{0.5, 0.6};
    EXPECT_THROW(evaluate_circuits(bad, spdc_state(g), {1, 0}), ValidationError);
}

TEST(MultimodeMap, StepMaskPattern) {
    auto g = build_grid(21, 1.0);
    auto map = multimode_map(step_mask(kPi, g), g, ideal_model());
    EXPECT_EQ(map.entries.size(), (g.mode_count() - 1) / 2);
    for (const auto &e : map.entries) {
        EXPECT_TRUE(e.k0.ix > 0 || (e.k0.ix == 0 && e.k0.iy > 0));
        EXPECT_NEAR(e.rate, e.k0.ix == 0 ? 0.0 : 2.0, 1e-12);
    }
    auto zero = multimode_map(step_mask(0, g), g, ideal_model());
    for (const auto &e : zero.entries) {
        EXPECT_EQ(e.rate, 0);
    }
    EXPECT_THROW(multimode_map(step_mask(0, g), build_grid(5, 1.0), ideal_model()), ValidationError);
}

TEST(MultimodeMap, HalfPlaneCoversEachPairOnce) {
    auto g = build_grid(7, 1.0);
    std::set<uint32_t> seen;
    for (auto k : half_plane_labels(g)) {
        EXPECT_TRUE(seen.insert(g.index(k)).second);
        EXPECT_TRUE(seen.insert(g.index(-k)).second);
    }
    EXPECT_EQ(seen.size(), g.mode_count() - 1);
}

TEST(MultimodeMap, PropagatedMatchesClosedForm) {
    auto g = build_grid(9, 1.0);
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(-kPi, kPi);
    std::vector<double> v(g.mode_count());
    for (auto &x : v) {
        x = u(rng);
    }
    auto mask = pixel_mask(v, g);
    Circuit c;
    c.signal_arm = {Mirror{}, Mirror{}};
    c.idler_arm = {Mirror{}, mask, Mirror{}};
    auto full = propagated_map(c, spdc_state(g), [](MomentumLabel k0) { return default_collection(k0); });
    auto closed = multimode_map(mask, g, ideal_model());
    ASSERT_EQ(full.entries.size(), closed.entries.size());
    for (size_t i = 0; i < full.entries.size(); i++) {
        EXPECT_EQ(full.entries[i].k0, closed.entries[i].k0);
        EXPECT_NEAR(full.entries[i].rate, 1 - std::cos(closed.entries[i].relative_phase), 1e-12);
        EXPECT_NEAR(std::cos(full.entries[i].relative_phase), std::cos(closed.entries[i].relative_phase), 1e-12);
    }
}

}  // namespace
}  // namespace homsim
