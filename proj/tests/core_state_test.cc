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
#include <set>

#include "homsim/biphoton_state.h"
#include "homsim/elements.h"
#include "homsim/errors.h"

namespace homsim {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(MomentumGrid, ThreeByThreeHasOriginAndFourPairs) {
    auto g = build_grid(3, 1.0);
    EXPECT_EQ(g.mode_count(), 9u);
    EXPECT_TRUE(g.contains({0, 0}));
    for (MomentumLabel k : {MomentumLabel{1, 0}, {0, 1}, {1, 1}, {1, -1}}) {
        EXPECT_TRUE(g.contains(k));
        EXPECT_TRUE(g.contains(-k));
        EXPECT_NE(g.index(k), g.index(-k));
    }
}

TEST(MomentumGrid, RejectsBadShapes) {
    EXPECT_THROW(build_grid(64, 1.0), ValidationError);
    EXPECT_THROW(build_grid(1, 1.0), ValidationError);
    EXPECT_THROW(build_grid(-3, 1.0), ValidationError);
    EXPECT_THROW(build_grid(5, 0.0), ValidationError);
    EXPECT_THROW(build_grid(5, -1.0), ValidationError);
    EXPECT_THROW(build_grid(5, NAN), ValidationError);
}

TEST(MomentumGrid, LargeGridModeCountIsOdd) {
    auto g = build_grid(101, 2.0);
    EXPECT_EQ(g.mode_count(), 10201u);
    EXPECT_EQ(g.mode_count() % 2, 1u);
    EXPECT_DOUBLE_EQ(g.kx({50, 0}), 2.0);
    EXPECT_DOUBLE_EQ(g.ky({0, -25}), -1.0);
}

TEST(MomentumGrid, NegationIsABijection) {
    auto g = build_grid(7, 1.0);
    std::set<uint32_t> image;
    for (uint32_t i = 0; i < g.mode_count(); i++) {
        MomentumLabel k = g.label(i);
        EXPECT_EQ(g.index(k), i);
        image.insert(g.index(-k));
    }
    EXPECT_EQ(image.size(), g.mode_count());
}

TEST(SpdcState, UniformAnticorrelatedAmplitudes) {
    auto g = build_grid(3, 1.0);
    auto s = spdc_state(g);
    ASSERT_EQ(s.entries().size(), 9u);
    for (const auto &e : s.entries()) {
        EXPECT_EQ(g.label(e.idler), -g.label(e.signal));
        EXPECT_NEAR(std::abs(e.amplitude - Complex(1.0 / 3, 0)), 0, 1e-15);
    }
    EXPECT_NEAR(s.amplitude({0, 0}, {0, 0}).real(), 1.0 / 3, 1e-15);
    EXPECT_NEAR(std::abs(inner_product(s, s) - 1.0), 0, 1e-12);
}

TEST(SpdcState, ExchangeSymmetric) {
    for (int n : {3, 5, 11}) {
        auto s = spdc_state(build_grid(n, 1.0));
        EXPECT_EQ(exchange(s), s);
    }
}

TEST(SpdcState, EnvelopeStaysNormalized) {
    auto s = spdc_state(build_grid(9, 1.0), {.envelope_width = 0.4});
    EXPECT_NEAR(s.norm_squared(), 1, 1e-12);
    EXPECT_GT(std::abs(s.amplitude({0, 0}, {0, 0})), std::abs(s.amplitude({4, 4}, {-4, -4})));
    EXPECT_EQ(exchange(s), s);
}

TEST(BiphotonState, RejectsDuplicatesAndNonFinite) {
    auto g = build_grid(3, 1.0);
    EXPECT_THROW(BiphotonState(g, {{0, 8, 1}, {0, 8, 1}}), ValidationError);
    EXPECT_THROW(BiphotonState(g, {{0, 8, Complex(NAN, 0)}}), ValidationError);
    EXPECT_THROW(BiphotonState(g, {{0, 9, 1}}), ValidationError);
}

TEST(PostSelect, RawSourceIsSymmetric) {
    auto g = build_grid(9, 1.0);
    auto t = post_select(spdc_state(g), {2, 1});
    EXPECT_NEAR(std::abs(t.c_plus - Complex(std::sqrt(0.5), 0)), 0, 1e-15);
    EXPECT_NEAR(std::abs(t.c_minus - Complex(std::sqrt(0.5), 0)), 0, 1e-15);
    EXPECT_NEAR(t.relative_phase(), 0, 1e-15);
}

TEST(PostSelect, PiStepGivesAntisymmetricPair) {
    auto g = build_grid(9, 1.0);
    auto s = apply_mask(spdc_state(g), step_mask(kPi, g), Arm::idler);
    auto t = post_select(s, {3, -2});
    Complex ratio = t.c_minus / t.c_plus;
    EXPECT_NEAR(ratio.real(), -1, 1e-12);
    EXPECT_NEAR(ratio.imag(), 0, 1e-12);
    EXPECT_NEAR(std::norm(t.c_plus) + std::norm(t.c_minus), 1, 1e-12);
}

TEST(PostSelect, RejectsOriginAndEmptyPair) {
    auto g = build_grid(5, 1.0);
    EXPECT_THROW(post_select(spdc_state(g), {0, 0}), ValidationError);
    auto only = BiphotonState(g, {{g.index({0, 0}), g.index({0, 0}), 1}});
    EXPECT_THROW(post_select(only, {1, 0}), ValidationError);
    EXPECT_THROW(post_select(spdc_state(g), {3, 0}), ValidationError);
}

TEST(Exchange, Involution) {
    auto g = build_grid(5, 1.0);
    auto s = apply_mirror(apply_mask(spdc_state(g), step_mask(0.7, g), Arm::idler), Arm::signal);
    s = set_delay(s, Arm::idler, 1e-5);
    auto x = exchange(s);
    EXPECT_EQ(x.arm(Arm::signal), s.arm(Arm::idler));
    EXPECT_EQ(exchange(x), s);
    EXPECT_DOUBLE_EQ(x.norm_squared(), s.norm_squared());
}

// <psi_phi| X |psi_phi> from the inner product of the embedded state with its
// exchanged copy, independent of the closed form.
TEST(Exchange, ExpectationIsCosineOfRelativePhase) {
    auto g = build_grid(5, 1.0);
    for (int j = 0; j < 25; j++) {
        double phi = 2 * kPi * j / 24;
        auto two = two_mode_state({1, 2}, phi);
        auto full = to_state(two, g);
        double by_overlap = inner_product(full, exchange(full)).real();
        EXPECT_NEAR(by_overlap, std::cos(phi), 1e-12) << phi;
        EXPECT_NEAR(exchange_expectation(two), std::cos(phi), 1e-12) << phi;
        EXPECT_NEAR(exchange_expectation(full), std::cos(phi), 1e-12) << phi;
    }
    EXPECT_NEAR(exchange_expectation(two_mode_state({1, 0}, kPi)), -1, 1e-15);
}

TEST(Exchange, MapsPhiToMinusPhiUpToPhase) {
    auto t = two_mode_state({2, 0}, 0.9);
    auto x = exchange(t);
    EXPECT_EQ(x.k0, t.k0);
    EXPECT_NEAR(std::abs(x.c_plus - t.c_minus), 0, 1e-15);
    EXPECT_NEAR(std::abs(x.c_minus - t.c_plus), 0, 1e-15);
}

TEST(InnerProduct, GridMismatchRejected) {
    EXPECT_THROW(inner_product(spdc_state(build_grid(3, 1.0)), spdc_state(build_grid(5, 1.0))), ValidationError);
}

}  // namespace
}  // namespace homsim
