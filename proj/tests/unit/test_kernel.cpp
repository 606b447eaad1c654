#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "symflat/error.hpp"
#include "symflat/kernel.hpp"
#include "suites.hpp"

using namespace symflat;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST(Omega, Evaluation) {
    EXPECT_EQ(OmegaMap::identity().omega(1.234), 1.234);
    const OmegaMap p({{1, 0.01, 0.0}});
    EXPECT_NEAR(p.omega(kPi / 4), kPi / 4 + 0.01, 1e-15);
    EXPECT_NEAR(p.omega(kPi / 4), 0.79540, 5e-6);
    for (const auto& om : suite::kernel_suite()) EXPECT_EQ(om.omega(0.0), 0.0);
}

TEST(Omega, OddLift) {
    std::mt19937_64 g(1);
    for (const auto& om : suite::kernel_suite()) {
        for (int k = 0; k < 100; ++k) {
            const double t = 2.0 * kPi * suite::unit(g);
            EXPECT_NEAR(om.omega(t + kPi), om.omega(t) + kPi, 1e-13);
        }
    }
}

TEST(Omega, DerivativesMatchDifferences) {
    const OmegaMap om({{1, 0.008, 0.0}, {2, 0.0, 0.004}, {3, -0.002, 0.0}});
    const double e = 1e-5;
    for (double t : {0.1, 0.7, 1.9, 3.0, 5.5}) {
        EXPECT_NEAR(om.omega_prime(t), (om.omega(t + e) - om.omega(t - e)) / (2 * e), 1e-9);
        EXPECT_NEAR(om.omega_second(t), (om.omega_prime(t + e) - om.omega_prime(t - e)) / (2 * e), 1e-8);
        EXPECT_NEAR(om.omega_third(t), (om.omega_second(t + e) - om.omega_second(t - e)) / (2 * e), 1e-7);
    }
}

TEST(Omega, DeltaClosedForm) {
    EXPECT_EQ(OmegaMap::identity().delta(), 0.0);
    EXPECT_TRUE(OmegaMap::identity().admissible());
    const OmegaMap p({{1, 0.01, 0.0}});
    EXPECT_NEAR(p.inf_prime(), 0.98, 1e-13);
    EXPECT_NEAR(p.sup_prime(), 1.02, 1e-13);
    EXPECT_NEAR(p.delta(), 1.0 / 0.98 - 1.0, 1e-13);
    EXPECT_TRUE(p.admissible());
    // 0.03 sin 2t + 0.02 (cos 4t - 1): w' = 1 + 0.06 cos 2t - 0.08 sin 4t, min by dense scan
    const OmegaMap q({{1, 0.03, 0.0}, {2, 0.0, 0.02}});
    double lo = HUGE_VAL;
    for (int i = 0; i <= 2000000; ++i) {
        const double t = kPi * i / 2000000.0;
        lo = std::min(lo, 1.0 + 0.06 * std::cos(2 * t) - 0.08 * std::sin(4 * t));
    }
    EXPECT_NEAR(q.inf_prime(), lo, 1e-11);
    EXPECT_FALSE(q.admissible());
}

TEST(Omega, NotAHomeomorphism) {
    try {
        OmegaMap({{1, 0.5, 0.0}});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::not_a_homeomorphism);
    }
    EXPECT_THROW(OmegaMap({{1, 0.0, 0.6}}), Error);
}

TEST(Kernel, Values) {
    const Vec2 k = K_eval(OmegaMap::identity(), {3.0, 4.0});
    EXPECT_NEAR(k.x, 3.0, 1e-15);
    EXPECT_NEAR(k.y, 4.0, 1e-15);
    const OmegaMap p({{1, 0.01, 0.0}});
    EXPECT_NEAR(K_eval(p, {1.0, 0.0}).x, 1.0, 1e-15);
    EXPECT_NEAR(K_eval(p, {1.0, 0.0}).y, 0.0, 1e-15);
    EXPECT_THROW(K_eval(p, {0.0, 0.0}), Error);
    EXPECT_EQ(K_or_zero(p, {0.0, 0.0}), (Vec2{0.0, 0.0}));
    std::mt19937_64 g(2);
    for (const auto& om : suite::kernel_suite()) {
        for (int i = 0; i < 200; ++i) {
            const Vec2 x{suite::normal(g), suite::normal(g)};
            const Vec2 s = K_eval(om, x) + K_eval(om, -x);
            EXPECT_LE(norm(s), 1e-12);
            EXPECT_NEAR(norm(K_eval(om, x)), norm(x), 1e-12);
            const Vec2 a = K_eval(om, 2.5 * x);
            const Vec2 b = 2.5 * K_eval(om, x);
            EXPECT_LE(norm(a - b), 1e-12 * norm(x));
        }
    }
}

TEST(Kernel, IdentityDerivatives) {
    std::mt19937_64 g(3);
    for (int i = 0; i < 100; ++i) {
        const Vec2 y{suite::normal(g), suite::normal(g)};
        const Vec2 v{suite::normal(g), suite::normal(g)};
        const Vec2 d = DK_apply(OmegaMap::identity(), y, v);
        EXPECT_NEAR(d.x, v.x, 1e-14 * (1 + norm(v)));
        EXPECT_NEAR(d.y, v.y, 1e-14 * (1 + norm(v)));
        EXPECT_LE(norm(D2K_quadform(OmegaMap::identity(), y, v)), 1e-13 * norm2(v) / norm(y));
    }
    EXPECT_THROW(DK_apply(OmegaMap::identity(), {0, 0}, {1, 0}), Error);
    EXPECT_THROW(D2K_quadform(OmegaMap::identity(), {0, 0}, {1, 0}), Error);
}

TEST(Kernel, DerivativesMatchCentralDifferences) {
    std::mt19937_64 g(4);
    const double e = 1e-5;
    for (const auto& om : suite::kernel_suite()) {
        for (int i = 0; i < 200; ++i) {
            const double t = 2 * kPi * suite::unit(g);
            const Vec2 y = (0.5 + 1.5 * suite::unit(g)) * unit_from_angle(t);
            const Vec2 v = unit_from_angle(2 * kPi * suite::unit(g));
            const Vec2 fd = (K_eval(om, y + e * v) - K_eval(om, y - e * v)) / (2 * e);
            EXPECT_LE(norm(fd - DK_apply(om, y, v)), 1e-8);
            const Vec2 fd2 = (K_eval(om, y + e * v) - 2.0 * K_eval(om, y) + K_eval(om, y - e * v)) / (e * e);
            EXPECT_LE(norm(fd2 - D2K_quadform(om, y, v)), 1e-4);
        }
    }
}

TEST(Kernel, SecondDerivativeAcrossPositiveAxis) {
    const OmegaMap om({{1, 0.005, 0.004}, {2, -0.003, 0.0}});
    const Vec2 x{0.3, -0.8};
    const Vec2 on = D2K_quadform(om, {1.2, 0.0}, x);
    const Vec2 above = D2K_quadform(om, {1.2, 1e-9}, x);
    const Vec2 below = D2K_quadform(om, {1.2, -1e-9}, x);
    EXPECT_LE(norm(on - above), 1e-7);
    EXPECT_LE(norm(on - below), 1e-7);
}

TEST(DotLemmas, IdentityIsExact) {
    const LemmaReport r = check_dot_lemmas(OmegaMap::identity(), 360);
    EXPECT_EQ(r.violations(), 0u);
    EXPECT_EQ(r.cases, 360u * 360u);
    EXPECT_NEAR(r.min_sign_nu, 0.1, 0.02);
    EXPECT_LE(r.max_abs_nu, 0.1 + 1e-12);
    EXPECT_NEAR(r.boundary_min_nu, 0.1, 1e-12);
}

TEST(DotLemmas, AdmissibleKernelHasNoViolations) {
    const LemmaReport r = check_dot_lemmas(OmegaMap({{1, 0.01, 0.0}}), 720);
    EXPECT_EQ(r.violations(), 0u);
    EXPECT_GE(r.boundary_min_nu, 0.05);
    EXPECT_GE(r.boundary_min_eL, 0.05);
}

TEST(DotLemmas, ThresholdGate) {
    const OmegaMap q({{1, 0.03, 0.0}, {2, 0.0, 0.02}});
    EXPECT_THROW(check_dot_lemmas(q, 100), Error);
    DotLemmaOptions o;
    o.threshold = 1.0;
    EXPECT_NO_THROW(check_dot_lemmas(q, 100, o));
}

TEST(KernelJson, RoundTripAndErrors) {
    const OmegaMap om({{1, 0.005, 0.004}, {2, -0.003, 0.0}});
    const OmegaMap back = parse_kernel_json(kernel_to_json(om));
    ASSERT_EQ(back.modes().size(), 2u);
    for (double t : {0.1, 1.0, 2.0}) EXPECT_EQ(back.omega(t), om.omega(t));
    EXPECT_EQ(parse_kernel_json("{\"coeffs\": []}").delta(), 0.0);
    EXPECT_THROW(parse_kernel_json("{"), Error);
    EXPECT_THROW(parse_kernel_json("{\"coeffs\": [{\"a\": 1}]}"), Error);
    EXPECT_THROW(parse_kernel_json("{\"coeffs\": [{\"k\": 0}]}"), Error);
    EXPECT_THROW(parse_kernel_json("{\"modes\": []}"), Error);
    EXPECT_THROW(load_kernel_json("/nonexistent/k.json"), Error);
}
