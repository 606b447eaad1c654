#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "symflat/error.hpp"
#include "symflat/generators.hpp"
#include "symflat/measure.hpp"
#include "symflat/measure_io.hpp"
#include "suites.hpp"

using namespace symflat;

namespace {

DiscreteMeasure random_cloud(std::uint64_t seed, std::size_t n) {
    std::mt19937_64 g(seed);
    std::vector<Point2> p;
    std::vector<double> w;
    for (std::size_t i = 0; i < n; ++i) {
        p.push_back({suite::unit(g) * 4.0 - 2.0, suite::unit(g) * 3.0 - 1.0});
        w.push_back(0.1 + suite::unit(g));
    }
    return DiscreteMeasure(p, w);
}

}  // namespace

TEST(Line, CanonicalForm) {
    const Line a = Line::through({0.0, 0.0}, std::numbers::pi);
    EXPECT_NEAR(a.theta(), 0.0, 1e-15);
    const Line b = Line::through_points({2.0, 3.0}, {2.0, 5.0});
    EXPECT_NEAR(b.theta(), std::numbers::pi / 2, 1e-15);
    EXPECT_NEAR(b.distance({0.0, 0.0}), 2.0, 1e-15);
    EXPECT_NEAR(b.anchor().x, 2.0, 1e-15);
    EXPECT_NEAR(b.anchor().y, 0.0, 1e-15);
    const Line c = Line::through_points({0.0, 0.0}, {1.0, 1.0});
    EXPECT_NEAR(c.theta(), std::numbers::pi / 4, 1e-15);
    EXPECT_THROW(Line::through_points({1.0, 1.0}, {1.0, 1.0}), Error);
}

TEST(Line, ProjectionIsOnLine) {
    const Line l = Line::through({1.0, -2.0}, 0.7);
    const Point2 q = l.project({3.0, 4.0});
    EXPECT_NEAR(l.distance(q), 0.0, 1e-14);
    EXPECT_NEAR(l.distance({3.0, 4.0}), norm(q - Point2{3.0, 4.0}), 1e-14);
}

TEST(Measure, RejectsBadInput) {
    EXPECT_THROW(DiscreteMeasure({}, {}), Error);
    EXPECT_THROW(DiscreteMeasure({{0, 0}}, {0.0}), Error);
    EXPECT_THROW(DiscreteMeasure({{0, 0}}, {-1.0}), Error);
    EXPECT_THROW(DiscreteMeasure({{NAN, 0}}, {1.0}), Error);
    EXPECT_THROW(DiscreteMeasure({{0, 0}, {1, 1}}, {1.0}), Error);
    EXPECT_THROW(DiscreteMeasure({{0, 0}}, {1.0}, -1.0), Error);
}

TEST(Measure, BallMassMatchesBruteForce) {
    const DiscreteMeasure mu = random_cloud(11, 3000);
    std::mt19937_64 g(5);
    for (int k = 0; k < 300; ++k) {
        const Point2 x{suite::unit(g) * 5.0 - 2.5, suite::unit(g) * 4.0 - 1.5};
        const double r = 0.01 + 2.0 * suite::unit(g);
        EXPECT_EQ(ball_mass(mu, x, r), ball_mass_bruteforce(mu, x, r));
    }
    // a ball around a support point that holds nothing else
    EXPECT_EQ(ball_mass(mu, mu.point(0), 1e-12), mu.weight(0));
}

TEST(Measure, BallIsOpen) {
    const DiscreteMeasure mu({{0, 0}, {1, 0}, {2, 0}}, {1, 1, 1});
    EXPECT_EQ(ball_mass(mu, {0, 0}, 1.0), 1.0);
    EXPECT_EQ(ball_mass(mu, {0, 0}, 1.0 + 1e-12), 2.0);
}

TEST(Measure, DiameterIsFarthestPair) {
    const DiscreteMeasure mu = random_cloud(3, 400);
    double best = 0.0;
    for (std::size_t i = 0; i < mu.size(); ++i)
        for (std::size_t j = i + 1; j < mu.size(); ++j) best = std::max(best, norm(mu.point(i) - mu.point(j)));
    EXPECT_EQ(mu.diameter(), best);
}

TEST(Measure, AhlforsOnLine) {
    GeneratorSpec s;
    s.kind = GeneratorKind::line;
    s.h = 1e-3;
    s.extent = 10.0;
    const DiscreteMeasure mu = generate(s);
    // grid centers, open balls: radius 0.1 holds 199 points of weight h
    const RegularityReport rep = ahlfors_report(mu, {{0.0, 0.0}}, {0.1});
    EXPECT_NEAR(rep.upper_ratio, 1.99, 1e-9);
    EXPECT_NEAR(rep.C0_upper, 1.99, 1e-9);
    EXPECT_NEAR(rep.C0_lower, 1.0, 0.0);
    const RegularityReport many = ahlfors_report(mu, 0.01, 1.0, 50, 8);
    // off-grid radii: 2 floor(r/h) + 1 points, so the sup is 2 + h/r_min
    EXPECT_LE(many.constant(), 2.0 + 1e-3 / 0.01 + 1e-9);
    EXPECT_GE(many.constant(), 1.9);
}

TEST(Measure, DensityProfileRequiresDecreasingScales) {
    GeneratorSpec s;
    const DiscreteMeasure mu = generate(s);
    const auto d = density_profile(mu, {0.0, 0.0}, {1.0, 0.5, 0.25});
    ASSERT_EQ(d.size(), 3u);
    for (double v : d) EXPECT_NEAR(v, 2.0, 2e-3 / 0.25);
    EXPECT_THROW(density_profile(mu, {0.0, 0.0}, {0.25, 0.5}), Error);
}

TEST(Measure, RescaleMapsBalls) {
    const DiscreteMeasure mu = random_cloud(8, 500);
    const Point2 x{0.3, 0.1};
    const DiscreteMeasure t = rescale(mu, x, 0.5);
    // T_{x,r}[mu]/r: B(0,s) of the blow-up is B(x, r s) of mu, mass divided by r
    EXPECT_NEAR(ball_mass(t, {0.0, 0.0}, 1.0), ball_mass_bruteforce(mu, x, 0.5) / 0.5, 1e-12);
    EXPECT_THROW(rescale(mu, x, 0.0), Error);
}

TEST(Measure, RigidMotionsKeepMass) {
    const DiscreteMeasure mu = random_cloud(9, 200);
    const DiscreteMeasure m2 = rotate(translate(mu, {1.0, -2.0}), 0.4);
    EXPECT_NEAR(m2.total_mass(), mu.total_mass(), 1e-12);
    EXPECT_NEAR(m2.diameter(), mu.diameter(), 1e-12);
    EXPECT_THROW(restrict_to_ball(mu, {50.0, 50.0}, 1.0), Error);
}

TEST(Measure, SampleCentersDeterministicAndInCore) {
    GeneratorSpec s;
    s.kind = GeneratorKind::equidistant_lines;
    s.m = 5;
    s.gap = 1.0;
    s.extent = 20.0;
    const DiscreteMeasure mu = generate(s);
    const auto a = sample_centers(mu, 100, 4.0, 7);
    const auto b = sample_centers(mu, 100, 4.0, 7);
    ASSERT_EQ(a.size(), 100u);
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i], b[i]);
        EXPECT_LE(std::abs(a[i].x), 6.0);
        EXPECT_EQ(a[i].y, 0.0);  // narrow axis collapses onto the middle line
    }
}

TEST(MeasureIO, RoundTripIsBitExact) {
    GeneratorSpec s;
    s.kind = GeneratorKind::perturbed_line;
    s.extent = 1.0;
    s.sigma = 0.01;
    s.seed = 42;
    const DiscreteMeasure mu = generate(s);
    std::stringstream ss;
    write_measure_csv(ss, mu);
    const DiscreteMeasure back = read_measure_csv(ss);
    ASSERT_EQ(back.size(), mu.size());
    for (std::size_t i = 0; i < mu.size(); ++i) {
        EXPECT_EQ(back.point(i), mu.point(i));
        EXPECT_EQ(back.weight(i), mu.weight(i));
    }
    ASSERT_TRUE(back.spacing().has_value());
    EXPECT_EQ(*back.spacing(), *mu.spacing());
}

TEST(MeasureIO, ParseErrors) {
    auto parse = [](const std::string& s) {
        std::stringstream ss(s);
        return read_measure_csv(ss);
    };
    EXPECT_THROW(parse("a,b,c\n1,2,3\n"), Error);
    EXPECT_THROW(parse("x,y,w\n1,2\n"), Error);
    EXPECT_THROW(parse("x,y,w\n1,2,0\n"), Error);
    EXPECT_THROW(parse("x,y,w\n1,nan,1\n"), Error);
    EXPECT_THROW(parse("x,y,w\n"), Error);
    try {
        parse("x,y,w\n0,0,1\n1,2,-1\n");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::parse_error);
        EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
    }
    const DiscreteMeasure mu = parse("\xEF\xBB\xBFx,y,w\n# spacing=0.5\n0,0,1\n\n0.5,0,1\n");
    EXPECT_EQ(mu.size(), 2u);
    EXPECT_EQ(mu.pitch(), 0.5);
}

TEST(Generators, DocumentedExamples) {
    GeneratorSpec s;
    s.kind = GeneratorKind::line;
    s.h = 0.001;
    s.extent = 10.0;
    const DiscreteMeasure line = generate(s);
    EXPECT_EQ(line.size(), 10001u);
    EXPECT_NEAR(line.total_mass(), 10.0, 0.001 + 1e-12);

    s.kind = GeneratorKind::circle;
    const DiscreteMeasure circle = generate(s);
    EXPECT_NEAR(circle.total_mass(), 2.0 * std::numbers::pi, 2e-3);

    s.kind = GeneratorKind::equidistant_lines;
    s.m = 5;
    s.gap = 1.0;
    const DiscreteMeasure lines = generate(s);
    EXPECT_EQ(lines.size(), 5u * 10001u);
    EXPECT_NEAR(lines.bbox_max().y - lines.bbox_min().y, 4.0, 1e-15);

    s.kind = GeneratorKind::cross;
    const DiscreteMeasure cross = generate(s);
    EXPECT_EQ(cross.size(), 2u * 10001u - 1u);
    EXPECT_NEAR(cross.total_mass(), 2.0 * line.total_mass(), 1e-9);

    s.kind = GeneratorKind::lebesgue_grid;
    s.extent = 1.0;
    s.h = 0.01;
    const DiscreteMeasure grid = generate(s);
    EXPECT_EQ(grid.size(), 101u * 101u);
    EXPECT_NEAR(grid.total_mass(), 1.0201, 1e-12);
}

TEST(Generators, SymmetricSampling) {
    GeneratorSpec s;
    s.kind = GeneratorKind::line;
    s.h = 1e-3;
    s.extent = 10.0;
    const DiscreteMeasure mu = generate(s);
    const std::size_t n = mu.size();
    for (std::size_t i = 0; i < n; ++i) EXPECT_EQ(mu.point(i).x, -mu.point(n - 1 - i).x);
}

TEST(Generators, SeedDeterminesNoise) {
    GeneratorSpec s;
    s.kind = GeneratorKind::perturbed_line;
    s.extent = 1.0;
    s.seed = 3;
    const DiscreteMeasure a = generate(s);
    const DiscreteMeasure b = generate(s);
    s.seed = 4;
    const DiscreteMeasure c = generate(s);
    bool differ = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a.point(i), b.point(i));
        differ = differ || !(a.point(i) == c.point(i));
    }
    EXPECT_TRUE(differ);
}

TEST(Generators, InvalidParameters) {
    GeneratorSpec s;
    s.h = 0.0;
    EXPECT_THROW(generate(s), Error);
    s.h = 1e-3;
    s.extent = -1.0;
    EXPECT_THROW(generate(s), Error);
    s.extent = 1.0;
    s.kind = GeneratorKind::equidistant_lines;
    s.m = 0;
    EXPECT_THROW(generate(s), Error);
    EXPECT_THROW(parse_generator_kind("spiral"), Error);
    EXPECT_EQ(parse_generator_kind("cross"), GeneratorKind::cross);
}
