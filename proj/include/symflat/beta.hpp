#pragma once

#include <string>
#include <vector>

#include "symflat/cubes.hpp"
#include "symflat/geometry.hpp"
#include "symflat/measure.hpp"

namespace symflat {

struct BetaValue {
    double beta = 0.0;
    Line line;
    Point2 x{};
    double t = 0.0;
    int p = 2;
    double mass = 0.0;        // mu(B(x,t))
    std::size_t count = 0;    // support points in the ball
    bool tie = false;         // covariance isotropic, direction forced to theta = 0
    bool degenerate = false;  // ball support is a single location
};

BetaValue beta2(const DiscreteMeasure& mu, const Point2& x, double t);
BetaValue beta_p(const DiscreteMeasure& mu, const Point2& x, double t, int p);
// beta2 on B_Q = B(z_Q, 3 diam Q); a singleton cube falls back to radius 3 side(Q).
BetaValue beta_cube(const DiscreteMeasure& mu, const Cube& Q);

// beta_cube for every cube, indexed by cube id.
std::vector<BetaValue> beta_cubes(const DiscreteMeasure& mu, const CubeLattice& L);
std::vector<BetaValue> beta_cubes_serial(const DiscreteMeasure& mu, const CubeLattice& L);

struct BetaProfile {
    Point2 x0{};
    double ell = 0.0;
    std::vector<double> scales;  // 2^k ell, k = 0..N
    std::vector<double> betas;
    std::vector<double> cumsum;
    std::vector<Line> lines;

    double total() const { return cumsum.empty() ? 0.0 : cumsum.back(); }
    bool small_beta(double tau) const { return total() <= tau; }
};

// Requires 2^N ell <= diam(spt mu).
BetaProfile multiscale_sum(const DiscreteMeasure& mu, const Point2& x0, double ell, int N);
// Same sums without the diameter precondition; balls past the support just hold all of it.
BetaProfile multiscale_sum_unchecked(const DiscreteMeasure& mu, const Point2& x0, double ell, int N);

// N = round(log2 A)
int scale_count(double A);

// (int_{A l}^{2 A l} beta2(y, r)^2 dr/r)^(1/2), midpoint rule on geometric panels.
double beta_point_cube(const DiscreteMeasure& mu, const Point2& y, const Cube& Q, double A, int panels = 8);

std::string profile_csv(const BetaProfile& prof);

}  // namespace symflat
