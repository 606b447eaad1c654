#pragma once

#include <string>
#include <vector>

#include "symflat/beta.hpp"
#include "symflat/cubes.hpp"
#include "symflat/kernel.hpp"
#include "symflat/measure.hpp"

namespace symflat {

enum class Regime { small_beta, large_beta };

const char* regime_name(Regime r);

struct DistBoundOptions {
    double r_factor = 1.0;           // r = r_factor * A * side, inside [A side, 2 A side]
    bool good_points = true;         // balanced pair from the F/G filters
    double c_star = 4.0;
    std::size_t max_candidates = 32;
};

struct DistBound {
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;
    Regime regime = Regime::small_beta;
    double beta_sum = 0.0;  // multiscale sum at x0
    double defect = 0.0;    // max |C_phi| at x0, x1: the symmetry hypothesis check
    Line L_Q;
    Point2 x0{};
    Point2 x1{};
    double r = 0.0;
};

DistBound dist_bound_small_beta(const DiscreteMeasure& mu, const OmegaMap& om, const Cube& Q, const Point2& z,
                                double A, double tau, const DistBoundOptions& opt = {});
DistBound dist_bound_large_beta(const DiscreteMeasure& mu, const OmegaMap& om, const Cube& Q, const Point2& z,
                                double A, double tau, const DistBoundOptions& opt = {});

struct CertificationRow {
    std::size_t cube_id = 0;
    int level = 0;
    double beta = 0.0;
    double mass = 0.0;
    double side = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;
    Regime regime = Regime::small_beta;
    double defect = 0.0;          // |C_Omega(z_Q, A side)|
    bool truncated_chain = false;  // the A-ancestor lies above the lattice top
};

struct CertifyOptions {
    double A = 16.0;
    double tau = 0.1;
    double gamma = 0.5;
    double defect_tol = -1.0;  // negative: 5 h / (A * finest side)
};

struct CertificationReport {
    std::vector<CertificationRow> rows;
    double carleson_lhs = 0.0;
    double carleson_rhs = 0.0;
    double max_ratio = 0.0;
    double max_defect = 0.0;
    double defect_tol = 0.0;
    bool claimed = false;  // symmetry hypothesis passed

    std::string to_csv() const;
};

CertificationReport certify(const DiscreteMeasure& mu, const OmegaMap& om, const CubeLattice& L, std::size_t S,
                            const CertifyOptions& opt = {});
CertificationReport certify_serial(const DiscreteMeasure& mu, const OmegaMap& om, const CubeLattice& L,
                                   std::size_t S, const CertifyOptions& opt = {});

// sum over Q below S of beta2(Q)^2 mu(Q) / side(Q)^(1+gamma)
double carleson_sum(const DiscreteMeasure& mu, const CubeLattice& L, std::size_t S, double gamma);
// The same sum with every beta replaced by h / side: what pure discretization noise can reach.
double carleson_floor(const DiscreteMeasure& mu, const CubeLattice& L, std::size_t S, double gamma);

struct FlatVerdict {
    bool flat = false;
    Line line;
    double max_dev = 0.0;
    double diam = 0.0;
    double normalized_dev = 0.0;  // max_dev / diam
    double mass_cv = 0.0;         // only filled when flat
};

FlatVerdict classify_flat(const DiscreteMeasure& mu, double tol);

}  // namespace symflat
