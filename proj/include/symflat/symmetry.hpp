#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "symflat/cubes.hpp"
#include "symflat/cutoff.hpp"
#include "symflat/geometry.hpp"
#include "symflat/kernel.hpp"
#include "symflat/measure.hpp"

namespace symflat {

// (1/r^2) sum_{|x-p|<r} w K(x - p), with K(0) := 0.
Vec2 c_omega(const DiscreteMeasure& mu, const OmegaMap& om, const Point2& x, double r);
// (1/r^2) sum w K(x - p) phi(|x-p|^2/r^2); requires the annulus cutoff.
Vec2 c_omega_smooth(const DiscreteMeasure& mu, const OmegaMap& om, const Point2& x, double r,
                    const CutoffSpec& cutoff = CutoffSpec::phi());
// sum w K(x - p)/|x - p|^2 varphi(|x-p|^2/r^2) over |x - p| < outer;
// outer = infinity sums the whole support.
Vec2 riesz_truncated(const DiscreteMeasure& mu, const OmegaMap& om, const Point2& x, double r,
                     const CutoffSpec& cutoff = CutoffSpec::varphi(), double outer = HUGE_VAL);

struct PvProfile {
    std::vector<double> epsilons;
    std::vector<Vec2> values;
    double max_successive_diff = 0.0;
};

// Truncations over B(x, R_out) minus B(x, eps), eps decreasing.
PvProfile pv_profile(const DiscreteMeasure& mu, const OmegaMap& om, const Point2& x,
                     const std::vector<double>& epsilons, double R_out);

enum class Functional { c_omega, c_omega_smooth, riesz };

const char* functional_name(Functional f);
Functional parse_functional(const std::string& s);

struct DefectOptions {
    Functional functional = Functional::c_omega;
    double riesz_outer = 4.0;  // outer truncation of R, in units of r
};

Vec2 evaluate_functional(const DiscreteMeasure& mu, const OmegaMap& om, const Point2& x, double r,
                         const DefectOptions& opt);
// Distance (relative to r_max) beyond which a functional never looks.
double functional_reach(const DefectOptions& opt);

struct SymmetryReport {
    Functional functional = Functional::c_omega;
    std::vector<Point2> centers;
    std::vector<double> scales;
    std::vector<Vec2> values;  // center-major: values[c * scales.size() + s]
    double sup_norm = 0.0;
    double h = 0.0;
    double r_min = 0.0;
    double riesz_outer = 0.0;

    const Vec2& value(std::size_t c, std::size_t s) const { return values[c * scales.size() + s]; }
    std::string to_json() const;
    std::string to_csv() const;
};

SymmetryReport defect_report(const DiscreteMeasure& mu, const OmegaMap& om, const std::vector<Point2>& centers,
                             const std::vector<double>& scales, const DefectOptions& opt = {});
SymmetryReport defect_report_serial(const DiscreteMeasure& mu, const OmegaMap& om,
                                    const std::vector<Point2>& centers, const std::vector<double>& scales,
                                    const DefectOptions& opt = {});
// Centers sampled away from the support's edges by the functional's reach.
SymmetryReport defect_report(const DiscreteMeasure& mu, const OmegaMap& om, std::size_t n_centers, double r_min,
                             double r_max, std::size_t n_scales, const DefectOptions& opt = {},
                             std::uint64_t seed = 1);

// Linear/error split around x0 at radius r, annulus cutoff throughout.
struct SplitFrame {
    Point2 x0{};
    double r = 0.0;
    double side = 0.0;
    double A = 16.0;
    bool window_ok = true;  // r in [A side, 2 A side]
};

SplitFrame split_frame(const Cube& Q, const Point2& x0, double A, double r);

struct LinearParts {
    Vec2 A2{};
    Vec2 B121{};
    Vec2 B121_radial{};     // I: radial part of DK
    Vec2 B121_spherical{};  // II: spherical part of DK
    Vec2 T{};               // A2 + B121
    Vec2 exact{};           // A2 + 2 B121, the true derivative of C_phi at x0
};

LinearParts linear_parts(const DiscreteMeasure& mu, const OmegaMap& om, const SplitFrame& f, const Vec2& x);
Vec2 linear_term_T(const DiscreteMeasure& mu, const OmegaMap& om, const SplitFrame& f, const Vec2& x);
// (C_phi(x0 + x) - C_phi(x0)) - T(x)
Vec2 error_term_E(const DiscreteMeasure& mu, const OmegaMap& om, const SplitFrame& f, const Vec2& x);

// Surrogates of the analytic error terms with every mean-value point moved to
// the expansion point; diagnostics only.
struct ErrorDiagnostics {
    Vec2 A3{};
    Vec2 B11{};
    Vec2 B122{};
    Vec2 B2{};
};

ErrorDiagnostics error_diagnostics(const DiscreteMeasure& mu, const OmegaMap& om, const SplitFrame& f,
                                   const Vec2& x);

}  // namespace symflat
