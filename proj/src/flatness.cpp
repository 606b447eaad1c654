#include "symflat/flatness.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "symflat/error.hpp"
#include "symflat/measure_io.hpp"
#include "symflat/summation.hpp"
#include "symflat/symmetry.hpp"

namespace symflat {

const char* regime_name(Regime r) { return r == Regime::small_beta ? "small-beta" : "large-beta"; }

namespace {

DistBound dist_bound_common(const DiscreteMeasure& mu, const OmegaMap& om, const Cube& Q, const Point2& z,
                            double A, double tau, const DistBoundOptions& opt) {
    if (!(A > 1.0)) throw Error(Errc::invalid_argument, "A must exceed 1");
    if (!(opt.r_factor >= 1.0 && opt.r_factor <= 2.0)) throw Error(Errc::invalid_argument, "r_factor outside [1,2]");
    if (norm(z - Q.center) > 3.0 * Q.side * (1.0 + 1e-12)) throw Error(Errc::invalid_argument, "z is not in 3Q");
    DistBound out;
    if (opt.good_points) {
        GoodPairOptions g;
        g.max_candidates = opt.max_candidates;
        const GoodPair gp = good_balanced_points(mu, Q, A, opt.c_star, g);
        out.x0 = gp.pair.x0;
        out.x1 = gp.pair.x1;
    } else {
        const BalancedPair bp = balanced_points(mu, Q);
        out.x0 = bp.x0;
        out.x1 = bp.x1;
    }
    out.L_Q = balanced_line(out.x0, out.x1);
    out.r = opt.r_factor * A * Q.side;
    const BetaProfile prof = multiscale_sum_unchecked(mu, out.x0, Q.side, scale_count(A));
    out.beta_sum = prof.total();
    out.regime = prof.small_beta(tau) ? Regime::small_beta : Regime::large_beta;
    out.defect = std::max(norm(c_omega_smooth(mu, om, out.x0, out.r)), norm(c_omega_smooth(mu, om, out.x1, out.r)));

    const double ell2 = Q.side * Q.side;
    const double d = out.L_Q.distance(z);
    if (out.regime == Regime::small_beta) {
        CompensatedSum s;
        for (double b : prof.betas) s.add(b * b);
        out.lhs = (d / out.r) * (d / out.r);
        out.rhs = ell2 / (out.r * out.r) * std::log(A) * s.value();
    } else {
        out.lhs = d;
        out.rhs = ell2 / out.r;
    }
    out.ratio = out.rhs > 0.0 ? out.lhs / out.rhs : (out.lhs > 0.0 ? HUGE_VAL : 0.0);
    return out;
}

}  // namespace

DistBound dist_bound_small_beta(const DiscreteMeasure& mu, const OmegaMap& om, const Cube& Q, const Point2& z,
                                double A, double tau, const DistBoundOptions& opt) {
    DistBound b = dist_bound_common(mu, om, Q, z, A, tau, opt);
    if (b.regime != Regime::small_beta)
        throw Error(Errc::wrong_regime, "multiscale beta sum " + std::to_string(b.beta_sum) + " exceeds tau");
    return b;
}

DistBound dist_bound_large_beta(const DiscreteMeasure& mu, const OmegaMap& om, const Cube& Q, const Point2& z,
                                double A, double tau, const DistBoundOptions& opt) {
    DistBound b = dist_bound_common(mu, om, Q, z, A, tau, opt);
    if (b.regime != Regime::large_beta)
        throw Error(Errc::wrong_regime, "multiscale beta sum " + std::to_string(b.beta_sum) + " is within tau");
    return b;
}

namespace {

struct RowInput {
    double beta = 0.0;
};

CertificationReport certify_impl(const DiscreteMeasure& mu, const OmegaMap& om, const CubeLattice& L, std::size_t S,
                                 const CertifyOptions& opt, bool parallel) {
    if (!(opt.gamma > 0.0 && opt.gamma < 1.0)) throw Error(Errc::invalid_argument, "gamma must lie in (0,1)");
    const int N = scale_count(opt.A);
    const Cube& top = L.cube(S);
    if (top.level >= L.j_max()) throw Error(Errc::resolution_exhausted, "no lattice levels below S");

    const std::vector<BetaValue> betas = parallel ? beta_cubes(mu, L) : beta_cubes_serial(mu, L);
    const std::vector<std::size_t> ids = L.descendants(S);
    CertificationReport rep;
    rep.rows.resize(ids.size());

    auto row_for = [&](std::size_t k) {
        const Cube& Q = L.cube(ids[k]);
        CertificationRow row;
        row.cube_id = Q.id;
        row.level = Q.level;
        row.beta = betas[Q.id].beta;
        row.mass = Q.mass;
        row.side = Q.side;
        row.lhs = row.beta * row.beta * Q.mass;

        CompensatedSum chain;
        std::size_t p = Q.id;
        for (int up = 0;; ++up) {
            chain.add(betas[p].beta * betas[p].beta);
            if (up == N) break;
            if (!L.cube(p).parent) {
                row.truncated_chain = true;
                break;
            }
            p = *L.cube(p).parent;
        }
        const double r = opt.A * Q.side;
        row.rhs = (Q.side * Q.side) / (r * r) * std::log(opt.A) * chain.value() * Q.mass;
        row.ratio = row.rhs > 0.0 ? row.lhs / row.rhs : 0.0;

        const Point2 x0 = Q.members.size() > 1 ? balanced_points(mu, Q).x0 : Q.center;
        const BetaProfile prof = multiscale_sum_unchecked(mu, x0, Q.side, N);
        row.regime = prof.small_beta(opt.tau) ? Regime::small_beta : Regime::large_beta;
        row.defect = norm(c_omega(mu, om, Q.center, r));
        rep.rows[k] = row;
    };

    const long long n = static_cast<long long>(ids.size());
    if (parallel) {
#pragma omp parallel for schedule(dynamic, 2)
        for (long long k = 0; k < n; ++k) row_for(static_cast<std::size_t>(k));
    } else {
        for (long long k = 0; k < n; ++k) row_for(static_cast<std::size_t>(k));
    }

    CompensatedSum lhs, rhs;
    for (const auto& row : rep.rows) {
        const double wgt = std::pow(row.side, 1.0 + opt.gamma);
        lhs.add(row.lhs / wgt);
        rhs.add(row.rhs / wgt);
        rep.max_ratio = std::max(rep.max_ratio, row.ratio);
        rep.max_defect = std::max(rep.max_defect, row.defect);
    }
    // rhs rows already carry the (side/r)^2 log A = log A / A^2 factor
    rep.carleson_lhs = lhs.value();
    rep.carleson_rhs = rhs.value();
    double finest = top.side;
    for (auto id : ids) finest = std::min(finest, L.cube(id).side);
    const double h = mu.pitch() > 0.0 ? mu.pitch() : 1e-9 * finest;
    rep.defect_tol = opt.defect_tol >= 0.0 ? opt.defect_tol : 5.0 * h / (opt.A * finest);
    rep.claimed = rep.max_defect <= rep.defect_tol;
    return rep;
}

}  // namespace

CertificationReport certify(const DiscreteMeasure& mu, const OmegaMap& om, const CubeLattice& L, std::size_t S,
                            const CertifyOptions& opt) {
    return certify_impl(mu, om, L, S, opt, true);
}

CertificationReport certify_serial(const DiscreteMeasure& mu, const OmegaMap& om, const CubeLattice& L,
                                   std::size_t S, const CertifyOptions& opt) {
    return certify_impl(mu, om, L, S, opt, false);
}

std::string CertificationReport::to_csv() const {
    std::ostringstream out;
    out << "cube_id,level,beta,mass,lhs,rhs,ratio,regime\n";
    for (const auto& r : rows)
        out << r.cube_id << ',' << r.level << ',' << format_double(r.beta) << ',' << format_double(r.mass) << ','
            << format_double(r.lhs) << ',' << format_double(r.rhs) << ',' << format_double(r.ratio) << ','
            << regime_name(r.regime) << '\n';
    return out.str();
}

double carleson_sum(const DiscreteMeasure& mu, const CubeLattice& L, std::size_t S, double gamma) {
    if (!(gamma > 0.0 && gamma < 1.0)) throw Error(Errc::invalid_argument, "gamma must lie in (0,1)");
    const auto ids = L.descendants(S);
    std::vector<double> terms(ids.size());
    const long long n = static_cast<long long>(ids.size());
#pragma omp parallel for schedule(dynamic, 4)
    for (long long k = 0; k < n; ++k) {
        const Cube& Q = L.cube(ids[static_cast<std::size_t>(k)]);
        const double b = beta_cube(mu, Q).beta;
        terms[static_cast<std::size_t>(k)] = b * b * Q.mass / std::pow(Q.side, 1.0 + gamma);
    }
    CompensatedSum s;
    for (double t : terms) s.add(t);
    return s.value();
}

double carleson_floor(const DiscreteMeasure& mu, const CubeLattice& L, std::size_t S, double gamma) {
    if (!(gamma > 0.0 && gamma < 1.0)) throw Error(Errc::invalid_argument, "gamma must lie in (0,1)");
    const double h = mu.pitch();
    CompensatedSum s;
    for (auto id : L.descendants(S)) {
        const Cube& Q = L.cube(id);
        s.add((h / Q.side) * (h / Q.side) * Q.mass / std::pow(Q.side, 1.0 + gamma));
    }
    return s.value();
}

FlatVerdict classify_flat(const DiscreteMeasure& mu, double tol) {
    if (!(tol > 0.0)) throw Error(Errc::invalid_argument, "tol must be positive");
    FlatVerdict v;
    v.diam = mu.diameter();
    const Point2 lo = mu.bbox_min();
    const Point2 hi = mu.bbox_max();
    const Point2 mid = 0.5 * (lo + hi);
    const double reach = 0.5 * norm(hi - lo);
    const double t = reach > 0.0 ? reach * (1.0 + 1e-9) + 1e-300 : 1.0;
    v.line = beta2(mu, mid, t).line;
    for (const auto& p : mu.points()) v.max_dev = std::max(v.max_dev, v.line.distance(p));
    v.normalized_dev = v.diam > 0.0 ? v.max_dev / v.diam : 0.0;
    v.flat = v.normalized_dev <= tol;
    if (!v.flat || v.diam == 0.0) return v;

    // ball masses along the interior of the fitted line
    const double rho = v.diam / 10.0;
    double smin = HUGE_VAL, smax = -HUGE_VAL;
    for (const auto& p : mu.points()) {
        const double s = dot(p - v.line.anchor(), v.line.direction());
        smin = std::min(smin, s);
        smax = std::max(smax, s);
    }
    std::vector<double> masses;
    const int n = 32;
    std::vector<std::uint32_t> idx;
    for (int k = 0; k < n; ++k) {
        const double s = smin + rho + (smax - smin - 2.0 * rho) * (k + 0.5) / n;
        const Point2 c = v.line.anchor() + s * v.line.direction();
        CompensatedSum m;
        mu.ball_indices(c, rho, idx);
        for (auto i : idx) m.add(mu.weight(i));
        masses.push_back(m.value());
    }
    double mean = 0.0;
    for (double m : masses) mean += m;
    mean /= static_cast<double>(masses.size());
    double var = 0.0;
    for (double m : masses) var += (m - mean) * (m - mean);
    var /= static_cast<double>(masses.size());
    v.mass_cv = mean > 0.0 ? std::sqrt(var) / mean : 0.0;
    return v;
}

}  // namespace symflat
