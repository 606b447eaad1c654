#include "symflat/beta.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "symflat/error.hpp"
#include "symflat/measure_io.hpp"
#include "symflat/summation.hpp"

namespace symflat {

namespace {

constexpr double kPi = std::numbers::pi;

struct BallData {
    std::vector<std::uint32_t> idx;
    double mass = 0.0;
};

BallData gather(const DiscreteMeasure& mu, const Point2& x, double t) {
    if (!(t > 0.0)) throw Error(Errc::invalid_argument, "beta radius must be positive");
    BallData b;
    mu.ball_indices(x, t, b.idx);
    if (b.idx.empty()) throw Error(Errc::empty_ball, "no support in B(x,t)");
    CompensatedSum m;
    for (auto i : b.idx) m.add(mu.weight(i));
    b.mass = m.value();
    return b;
}

// (1/t) sum w (|<p - x, n> - c| / t)^p over the ball
double line_cost(const DiscreteMeasure& mu, const BallData& b, const Point2& x, double t, double theta,
                 double c, int p) {
    const Vec2 n = perp(unit_from_angle(theta));
    CompensatedSum s;
    for (auto i : b.idx) {
        const double d = std::abs(dot(mu.point(i) - x, n) - c) / t;
        s.add(mu.weight(i) * (p == 1 ? d : d * d));
    }
    return s.value() / t;
}

}  // namespace

BetaValue beta2(const DiscreteMeasure& mu, const Point2& x, double t) {
    const BallData b = gather(mu, x, t);
    BetaValue out;
    out.x = x;
    out.t = t;
    out.p = 2;
    out.mass = b.mass;
    out.count = b.idx.size();

    // coordinates relative to x keep the moments well scaled
    CompensatedSum2 first;
    for (auto i : b.idx) first.add(mu.weight(i) * (mu.point(i) - x));
    const Vec2 c = first.value() / b.mass;
    CompensatedSum sxx, sxy, syy;
    for (auto i : b.idx) {
        const Vec2 d = mu.point(i) - x - c;
        const double w = mu.weight(i);
        sxx.add(w * d.x * d.x);
        sxy.add(w * d.x * d.y);
        syy.add(w * d.y * d.y);
    }
    const double a = sxx.value();
    const double bxy = sxy.value();
    const double d = syy.value();
    const double tr = a + d;
    const double gap = std::hypot(0.5 * (a - d), bxy);
    double theta = 0.0;
    if (tr == 0.0) {
        out.degenerate = true;
        out.tie = true;
    } else if (gap <= 1e-12 * tr) {
        out.tie = true;
    } else {
        theta = 0.5 * std::atan2(2.0 * bxy, a - d);
    }
    out.line = Line::through(x + c, theta);

    const Vec2 n = out.line.normal();
    CompensatedSum s;
    for (auto i : b.idx) {
        const double dist = dot(mu.point(i) - x - c, n) / t;
        s.add(mu.weight(i) * dist * dist);
    }
    out.beta = std::sqrt(std::max(0.0, s.value() / t));
    return out;
}

BetaValue beta_p(const DiscreteMeasure& mu, const Point2& x, double t, int p) {
    if (p == 2) return beta2(mu, x, t);
    if (p != 1) throw Error(Errc::invalid_argument, "beta exponent must be 1 or 2");
    const BallData b = gather(mu, x, t);

    auto f = [&](const std::array<double, 2>& v) { return line_cost(mu, b, x, t, v[0], v[1], 1); };

    std::array<double, 2> best{0.0, 0.0};
    double best_f = HUGE_VAL;
    constexpr int n_theta = 180;
    constexpr int n_off = 64;
    for (int i = 0; i < n_theta; ++i) {
        for (int k = 0; k < n_off; ++k) {
            const std::array<double, 2> v{kPi * i / n_theta, -t + 2.0 * t * (k + 0.5) / n_off};
            const double fv = f(v);
            if (fv < best_f) { best_f = fv; best = v; }
        }
    }
    // the beta2 line is a competitor too
    const BetaValue b2 = beta2(mu, x, t);
    {
        const std::array<double, 2> v{b2.line.theta(), dot(b2.line.anchor() - x, b2.line.normal())};
        const double fv = f(v);
        if (fv < best_f) { best_f = fv; best = v; }
    }

    // Nelder-Mead on (theta, offset)
    std::array<std::array<double, 2>, 3> s{best, best, best};
    s[1][0] += kPi / n_theta;
    s[2][1] += 2.0 * t / n_off;
    std::array<double, 3> fs{f(s[0]), f(s[1]), f(s[2])};
    for (int it = 0; it < 4000; ++it) {
        std::array<int, 3> o{0, 1, 2};
        std::sort(o.begin(), o.end(), [&](int a, int c) { return fs[a] < fs[c]; });
        const auto lo = s[o[0]], mid = s[o[1]], hi = s[o[2]];
        const double flo = fs[o[0]], fmid = fs[o[1]], fhi = fs[o[2]];
        if (std::abs(fhi - flo) <= 1e-15 * (1.0 + std::abs(flo)) &&
            std::abs(hi[0] - lo[0]) + std::abs(hi[1] - lo[1]) / t < 1e-12)
            break;
        const std::array<double, 2> cen{0.5 * (lo[0] + mid[0]), 0.5 * (lo[1] + mid[1])};
        auto along = [&](double k) {
            return std::array<double, 2>{cen[0] + k * (hi[0] - cen[0]), cen[1] + k * (hi[1] - cen[1])};
        };
        const auto xr = along(-1.0);
        const double fr = f(xr);
        if (fr < flo) {
            const auto xe = along(-2.0);
            const double fe = f(xe);
            if (fe < fr) { s[o[2]] = xe; fs[o[2]] = fe; } else { s[o[2]] = xr; fs[o[2]] = fr; }
        } else if (fr < fmid) {
            s[o[2]] = xr; fs[o[2]] = fr;
        } else {
            const auto xc = fr < fhi ? along(-0.5) : along(0.5);
            const double fc = f(xc);
            if (fc < std::min(fr, fhi)) {
                s[o[2]] = xc; fs[o[2]] = fc;
            } else {
                for (int k : {o[1], o[2]}) {
                    s[k] = {0.5 * (s[k][0] + lo[0]), 0.5 * (s[k][1] + lo[1])};
                    fs[k] = f(s[k]);
                }
            }
        }
    }
    for (int k = 0; k < 3; ++k)
        if (fs[k] < best_f) { best_f = fs[k]; best = s[k]; }

    BetaValue out;
    out.x = x;
    out.t = t;
    out.p = 1;
    out.mass = b.mass;
    out.count = b.idx.size();
    out.degenerate = b2.degenerate;
    const Line through_origin = Line::through({0.0, 0.0}, best[0]);
    out.line = Line::through(x + best[1] * perp(unit_from_angle(best[0])), through_origin.theta());
    out.beta = best_f;
    return out;
}

BetaValue beta_cube(const DiscreteMeasure& mu, const Cube& Q) {
    if (Q.diam > 0.0) return beta2(mu, Q.center, 3.0 * Q.diam);
    BetaValue v = beta2(mu, Q.center, 3.0 * Q.side);
    v.degenerate = true;
    return v;
}

std::vector<BetaValue> beta_cubes_serial(const DiscreteMeasure& mu, const CubeLattice& L) {
    std::vector<BetaValue> out(L.size());
    for (std::size_t i = 0; i < L.size(); ++i) out[i] = beta_cube(mu, L.cube(i));
    return out;
}

std::vector<BetaValue> beta_cubes(const DiscreteMeasure& mu, const CubeLattice& L) {
    std::vector<BetaValue> out(L.size());
    const long long n = static_cast<long long>(L.size());
#pragma omp parallel for schedule(dynamic, 4)
    for (long long i = 0; i < n; ++i) out[i] = beta_cube(mu, L.cube(static_cast<std::size_t>(i)));
    return out;
}

int scale_count(double A) {
    if (!(A > 1.0)) throw Error(Errc::invalid_argument, "A must exceed 1");
    return static_cast<int>(std::lround(std::log2(A)));
}

BetaProfile multiscale_sum_unchecked(const DiscreteMeasure& mu, const Point2& x0, double ell, int N) {
    if (!(ell > 0.0) || N < 0) throw Error(Errc::invalid_argument, "need ell > 0 and N >= 0");
    BetaProfile prof;
    prof.x0 = x0;
    prof.ell = ell;
    double acc = 0.0;
    for (int k = 0; k <= N; ++k) {
        const double r = std::ldexp(ell, k);
        const BetaValue b = beta2(mu, x0, r);
        acc += b.beta;
        prof.scales.push_back(r);
        prof.betas.push_back(b.beta);
        prof.cumsum.push_back(acc);
        prof.lines.push_back(b.line);
    }
    return prof;
}

BetaProfile multiscale_sum(const DiscreteMeasure& mu, const Point2& x0, double ell, int N) {
    if (!(ell > 0.0) || N < 0) throw Error(Errc::invalid_argument, "need ell > 0 and N >= 0");
    if (std::ldexp(ell, N) > mu.diameter())
        throw Error(Errc::scale_out_of_range, "2^N ell exceeds the support diameter");
    return multiscale_sum_unchecked(mu, x0, ell, N);
}

double beta_point_cube(const DiscreteMeasure& mu, const Point2& y, const Cube& Q, double A, int panels) {
    if (!(A > 1.0)) throw Error(Errc::invalid_argument, "A must exceed 1");
    if (panels < 1) throw Error(Errc::invalid_argument, "need at least one panel");
    const double base = A * Q.side;
    const double h = std::log(2.0) / panels;
    CompensatedSum s;
    for (int i = 0; i < panels; ++i) {
        const double r = base * std::exp2((i + 0.5) / panels);
        const double b = beta2(mu, y, r).beta;
        s.add(b * b * h);
    }
    return std::sqrt(s.value());
}

std::string profile_csv(const BetaProfile& prof) {
    std::ostringstream out;
    out << "scale,beta,cumsum\n";
    for (std::size_t k = 0; k < prof.scales.size(); ++k)
        out << format_double(prof.scales[k]) << ',' << format_double(prof.betas[k]) << ','
            << format_double(prof.cumsum[k]) << '\n';
    return out.str();
}

}  // namespace symflat
