#include "symflat/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "json.hpp"
#include "symflat/error.hpp"
#include "symflat/measure_io.hpp"
#include "symflat/summation.hpp"

namespace symflat {

namespace {

void require_radius(double r) {
    if (!(r > 0.0) || !std::isfinite(r)) throw Error(Errc::invalid_argument, "radius must be positive and finite");
}

void require_kind(const CutoffSpec& c, CutoffKind k) {
    if (c.kind != k)
        throw Error(Errc::invalid_cutoff, std::string("expected ") + cutoff_name(k) + ", got " + cutoff_name(c.kind));
}

}  // namespace

Vec2 c_omega(const DiscreteMeasure& mu, const OmegaMap& om, const Point2& x, double r) {
    require_radius(r);
    std::vector<std::uint32_t> idx;
    mu.ball_indices(x, r, idx);
    CompensatedSum2 s;
    for (auto i : idx) s.add(mu.weight(i) * K_or_zero(om, x - mu.point(i)));
    return s.value() / (r * r);
}

Vec2 c_omega_smooth(const DiscreteMeasure& mu, const OmegaMap& om, const Point2& x, double r,
                    const CutoffSpec& cutoff) {
    require_radius(r);
    require_kind(cutoff, CutoffKind::phi_annulus);
    std::vector<std::uint32_t> idx;
    mu.ball_indices(x, 2.0 * r, idx);
    const double r2 = r * r;
    CompensatedSum2 s;
    for (auto i : idx) {
        const Vec2 d = x - mu.point(i);
        const double ph = cutoff.value(norm2(d) / r2);
        if (ph == 0.0) continue;
        s.add((mu.weight(i) * ph) * K_eval(om, d));
    }
    return s.value() / r2;
}

Vec2 riesz_truncated(const DiscreteMeasure& mu, const OmegaMap& om, const Point2& x, double r,
                     const CutoffSpec& cutoff, double outer) {
    require_radius(r);
    require_kind(cutoff, CutoffKind::varphi_tail);
    if (!(outer > 0.0)) throw Error(Errc::invalid_argument, "outer truncation must be positive");
    const double r2 = r * r;
    CompensatedSum2 s;
    auto term = [&](std::uint32_t i) {
        const Vec2 d = x - mu.point(i);
        const double d2 = norm2(d);
        const double ph = cutoff.value(d2 / r2);
        if (ph == 0.0) return;
        s.add((mu.weight(i) * ph / d2) * K_eval(om, d));
    };
    if (std::isinf(outer)) {
        for (std::uint32_t i = 0; i < mu.size(); ++i) term(i);
    } else {
        std::vector<std::uint32_t> idx;
        mu.ball_indices(x, outer, idx);
        for (auto i : idx) term(i);
    }
    return s.value();
}

PvProfile pv_profile(const DiscreteMeasure& mu, const OmegaMap& om, const Point2& x,
                     const std::vector<double>& epsilons, double R_out) {
    if (epsilons.empty()) throw Error(Errc::invalid_argument, "empty epsilon list");
    for (std::size_t k = 0; k < epsilons.size(); ++k) {
        if (!(epsilons[k] > 0.0)) throw Error(Errc::invalid_argument, "epsilons must be positive");
        if (k > 0 && !(epsilons[k] < epsilons[k - 1])) throw Error(Errc::invalid_argument, "epsilons must decrease");
    }
    require_radius(R_out);
    std::vector<std::uint32_t> idx;
    mu.ball_indices(x, R_out, idx);
    std::vector<double> dist(idx.size());
    std::vector<Vec2> terms(idx.size());
    for (std::size_t k = 0; k < idx.size(); ++k) {
        const Vec2 d = x - mu.point(idx[k]);
        dist[k] = norm(d);
        if (dist[k] > 0.0) terms[k] = (mu.weight(idx[k]) / norm2(d)) * K_eval(om, d);
    }
    PvProfile out;
    out.epsilons = epsilons;
    for (double eps : epsilons) {
        CompensatedSum2 s;
        for (std::size_t k = 0; k < idx.size(); ++k)
            if (dist[k] >= eps) s.add(terms[k]);
        out.values.push_back(s.value());
    }
    for (std::size_t k = 1; k < out.values.size(); ++k)
        out.max_successive_diff = std::max(out.max_successive_diff, norm(out.values[k] - out.values[k - 1]));
    return out;
}

const char* functional_name(Functional f) {
    switch (f) {
        case Functional::c_omega: return "c_omega";
        case Functional::c_omega_smooth: return "c_omega_smooth";
        case Functional::riesz: return "riesz";
    }
    return "unknown";
}

Functional parse_functional(const std::string& s) {
    if (s == "c_omega") return Functional::c_omega;
    if (s == "c_omega_smooth") return Functional::c_omega_smooth;
    if (s == "riesz") return Functional::riesz;
    throw Error(Errc::invalid_argument, "unknown functional '" + s + "'");
}

Vec2 evaluate_functional(const DiscreteMeasure& mu, const OmegaMap& om, const Point2& x, double r,
                         const DefectOptions& opt) {
    switch (opt.functional) {
        case Functional::c_omega: return c_omega(mu, om, x, r);
        case Functional::c_omega_smooth: return c_omega_smooth(mu, om, x, r);
        case Functional::riesz: return riesz_truncated(mu, om, x, r, CutoffSpec::varphi(), opt.riesz_outer * r);
    }
    return {};
}

double functional_reach(const DefectOptions& opt) {
    switch (opt.functional) {
        case Functional::c_omega: return 1.0;
        case Functional::c_omega_smooth: return 2.0;
        case Functional::riesz: return opt.riesz_outer;
    }
    return 1.0;
}

namespace {

SymmetryReport make_report(const DiscreteMeasure& mu, const std::vector<Point2>& centers,
                           const std::vector<double>& scales, const DefectOptions& opt) {
    if (centers.empty() || scales.empty()) throw Error(Errc::invalid_argument, "empty center or scale set");
    for (double r : scales) require_radius(r);
    SymmetryReport rep;
    rep.functional = opt.functional;
    rep.centers = centers;
    rep.scales = scales;
    rep.values.resize(centers.size() * scales.size());
    rep.h = mu.pitch();
    rep.r_min = *std::min_element(scales.begin(), scales.end());
    rep.riesz_outer = opt.functional == Functional::riesz ? opt.riesz_outer : 0.0;
    return rep;
}

void finish(SymmetryReport& rep) {
    for (const auto& v : rep.values) {
        if (!is_finite(v)) throw Error(Errc::invalid_argument, "non-finite functional value");
        rep.sup_norm = std::max(rep.sup_norm, norm(v));
    }
}

}  // namespace

SymmetryReport defect_report_serial(const DiscreteMeasure& mu, const OmegaMap& om,
                                    const std::vector<Point2>& centers, const std::vector<double>& scales,
                                    const DefectOptions& opt) {
    SymmetryReport rep = make_report(mu, centers, scales, opt);
    const std::size_t S = scales.size();
    for (std::size_t c = 0; c < centers.size(); ++c)
        for (std::size_t s = 0; s < S; ++s) rep.values[c * S + s] = evaluate_functional(mu, om, centers[c], scales[s], opt);
    finish(rep);
    return rep;
}

SymmetryReport defect_report(const DiscreteMeasure& mu, const OmegaMap& om, const std::vector<Point2>& centers,
                             const std::vector<double>& scales, const DefectOptions& opt) {
    SymmetryReport rep = make_report(mu, centers, scales, opt);
    const std::size_t S = scales.size();
    const long long n = static_cast<long long>(centers.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (long long c = 0; c < n; ++c)
        for (std::size_t s = 0; s < S; ++s)
            rep.values[static_cast<std::size_t>(c) * S + s] =
                evaluate_functional(mu, om, centers[static_cast<std::size_t>(c)], scales[s], opt);
    finish(rep);
    return rep;
}

SymmetryReport defect_report(const DiscreteMeasure& mu, const OmegaMap& om, std::size_t n_centers, double r_min,
                             double r_max, std::size_t n_scales, const DefectOptions& opt, std::uint64_t seed) {
    const auto scales = geometric_scales(r_min, r_max, n_scales);
    std::vector<Point2> centers;
    try {
        centers = sample_centers(mu, n_centers, functional_reach(opt) * r_max, seed);
    } catch (const Error&) {
        // closed curves have no edge to keep away from
        centers = sample_centers(mu, n_centers, 0.0, seed);
    }
    return defect_report(mu, om, centers, scales, opt);
}

std::string SymmetryReport::to_json() const {
    nlohmann::json j;
    j["functional"] = functional_name(functional);
    j["centers"] = nlohmann::json::array();
    for (const auto& c : centers) j["centers"].push_back({c.x, c.y});
    j["scales"] = scales;
    j["values"] = nlohmann::json::array();
    for (std::size_t c = 0; c < centers.size(); ++c) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t s = 0; s < scales.size(); ++s) row.push_back({value(c, s).x, value(c, s).y});
        j["values"].push_back(row);
    }
    j["sup_norm"] = sup_norm;
    j["tolerance_context"] = {{"h", h}, {"r_min", r_min}, {"riesz_outer", riesz_outer}};
    return j.dump(1);
}

std::string SymmetryReport::to_csv() const {
    std::ostringstream out;
    out << "cx,cy,r,vx,vy,norm\n";
    for (std::size_t c = 0; c < centers.size(); ++c)
        for (std::size_t s = 0; s < scales.size(); ++s)
            out << format_double(centers[c].x) << ',' << format_double(centers[c].y) << ','
                << format_double(scales[s]) << ',' << format_double(value(c, s).x) << ','
                << format_double(value(c, s).y) << ',' << format_double(norm(value(c, s))) << '\n';
    return out.str();
}

SplitFrame split_frame(const Cube& Q, const Point2& x0, double A, double r) {
    require_radius(r);
    if (!(A > 1.0)) throw Error(Errc::invalid_argument, "A must exceed 1");
    SplitFrame f;
    f.x0 = x0;
    f.r = r;
    f.side = Q.side;
    f.A = A;
    f.window_ok = r >= A * Q.side * (1.0 - 1e-12) && r <= 2.0 * A * Q.side * (1.0 + 1e-12);
    return f;
}

namespace {

struct LocalTerms {
    Vec2 K{};     // K(-y)
    Vec2 rad{};   // radial part of DK(-y) x
    Vec2 sph{};   // spherical part of DK(-y) x
    double ph = 0.0;
    double dph = 0.0;
};

template <class F>
void for_annulus(const DiscreteMeasure& mu, const OmegaMap& om, const SplitFrame& f, const Vec2& x, F&& fn) {
    const CutoffSpec phi = CutoffSpec::phi();
    std::vector<std::uint32_t> idx;
    mu.ball_indices(f.x0, 2.0 * f.r, idx);
    const double r2 = f.r * f.r;
    for (auto i : idx) {
        const Vec2 my = f.x0 - mu.point(i);  // -y in translated coordinates
        if (my.x == 0.0 && my.y == 0.0) continue;
        LocalTerms t;
        const double s = norm2(my) / r2;
        t.ph = phi.value(s);
        t.dph = phi.derivative(s);
        if (t.ph == 0.0 && t.dph == 0.0) continue;
        const double len = norm(my);
        const Vec2 yh = my / len;
        const double th = std::atan2(my.y, my.x);
        const Vec2 o = om.at_angle(th);
        t.K = len * o;
        t.rad = dot(yh, x) * o;
        t.sph = (dot(x, perp(yh)) * om.omega_prime(th)) * perp(o);
        fn(mu.weight(i), my, t);
    }
}

}  // namespace

LinearParts linear_parts(const DiscreteMeasure& mu, const OmegaMap& om, const SplitFrame& f, const Vec2& x) {
    CompensatedSum2 a2, b, bi, bii;
    for_annulus(mu, om, f, x, [&](double w, const Vec2&, const LocalTerms& t) {
        const Vec2 dx = t.rad + t.sph;
        a2.add((w * t.ph) * dx);
        b.add((w * t.dph * dot(t.K, dx)) * t.K);
        bi.add((w * t.dph * dot(t.K, t.rad)) * t.K);
        bii.add((w * t.dph * dot(t.K, t.sph)) * t.K);
    });
    const double r2 = f.r * f.r;
    const double r4 = r2 * r2;
    LinearParts p;
    p.A2 = a2.value() / r2;
    p.B121 = b.value() / r4;
    p.B121_radial = bi.value() / r4;
    p.B121_spherical = bii.value() / r4;
    p.T = p.A2 + p.B121;
    p.exact = p.A2 + 2.0 * p.B121;
    return p;
}

Vec2 linear_term_T(const DiscreteMeasure& mu, const OmegaMap& om, const SplitFrame& f, const Vec2& x) {
    return linear_parts(mu, om, f, x).T;
}

Vec2 error_term_E(const DiscreteMeasure& mu, const OmegaMap& om, const SplitFrame& f, const Vec2& x) {
    if (x.x == 0.0 && x.y == 0.0) return {};
    const Vec2 diff = c_omega_smooth(mu, om, f.x0 + x, f.r) - c_omega_smooth(mu, om, f.x0, f.r);
    return diff - linear_term_T(mu, om, f, x);
}

ErrorDiagnostics error_diagnostics(const DiscreteMeasure& mu, const OmegaMap& om, const SplitFrame& f,
                                   const Vec2& x) {
    const double r2 = f.r * f.r;
    CompensatedSum2 a3, b11, b122, b2;
    for_annulus(mu, om, f, x, [&](double w, const Vec2& my, const LocalTerms& t) {
        const Vec2 dx = t.rad + t.sph;
        const Vec2 half_d2 = 0.5 * D2K_quadform(om, my, x);
        const double so = -norm2(dx) / r2;
        const double dp = -dot(t.K, dx) / r2;
        a3.add((w * t.ph) * half_d2);
        b11.add((w * t.dph * so) * t.K);
        b122.add((w * t.dph * dot(t.K, half_d2) / r2) * t.K);
        b2.add((w * t.dph * (so + dp)) * dx);
    });
    ErrorDiagnostics d;
    d.A3 = a3.value() / r2;
    d.B11 = b11.value() / r2;
    d.B122 = b122.value() / r2;
    d.B2 = b2.value() / r2;
    return d;
}

}  // namespace symflat
