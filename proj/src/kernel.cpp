#include "symflat/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "json.hpp"

#include "symflat/error.hpp"

namespace symflat {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kDerivativeGrid = 10000;

// Accumulates sum_k f(k, sin 2kt, cos 2kt) with the angle-addition recurrence.
template <class F>
void for_modes(const std::vector<Mode>& modes, int kmax, double t, F&& f) {
    if (modes.empty()) return;
    const double s1 = std::sin(2.0 * t);
    const double c1 = std::cos(2.0 * t);
    double s = s1;
    double c = c1;
    int k = 1;
    std::size_t m = 0;
    // modes are sorted by k
    while (m < modes.size() && k <= kmax) {
        while (m < modes.size() && modes[m].k == k) {
            f(modes[m], s, c);
            ++m;
        }
        const double sn = s * c1 + c * s1;
        c = c * c1 - s * s1;
        s = sn;
        ++k;
    }
}

}  // namespace

OmegaMap::OmegaMap(std::vector<Mode> modes) : modes_(std::move(modes)) {
    for (const auto& m : modes_) {
        if (m.k < 1) throw Error(Errc::invalid_argument, "mode frequency k must be >= 1");
        if (!std::isfinite(m.a) || !std::isfinite(m.b)) throw Error(Errc::invalid_argument, "non-finite coefficient");
        kmax_ = std::max(kmax_, m.k);
    }
    std::stable_sort(modes_.begin(), modes_.end(), [](const Mode& a, const Mode& b) { return a.k < b.k; });
    if (modes_.empty()) return;

    // w' is pi-periodic: scan one period, then polish extrema where w'' changes sign.
    inf_d_ = HUGE_VAL;
    sup_d_ = -HUGE_VAL;
    double prev_t = 0.0;
    double prev_s = omega_second(0.0);
    auto note = [&](double t) {
        const double d = omega_prime(t);
        inf_d_ = std::min(inf_d_, d);
        sup_d_ = std::max(sup_d_, d);
    };
    note(0.0);
    for (int i = 1; i <= kDerivativeGrid; ++i) {
        const double t = kPi * i / kDerivativeGrid;
        const double s = omega_second(t);
        note(t);
        if ((prev_s < 0.0) != (s < 0.0)) {
            double lo = prev_t, hi = t;
            double x = 0.5 * (lo + hi);
            for (int it = 0; it < 60; ++it) {
                const double fx = omega_second(x);
                if (fx == 0.0) break;
                if ((fx < 0.0) == (prev_s < 0.0)) lo = x; else hi = x;
                const double d3 = omega_third(x);
                double nx = d3 != 0.0 ? x - fx / d3 : 0.5 * (lo + hi);
                if (!(nx > lo && nx < hi)) nx = 0.5 * (lo + hi);
                if (std::abs(nx - x) < 1e-15) { x = nx; break; }
                x = nx;
            }
            note(x);
        }
        prev_t = t;
        prev_s = s;
    }
    if (!(inf_d_ > 0.0))
        throw Error(Errc::not_a_homeomorphism, "lift derivative reaches " + std::to_string(inf_d_));
    delta_ = std::max(sup_d_, 1.0 / inf_d_) - 1.0;
}

double OmegaMap::omega(double t) const {
    double p = 0.0;
    for_modes(modes_, kmax_, t, [&](const Mode& m, double s, double c) { p += m.a * s + m.b * (c - 1.0); });
    return t + p;
}

double OmegaMap::omega_prime(double t) const {
    double d = 1.0;
    for_modes(modes_, kmax_, t, [&](const Mode& m, double s, double c) {
        const double f = 2.0 * m.k;
        d += f * (m.a * c - m.b * s);
    });
    return d;
}

double OmegaMap::omega_second(double t) const {
    double d = 0.0;
    for_modes(modes_, kmax_, t, [&](const Mode& m, double s, double c) {
        const double f = 4.0 * m.k * m.k;
        d -= f * (m.a * s + m.b * c);
    });
    return d;
}

double OmegaMap::omega_third(double t) const {
    double d = 0.0;
    for_modes(modes_, kmax_, t, [&](const Mode& m, double s, double c) {
        const double f = 8.0 * m.k * m.k * m.k;
        d += f * (m.b * s - m.a * c);
    });
    return d;
}

double omega_eval(const OmegaMap& om, double t) { return om.omega(t); }

double delta_omega(const OmegaMap& om) { return om.delta(); }

Vec2 K_eval(const OmegaMap& om, const Vec2& x) {
    if (x.x == 0.0 && x.y == 0.0) throw Error(Errc::undefined_at_origin, "K(0)");
    return norm(x) * om.at_angle(std::atan2(x.y, x.x));
}

Vec2 K_or_zero(const OmegaMap& om, const Vec2& x) {
    if (x.x == 0.0 && x.y == 0.0) return {};
    return norm(x) * om.at_angle(std::atan2(x.y, x.x));
}

Vec2 DK_apply(const OmegaMap& om, const Vec2& y, const Vec2& v) {
    if (y.x == 0.0 && y.y == 0.0) throw Error(Errc::undefined_at_origin, "DK(0)");
    const Vec2 yh = y / norm(y);
    const double t = std::atan2(y.y, y.x);
    const Vec2 o = om.at_angle(t);
    return dot(yh, v) * o + (dot(v, perp(yh)) * om.omega_prime(t)) * perp(o);
}

Vec2 D2K_quadform(const OmegaMap& om, const Vec2& y, const Vec2& x) {
    if (y.x == 0.0 && y.y == 0.0) throw Error(Errc::undefined_at_origin, "D2K(0)");
    // arg in [0, 2pi); the ray where it jumps is handled through D2K(-y) = -D2K(y)
    if (y.y == 0.0 && y.x > 0.0) return -D2K_quadform(om, -y, x);
    double th = std::atan2(y.y, y.x);
    if (th < 0.0) th += 2.0 * kPi;

    const double r2 = norm2(y);
    const double r = std::sqrt(r2);
    const Vec2 yh = y / r;
    const double w = om.omega(th);
    const double w1 = om.omega_prime(th);
    const double w2 = om.omega_second(th);
    const double cw = std::cos(w);
    const double sw = std::sin(w);

    const Vec2 g{-y.y / r2, y.x / r2};  // gradient of arg
    const double r4 = r2 * r2;
    const double h11 = 2.0 * y.x * y.y / r4;
    const double h22 = -h11;
    const double h12 = (y.y * y.y - y.x * y.x) / r4;

    const double gx = dot(g, x);
    const double hxx = h11 * x.x * x.x + 2.0 * h12 * x.x * x.y + h22 * x.y * x.y;
    const double yx = dot(yh, x);
    const double radial = (norm2(x) - yx * yx) / r;

    // f1 = cos w, f2 = sin w as functions of arg y
    const double f1 = cw, f2 = sw;
    const double d1 = -sw * w1, d2 = cw * w1;
    const double dd1 = -cw * w1 * w1 - sw * w2;
    const double dd2 = -sw * w1 * w1 + cw * w2;

    auto comp = [&](double f, double d, double dd) {
        return radial * f + 2.0 * yx * d * gx + r * (dd * gx * gx + d * hxx);
    };
    return {comp(f1, d1, dd1), comp(f2, d2, dd2)};
}

LemmaReport check_dot_lemmas(const OmegaMap& om, std::size_t grid_size, const DotLemmaOptions& opt) {
    if (om.delta() > opt.threshold)
        throw Error(Errc::inadmissible_kernel, "delta_Omega = " + std::to_string(om.delta()));
    if (grid_size < 2) throw Error(Errc::invalid_argument, "grid too small");
    const std::size_t n = grid_size;

    std::vector<double> sy(n), cy(n), swy(n), cwy(n), sl(n), cl(n), swl(n), cwl(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double t = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(n);
        sy[j] = std::sin(t); cy[j] = std::cos(t);
        const double w = om.omega(t);
        swy[j] = std::sin(w); cwy[j] = std::cos(w);
    }
    for (std::size_t i = 0; i < n; ++i) {
        const double t = kPi * static_cast<double>(i) / static_cast<double>(n);
        sl[i] = std::sin(t); cl[i] = std::cos(t);
        const double w = om.omega(t);
        swl[i] = std::sin(w); cwl[i] = std::cos(w);
    }

    std::size_t v1 = 0, v2 = 0, v3 = 0, v4 = 0;
    double m1 = 1.0, m2 = 1.0, a1 = 0.0, a2 = 0.0;
    const long long nl = static_cast<long long>(n);
#pragma omp parallel for schedule(static) reduction(+ : v1, v2, v3, v4) reduction(min : m1, m2) reduction(max : a1, a2)
    for (long long ii = 0; ii < nl; ++ii) {
        const std::size_t i = static_cast<std::size_t>(ii);
        for (std::size_t j = 0; j < n; ++j) {
            const double yn = sy[j] * cl[i] - cy[j] * sl[i];     // <y, nu~>
            const double ye = cy[j] * cl[i] + sy[j] * sl[i];     // <y, e_L>
            const double on = swy[j] * cwl[i] - cwy[j] * swl[i];  // <Omega(y), nu>
            const double oe = cwy[j] * cwl[i] + swy[j] * swl[i];  // <Omega(y), Omega(e_L)>
            if (yn >= 0.1) { if (on < 0.05) ++v1; m1 = std::min(m1, on); }
            if (yn <= -0.1) { if (on > -0.05) ++v1; m1 = std::min(m1, -on); }
            if (ye >= 0.1) { if (oe < 0.05) ++v2; m2 = std::min(m2, oe); }
            if (ye <= -0.1) { if (oe > -0.05) ++v2; m2 = std::min(m2, -oe); }
            if (std::abs(yn) <= 0.1) { if (std::abs(on) > 0.2) ++v3; a1 = std::max(a1, std::abs(on)); }
            if (std::abs(ye) <= 0.1) { if (std::abs(oe) > 0.2) ++v4; a2 = std::max(a2, std::abs(oe)); }
        }
    }

    LemmaReport rep;
    rep.grid_size = n;
    rep.cases = n * n;
    rep.violations_sign_nu = v1;
    rep.violations_sign_eL = v2;
    rep.violations_abs_nu = v3;
    rep.violations_abs_eL = v4;
    rep.min_sign_nu = m1;
    rep.min_sign_eL = m2;
    rep.max_abs_nu = a1;
    rep.max_abs_eL = a2;

    const double as = std::asin(0.1);
    const double ac = std::acos(0.1);
    for (std::size_t i = 0; i < n; ++i) {
        const double tl = kPi * static_cast<double>(i) / static_cast<double>(n);
        const double wl = om.omega(tl);
        for (double a : {as, kPi - as})
            rep.boundary_min_nu = std::min(rep.boundary_min_nu, std::sin(om.omega(tl + a) - wl));
        for (double a : {ac, -ac})
            rep.boundary_min_eL = std::min(rep.boundary_min_eL, std::cos(om.omega(tl + a) - wl));
    }
    return rep;
}

OmegaMap parse_kernel_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::parse_error, std::string("kernel json: ") + e.what());
    }
    if (!j.is_object() || !j.contains("coeffs") || !j["coeffs"].is_array())
        throw Error(Errc::parse_error, "kernel json needs a \"coeffs\" array");
    std::vector<Mode> modes;
    std::size_t n = 0;
    for (const auto& c : j["coeffs"]) {
        ++n;
        if (!c.is_object() || !c.contains("k") || !c["k"].is_number_integer())
            throw Error(Errc::parse_error, "coeff " + std::to_string(n) + ": integer k required");
        Mode m;
        m.k = c["k"].get<int>();
        if (m.k < 1) throw Error(Errc::parse_error, "coeff " + std::to_string(n) + ": k must be >= 1");
        for (const char* key : {"a", "b"}) {
            if (!c.contains(key)) continue;
            if (!c[key].is_number()) throw Error(Errc::parse_error, "coeff " + std::to_string(n) + ": bad " + key);
            (key[0] == 'a' ? m.a : m.b) = c[key].get<double>();
        }
        modes.push_back(m);
    }
    return OmegaMap(std::move(modes));
}

OmegaMap load_kernel_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::io_error, "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_kernel_json(ss.str());
}

std::string kernel_to_json(const OmegaMap& om) {
    nlohmann::json j;
    j["coeffs"] = nlohmann::json::array();
    for (const auto& m : om.modes()) j["coeffs"].push_back({{"k", m.k}, {"a", m.a}, {"b", m.b}});
    return j.dump();
}

}  // namespace symflat
