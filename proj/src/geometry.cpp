#include "symflat/geometry.hpp"

#include <numbers>

#include "symflat/error.hpp"

namespace symflat {

Line Line::through(const Point2& p, double theta) {
    double t = std::fmod(theta, std::numbers::pi);
    if (t < 0.0) t += std::numbers::pi;
    if (t >= std::numbers::pi) t = 0.0;
    Line l;
    l.theta_ = t;
    l.dir_ = unit_from_angle(t);
    l.anchor_ = p - dot(p, l.dir_) * l.dir_;
    return l;
}

Line Line::through_points(const Point2& a, const Point2& b) {
    const Vec2 d = b - a;
    if (d.x == 0.0 && d.y == 0.0) throw Error(Errc::degenerate_pair, "line through coincident points");
    return through(a, std::atan2(d.y, d.x));
}

const char* errc_name(Errc c) {
    switch (c) {
        case Errc::invalid_argument: return "invalid-argument";
        case Errc::undefined_at_origin: return "undefined-at-origin";
        case Errc::not_a_homeomorphism: return "not-a-homeomorphism";
        case Errc::inadmissible_kernel: return "inadmissible-kernel";
        case Errc::resolution_exhausted: return "resolution-exhausted";
        case Errc::degenerate_cube: return "degenerate-cube";
        case Errc::no_good_points: return "no-good-points";
        case Errc::degenerate_pair: return "degenerate-pair";
        case Errc::empty_ball: return "empty-ball";
        case Errc::scale_out_of_range: return "scale-out-of-range";
        case Errc::invalid_cutoff: return "invalid-cutoff";
        case Errc::wrong_regime: return "wrong-regime";
        case Errc::io_error: return "io-error";
        case Errc::parse_error: return "parse-error";
    }
    return "unknown";
}

}  // namespace symflat
