#include "symflat/cutoff.hpp"

#include <cmath>

namespace symflat {

double smoothstep(double u) {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    return u * u * u * (10.0 + u * (-15.0 + 6.0 * u));
}

double smoothstep_d(double u) {
    if (u <= 0.0 || u >= 1.0) return 0.0;
    const double v = u * (1.0 - u);
    return 30.0 * v * v;
}

double smoothstep_dd(double u) {
    if (u <= 0.0 || u >= 1.0) return 0.0;
    return 60.0 * u * (1.0 - u) * (1.0 - 2.0 * u);
}

double chi_half(double s) { return 1.0 - smoothstep((s - 0.25) / 0.75); }

double chi_half_d(double s) { return -smoothstep_d((s - 0.25) / 0.75) / 0.75; }

double CutoffSpec::value(double s) const {
    switch (kind) {
        case CutoffKind::sharp: return s < 1.0 ? 1.0 : 0.0;
        case CutoffKind::phi_annulus: return chi_half(0.25 * s) - chi_half(s);
        case CutoffKind::varphi_tail: return smoothstep((s - 0.5) / 0.5);
    }
    return 0.0;
}

double CutoffSpec::derivative(double s) const {
    switch (kind) {
        case CutoffKind::sharp: return 0.0;
        case CutoffKind::phi_annulus: return 0.25 * chi_half_d(0.25 * s) - chi_half_d(s);
        case CutoffKind::varphi_tail: return smoothstep_d((s - 0.5) / 0.5) / 0.5;
    }
    return 0.0;
}

double CutoffSpec::inner() const {
    switch (kind) {
        case CutoffKind::sharp: return 0.0;
        case CutoffKind::phi_annulus: return 0.5;
        case CutoffKind::varphi_tail: return std::sqrt(0.5);
    }
    return 0.0;
}

double CutoffSpec::outer() const {
    switch (kind) {
        case CutoffKind::sharp: return 1.0;
        case CutoffKind::phi_annulus: return 2.0;
        case CutoffKind::varphi_tail: return HUGE_VAL;
    }
    return 0.0;
}

const char* cutoff_name(CutoffKind k) {
    switch (k) {
        case CutoffKind::sharp: return "sharp";
        case CutoffKind::phi_annulus: return "phi_annulus";
        case CutoffKind::varphi_tail: return "varphi_tail";
    }
    return "unknown";
}

}  // namespace symflat
