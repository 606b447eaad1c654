#pragma once

#include <string>

namespace symflat {

// Quintic smoothstep on [0,1], clamped outside: q = 6u^5 - 15u^4 + 10u^3.
double smoothstep(double u);
double smoothstep_d(double u);
double smoothstep_dd(double u);

// chi_{1/2}(s): 1 on [0,1/4], 0 on [1,inf), C^2 in between.
double chi_half(double s);
double chi_half_d(double s);

enum class CutoffKind { sharp, phi_annulus, varphi_tail };

// Cutoffs act on s = |x - y|^2 / r^2.
struct CutoffSpec {
    CutoffKind kind = CutoffKind::phi_annulus;

    static CutoffSpec sharp() { return {CutoffKind::sharp}; }
    static CutoffSpec phi() { return {CutoffKind::phi_annulus}; }
    static CutoffSpec varphi() { return {CutoffKind::varphi_tail}; }

    double value(double s) const;
    double derivative(double s) const;
    // support in |x - y| / r: inner bound (exclusive) and outer bound
    double inner() const;
    double outer() const;
};

const char* cutoff_name(CutoffKind k);

}  // namespace symflat
