#pragma once

#include <string>
#include <vector>

#include "symflat/geometry.hpp"

namespace symflat {

struct Mode {
    int k = 1;
    double a = 0.0;
    double b = 0.0;
};

// Odd circle map given by its lift w(t) = t + sum_k a_k sin(2kt) + b_k (cos(2kt) - 1).
class OmegaMap {
public:
    static constexpr double kAdmissibleDelta = 1.0 / 20.0;

    OmegaMap() : OmegaMap(std::vector<Mode>{}) {}
    // Throws not-a-homeomorphism when inf w' <= 0.
    explicit OmegaMap(std::vector<Mode> modes);

    static OmegaMap identity() { return OmegaMap(); }

    const std::vector<Mode>& modes() const { return modes_; }
    double omega(double t) const;
    double omega_prime(double t) const;
    double omega_second(double t) const;
    double omega_third(double t) const;

    double inf_prime() const { return inf_d_; }
    double sup_prime() const { return sup_d_; }
    double delta() const { return delta_; }
    bool admissible(double threshold = kAdmissibleDelta) const { return delta_ <= threshold; }

    // Omega on the unit circle, evaluated at angle t.
    Vec2 at_angle(double t) const { return unit_from_angle(omega(t)); }
    Vec2 apply(const Vec2& u) const { return at_angle(std::atan2(u.y, u.x)); }

private:
    void trig(double t, std::vector<double>& s, std::vector<double>& c) const;

    std::vector<Mode> modes_;
    int kmax_ = 0;
    double inf_d_ = 1.0;
    double sup_d_ = 1.0;
    double delta_ = 0.0;
};

double omega_eval(const OmegaMap& om, double t);
double delta_omega(const OmegaMap& om);

// K(x) = |x| Omega(x/|x|); throws undefined-at-origin for x = 0.
Vec2 K_eval(const OmegaMap& om, const Vec2& x);
// Same, with K(0) := 0; used inside sums.
Vec2 K_or_zero(const OmegaMap& om, const Vec2& x);

Vec2 DK_apply(const OmegaMap& om, const Vec2& y, const Vec2& v);
// The vector x^T D^2K(y) x.
Vec2 D2K_quadform(const OmegaMap& om, const Vec2& y, const Vec2& x);

struct DotLemmaOptions {
    double threshold = OmegaMap::kAdmissibleDelta;  // raise only for experiments
};

struct LemmaReport {
    std::size_t grid_size = 0;
    std::size_t cases = 0;
    // <y,nu~> >= 1/10  =>  <Omega(y), nu> >= 1/20 (both signs, by oddness)
    std::size_t violations_sign_nu = 0;
    // <y,e_L> >= 1/10  =>  <Omega(y), Omega(e_L)> >= 1/20
    std::size_t violations_sign_eL = 0;
    // |<y,nu~>| <= 1/10  =>  |<Omega(y), nu>| <= 1/5
    std::size_t violations_abs_nu = 0;
    std::size_t violations_abs_eL = 0;
    double min_sign_nu = 1.0;   // min <Omega(y),nu> over cases with <y,nu~> >= 1/10
    double min_sign_eL = 1.0;
    double max_abs_nu = 0.0;    // max |<Omega(y),nu>| over cases with |<y,nu~>| <= 1/10
    double max_abs_eL = 0.0;
    // exact-boundary probe: <y,nu~> = 1/10 (resp. <y,e_L> = 1/10) on every line angle
    double boundary_min_nu = 1.0;
    double boundary_min_eL = 1.0;

    std::size_t violations() const {
        return violations_sign_nu + violations_sign_eL + violations_abs_nu + violations_abs_eL;
    }
};

LemmaReport check_dot_lemmas(const OmegaMap& om, std::size_t grid_size, const DotLemmaOptions& opt = {});

OmegaMap load_kernel_json(const std::string& path);
OmegaMap parse_kernel_json(const std::string& text);
std::string kernel_to_json(const OmegaMap& om);

}  // namespace symflat
