#pragma once

#include <algorithm>
#include <cmath>

#include "regpt/errors.hpp"
#include "regpt/grid.hpp"
#include "regpt/specfun.hpp"

namespace regpt {

/// Strength parameters of the generalized Poschl-Teller family,
/// dimensionless in hbar = 2m = 1 units.
struct PotentialParams {
    double A;
    double B;

    PotentialParams(double A_, double B_) : A(A_), B(B_) {
        if (!(B > A + 1.0 && A + 1.0 > 1.0))
            throw DomainError("PotentialParams: require B > A+1 > 1");
    }
};

enum class PotentialKind { gpt, extended };

/// Jacobi parameters attached to this potential:
/// alpha = B-A-1/2, beta = -B-A-1/2, hence b = (2A+1)/(2B).
inline specfun::JacobiParams jacobi_params(const PotentialParams& p) {
    return specfun::JacobiParams(p.B - p.A - 0.5, -p.B - p.A - 0.5);
}

namespace detail {

inline void require_positive_r(double r, const char* who) {
    if (!(r > 0.0)) throw DomainError(std::string(who) + ": require r > 0");
}

// Beyond this radius every r-dependent term is below 1e-250 and the naive
// hyperbolic expressions start to overflow, so the exact asymptote is used.
inline constexpr double far_field_r = 300.0;

} // namespace detail

/// Superpotential of the generalized Poschl-Teller potential,
/// W = A coth r - B csch r.
inline double w_gpt(const PotentialParams& p, double r) {
    detail::require_positive_r(r, "w_gpt");
    if (r > detail::far_field_r) return p.A;
    const double s = std::sinh(r);
    return (p.A * std::cosh(r) - p.B) / s;
}

inline double w_gpt_prime(const PotentialParams& p, double r) {
    detail::require_positive_r(r, "w_gpt_prime");
    if (r > detail::far_field_r) return 0.0;
    const double s = std::sinh(r);
    return (p.B * std::cosh(r) - p.A) / (s * s);
}

/// Superpotential of the rationally extended partner: the GPT form plus
/// two rational-in-cosh corrections whose denominators 2B cosh r - 2A -+ 1
/// never vanish under the parameter constraint.
inline double w_ext(const PotentialParams& p, double r) {
    detail::require_positive_r(r, "w_ext");
    if (r > detail::far_field_r) return p.A;
    const double s = std::sinh(r);
    const double c = std::cosh(r);
    const double d1 = 2.0 * p.B * c - 2.0 * p.A - 1.0;
    const double d2 = 2.0 * p.B * c - 2.0 * p.A + 1.0;
    return w_gpt(p, r) + 2.0 * p.B * s / d1 - 2.0 * p.B * s / d2;
}

inline double w_ext_prime(const PotentialParams& p, double r) {
    detail::require_positive_r(r, "w_ext_prime");
    if (r > detail::far_field_r) return 0.0;
    const double s = std::sinh(r);
    const double c = std::cosh(r);
    const double d1 = 2.0 * p.B * c - 2.0 * p.A - 1.0;
    const double d2 = 2.0 * p.B * c - 2.0 * p.A + 1.0;
    const double q = 2.0 * p.B * s;
    return w_gpt_prime(p, r) + (2.0 * p.B * c / d1 - q * q / (d1 * d1)) -
           (2.0 * p.B * c / d2 - q * q / (d2 * d2));
}

inline double superpotential(PotentialKind kind, const PotentialParams& p, double r) {
    return kind == PotentialKind::gpt ? w_gpt(p, r) : w_ext(p, r);
}

inline double superpotential_prime(PotentialKind kind, const PotentialParams& p, double r) {
    return kind == PotentialKind::gpt ? w_gpt_prime(p, r) : w_ext_prime(p, r);
}

/// Potential from its superpotential, V = W^2 - W', with W' in closed form.
inline double v_from_w(PotentialKind kind, const PotentialParams& p, double r) {
    const double w = superpotential(kind, p, r);
    return w * w - superpotential_prime(kind, p, r);
}

/// Simplified closed form of the same potentials:
///   V_GPT = A^2 + [B^2 + A(A+1)] csch^2 r - B(2A+1) csch r coth r
///   V     = V_GPT + 2(2A+1)/D1 - 2[4B^2 - (2A+1)^2]/D1^2,  D1 = 2B cosh r - 2A - 1.
/// Kept as an independent algebraic route; tests pin it against v_from_w.
inline double potential(PotentialKind kind, const PotentialParams& p, double r) {
    detail::require_positive_r(r, "potential");
    if (r > detail::far_field_r) return p.A * p.A;
    const double s = std::sinh(r);
    const double c = std::cosh(r);
    const double csch2 = 1.0 / (s * s);
    double v = p.A * p.A + (p.B * p.B + p.A * (p.A + 1.0)) * csch2 -
               p.B * (2.0 * p.A + 1.0) * c * csch2;
    if (kind == PotentialKind::extended) {
        const double two_a1 = 2.0 * p.A + 1.0;
        const double d1 = 2.0 * p.B * c - two_a1;
        v += 2.0 * two_a1 / d1 -
             2.0 * (4.0 * p.B * p.B - two_a1 * two_a1) / (d1 * d1);
    }
    return v;
}

/// Sup-norm audit of V = W^2 - W' over a grid, with W' replaced by a
/// central difference of step h = grid spacing. Bounded by the O(h^2)
/// truncation of the difference quotient.
inline double susy_residual(PotentialKind kind, const PotentialParams& p,
                            const RadialGrid& grid) {
    const double h = grid.step();
    double worst = 0.0;
    for (int i = 1; i + 1 < grid.n_points; ++i) {
        const double r = grid.point(i);
        const double w = superpotential(kind, p, r);
        const double wp_fd = (superpotential(kind, p, r + h) -
                              superpotential(kind, p, r - h)) / (2.0 * h);
        worst = std::max(worst, std::abs(v_from_w(kind, p, r) - (w * w - wp_fd)));
    }
    return worst;
}

} // namespace regpt
