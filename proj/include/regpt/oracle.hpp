#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "regpt/errors.hpp"
#include "regpt/grid.hpp"
#include "regpt/potential.hpp"
#include "regpt/specfun.hpp"

namespace regpt {
namespace oracle {

/// A Numerov-integrated solution. values holds the (possibly rescaled)
/// samples; log_scale accumulates the in-flight renormalizations, so the
/// true solution is values * exp(log_scale) up to the seed's scale.
struct WaveSolution {
    RadialGrid grid;
    std::vector<double> values;
    double energy = 0.0;
    double log_scale = 0.0;
};

/// Fourth-order Numerov propagation of -psi'' + V psi = E psi from two
/// seed values, rescaling whenever |psi| passes 1e100.
inline WaveSolution numerov_solve(const std::function<double(double)>& v,
                                  double energy, const RadialGrid& grid,
                                  double psi0, double psi1) {
    const int n = grid.n_points;
    const double h = grid.step();
    const double h2_12 = h * h / 12.0;
    WaveSolution sol{grid, std::vector<double>(n), energy, 0.0};
    sol.values[0] = psi0;
    sol.values[1] = psi1;
    double f_prev = 1.0 + h2_12 * (energy - v(grid.point(0)));
    double f_cur = 1.0 + h2_12 * (energy - v(grid.point(1)));
    for (int i = 1; i + 1 < n; ++i) {
        const double f_next = 1.0 + h2_12 * (energy - v(grid.point(i + 1)));
        sol.values[i + 1] = ((12.0 - 10.0 * f_cur) * sol.values[i] -
                             f_prev * sol.values[i - 1]) / f_next;
        if (std::abs(sol.values[i + 1]) > 1e100) {
            const double scale = std::abs(sol.values[i + 1]);
            sol.values[i + 1] /= scale;
            sol.values[i] /= scale;
            sol.log_scale += std::log(scale);
        }
        f_prev = f_cur;
        f_cur = f_next;
    }
    return sol;
}

/// Regular solution of the radial equation for the chosen potential,
/// seeded by the leading power r^{B-A} at the first two grid points.
inline WaveSolution numerov_integrate(PotentialKind kind, const PotentialParams& p,
                                      double energy, const RadialGrid& grid) {
    if (!(grid.r_min <= 1e-3))
        throw DomainError("numerov_integrate: require grid.r_min <= 1e-3");
    const double expo = p.B - p.A;
    return numerov_solve([&](double r) { return potential(kind, p, r); }, energy,
                         grid, std::pow(grid.point(0), expo),
                         std::pow(grid.point(1), expo));
}

/// Grid policy for scattering extraction: reaches far enough that the
/// potential tail is below 1e-12, spacing 1e-3.
inline RadialGrid default_scattering_grid(const PotentialParams& p, double k) {
    const double tail = std::log(2.0 * p.B * (2.0 * p.A + 1.0) * 1e12) + 1.0;
    const double r_max = std::max({35.0, tail, 12.0 + 5.0 / std::min(k, 1.0)});
    const int n = static_cast<int>(std::lround(r_max / 1e-3)) + 1;
    return RadialGrid(1e-3, r_max, n);
}

/// Numeric S-matrix: integrate the regular solution at E = A^2 + k^2 and
/// match psi = A+ e^{ikr} + A- e^{-ikr} at two radii near the far end;
/// S = -A+/A-. |S| = 1 to integration accuracy.
inline Complex extract_s_numeric(PotentialKind kind, const PotentialParams& p,
                                 double k, const RadialGrid& grid) {
    if (!(k > 0.0))
        throw DomainError("extract_s_numeric: require k > 0");
    if (!(grid.r_max >= 25.0))
        throw DomainError("extract_s_numeric: require r_max >= 25");
    if (std::abs(potential(kind, p, grid.r_max) - p.A * p.A) >= 1e-12)
        throw DomainError("extract_s_numeric: potential tail above 1e-12 at r_max");

    const WaveSolution sol =
        numerov_integrate(kind, p, p.A * p.A + k * k, grid);
    const double h = grid.step();
    // Matching separation: k*dr around 1/4, never a multiple of pi.
    int m = static_cast<int>(std::max(1L, std::lround(0.25 / (k * h))));
    m = std::min(m, grid.n_points - 2);
    double kd = k * m * h;
    int attempts = 0;
    while (std::abs(std::sin(kd)) < 0.05 && attempts++ < 8) {
        m = std::max(1, m - std::max(1, m / 8));
        kd = k * m * h;
    }
    if (std::abs(std::sin(kd)) < 0.05)
        throw DegeneracyError("extract_s_numeric: matching radii degenerate (k dr near a multiple of pi)");

    const int i2 = grid.n_points - 1;
    const int i1 = i2 - m;
    const double r1 = grid.point(i1), r2 = grid.point(i2);
    const double y1 = sol.values[i1], y2 = sol.values[i2];
    const Complex e1 = std::exp(Complex(0.0, k * r1));
    const Complex e2 = std::exp(Complex(0.0, k * r2));
    const Complex det = e1 / e2 - e2 / e1;
    const Complex a_out = (y1 / e2 - y2 / e1) / det;
    const Complex a_in = (y2 * e1 - y1 * e2) / det;
    return -a_out / a_in;
}

namespace detail {

inline int count_sign_changes(const std::vector<double>& y) {
    int nodes = 0;
    double prev = 0.0;
    for (double v : y) {
        if (v == 0.0) continue;
        if (prev != 0.0 && ((prev < 0.0) != (v < 0.0))) ++nodes;
        prev = v;
    }
    return nodes;
}

} // namespace detail

/// Grid policy for shooting: long enough that domain truncation shifts
/// the shallowest eigenvalue by far less than 1e-6.
inline RadialGrid default_shooting_grid(const PotentialParams& p) {
    const double kappa_min = p.A - (std::ceil(p.A) - 1.0); // slowest decay rate
    const double r_max = std::max(35.0, 30.0 / std::max(kappa_min, 0.05));
    const int n = static_cast<int>(std::lround(r_max / 1e-3)) + 1;
    return RadialGrid(1e-3, r_max, n);
}

/// All bound-state energies in [-1e-4, e_max], found independently of any
/// closed-form spectrum: the node count of the regular solution jumps by
/// one as E crosses an eigenvalue, so each jump is bracketed on a 0.1-wide
/// scan and bisected to 1e-9.
inline std::vector<double> shoot_spectrum(PotentialKind kind, const PotentialParams& p,
                                          double e_max, const RadialGrid& grid,
                                          double refine_tol = 1e-9) {
    if (!(e_max < p.A * p.A))
        throw DomainError("shoot_spectrum: require e_max below the continuum edge A^2");

    const auto nodes_at = [&](double e) {
        return detail::count_sign_changes(numerov_integrate(kind, p, e, grid).values);
    };

    std::vector<double> eigenvalues;
    double e_lo = -1e-4;
    int n_lo = nodes_at(e_lo);
    while (e_lo < e_max) {
        double e_hi = std::min(e_lo + 0.1, e_max);
        const int n_hi = nodes_at(e_hi);
        for (int level = n_lo + 1; level <= n_hi; ++level) {
            double lo = e_lo, hi = e_hi;
            while (hi - lo > refine_tol) {
                const double mid = 0.5 * (lo + hi);
                if (nodes_at(mid) >= level)
                    hi = mid;
                else
                    lo = mid;
            }
            eigenvalues.push_back(0.5 * (lo + hi));
        }
        if (e_hi >= e_max) break;
        e_lo = e_hi;
        n_lo = n_hi;
    }
    return eigenvalues;
}

/// Relative residual between a hypergeometric value at z and its two-term
/// linear-transformation expansion in 1/(1-z). The left side goes through
/// hyp2f1's 1/z route, so the two sides are algebraically independent.
inline double connection_formula_check(Complex a, Complex b, Complex c, double z) {
    if (!(z < 0.0) || !(std::abs(1.0 - z) > 1.0))
        throw DomainError("connection_formula_check: require z < 0 with |1-z| > 1");
    {
        const Complex d = a - b;
        if (std::abs(d.imag()) < 1e-8 &&
            std::abs(d.real() - std::round(d.real())) < 1e-8)
            throw DegeneracyError("connection_formula_check: a - b within 1e-8 of an integer");
    }
    using specfun::gamma_ratio;
    using specfun::hyp2f1;
    namespace sd = specfun::detail;

    const Complex lhs = hyp2f1(a, b, c, z);
    const double u = 1.0 / (1.0 - z);
    const double log_1mz = std::log(1.0 - z);
    Complex rhs = 0.0;
    if (!sd::near_nonpositive_integer(c - a, specfun::pole_tolerance) &&
        !sd::near_nonpositive_integer(b, specfun::pole_tolerance)) {
        rhs += gamma_ratio({c, b - a}, {b, c - a}) * std::exp(-a * log_1mz) *
               hyp2f1(a, c - b, a - b + 1.0, u);
    }
    if (!sd::near_nonpositive_integer(c - b, specfun::pole_tolerance) &&
        !sd::near_nonpositive_integer(a, specfun::pole_tolerance)) {
        rhs += gamma_ratio({c, a - b}, {a, c - b}) * std::exp(-b * log_1mz) *
               hyp2f1(b, c - a, b - a + 1.0, u);
    }
    return std::abs(lhs - rhs) / std::abs(lhs);
}

} // namespace oracle
} // namespace regpt
