#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "regpt/errors.hpp"
#include "regpt/grid.hpp"
#include "regpt/potential.hpp"
#include "regpt/specfun.hpp"

namespace regpt {

/// One bound state: label nu, energy A^2 - (A-nu)^2, and the closed-form
/// normalization constant.
struct BoundState {
    int nu;
    double energy;
    double norm_const;
};

/// Largest bound-state label: the unique integer in [A-1, A).
inline int nu_max(const PotentialParams& p) {
    return static_cast<int>(std::ceil(p.A)) - 1;
}

namespace detail {

inline void require_nu_in_range(const PotentialParams& p, int nu, const char* who) {
    if (nu < 0 || nu > nu_max(p))
        throw IndexError(std::string(who) + ": nu outside 0..nu_max");
}

} // namespace detail

/// Bound-state energy A^2 - (A-nu)^2; zero at nu = 0, increasing in nu.
inline double energy(const PotentialParams& p, int nu) {
    detail::require_nu_in_range(p, nu, "energy");
    const double d = p.A - nu;
    return p.A * p.A - d * d;
}

/// Closed-form normalization constant N_nu (carries an overall minus
/// sign; only the magnitude matters for normalization).
inline double norm_const(const PotentialParams& p, int nu) {
    detail::require_nu_in_range(p, nu, "norm_const");
    const double A = p.A, B = p.B;
    // All gamma arguments are positive under the parameter constraint.
    const double log_inner = std::lgamma(nu + 1.0) + std::log(2.0 * A - 2.0 * nu) +
                             std::log(B + A - nu + 0.5) + std::lgamma(B + A - nu - 0.5) -
                             std::log(B - A + nu + 0.5) - std::lgamma(B - A + nu - 0.5) -
                             std::lgamma(2.0 * A - nu + 1.0);
    const double value = -std::exp2(A + 2.0) * B * std::exp(0.5 * log_inner);
    if (!std::isfinite(value) || value == 0.0)
        throw OverflowError("norm_const: value left the floating range");
    return value;
}

namespace detail {

// Prefactor (cosh r - 1)^{(B-A)/2} (cosh r + 1)^{-(B+A)/2} / (2B cosh r - 2A - 1),
// evaluated through logs so that huge cosh r cannot underflow the powers.
inline double eigenfunction_prefactor(const PotentialParams& p, double r) {
    const double half = std::sinh(0.5 * r);
    const double cm1 = 2.0 * half * half; // cosh r - 1, stable near r = 0
    const double c = std::cosh(r);
    const double log_pref = 0.5 * (p.B - p.A) * std::log(cm1) -
                            0.5 * (p.B + p.A) * std::log(c + 1.0) -
                            std::log(2.0 * p.B * c - 2.0 * p.A - 1.0);
    return std::exp(log_pref);
}

} // namespace detail

/// Bound-state wavefunction with unit polynomial normalization: the X1
/// Jacobi polynomial of degree nu+1 in cosh r times the shared prefactor.
inline double eigenfunction_unnormalized(const PotentialParams& p, int nu, double r) {
    detail::require_nu_in_range(p, nu, "eigenfunction");
    detail::require_positive_r(r, "eigenfunction");
    const specfun::JacobiParams jp = jacobi_params(p);
    // polynomial first: it signals overflow before the prefactor can reach
    // the indeterminate 0 * inf regime at extreme r
    const double x1 = specfun::x1_jacobi(nu + 1, jp, std::cosh(r));
    return detail::eigenfunction_prefactor(p, r) * x1;
}

/// Default quadrature grid: reaches far enough that the slowest bound
/// state, decaying like exp(-(A - nu_max) r), is below machine noise at
/// the far end, with spacing ~1e-3.
inline RadialGrid default_bound_grid(const PotentialParams& p) {
    const double kappa = p.A - nu_max(p);
    const double r_max = std::max(35.0, 40.0 / kappa);
    int n = static_cast<int>(std::lround(r_max / 1e-3)) + 1;
    if (n % 2 == 0) ++n;
    return RadialGrid(1e-4, r_max, n);
}

/// Samples of the unnormalized eigenfunction over a grid.
inline std::vector<double> sample_eigenfunction(const PotentialParams& p, int nu,
                                                const RadialGrid& grid) {
    std::vector<double> psi(grid.n_points);
    for (int i = 0; i < grid.n_points; ++i)
        psi[i] = eigenfunction_unnormalized(p, nu, grid.point(i));
    return psi;
}

/// Normalization constant from quadrature, 1/sqrt(int psi~^2 dr). This is
/// the authoritative normalization; norm_const is cross-checked against it.
inline double quadrature_norm(const PotentialParams& p, int nu, const RadialGrid& grid) {
    std::vector<double> f = sample_eigenfunction(p, nu, grid);
    for (double& v : f) v *= v;
    const double integral = simpson(f, grid.step());
    if (!(integral > 0.0))
        throw DomainError("quadrature_norm: non-positive norm integral");
    return 1.0 / std::sqrt(integral);
}

inline double quadrature_norm(const PotentialParams& p, int nu) {
    return quadrature_norm(p, nu, default_bound_grid(p));
}

/// Bound-state wavefunction; when normalized, scaled by the quadrature
/// norm on the default grid (recomputed per call -- cheap for table use).
inline double eigenfunction(const PotentialParams& p, int nu, double r,
                            bool normalized = false) {
    double psi = eigenfunction_unnormalized(p, nu, r);
    if (normalized) psi *= quadrature_norm(p, nu);
    return psi;
}

/// All bound states of the potential pair.
inline std::vector<BoundState> bound_states(const PotentialParams& p) {
    std::vector<BoundState> states;
    for (int nu = 0; nu <= nu_max(p); ++nu)
        states.push_back({nu, energy(p, nu), norm_const(p, nu)});
    return states;
}

/// Gram matrix of the quadrature-normalized eigenfunctions, with a
/// step-halving estimate of the quadrature resolution.
struct OrthonormalityResult {
    int dim = 0;
    std::vector<double> overlap; // row-major dim x dim
    double refinement_delta = 0.0;
    bool resolution_warning = false;

    double at(int mu, int nu) const { return overlap[mu * dim + nu]; }
};

inline OrthonormalityResult orthonormality_matrix(const PotentialParams& p,
                                                  const RadialGrid& grid) {
    const int dim = nu_max(p) + 1;
    std::vector<std::vector<double>> psi(dim);
    for (int nu = 0; nu < dim; ++nu) psi[nu] = sample_eigenfunction(p, nu, grid);

    OrthonormalityResult out;
    out.dim = dim;
    out.overlap.assign(dim * dim, 0.0);
    const double h = grid.step();
    std::vector<double> norm(dim);
    std::vector<double> product(grid.n_points);

    for (int mu = 0; mu < dim; ++mu) {
        for (int i = 0; i < grid.n_points; ++i) product[i] = psi[mu][i] * psi[mu][i];
        norm[mu] = std::sqrt(simpson(product, h));
    }
    for (int mu = 0; mu < dim; ++mu) {
        for (int nu = mu; nu < dim; ++nu) {
            for (int i = 0; i < grid.n_points; ++i) product[i] = psi[mu][i] * psi[nu][i];
            const double fine = simpson(product, h);
            const double coarse = simpson_coarse(product, h);
            const double g = fine / (norm[mu] * norm[nu]);
            out.overlap[mu * dim + nu] = g;
            out.overlap[nu * dim + mu] = g;
            out.refinement_delta = std::max(
                out.refinement_delta, std::abs(fine - coarse) / (norm[mu] * norm[nu]));
        }
    }
    out.resolution_warning = out.refinement_delta > 1e-9;
    return out;
}

/// Max of |-psi'' + V psi - E psi| / max|psi| over interior grid points,
/// with psi'' from the 5-point central stencil and V the extended
/// potential. Scale-invariant, so the unnormalized eigenfunction is used.
inline double schrodinger_residual(const PotentialParams& p, int nu,
                                   const RadialGrid& grid) {
    detail::require_nu_in_range(p, nu, "schrodinger_residual");
    const std::vector<double> psi = sample_eigenfunction(p, nu, grid);
    const double h = grid.step();
    const double e = energy(p, nu);
    double peak = 0.0;
    for (double v : psi) peak = std::max(peak, std::abs(v));
    double worst = 0.0;
    for (int i = 2; i + 2 < grid.n_points; ++i) {
        const double d2 = (-psi[i - 2] + 16.0 * psi[i - 1] - 30.0 * psi[i] +
                           16.0 * psi[i + 1] - psi[i + 2]) / (12.0 * h * h);
        const double v = potential(PotentialKind::extended, p, grid.point(i));
        worst = std::max(worst, std::abs(-d2 + (v - e) * psi[i]));
    }
    return worst / peak;
}

/// Number of strict sign changes of the eigenfunction across the grid.
inline int node_count(const PotentialParams& p, int nu, const RadialGrid& grid) {
    const std::vector<double> psi = sample_eigenfunction(p, nu, grid);
    int nodes = 0;
    double prev = 0.0;
    for (double v : psi) {
        if (v == 0.0) continue;
        if (prev != 0.0 && ((prev < 0.0) != (v < 0.0))) ++nodes;
        prev = v;
    }
    return nodes;
}

} // namespace regpt
