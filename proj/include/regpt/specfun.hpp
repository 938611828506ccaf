#pragma once

#include <cmath>
#include <complex>
#include <initializer_list>
#include <limits>
#include <span>
#include <string>

#include "regpt/errors.hpp"

namespace regpt {

using Complex = std::complex<double>;

namespace specfun {

/// Distance below which a gamma argument counts as sitting on a pole.
inline constexpr double pole_tolerance = 1e-12;

/// Series iteration budget shared by all hypergeometric evaluations.
inline constexpr int series_budget = 10000;

namespace detail {

inline bool near_nonpositive_integer(Complex z, double tol, long* which = nullptr) {
    if (z.real() > 0.5) return false;
    const double n = std::round(z.real());
    if (n > 0.5) return false;
    if (std::hypot(z.real() - n, z.imag()) >= tol) return false;
    if (which) *which = static_cast<long>(-n);
    return true;
}

// Stirling series for log Gamma, valid once Re w is large enough.
// Coefficients are B_{2j} / (2j (2j-1)).
inline Complex log_gamma_stirling(Complex w) {
    static constexpr double coef[] = {
        1.0 / 12.0,          -1.0 / 360.0,        1.0 / 1260.0,
        -1.0 / 1680.0,       1.0 / 1188.0,        -691.0 / 360360.0,
        1.0 / 156.0,         -3617.0 / 122400.0,  43867.0 / 244188.0,
    };
    const Complex w2 = w * w;
    Complex s = coef[8];
    for (int j = 7; j >= 0; --j) s = coef[j] + s / w2;
    constexpr double half_log_two_pi = 0.91893853320467274178; // ln(2*pi)/2
    return (w - 0.5) * std::log(w) - w + half_log_two_pi + s / w;
}

} // namespace detail

/// Principal branch of log Gamma(z) (real on the positive axis, cut along
/// the non-positive reals). Argument-shifted Stirling evaluation; good to
/// well below 1e-12 relative in exp(result) over |Re z|, |Im z| <= 50.
inline Complex log_gamma(Complex z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw DomainError("log_gamma: non-finite argument");
    if (detail::near_nonpositive_integer(z, pole_tolerance))
        throw PoleError("log_gamma: argument within 1e-12 of a non-positive integer");
    if (z.real() < -1e5)
        throw DomainError("log_gamma: argument too far down the negative axis");
    // log Gamma(z) = log Gamma(z+m) - sum_j log(z+j), principal logs throughout.
    constexpr double stirling_edge = 10.0;
    Complex shifted_logs = 0.0;
    while (z.real() < stirling_edge) {
        shifted_logs += std::log(z);
        z += 1.0;
    }
    Complex result = detail::log_gamma_stirling(z) - shifted_logs;
    if (!std::isfinite(result.real()) || !std::isfinite(result.imag()))
        throw OverflowError("log_gamma: non-finite result");
    return result;
}

/// Product of Gamma factors over a product of Gamma factors, evaluated in
/// log space so that individually huge factors cancel before exponentiation.
inline Complex gamma_ratio(std::span<const Complex> numerators,
                           std::span<const Complex> denominators) {
    Complex log_sum = 0.0;
    for (const Complex& z : numerators) log_sum += log_gamma(z);
    for (const Complex& z : denominators) log_sum -= log_gamma(z);
    if (log_sum.real() > 700.0)
        throw OverflowError("gamma_ratio: log-magnitude exceeds representable range");
    return std::exp(log_sum);
}

inline Complex gamma_ratio(std::initializer_list<Complex> numerators,
                           std::initializer_list<Complex> denominators) {
    return gamma_ratio(std::span<const Complex>(numerators.begin(), numerators.size()),
                       std::span<const Complex>(denominators.begin(), denominators.size()));
}

namespace detail {

// Maclaurin series of 2F1; caller guarantees |z| < 1 (or a terminating case).
inline Complex hyp_series(Complex a, Complex b, Complex c, double z) {
    Complex term = 1.0;
    Complex sum = 1.0;
    int quiet = 0;
    for (int n = 0; n < series_budget; ++n) {
        term *= (a + static_cast<double>(n)) * (b + static_cast<double>(n)) /
                ((c + static_cast<double>(n)) * (n + 1.0)) * z;
        sum += term;
        if (std::abs(term) < 1e-16 * std::abs(sum)) {
            if (++quiet >= 3) return sum;
        } else {
            quiet = 0;
        }
    }
    throw ConvergenceError("hyp2f1: series did not converge within budget");
}

// Terminating series: one of a, b is (numerically) a non-positive integer -n;
// the sum has exactly n+1 terms and is valid for every z.
inline Complex hyp_terminating(Complex a, Complex b, Complex c, double z, long n) {
    Complex term = 1.0;
    Complex sum = 1.0;
    for (long j = 0; j < n; ++j) {
        term *= (a + static_cast<double>(j)) * (b + static_cast<double>(j)) /
                ((c + static_cast<double>(j)) * (j + 1.0)) * z;
        sum += term;
    }
    return sum;
}

inline bool near_real_integer(Complex z, double tol) {
    return std::abs(z.imag()) < tol &&
           std::abs(z.real() - std::round(z.real())) < tol;
}

// Inversion z -> 1/z, the workhorse for large negative arguments. Requires
// a - b away from the integers; the a or b non-positive-integer cases are
// dispatched to the terminating sum before this is reached.
inline Complex hyp_inversion(Complex a, Complex b, Complex c, double z) {
    const double u = 1.0 / z;
    const double log_mz = std::log(-z);
    Complex t1 = 0.0;
    if (!near_nonpositive_integer(c - a, pole_tolerance)) {
        t1 = gamma_ratio({c, b - a}, {b, c - a}) * std::exp(-a * log_mz) *
             hyp_series(a, a - c + 1.0, a - b + 1.0, u);
    }
    Complex t2 = 0.0;
    if (!near_nonpositive_integer(c - b, pole_tolerance)) {
        t2 = gamma_ratio({c, a - b}, {a, c - b}) * std::exp(-b * log_mz) *
             hyp_series(b, b - c + 1.0, b - a + 1.0, u);
    }
    return t1 + t2;
}

} // namespace detail

/// Gauss hypergeometric 2F1(a, b; c; z) for real z < 1 and complex
/// parameters. Dispatch: direct series on (-1/2, 1); Pfaff map
/// w = z/(z-1) on (-2, -1/2]; z -> 1/z inversion below that (falling back
/// to Pfaff when a - b sits near an integer, where the inversion
/// coefficients degenerate). Terminating parameter cases are summed
/// exactly whatever z is.
inline Complex hyp2f1(Complex a, Complex b, Complex c, double z) {
    if (!std::isfinite(z))
        throw DomainError("hyp2f1: non-finite argument");
    if (z >= 1.0)
        throw DomainError("hyp2f1: require z < 1");
    if (detail::near_nonpositive_integer(c, pole_tolerance))
        throw PoleError("hyp2f1: parameter c at a non-positive integer");

    long na = -1, nb = -1;
    const bool ta = detail::near_nonpositive_integer(a, pole_tolerance, &na);
    const bool tb = detail::near_nonpositive_integer(b, pole_tolerance, &nb);
    if (ta || tb) {
        long n = ta && tb ? std::min(na, nb) : (ta ? na : nb);
        return detail::hyp_terminating(a, b, c, z, n);
    }
    if (z > -0.5)
        return detail::hyp_series(a, b, c, z);
    if (z > -2.0)
        return std::exp(-a * std::log(1.0 - z)) *
               detail::hyp_series(a, c - b, c, z / (z - 1.0));
    if (detail::near_real_integer(a - b, 1e-6))
        return std::exp(-a * std::log(1.0 - z)) *
               detail::hyp_series(a, c - b, c, z / (z - 1.0));
    return detail::hyp_inversion(a, b, c, z);
}

/// Classical Jacobi polynomial P_n^{(alpha,beta)}(x) by the three-term
/// recurrence. Parameters may lie outside the orthogonality range
/// (beta < -1 is the routine case here); x is unrestricted.
inline double jacobi_poly(int n, double alpha, double beta, double x) {
    if (n < 0)
        throw IndexError("jacobi_poly: require n >= 0");
    if (n == 0) return 1.0;
    double pm1 = 1.0;
    double p = (alpha + 1.0) + 0.5 * (alpha + beta + 2.0) * (x - 1.0);
    for (int m = 2; m <= n; ++m) {
        const double ab = alpha + beta;
        const double c1 = 2.0 * m * (m + ab) * (2.0 * m + ab - 2.0);
        const double c2 = (2.0 * m + ab - 1.0) * (alpha * alpha - beta * beta);
        const double c3 = (2.0 * m + ab - 2.0) * (2.0 * m + ab - 1.0) * (2.0 * m + ab);
        const double c4 = 2.0 * (m + alpha - 1.0) * (m + beta - 1.0) * (2.0 * m + ab);
        const double next = ((c2 + c3 * x) * p - c4 * pm1) / c1;
        pm1 = p;
        p = next;
    }
    if (!std::isfinite(p))
        throw OverflowError("jacobi_poly: value left the floating range");
    return p;
}

/// Jacobi parameter pair (alpha, beta) together with the derived
/// combination b = (beta + alpha)/(beta - alpha) used by the X1 family.
struct JacobiParams {
    double alpha;
    double beta;
    double jacobi_b;

    JacobiParams(double alpha_, double beta_) : alpha(alpha_), beta(beta_) {
        if (beta == alpha)
            throw DegeneracyError("JacobiParams: require beta != alpha");
        jacobi_b = (beta + alpha) / (beta - alpha);
    }
};

/// X1 Jacobi polynomial of degree n >= 1, assembled from the classical
/// polynomials of degrees n-1 and n-2.
inline double x1_jacobi(int n, const JacobiParams& p, double x) {
    if (n < 1)
        throw IndexError("x1_jacobi: require n >= 1");
    const double denom = p.alpha + p.beta + 2.0 * (n - 1);
    if (std::abs(denom) < pole_tolerance)
        throw DegeneracyError("x1_jacobi: alpha + beta + 2(n-1) vanishes");
    const double pm1 = jacobi_poly(n - 1, p.alpha, p.beta, x);
    const double pm2 = n >= 2 ? jacobi_poly(n - 2, p.alpha, p.beta, x) : 0.0;
    const double value = -0.5 * (x - p.jacobi_b) * pm1 + (p.jacobi_b * pm1 - pm2) / denom;
    if (!std::isfinite(value))
        throw OverflowError("x1_jacobi: value left the floating range");
    return value;
}

} // namespace specfun
} // namespace regpt
