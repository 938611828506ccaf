#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "regpt/errors.hpp"
#include "regpt/potential.hpp"
#include "regpt/spectrum.hpp"
#include "regpt/specfun.hpp"

namespace regpt {

/// Wavenumbers below this sit too close to the k = 0 threshold, where
/// Gamma(+-2ik) makes the closed form meaningless.
inline constexpr double k_threshold = 1e-3;

/// One point of a scattering sweep. energy = A^2 + k^2; phase_shift is the
/// principal value arg(S)/2 in (-pi/2, pi/2].
struct ScatteringPoint {
    double k;
    Complex s_value;
    double phase_shift;
    double energy;
};

/// The six gamma-built matching coefficients of the asymptotic expansion.
/// b here is unrelated to JacobiParams::jacobi_b. d closes the set but
/// feeds nothing downstream.
struct MatchCoefficients {
    Complex P, Q, a, b, c, d;
};

namespace detail {

inline void require_scattering_k(double k, const char* who) {
    if (!(k > k_threshold))
        throw ThresholdError(std::string(who) + ": require k > 1e-3 (threshold guard)");
}

inline Complex two_pow_m4ik(Complex ik) {
    return std::exp(-4.0 * ik * std::log(2.0));
}

} // namespace detail

/// Jacobi function of complexified degree A + ik + degree_shift
/// (degree_shift in {-1, 0}), through the hypergeometric representation
/// with unit overall constant. Real-valued at k = 0.
inline Complex complexified_jacobi(const PotentialParams& p, double k,
                                   int degree_shift, double r) {
    detail::require_positive_r(r, "complexified_jacobi");
    if (degree_shift != 0 && degree_shift != -1)
        throw IndexError("complexified_jacobi: degree_shift must be 0 or -1");
    const specfun::JacobiParams jp = jacobi_params(p);
    const Complex nu = Complex(p.A + degree_shift, k);
    const double half = std::sinh(0.5 * r);
    const double z = -half * half; // (1 - cosh r)/2
    const Complex prefactor = specfun::gamma_ratio(
        {nu + jp.alpha + 1.0}, {nu + 1.0, Complex(1.0 + jp.alpha)});
    return prefactor *
           specfun::hyp2f1(nu + jp.alpha + jp.beta + 1.0, -nu, Complex(1.0 + jp.alpha), z);
}

/// Scattering wavefunction (unit normalization): the bound-state form with
/// the X1 combination taken at complexified degree A + ik + 1, where
/// alpha + beta + 2(A + ik) = -1 + 2ik.
inline Complex scattering_wavefunction(const PotentialParams& p, double k, double r) {
    detail::require_positive_r(r, "scattering_wavefunction");
    if (!(k > 0.0))
        throw DomainError("scattering_wavefunction: require k > 0");
    const double bj = (2.0 * p.A + 1.0) / (2.0 * p.B);
    const double x = std::cosh(r);
    const Complex s(-1.0, 2.0 * k);
    const Complex x1 = (((bj - x) * s + 2.0 * bj) * complexified_jacobi(p, k, 0, r) -
                        2.0 * complexified_jacobi(p, k, -1, r)) / (2.0 * s);
    return detail::eigenfunction_prefactor(p, r) * x1;
}

/// The matching coefficients evaluated at real k > 0.
inline MatchCoefficients match_coefficients(const PotentialParams& p, double k) {
    detail::require_scattering_k(k, "match_coefficients");
    using specfun::gamma_ratio;
    const double A = p.A, B = p.B;
    const Complex ik(0.0, k);
    const Complex g0(B - A + 0.5);
    MatchCoefficients m;
    m.P = gamma_ratio({B + ik + 0.5}, {A + ik + 1.0, g0});
    m.Q = gamma_ratio({B + ik - 0.5}, {A + ik, g0});
    m.a = gamma_ratio({g0, -2.0 * ik}, {-A - ik, B - ik + 0.5});
    m.b = gamma_ratio({g0, 2.0 * ik}, {-A + ik, B + ik + 0.5});
    m.c = gamma_ratio({g0, 2.0 - 2.0 * ik}, {1.0 - A - ik, B - ik + 1.5});
    m.d = gamma_ratio({g0, 2.0 * ik - 2.0}, {-A + ik - 1.0, B + ik - 0.5});
    return m;
}

/// GPT S-matrix factor at (possibly complex) wavenumber. The overall sign
/// is fixed by the wavefunction asymptotics: S -> +1 as k -> 0+ (no
/// threshold resonance), which the Numerov oracle confirms.
inline Complex s_matrix_gpt_at(const PotentialParams& p, Complex k) {
    const double A = p.A, B = p.B;
    const Complex ik = Complex(0.0, 1.0) * k;
    const Complex g = specfun::gamma_ratio({2.0 * ik, -A - ik, B - ik + 0.5},
                                           {-A + ik, -2.0 * ik, B + ik + 0.5});
    return -g * detail::two_pow_m4ik(ik);
}

/// Closed-form S-matrix of the extended potential: the GPT factor times
/// the rational multiplier [B^2-(ik-1/2)^2]/[B^2-(ik+1/2)^2].
inline Complex s_matrix_at(const PotentialParams& p, Complex k) {
    const Complex ik = Complex(0.0, 1.0) * k;
    const Complex up = p.B * p.B - (ik - 0.5) * (ik - 0.5);
    const Complex dn = p.B * p.B - (ik + 0.5) * (ik + 0.5);
    return s_matrix_gpt_at(p, k) * up / dn;
}

inline Complex s_matrix_gpt(const PotentialParams& p, double k) {
    detail::require_scattering_k(k, "s_matrix_gpt");
    return s_matrix_gpt_at(p, Complex(k, 0.0));
}

inline Complex s_matrix(const PotentialParams& p, double k) {
    detail::require_scattering_k(k, "s_matrix");
    return s_matrix_at(p, Complex(k, 0.0));
}

/// S-matrix assembled from the matching coefficients,
/// S = b P (1-2ik) 2^{-4ik} / [a P (2ik-1) + Q c],
/// the pre-simplification route. Agrees with s_matrix to roundoff; kept
/// as an independent check of the closed form's algebra.
inline Complex s_matrix_from_asymptotics(const PotentialParams& p, double k) {
    detail::require_scattering_k(k, "s_matrix_from_asymptotics");
    const MatchCoefficients m = match_coefficients(p, k);
    const Complex ik(0.0, k);
    const Complex numer = m.b * m.P * (1.0 - 2.0 * ik) * detail::two_pow_m4ik(ik);
    const Complex denom = m.a * m.P * (2.0 * ik - 1.0) + m.Q * m.c;
    return numer / denom;
}

/// Principal-value phase shift, delta = arg(S)/2 in (-pi/2, pi/2].
inline double phase_shift(const PotentialParams& p, double k) {
    return 0.5 * std::arg(s_matrix(p, k));
}

/// Continuous phase-shift curve along a k sweep: each point is shifted by
/// the multiple of pi nearest to the previous point (S = e^{2i delta}
/// defines delta mod pi).
inline std::vector<double> unwrap_phases(const std::vector<double>& principal) {
    std::vector<double> out(principal.size());
    constexpr double pi = std::numbers::pi;
    for (std::size_t i = 0; i < principal.size(); ++i) {
        double d = principal[i];
        if (i > 0) d += pi * std::round((out[i - 1] - d) / pi);
        out[i] = d;
    }
    return out;
}

/// One bound-state pole of the S-matrix on the positive imaginary k axis,
/// with the |S| magnitude probed a perpendicular step away from the pole.
struct SMatrixPole {
    int nu;
    Complex k_pole;
    double energy;
    double probe_magnitude;
};

/// Poles at k = i(A - nu) for nu = 0..nu_max; the probe offset is 1e-7.
inline std::vector<SMatrixPole> pole_map(const PotentialParams& p) {
    std::vector<SMatrixPole> poles;
    for (int nu = 0; nu <= nu_max(p); ++nu) {
        const Complex kp(0.0, p.A - nu);
        const double e = p.A * p.A + (kp * kp).real();
        const double probe = std::abs(s_matrix_at(p, kp + Complex(1e-7, 0.0)));
        poles.push_back({nu, kp, e, probe});
    }
    return poles;
}

/// Relative residual of the least-squares fit of the scattering
/// wavefunction to c [S e^{ikr} - e^{-ikr}] over one asymptotic
/// wavelength starting at r_probe.
inline double asymptotic_residual(const PotentialParams& p, double k, double r_probe,
                                  int n_samples = 64) {
    detail::require_scattering_k(k, "asymptotic_residual");
    if (!(r_probe >= 15.0))
        throw DomainError("asymptotic_residual: require r_probe >= 15");
    if (n_samples < 8)
        throw FitError("asymptotic_residual: window must contain at least 8 samples");
    const Complex s = s_matrix(p, k);
    const double window = 2.0 * std::numbers::pi / k;
    Complex mm = 0.0, mpsi = 0.0;
    std::vector<Complex> model(n_samples), psi(n_samples);
    for (int j = 0; j < n_samples; ++j) {
        const double r = r_probe + window * j / (n_samples - 1);
        const Complex phase = std::exp(Complex(0.0, k * r));
        model[j] = s * phase - 1.0 / phase;
        psi[j] = scattering_wavefunction(p, k, r);
        mm += std::conj(model[j]) * model[j];
        mpsi += std::conj(model[j]) * psi[j];
    }
    const Complex scale = mpsi / mm;
    double num = 0.0, den = 0.0;
    for (int j = 0; j < n_samples; ++j) {
        num += std::norm(psi[j] - scale * model[j]);
        den += std::norm(psi[j]);
    }
    return std::sqrt(num / den);
}

/// S-matrix sweep over [k_min, k_max] with principal phase shifts.
inline std::vector<ScatteringPoint> scattering_table(const PotentialParams& p,
                                                     double k_min, double k_max,
                                                     int k_steps) {
    if (!(k_min > 0.0) || !(k_min <= k_max) || k_steps < 2)
        throw DomainError("scattering_table: need 0 < k_min <= k_max and k_steps >= 2");
    std::vector<ScatteringPoint> table;
    table.reserve(k_steps);
    for (int i = 0; i < k_steps; ++i) {
        const double k = k_min + (k_max - k_min) * i / (k_steps - 1);
        const Complex s = s_matrix(p, k);
        table.push_back({k, s, 0.5 * std::arg(s), p.A * p.A + k * k});
    }
    return table;
}

} // namespace regpt
