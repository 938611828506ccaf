#include <catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <future>
#include <random>
#include <vector>

#include "regpt/scattering.hpp"

using namespace regpt;

namespace {

const PotentialParams fix1(2.5, 4.0);
const PotentialParams fix2(0.5, 2.0);
const PotentialParams fix3(1.2, 3.7);

double rel_err(Complex got, Complex ref) {
    return std::abs(got - ref) / std::abs(ref);
}

constexpr double pi = 3.14159265358979323846;

} // namespace

TEST_CASE("complexified_jacobi frozen values") {
    // mpmath references at A=2.5, B=4, k=1, r=2
    CHECK(rel_err(complexified_jacobi(fix1, 1.0, 0, 2.0),
                  {-2.6570514404479641778, -0.75915755441370405079}) < 1e-11);
    CHECK(rel_err(complexified_jacobi(fix1, 1.0, -1, 2.0),
                  {-3.8418590340594665014, 0.82689888713458040441}) < 1e-11);
    CHECK_THROWS_AS(complexified_jacobi(fix1, 1.0, 1, 2.0), IndexError);
    CHECK_THROWS_AS(complexified_jacobi(fix1, 1.0, 0, -2.0), DomainError);
}

TEST_CASE("complexified_jacobi small-r limit is the gamma prefactor") {
    // F(..., z) -> 1 as z -> 0, so the value approaches the prefactor,
    // which at degree shift 0 equals the matching coefficient P.
    const Complex cj = complexified_jacobi(fix1, 1.0, 0, 1e-8);
    const Complex pref = match_coefficients(fix1, 1.0).P;
    CHECK(rel_err(cj, pref) < 1e-12);
}

TEST_CASE("complexified_jacobi is real at k = 0") {
    for (double r : {0.5, 2.0, 7.0}) {
        const Complex v = complexified_jacobi(fix1, 0.0, 0, r);
        CHECK(std::abs(v.imag()) <= 1e-12 * std::abs(v));
    }
}

TEST_CASE("scattering wavefunction frozen values") {
    CHECK(rel_err(scattering_wavefunction(fix1, 1.0, 2.0),
                  {0.0017128585456103458381, 0.00038063523235785463069}) < 1e-11);
    CHECK(rel_err(scattering_wavefunction(fix1, 1.0, 15.0),
                  {-0.0058456467786254811669, -0.0012990326174723291482}) < 1e-11);
}

TEST_CASE("scattering wavefunction is regular at the origin") {
    // ~ r^{B-A} leading power
    const Complex lo = scattering_wavefunction(fix1, 1.0, 1e-4);
    const Complex hi = scattering_wavefunction(fix1, 1.0, 2e-4);
    CHECK(std::abs(std::abs(hi / lo) - std::pow(2.0, fix1.B - fix1.A)) < 1e-3);
}

TEST_CASE("scattering wavefunction solves the extended equation") {
    // 5-point finite-difference residual of -psi'' + V psi = (A^2+k^2) psi,
    // pointwise across the interaction region
    const double h = 1e-3;
    for (const auto& p : {fix1, fix2}) {
        for (double k : {0.5, 1.3}) {
            const double e = p.A * p.A + k * k;
            double worst = 0.0, scale = 0.0;
            for (double r : {0.5, 1.0, 2.0, 5.0, 8.0}) {
                Complex stencil[5];
                for (int j = -2; j <= 2; ++j)
                    stencil[j + 2] = scattering_wavefunction(p, k, r + j * h);
                const Complex d2 = (-stencil[0] + 16.0 * stencil[1] - 30.0 * stencil[2] +
                                    16.0 * stencil[3] - stencil[4]) / (12.0 * h * h);
                const double v = potential(PotentialKind::extended, p, r);
                worst = std::max(worst, std::abs(-d2 + (v - e) * stencil[2]));
                scale = std::max(scale, std::abs(stencil[2]));
            }
            INFO("A = " << p.A << ", k = " << k << ", residual = " << worst / scale);
            CHECK(worst / scale < 1e-5);
        }
    }
}

TEST_CASE("threshold limit of the S-matrix") {
    // no zero-energy resonance: S -> +1 as k -> 0+
    for (const auto& p : {fix1, fix2, fix3})
        CHECK(std::abs(s_matrix(p, 2e-3) - 1.0) < 0.05);
}

TEST_CASE("match coefficients") {
    const MatchCoefficients m = match_coefficients(fix1, 1.0);
    // P and Q collapse to polynomials of the parameters here
    CHECK(rel_err(m.P, {3.5, 1.0}) < 1e-13);
    CHECK(rel_err(m.Q, {2.5, 1.0}) < 1e-13);
    CHECK(rel_err(m.a, {0.053017032581643140854, 0.056723137104197586454}) < 1e-12);
    CHECK(rel_err(m.b, {0.053017032581643140854, -0.056723137104197586454}) < 1e-12);
    CHECK(rel_err(m.c, {0.012163706058306377534, 0.025191771548037867139}) < 1e-12);
    CHECK(rel_err(m.d, {-0.077613450909254122262, -0.14295043058754664347}) < 1e-12);
    // Observation (not a contract): at real k, b equals conj(a) by Schwarz
    // reflection of the gamma factors.
    INFO("b - conj(a) = " << std::abs(m.b - std::conj(m.a)));

    // Gamma recurrence: P/Q = (B + ik - 1/2)/(A + ik)
    for (double k : {0.3, 1.0, 2.7}) {
        const MatchCoefficients mm = match_coefficients(fix1, k);
        const Complex want = Complex(fix1.B - 0.5, k) / Complex(fix1.A, k);
        CHECK(rel_err(mm.P / mm.Q, want) < 1e-12);
    }
    CHECK_THROWS_AS(match_coefficients(fix1, 1e-4), ThresholdError);
}

TEST_CASE("s_matrix frozen values") {
    CHECK(rel_err(s_matrix(fix1, 1.7),
                  {-0.70008333488737152859, 0.71406114879117769205}) < 1e-12);
    CHECK(rel_err(s_matrix(fix2, 0.3),
                  {-0.10357190601098475277, -0.99462196853138717531}) < 1e-12);
    CHECK(rel_err(s_matrix(fix3, 0.3),
                  {-0.62751714454349310428, 0.77860274421811588073}) < 1e-12);
    CHECK(std::abs(phase_shift(fix1, 1.7) - 1.1731552611317330616) < 1e-12);
}

TEST_CASE("s_matrix threshold guard") {
    CHECK_THROWS_AS(s_matrix(fix1, 1e-3), ThresholdError);
    CHECK_THROWS_AS(s_matrix(fix1, 0.0), ThresholdError);
    CHECK_THROWS_AS(s_matrix_gpt(fix1, 5e-4), ThresholdError);
    CHECK_NOTHROW(s_matrix(fix1, 1.001e-3));
}

TEST_CASE("unitarity over random parameters") {
    std::mt19937 rng(5150);
    std::uniform_real_distribution<double> ua(0.05, 4.0), ub(0.05, 5.0), uk(0.01, 10.0);
    for (int i = 0; i < 200; ++i) {
        const double A = ua(rng);
        const PotentialParams p(A, A + 1.05 + ub(rng));
        const double k = uk(rng);
        CHECK(std::abs(std::abs(s_matrix(p, k)) - 1.0) < 1e-10);
        CHECK(std::abs(std::abs(s_matrix_gpt(p, k)) - 1.0) < 1e-10);
    }
}

TEST_CASE("reciprocity S(k) S(-k) = 1") {
    std::mt19937 rng(6021);
    std::uniform_real_distribution<double> ua(0.05, 3.5), ub(0.1, 5.0), uk(0.05, 8.0);
    for (int i = 0; i < 100; ++i) {
        const double A = ua(rng);
        const PotentialParams p(A, A + 1.05 + ub(rng));
        const double k = uk(rng);
        const Complex prod = s_matrix_at(p, Complex(k, 0.0)) * s_matrix_at(p, Complex(-k, 0.0));
        CHECK(std::abs(prod - 1.0) < 1e-10);
    }
}

TEST_CASE("factorization into the GPT factor and the rational multiplier") {
    for (const auto& p : {fix1, fix2, fix3}) {
        for (double k : {0.05, 0.3, 1.0, 2.2, 6.0}) {
            const Complex ik(0.0, k);
            const Complex ratio = (p.B * p.B - (ik - 0.5) * (ik - 0.5)) /
                                  (p.B * p.B - (ik + 0.5) * (ik + 0.5));
            CHECK(rel_err(s_matrix(p, k), s_matrix_gpt(p, k) * ratio) < 1e-12);
        }
    }
}

TEST_CASE("closed form equals the matching-coefficient route") {
    for (const auto& p : {fix1, fix2, fix3}) {
        for (double k : {0.01, 0.1, 0.3, 1.0, 1.7, 3.0, 4.0, 5.0, 10.0}) {
            CHECK(rel_err(s_matrix_from_asymptotics(p, k), s_matrix(p, k)) < 1e-10);
        }
    }
}

TEST_CASE("phase shift convention and unwrapping") {
    // principal value stays inside (-pi/2, pi/2]
    for (double k : {0.05, 0.2, 0.8, 1.5, 4.0, 9.0}) {
        const double d = phase_shift(fix1, k);
        CHECK(d > -pi / 2);
        CHECK(d <= pi / 2);
    }
    // nearest-branch continuation removes the mod-pi jumps
    const std::vector<double> wrapped = {1.5, -1.5, -1.4, 1.45};
    const std::vector<double> smooth = unwrap_phases(wrapped);
    CHECK(std::abs(smooth[0] - 1.5) < 1e-15);
    CHECK(std::abs(smooth[1] - (-1.5 + pi)) < 1e-15);
    CHECK(std::abs(smooth[2] - (-1.4 + pi)) < 1e-15);
    CHECK(std::abs(smooth[3] - 1.45) < 1e-15); // already nearest to its neighbor
    // an actual sweep is continuous after unwrapping
    std::vector<double> principal;
    for (int i = 0; i <= 400; ++i)
        principal.push_back(phase_shift(fix1, 0.1 + (5.0 - 0.1) * i / 400.0));
    const std::vector<double> curve = unwrap_phases(principal);
    for (std::size_t i = 1; i < curve.size(); ++i)
        CHECK(std::abs(curve[i] - curve[i - 1]) < 0.2);
}

TEST_CASE("pole map reproduces the bound spectrum") {
    const auto poles = pole_map(fix1);
    REQUIRE(poles.size() == 3);
    const double want_e[] = {0.0, 4.0, 6.0};
    const double want_kappa[] = {2.5, 1.5, 0.5};
    for (int nu = 0; nu <= 2; ++nu) {
        CHECK(poles[nu].nu == nu);
        CHECK(std::abs(poles[nu].k_pole - Complex(0.0, want_kappa[nu])) < 1e-15);
        CHECK(poles[nu].energy == want_e[nu]);
        CHECK(poles[nu].probe_magnitude > 1e6);
    }
    // beyond nu_max the probe stays far below the pole threshold
    const Complex beyond = s_matrix_at(fix1, Complex(1e-7, fix1.A - 3.0));
    CHECK(std::abs(beyond) < 1e6);
    for (const auto& p : {fix2, fix3})
        for (const auto& pole : pole_map(p)) CHECK(pole.probe_magnitude > 1e6);
}

TEST_CASE("rational-factor special points are not physical-sheet poles") {
    // The rational multiplier vanishes/diverges at ik = -+(B -+ 1/2); probed
    // with the bound-state offset, the gamma structure keeps |S| orders of
    // magnitude below the pole threshold at all three points.
    for (const auto& p : {fix1, fix2, fix3}) {
        for (double kappa : {-(p.B - 0.5), p.B + 0.5, p.B - 0.5}) {
            const double probe = std::abs(s_matrix_at(p, Complex(1e-7, kappa)));
            INFO("A = " << p.A << ", B = " << p.B << ", kappa = " << kappa
                        << ", |S| = " << probe);
            CHECK(probe < 1e6);
        }
    }
}

TEST_CASE("asymptotic residual of the analytic wavefunction") {
    CHECK(asymptotic_residual(fix1, 1.0, 20.0) < 1e-5);
    CHECK(asymptotic_residual(fix2, 2.0, 18.0) < 1e-5);
    const double r15 = asymptotic_residual(fix1, 1.0, 15.0);
    const double r20 = asymptotic_residual(fix1, 1.0, 20.0);
    const double r25 = asymptotic_residual(fix1, 1.0, 25.0);
    CHECK(r20 < r15);
    CHECK(r25 <= r20 * 1.5);
    CHECK_THROWS_AS(asymptotic_residual(fix1, 1.0, 10.0), DomainError);
    CHECK_THROWS_AS(asymptotic_residual(fix1, 1.0, 20.0, 4), FitError);
}

TEST_CASE("scattering table invariants") {
    const auto table = scattering_table(fix1, 0.1, 5.0, 50);
    REQUIRE(table.size() == 50);
    for (const auto& pt : table) {
        CHECK(std::abs(std::abs(pt.s_value) - 1.0) < 1e-10);
        CHECK(pt.energy == fix1.A * fix1.A + pt.k * pt.k);
        CHECK(pt.phase_shift > -pi / 2);
        CHECK(pt.phase_shift <= pi / 2);
    }
    CHECK_THROWS_AS(scattering_table(fix1, -1.0, 5.0, 10), DomainError);
}

TEST_CASE("concurrent sweep evaluation is bitwise deterministic") {
    const int n = 64;
    std::vector<Complex> sequential(n);
    for (int i = 0; i < n; ++i)
        sequential[i] = s_matrix(fix1, 0.1 + i * 0.05);
    std::vector<std::future<std::vector<Complex>>> chunks;
    const int stripe = n / 4;
    for (int c = 0; c < 4; ++c) {
        chunks.push_back(std::async(std::launch::async, [c, stripe] {
            std::vector<Complex> out(stripe);
            for (int i = 0; i < stripe; ++i)
                out[i] = s_matrix(fix1, 0.1 + (c * stripe + i) * 0.05);
            return out;
        }));
    }
    for (int c = 0; c < 4; ++c) {
        const auto part = chunks[c].get();
        for (int i = 0; i < stripe; ++i) {
            CHECK(part[i].real() == sequential[c * stripe + i].real());
            CHECK(part[i].imag() == sequential[c * stripe + i].imag());
        }
    }
}
