#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "qha/radop.hpp"

using qha::Complex;
using qha::ModelParams;
using qha::SpectralPoint;

namespace {
SpectralPoint sp(double re, double im = 0.0) { return SpectralPoint{Complex(re, im)}; }
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

TEST_CASE("constant symbol gives the identity") {
    for (int n : {1, 2}) {
        auto p = ModelParams::make(n, n + 1.5);
        auto A = qha::toeplitz_eigs(qha::rpow(0), p, 24);
        for (const Complex& c : A.coeffs) CHECK(std::abs(c - 1.0) < 1e-10);
    }
}

TEST_CASE("weight-power symbol in closed form") {
    auto p = ModelParams::make(1, 2.0);
    auto A = qha::toeplitz_eigs(qha::hpow(1.0, p), p, 4);
    // c_m = Gamma(nu+m) Gamma(nu+1-n) / (Gamma(nu-n) Gamma(nu+1+m))
    CHECK(std::abs(A.coeffs[0] - 0.5) < 1e-12);
    CHECK(std::abs(A.coeffs[1] - 1.0 / 3.0) < 1e-12);
    CHECK(std::abs(A.coeffs[2] - 0.25) < 1e-12);
}

TEST_CASE("eigenvalues agree with the direct inner-product oracle") {
    // <T_f e_m, e_m> by two-dimensional quadrature over the disc against the
    // weighted measure (nu-1)/pi (1-|z|^2)^{nu-2} dA
    auto p = ModelParams::make(1, 3.0);
    auto A = qha::toeplitz_eigs(qha::rpow(1), p, 6);
    std::vector<double> gx, gw;
    qha::gauss_legendre(200, gx, gw);
    const double pi = 3.14159265358979324;
    const int ntheta = 64;
    for (int m = 0; m <= 6; ++m) {
        double beta_m = qha::gamma_ratio({m + 1.0, p.nu}, {p.nu + m}).real();
        Complex acc = 0.0;
        for (int i = 0; i < 200; ++i) {
            double r = 0.5 * (gx[i] + 1.0);
            Complex ring = 0.0;
            for (int k = 0; k < ntheta; ++k) {
                Complex z = std::polar(r, 2.0 * pi * k / ntheta);
                Complex em = std::pow(z, m) / std::sqrt(beta_m);
                ring += r * em * std::conj(em);  // f(|z|) = |z| = r
            }
            ring /= ntheta;
            acc += 0.5 * gw[i] * ring * (p.nu - 1.0) * 2.0 *
                   std::pow(1.0 - r * r, p.nu - 2.0) * r;
        }
        CHECK(std::abs(A.coeffs[m] - acc) < 1e-8);
    }
}

TEST_CASE("normalized spherical-symbol operator") {
    for (int n : {1, 2}) {
        auto p = ModelParams::make(n, n + 1.5);
        for (double l : {0.5, 1.0, 2.0, 5.0}) {
            auto T = qha::t_lambda_eigs(p, sp(l), 16);
            Complex hh = qha::h_hat(p.nu, p, sp(l));
            // tau_0 = sqrt(h_hat)
            CHECK(std::abs(T.coeffs[0] - std::sqrt(hh.real())) < 1e-8);
            // contraction: |tau_m| <= 1
            CHECK(qha::schatten_norm(T, p, kInf) <= 1.0 + 1e-10);
            // real coefficients on the real spectral axis
            for (const Complex& c : T.coeffs) CHECK(std::abs(c.imag()) < 1e-9);
        }
        // lambda = i rho: phi == 1, every tau_m equals sqrt(1/c_nu)
        auto T = qha::t_lambda_eigs(p, sp(0.0, p.rho), 12);
        double ref = std::sqrt(1.0 / qha::c_nu(p));
        for (const Complex& c : T.coeffs) CHECK(std::abs(c - ref) < 1e-9);
        // coefficients also real on the imaginary positive-definite segment
        auto S = qha::t_lambda_eigs(p, sp(0.0, 0.5), 8);
        for (const Complex& c : S.coeffs) CHECK(std::abs(c.imag()) < 1e-9);

        CHECK_THROWS_AS(qha::t_lambda_eigs(p, sp(0.0, n + 1.0), 8), qha::ParameterError);
    }
}

TEST_CASE("trace, Schatten norms, adjoint, positivity") {
    auto p2 = ModelParams::make(2, 3.5);
    qha::RadialOperator P0{{Complex(1.0)}, 0};
    CHECK(std::abs(qha::trace(P0, p2) - 1.0) < 1e-15);
    for (double q : {1.0, 2.0, 3.0, kInf})
        CHECK(std::abs(qha::schatten_norm(P0, p2, q) - 1.0) < 1e-15);

    qha::RadialOperator P01{{Complex(1.0), Complex(1.0)}, 0};
    CHECK(std::abs(qha::schatten_norm(P01, p2, 1.0) - 3.0) < 1e-14);  // d_1 = 2
    CHECK(std::abs(qha::trace(P01, p2) - 3.0) < 1e-14);

    std::mt19937 rng(7);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    qha::RadialOperator A;
    for (int m = 0; m <= 10; ++m) A.coeffs.push_back(Complex(dist(rng), dist(rng)));

    // duality: ||A||_op = sup over unit-trace-norm B of |tr(AB)|; the sup is
    // attained on a single normalized block
    double op = qha::schatten_norm(A, p2, kInf);
    double best = 0.0;
    for (int m = 0; m <= 10; ++m) {
        qha::RadialOperator B;
        B.coeffs.assign(m + 1, Complex(0.0));
        B.coeffs[m] = 1.0 / static_cast<double>(qha::dim_pm(p2.n, m));
        CHECK(std::abs(qha::schatten_norm(B, p2, 1.0) - 1.0) < 1e-14);
        // tr(AB) for diagonal radial operators is d_m a_m b_m summed
        Complex tr = 0.0;
        for (size_t k = 0; k < B.coeffs.size(); ++k)
            tr += static_cast<double>(qha::dim_pm(p2.n, static_cast<int>(k))) *
                  A.coeffs[k] * B.coeffs[k];
        best = std::max(best, std::abs(tr));
    }
    CHECK(std::abs(best - op) < 1e-12);

    // lp monotonicity
    CHECK(qha::schatten_norm(A, p2, 3.0) <= qha::schatten_norm(A, p2, 2.0) + 1e-14);
    CHECK(qha::schatten_norm(A, p2, 2.0) <= qha::schatten_norm(A, p2, 1.0) + 1e-14);
    CHECK(qha::schatten_norm(A, p2, kInf) <= qha::schatten_norm(A, p2, 3.0) + 1e-14);

    auto Adj = qha::adjoint(A);
    for (size_t m = 0; m < A.coeffs.size(); ++m)
        CHECK(Adj.coeffs[m] == std::conj(A.coeffs[m]));

    CHECK(qha::is_positive(P01));
    CHECK(!qha::is_positive(A));

    // positivity preservation and the adjoint-conjugation rule for symbols
    auto p1 = ModelParams::make(1, 2.5);
    auto Pos = qha::toeplitz_eigs(qha::rpow(2), p1, 12);
    CHECK(qha::is_positive(Pos, 1e-10));
    auto fc = qha::lincomb(Complex(1.0, 0.0), qha::hpow(1.0, p1), Complex(0.0, 1.0),
                           qha::rpow(2));
    auto fcbar = qha::lincomb(Complex(1.0, 0.0), qha::hpow(1.0, p1), Complex(0.0, -1.0),
                              qha::rpow(2));
    auto L = qha::adjoint(qha::toeplitz_eigs(fc, p1, 10));
    auto R = qha::toeplitz_eigs(fcbar, p1, 10);
    for (int m = 0; m <= 10; ++m) CHECK(std::abs(L.coeffs[m] - R.coeffs[m]) < 1e-12);
}

TEST_CASE("berezin transform") {
    auto p = ModelParams::make(1, 2.5);
    qha::RadialOperator P0{{Complex(1.0)}, 0};
    for (double r : {0.0, 0.3, 0.7, 0.9})
        CHECK(std::abs(qha::berezin(P0, p, r) - std::pow(1.0 - r * r, p.nu)) < 1e-14);

    qha::RadialOperator Id;
    Id.coeffs.assign(201, Complex(1.0));
    for (double r : {0.1, 0.4, 0.6})
        CHECK(std::abs(qha::berezin(Id, p, r) - 1.0) < 1e-8);

    for (int m : {1, 3, 7}) {
        qha::RadialOperator Pm;
        Pm.coeffs.assign(m + 1, Complex(0.0));
        Pm.coeffs[m] = 1.0;
        for (double r : {0.1, 0.5, 0.8}) CHECK(qha::berezin(Pm, p, r).real() > 0.0);
    }

    // separation: distinct coefficient vectors differ somewhere on the radius grid
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int trial = 0; trial < 5; ++trial) {
        qha::RadialOperator A, B;
        for (int m = 0; m <= 6; ++m) {
            A.coeffs.push_back(Complex(dist(rng), 0.0));
            B.coeffs.push_back(Complex(dist(rng), 0.0));
        }
        double sep = 0.0;
        for (int k = 1; k <= 9; ++k) {
            double r = 0.1 * k;
            sep = std::max(sep, std::abs(qha::berezin(A, p, r) - qha::berezin(B, p, r)));
        }
        CHECK(sep > 1e-6);
    }
}

TEST_CASE("hyperbolic translation matrix oracle") {
    auto p = ModelParams::make(1, 2.5);
    CHECK_THROWS_AS(qha::matrix_rep_oracle(ModelParams::make(2, 3.5), 0.5, 8),
                    qha::ParameterError);

    auto I = qha::matrix_rep_oracle(p, 0.0, 10);
    for (int a = 0; a <= 10; ++a)
        for (int b = 0; b <= 10; ++b)
            CHECK(std::abs(I.at(a, b) - (a == b ? 1.0 : 0.0)) < 1e-14);

    // Unitarity: translation by t spreads mode b up to degree ~ b e^{2t}, so
    // the truncation must be much taller than the block being checked.
    for (double t : {0.25, 0.5, 1.0}) {
        int M = 240;
        auto U = qha::matrix_rep_oracle(p, t, M);
        double w = std::tanh(t);
        CHECK(std::abs(std::norm(U.at(0, 0)) - std::pow(1.0 - w * w, p.nu)) < 1e-10);
        int B = 12;
        double worst = 0.0;
        for (int a = 0; a < B; ++a) {
            for (int b = 0; b < B; ++b) {
                Complex acc = 0.0;
                for (int k = 0; k <= M; ++k)
                    acc += std::conj(U.at(k, a)) * U.at(k, b);
                worst = std::max(worst, std::abs(acc - (a == b ? 1.0 : 0.0)));
            }
        }
        CHECK(worst < 1e-8);
    }
}
