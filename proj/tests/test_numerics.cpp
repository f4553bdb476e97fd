#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "qha/numerics.hpp"

using qha::Complex;

TEST_CASE("log_gamma closed forms") {
    CHECK(std::abs(qha::log_gamma(1.0)) < 1e-14);
    CHECK(std::abs(qha::log_gamma(0.5) - 0.57236494292470008707) < 1e-14);
    // frozen high-precision reference at z = 3 + 4i
    Complex v = qha::log_gamma(Complex(3.0, 4.0));
    CHECK(std::abs(v - Complex(-1.7566267846037841, 4.7426644380346579)) < 1e-12);
}

TEST_CASE("log_gamma pole detection") {
    CHECK_THROWS_AS(qha::log_gamma(0.0), qha::PoleError);
    CHECK_THROWS_AS(qha::log_gamma(-3.0), qha::PoleError);
    CHECK_NOTHROW(qha::log_gamma(Complex(-3.0, 0.5)));
}

TEST_CASE("log_gamma recurrence on random points") {
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> u(-50.0, 50.0);
    int tested = 0;
    while (tested < 100) {
        Complex z(u(rng), u(rng));
        if (std::abs(z) > 50.0 || std::abs(z) < 0.1) continue;
        if (std::abs(z.imag()) < 1e-3 && z.real() < 0.5) continue;  // near poles
        Complex g = std::exp(qha::log_gamma(z + 1.0) - qha::log_gamma(z));
        CHECK(std::abs(g - z) <= 1e-12 * std::abs(z));
        ++tested;
    }
}

TEST_CASE("gamma_ratio") {
    CHECK(std::abs(qha::gamma_ratio({3.0}, {2.0}) - 2.0) < 1e-13);
    // Pochhammer (2)_3 = 24
    CHECK(std::abs(qha::gamma_ratio({5.0}, {2.0}) - 24.0) < 1e-12);
    Complex z(1.5, 1.0);
    CHECK(std::abs(qha::gamma_ratio({z + 1.0}, {z}) - z) < 1e-13);
    // overflow-safe: Gamma(201)/Gamma(200) = 200 though each factor overflows
    CHECK(std::abs(qha::gamma_ratio({201.0}, {200.0}) - 200.0) < 1e-10);
}

TEST_CASE("hyp2f1 closed forms") {
    CHECK(std::abs(qha::hyp2f1(Complex(2.3, 1.0), 0.7, 2.0, 0.0) - 1.0) == 0.0);
    // 2F1(1,1;2;x) = -log(1-x)/x
    CHECK(std::abs(qha::hyp2f1(1.0, 1.0, 2.0, 0.5) - 1.3862943611198906) < 1e-13);
    // frozen high-precision reference for the Pfaff path at x = -3
    Complex a(0.7, 0.3), b(0.7, -0.3);
    CHECK(std::abs(qha::hyp2f1(a, b, 2.0, -3.0) - 0.61447508025334525) < 1e-11);
}

TEST_CASE("hyp2f1 symmetry in a and b") {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int i = 0; i < 50; ++i) {
        Complex a(u(rng), u(rng)), b(u(rng), u(rng));
        double c = 1.0 + std::abs(u(rng));
        double x = 0.45 * u(rng);
        Complex lhs = qha::hyp2f1(a, b, c, x);
        Complex rhs = qha::hyp2f1(b, a, c, x);
        CHECK(std::abs(lhs - rhs) <= 1e-12 * (1.0 + std::abs(lhs)));
    }
}

TEST_CASE("hyp2f1 Euler integral cross-check on negative arguments") {
    // 2F1(a,b;c;x) = [Gamma(c)/(Gamma(b)Gamma(c-b))] Int_0^1 t^{b-1}(1-t)^{c-b-1}(1-xt)^{-a} dt
    double a = 0.8, b = 1.2, c = 3.1;
    for (double x : {-0.5, -2.0, -8.0, -19.0}) {
        Complex series = qha::hyp2f1(a, b, c, x);
        qha::QuadSettings s;
        s.rel_tol = 1e-12;
        s.singularity_exponents = {{b - 1.0, c - b - 1.0}};
        Complex integral =
            qha::gamma_ratio({c}, {b, c - b}) *
            qha::integrate_01(
                [&](double t) {
                    return std::pow(t, b - 1.0) * std::pow(1.0 - t, c - b - 1.0) *
                           std::pow(1.0 - x * t, -a);
                },
                s);
        CHECK(std::abs(series - integral) < 1e-10 * std::abs(series));
    }
}

TEST_CASE("hyp2f1 doubling-formula cross-check") {
    // valid when c = a + b + 1/2
    Complex a(0.6, 0.4), b(0.6, -0.4);
    double z = 0.3;
    Complex lhs = qha::hyp2f1(a, b, (a + b).real() + 0.5, z);
    Complex rhs = qha::hyp2f1_doubling(a, b, z);
    CHECK(std::abs(lhs - rhs) < 1e-12 * std::abs(lhs));
}

TEST_CASE("hyp2f1 parameter validation") {
    CHECK_THROWS_AS(qha::hyp2f1(1.0, 1.0, -2.0, 0.5), qha::ParameterError);
    CHECK_THROWS_AS(qha::hyp2f1(1.0, 1.0, 2.0, 1.5), qha::ParameterError);
}

TEST_CASE("integrate_01 basics") {
    qha::QuadSettings s;
    CHECK(std::abs(qha::integrate_01([](double x) { return Complex(x); }, s) - 0.5) < 1e-12);
    CHECK(std::abs(qha::integrate_01([](double x) { return Complex(std::cos(40.0 * x)); }, s) -
                   std::sin(40.0) / 40.0) < 1e-10);
    qha::QuadSettings sing;
    sing.singularity_exponents = {{0.0, -0.5}};
    Complex v = qha::integrate_01(
        [](double x) { return Complex(1.0 / std::sqrt(1.0 - x)); }, sing);
    CHECK(std::abs(v - 2.0) < 1e-10);
}

TEST_CASE("integrate_01 exact on polynomials") {
    for (int d = 0; d <= 20; ++d) {
        Complex v = qha::integrate_01(
            [d](double x) { return Complex(std::pow(x, d)); }, qha::QuadSettings{});
        CHECK(std::abs(v - 1.0 / (d + 1.0)) < 1e-12);
    }
}

TEST_CASE("integrate_01 breakpoints") {
    qha::QuadSettings s;
    std::vector<double> bp{0.3};
    Complex v = qha::integrate_01(
        [](double x) { return Complex(std::abs(x - 0.3)); }, s, bp);
    double exact = 0.5 * (0.3 * 0.3 + 0.7 * 0.7);
    CHECK(std::abs(v - exact) < 1e-12);
}

TEST_CASE("integrate_01 error reporting") {
    qha::QuadSettings bad;
    bad.singularity_exponents = {{-1.5, 0.0}};
    CHECK_THROWS_AS(qha::integrate_01([](double x) { return Complex(1.0 / x); }, bad),
                    qha::NonIntegrableError);
    qha::QuadSettings tiny;
    tiny.max_subdivisions = 1;
    tiny.rel_tol = 1e-15;
    tiny.abs_tol = 1e-300;
    CHECK_THROWS_AS(
        qha::integrate_01([](double x) { return Complex(1.0 / std::sqrt(x * (1.0 - x))); },
                          tiny),
        qha::QuadratureError);
}

TEST_CASE("integrate_halfline") {
    qha::QuadSettings s;
    CHECK(std::abs(qha::integrate_halfline(
                       [](double t) { return Complex(std::exp(-t)); }, s) -
                   1.0) < 1e-10);
    CHECK(std::abs(qha::integrate_halfline(
                       [](double t) { return Complex(t * std::exp(-t * t)); }, s) -
                   0.5) < 1e-10);
    double sech2 = std::abs(qha::integrate_halfline(
                                [](double t) {
                                    double c = std::cosh(t);
                                    return Complex(1.0 / (c * c));
                                },
                                s) -
                            1.0);
    CHECK(sech2 < 1e-10);
}

TEST_CASE("tanh_sinh rule integrates endpoint singularities") {
    const qha::TanhSinhRule& r = qha::tanh_sinh_rule();
    // Int_0^1 x^{-1/2}(1-x)^{-1/2} dx = pi
    double v = 0.0;
    for (size_t i = 0; i < r.nodes.size(); ++i)
        v += r.weights[i] / std::sqrt(r.nodes[i] * r.complements[i]);
    CHECK(std::abs(v - 3.14159265358979324) < 1e-11);
    // Beta(3, 5) = 1/105
    double b = 0.0;
    for (size_t i = 0; i < r.nodes.size(); ++i)
        b += r.weights[i] * r.nodes[i] * r.nodes[i] * std::pow(r.complements[i], 4);
    CHECK(std::abs(b - 1.0 / 105.0) < 1e-14);
}

TEST_CASE("gauss_legendre nodes") {
    std::vector<double> x, w;
    qha::gauss_legendre(12, x, w);
    double s = 0.0, m2 = 0.0;
    for (int i = 0; i < 12; ++i) {
        s += w[i];
        m2 += w[i] * x[i] * x[i];
    }
    CHECK(std::abs(s - 2.0) < 1e-14);
    CHECK(std::abs(m2 - 2.0 / 3.0) < 1e-14);
}
