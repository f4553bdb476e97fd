#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "qha/spherical.hpp"

using qha::Complex;
using qha::ModelParams;
using qha::SpectralPoint;

namespace {
SpectralPoint sp(double re, double im = 0.0) { return SpectralPoint{Complex(re, im)}; }
}  // namespace

TEST_CASE("canonicalization") {
    CHECK(SpectralPoint::canonical(Complex(-2.0, 0.5)).lambda == Complex(2.0, -0.5));
    CHECK(SpectralPoint::canonical(Complex(0.0, -1.0)).lambda == Complex(0.0, 1.0));
    auto once = SpectralPoint::canonical(Complex(-3.0, 1.0));
    CHECK(SpectralPoint::canonical(once.lambda).lambda == once.lambda);
}

TEST_CASE("phi normalization and degenerate parameter") {
    auto p = ModelParams::make(1, 2.5);
    CHECK(qha::phi(p, sp(2.0), 0.0) == Complex(1.0));
    // lambda = i rho kills the first series parameter
    for (double r : {0.1, 0.5, 0.8}) {
        CHECK(std::abs(qha::phi(p, sp(0.0, p.rho), r) - 1.0) < 1e-13);
    }
    auto p2 = ModelParams::make(2, 3.5);
    for (double r : {0.3, 0.7}) {
        CHECK(std::abs(qha::phi(p2, sp(0.0, p2.rho), r) - 1.0) < 1e-13);
    }
}

TEST_CASE("phi symmetry and reality") {
    auto p = ModelParams::make(1, 2.5);
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> ur(0.05, 0.9), ul(-5.0, 5.0);
    for (int i = 0; i < 50; ++i) {
        double r = ur(rng);
        Complex lam(ul(rng), 0.3 * ul(rng));
        Complex a = qha::phi(p, SpectralPoint{lam}, r);
        Complex b = qha::phi(p, SpectralPoint{-lam}, r);
        CHECK(std::abs(a - b) < 1e-12 * (1.0 + std::abs(a)));
    }
    for (double lam : {0.5, 2.0, 7.0}) {
        CHECK(std::abs(qha::phi(p, sp(lam), 0.6).imag()) < 1e-12);
        CHECK(std::abs(qha::phi(p, sp(0.0, lam * 0.2), 0.6).imag()) < 1e-12);
    }
}

TEST_CASE("phi bounded by one on the real axis") {
    for (int n : {1, 2}) {
        auto p = ModelParams::make(n, n + 1.5);
        for (double lam : {0.3, 1.0, 4.0, 15.0}) {
            for (double r : {0.1, 0.5, 0.9, 0.95}) {
                CHECK(std::abs(qha::phi(p, sp(lam), r)) <= 1.0 + 1e-10);
            }
        }
    }
}

TEST_CASE("phi continuity in lambda") {
    auto p = ModelParams::make(2, 3.5);
    Complex base = qha::phi(p, sp(1.5), 0.55);
    double prev = 1.0;
    for (double eps : {1e-2, 1e-4, 1e-6}) {
        double diff = std::abs(qha::phi(p, sp(1.5 + eps), 0.55) - base);
        CHECK(diff < prev);
        prev = diff;
    }
    CHECK(prev < 1e-5);
}

TEST_CASE("phi high-frequency decay") {
    // the envelope at fixed r decays like lambda^{-(n-1/2)}; check the trend
    // and reference values frozen against an independent evaluation
    auto p = ModelParams::make(1, 2.5);
    double v5 = std::abs(qha::phi(p, sp(5.0), 0.4));
    double v60 = std::abs(qha::phi(p, sp(60.0), 0.4));
    CHECK(v60 < v5);
    CHECK(std::abs(v60 - 0.13061033250601387) < 1e-7);
    auto p2 = ModelParams::make(2, 3.5);
    CHECK(std::abs(std::abs(qha::phi(p2, sp(60.0), 0.4)) - 0.005310808308917114) < 1e-7);
}

TEST_CASE("integral representation basics") {
    for (int n : {1, 2}) {
        auto p = ModelParams::make(n, n + 1.5);
        CHECK(qha::phi_integral_rep(p, sp(1.3), 0.0) == Complex(1.0));
        CHECK(std::abs(qha::phi_integral_rep(p, sp(0.0, p.rho), 1.0) - 1.0) < 1e-9);
    }
}

TEST_CASE("series vs integral representation") {
    auto p1 = ModelParams::make(1, 2.5);
    CHECK(std::abs(qha::phi_integral_rep(p1, sp(1.5), 0.7) -
                   qha::phi(p1, sp(1.5), std::tanh(0.7))) < 1e-8);
    // overlap band r^2 in [0.75, 0.85] where both routes are available
    for (int n : {1, 2}) {
        auto p = ModelParams::make(n, n + 1.5);
        for (double lam : {0.5, 2.0, 5.0}) {
            for (double r2 : {0.75, 0.80, 0.85}) {
                double r = std::sqrt(r2);
                Complex series = qha::phi(p, sp(lam), r);  // series path (r2 <= 0.85)
                Complex integral = qha::phi_integral_rep(p, sp(lam), std::atanh(r));
                CHECK(std::abs(series - integral) < 1e-8);
            }
        }
    }
}

TEST_CASE("mid-radius band at large real lambda") {
    // reference values computed with 50-digit arithmetic; in this band the
    // double-precision series loses most of its digits and the evaluation
    // routes through the extended-precision series
    struct Ref {
        int n;
        double lam, u, value;
    };
    const Ref refs[] = {
        {1, 40.0, 0.50, -0.10560824157347835},
        {1, 25.0, 0.45, 0.11413466719542183},
        {2, 40.0, 0.55, -0.0013619466737494576},
        {2, 60.0, 0.30, -0.0059300045901436715},
        {1, 60.0, 0.55, 0.079881348790605495},
    };
    for (const auto& ref : refs) {
        auto p = ModelParams::make(ref.n, ref.n + 1.5);
        Complex v = qha::phi(p, sp(ref.lam), std::sqrt(ref.u));
        CHECK(std::abs(v - ref.value) < 1e-12);
    }
}

TEST_CASE("boundedness and positive definiteness classification") {
    for (int n : {1, 2}) {
        auto p = ModelParams::make(n, n + 1.5);
        CHECK(qha::is_bounded(p, sp(1.0)));
        CHECK(qha::is_positive_definite(p, sp(1.0)));
        CHECK(qha::is_bounded(p, sp(0.0, static_cast<double>(n))));
        CHECK(qha::is_positive_definite(p, sp(0.0, static_cast<double>(n))));
        CHECK_FALSE(qha::is_bounded(p, sp(1.0, n + 0.1)));
        CHECK_FALSE(qha::is_positive_definite(p, sp(1.0, n + 0.1)));
        // strip interior off both axes: bounded but not positive definite
        CHECK(qha::is_bounded(p, sp(1.0, 0.5)));
        CHECK_FALSE(qha::is_positive_definite(p, sp(1.0, 0.5)));
    }
}

TEST_CASE("product formula selects the spectral shift") {
    auto p = ModelParams::make(1, 2.5);
    CHECK(qha::product_defect(p, sp(2.0), 0.0, 0.9) == 0.0);
    CHECK(qha::product_defect(p, sp(2.0), 0.6, 0.9) <= 1e-6);
    auto wrong = p;
    wrong.rho = 0.5;
    CHECK(qha::product_defect(wrong, sp(2.0), 0.6, 0.9) > 1e-2);
}

TEST_CASE("product formula grid at n=1 and n=2") {
    for (int n : {1, 2}) {
        auto p = ModelParams::make(n, n + 1.5);
        for (double lam : {0.7, 2.0, 4.0}) {
            for (double s : {0.3, 0.6, 1.0}) {
                for (double t : {0.4, 0.8, 1.2}) {
                    CHECK(qha::product_defect(p, sp(lam), s, t) <= 1e-6);
                }
            }
        }
    }
}
