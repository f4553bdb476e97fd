#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "qha/errors.hpp"

namespace qha {

using Complex = std::complex<double>;

// Tolerances and endpoint-singularity declarations for the adaptive
// quadrature routines. Singularity exponents (p, q) declare that the
// integrand behaves like x^p near 0 and (1-x)^q near 1; both must be > -1.
struct QuadSettings {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    int max_subdivisions = 2000;
    std::optional<std::pair<double, double>> singularity_exponents;

    void validate() const;
};

// Principal-branch log Gamma for complex z, z not a nonpositive integer.
// Lanczos approximation with reflection; relative error <= 1e-13 for |z| <= 200.
Complex log_gamma(Complex z);

// exp(sum log_gamma(num) - sum log_gamma(den)); overflow-safe for ratios
// whose individual factors would overflow.
Complex gamma_ratio(std::span<const Complex> numerators,
                    std::span<const Complex> denominators);
Complex gamma_ratio(std::initializer_list<Complex> numerators,
                    std::initializer_list<Complex> denominators);

// Gauss hypergeometric 2F1(a, b; c; x) for complex a, b, real c > 0 and real
// argument x < 1. Arguments x < 0 are mapped into [0, 1) with the Pfaff
// transformation before summing the series.
Complex hyp2f1(Complex a, Complex b, double c, double x, double rel_tol = 1e-14);

// Quadratic-argument cross-check path, valid only when c = a + b + 1/2:
//   2F1(a, b; a+b+1/2; z) = 2F1(2a, 2b; a+b+1/2; (1 - sqrt(1-z))/2).
Complex hyp2f1_doubling(Complex a, Complex b, double z, double rel_tol = 1e-14);

// Adaptive Gauss-Legendre quadrature on (0,1). Declared endpoint algebraic
// singularities are neutralized by a power substitution first.
Complex integrate_01(const std::function<Complex(double)>& f,
                     const QuadSettings& settings = {});

// Same, with interior breakpoints the integrand is known to be non-smooth at.
Complex integrate_01(const std::function<Complex(double)>& f,
                     const QuadSettings& settings,
                     std::span<const double> breakpoints);

// Integral over (0, infinity) of an eventually exponentially decaying
// integrand. The domain is truncated where a geometric tail fit certifies
// the remainder below tolerance.
Complex integrate_halfline(const std::function<Complex(double)>& f,
                           const QuadSettings& settings = {});

// Fixed tanh-sinh rule on (0,1): nodes, weights and the complements 1-x.
// Used internally for vectorized moment integrals with endpoint
// singularities on both sides.
struct TanhSinhRule {
    std::vector<double> nodes;
    std::vector<double> complements;  // 1 - node, computed without cancellation
    std::vector<double> weights;
};
const TanhSinhRule& tanh_sinh_rule();

// Gauss-Legendre nodes/weights on [-1, 1].
void gauss_legendre(int npts, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace qha
