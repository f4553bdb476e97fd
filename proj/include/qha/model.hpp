#pragma once

#include <memory>
#include <string>
#include <vector>

#include "qha/numerics.hpp"

namespace qha {

// Global context threaded through every computation: the dimension n, the
// weight nu > n of the Bergman space, the spectral shift rho, the operator
// truncation degree, and quadrature controls.
struct ModelParams {
    int n = 1;
    double nu = 2.5;
    double rho = 1.0;  // default n; overridden by calibration if it disagrees
    int truncation = 32;
    QuadSettings quad{};
    double lambda_max = 0.0;  // 0 = choose adaptively when building the spectral rule

    void validate() const;

    static ModelParams make(int n, double nu) {
        ModelParams p;
        p.n = n;
        p.nu = nu;
        p.rho = static_cast<double>(n);
        p.validate();
        return p;
    }
};

// A radial function on the ball, as an evaluator on r in [0,1).
// h_exponent declares the known algebraic decay (1-r^2)^{h_exponent} as
// r -> 1, which the invariant integrals fold into their singularity
// declarations. Integrability flags are with respect to the invariant
// measure and follow closure rules under combination.
struct RadialProfile {
    std::function<Complex(double)> eval;
    // Optional cancellation-free evaluator in s = r^2 given (s, 1-s); the
    // radial integrals prefer it near the boundary where 1 - r*r loses digits.
    std::function<Complex(double, double)> eval_s;
    std::string kind = "numeric";
    bool is_L1_invariant = false;
    bool is_L2_invariant = false;
    double h_exponent = 0.0;
    double support_radius = 1.0;  // < 1 when the profile vanishes beyond it
    std::vector<double> breakpoints;  // interior r-values of non-smoothness

    Complex operator()(double r) const { return eval(r); }
};

// (1-r^2)^sigma
RadialProfile hpow(double sigma, const ModelParams& params);
// r^k
RadialProfile rpow(int k);
// characteristic function of |z| <= r0
RadialProfile indicator(double r0, const ModelParams& params);
// a*f + b*g
RadialProfile lincomb(Complex a, const RadialProfile& f, Complex b, const RadialProfile& g);
// pointwise product; the flags of f survive when g is bounded
RadialProfile product(const RadialProfile& f, const RadialProfile& g, bool g_bounded);
// wrap an arbitrary evaluator with explicitly declared behavior
RadialProfile numeric_profile(std::function<Complex(double)> eval, bool l1, bool l2,
                              double h_exponent = 0.0);

// c_nu = Gamma(nu) / (n! Gamma(nu - n)); normalizing constant of the
// weighted probability measure.
double c_nu(const ModelParams& params);

// Dimension of the degree-m homogeneous polynomial block: binom(m+n-1, n-1).
long long dim_pm(int n, int m);

// Squared norm of the monomial z^m in the weighted space: m! Gamma(nu) / Gamma(nu+|m|).
double monomial_norm_sq(std::span<const int> multiindex, const ModelParams& params);

// Integral of a radial profile against the invariant measure:
//   2n Int_0^1 f(r) r^{2n-1} (1-r^2)^{-(n+1)} dr.
Complex invariant_integral(const RadialProfile& f, const ModelParams& params);

// Integral against the weighted probability measure:
//   c_nu * 2n Int_0^1 f(r) r^{2n-1} (1-r^2)^{nu-n-1} dr.
Complex weighted_integral(const RadialProfile& f, const ModelParams& params);

// Radius of the Moebius combination of the points r*e1 and w: the |y^{-1}x . 0|
// entering radial convolution. Two-argument form is the n=1 case; the general
// form takes the first coordinate w1 of w and |w| separately.
double mobius_arg(double r, Complex w);
double mobius_arg(double r, Complex w1, double w_abs);

// Action of the one-parameter hyperbolic subgroup on the disc (n=1):
//   a_t . z = (z cosh t + sinh t) / (z sinh t + cosh t).
Complex mobius_at(double t, Complex z);

// Normalized reproducing kernel of the weighted Bergman space on the disc:
//   k_w(z) = (1-|w|^2)^{nu/2} / (1 - z conj(w))^nu, principal branch.
Complex kernel_k(Complex z, Complex w, double nu);

}  // namespace qha
