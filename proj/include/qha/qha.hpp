#pragma once

#include <memory>
#include <utility>

#include "qha/radop.hpp"

namespace qha {

// Everything the spectral route needs, computed once per parameter set: the
// Plancherel rule and the table tau[i][m] of normalized spherical-symbol
// eigenvalues at each spectral node. tau[i][0] = sqrt(h_hat(lambda_i)).
struct SpectralTable {
    ModelParams params;
    std::shared_ptr<const PlancherelRule> rule;
    int M = 0;
    std::vector<std::vector<Complex>> tau;  // [node][m], m = 0..M

    // Index of the rule node equal to lambda (real, within tol); -1 if none.
    int node_index(Complex lambda, double tol = 1e-9) const;
};
SpectralTable build_spectral_table(const ModelParams& params, int M = -1);

// The identically-zero profile and the zero operator on degrees 0..M.
RadialProfile zero_profile();
RadialOperator zero_operator(int M = 0);

// Operator Fourier transform: A_hat(lambda) = sum_m d_m c_m tau_m(lambda).
Complex op_fourier(const RadialOperator& A, const ModelParams& params, SpectralPoint lambda);
// Same, using the table when lambda is one of the rule nodes.
Complex op_fourier(const RadialOperator& A, const SpectralTable& tab, SpectralPoint lambda);
// Transform sampled on the whole rule grid.
SampledTransform op_fourier_sample(const RadialOperator& A, const SpectralTable& tab);

// Inverse transform: c_m = Int F(lambda) tau_m(lambda) dmu(lambda), m = 0..M.
RadialOperator op_inverse_fourier(const std::function<Complex(double)>& F,
                                  const SpectralTable& tab, int M = -1);
RadialOperator op_inverse_fourier(const SampledTransform& F, const SpectralTable& tab,
                                  int M = -1);

// A radial profile that evaluates by spectral synthesis of the given samples.
RadialProfile synth_profile(SampledTransform samples, const SpectralTable& tab);

// The three convolutions, all along the spectral route.
RadialProfile conv_ff(const RadialProfile& f, const RadialProfile& g, const SpectralTable& tab);
RadialOperator conv_fo(const RadialProfile& f, const RadialOperator& A,
                       const SpectralTable& tab, int M = -1);
RadialOperator conv_fo(const SampledTransform& fhat, const RadialOperator& A,
                       const SpectralTable& tab, int M = -1);
RadialProfile conv_oo(const RadialOperator& A, const RadialOperator& B, const SpectralTable& tab);

// An element (f, A) of the convolution algebra. fun_hat/op_hat optionally
// cache the component transforms on the rule grid; products always carry
// them, because their function part only exists as a synthesis and their
// operator part is an infinite-rank element of which op holds the degree-M
// projection. Gelfand evaluation at rule nodes prefers the cached samples.
struct AlgebraElement {
    RadialProfile fun;
    RadialOperator op;
    std::shared_ptr<const SampledTransform> fun_hat;
    std::shared_ptr<const SampledTransform> op_hat;

    static AlgebraElement from_fun(RadialProfile f);
    static AlgebraElement from_op(RadialOperator A);
    static AlgebraElement make(RadialProfile f, RadialOperator A);
};

// A point of the Gelfand spectrum: a bounded spectral parameter plus the
// sign bit j applied to the operator term.
struct GelfandPoint {
    SpectralPoint lambda;
    int j = 0;
};

// (f,A)*(g,B) = (f*g + A*B, f*B + g*A)
AlgebraElement algebra_mul(const AlgebraElement& x, const AlgebraElement& y,
                           const SpectralTable& tab);
// (f,A)* = (conj f, A*)
AlgebraElement algebra_involution(const AlgebraElement& x);
// Phi_{lambda,j}(f,A) = f_hat(lambda) + (-1)^j A_hat(lambda)
Complex gelfand_eval(const AlgebraElement& x, const SpectralTable& tab, const GelfandPoint& p);

// Plancherel identity for operators: (sum_m d_m |c_m|^2, Int |A_hat|^2 dmu).
std::pair<double, double> op_plancherel_check(const RadialOperator& A, const SpectralTable& tab);

// Smallest eigenvalue of the Gram matrix G_{jk} = (A* conv A)(|tanh(t_k - t_j)|)
// built from the group samples a_{t_k} (disc case); nonnegative up to
// quadrature error because A* conv A is positive definite.
double pd_gram_check(const RadialOperator& A, const SpectralTable& tab,
                     const std::vector<double>& t_samples);

}  // namespace qha
