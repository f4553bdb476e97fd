#pragma once

#include "qha/funxform.hpp"

namespace qha {

// A radial operator, stored exactly as its finite eigenvalue sequence on the
// homogeneous polynomial blocks: A = sum_m coeffs[m] P_m, m = 0..M. The
// block dimensions d_m turn coefficient sums into traces and Schatten norms.
struct RadialOperator {
    std::vector<Complex> coeffs;
    size_t params_hash = 0;

    int truncation() const { return static_cast<int>(coeffs.size()) - 1; }
    void validate() const;
};

// Toeplitz operator with radial symbol f: eigenvalue on the degree-m block is
//   c_m = [Gamma(nu+m) / (Gamma(nu-n) Gamma(n+m))]
//         * Int_0^1 f(sqrt(s)) s^{n+m-1} (1-s)^{nu-n-1} ds.
// The constant makes the constant symbol give the identity.
RadialOperator toeplitz_eigs(const RadialProfile& f, const ModelParams& params, int M);

// The normalized spherical-symbol operator: tau_m(lambda) =
// toeplitz_eigs(phi_lambda)_m / (c_nu sqrt(h_hat_nu(lambda))), with the
// square root positive on the positive-definite locus. Requires lambda
// bounded and h_hat_nu(lambda) away from zero.
RadialOperator t_lambda_eigs(const ModelParams& params, SpectralPoint lambda, int M);

// Schatten p-norm (sum_m d_m |c_m|^p)^{1/p} for 1 <= p < inf; operator norm
// max_m |c_m| at p = inf.
double schatten_norm(const RadialOperator& A, const ModelParams& params, double p);

// trace A = sum_m d_m c_m
Complex trace(const RadialOperator& A, const ModelParams& params);

// Coefficientwise conjugate (the Hilbert-space adjoint of a radial operator).
RadialOperator adjoint(const RadialOperator& A);

// Positive (semi-)definite iff every eigenvalue is real and >= 0.
bool is_positive(const RadialOperator& A, double tol = 1e-12);

// Berezin transform at radius r:
//   (1-r^2)^nu sum_m c_m ((nu)_m / m!) r^{2m}.
Complex berezin(const RadialOperator& A, const ModelParams& params, double r);

// Matrix of the weighted hyperbolic translation by t in the normalized
// monomial basis (disc case, n = 1), truncated to degree M. Columns are
// computed by Taylor expansion of the translated basis vectors;
// truncation_error records the worst column-norm deficit |1 - ||column||^2|.
struct MatrixRep {
    int dim = 0;
    std::vector<Complex> u;  // row-major, dim x dim
    double truncation_error = 0.0;

    Complex at(int a, int b) const { return u[static_cast<size_t>(a) * dim + b]; }
};
MatrixRep matrix_rep_oracle(const ModelParams& params, double t, int M);

}  // namespace qha
