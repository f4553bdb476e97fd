#include "qha/radop.hpp"

#include <algorithm>
#include <cmath>

#include "qc.hpp"

namespace qha {

void RadialOperator::validate() const {
    if (coeffs.empty()) throw ParameterError("RadialOperator: empty coefficient vector");
}

namespace {

// All Toeplitz moments at once in the geodesic coordinate s = tanh^2 t:
//   I_m = Int_0^1 f(sqrt s) s^{n+m-1} (1-s)^{nu-n-1} ds
//       = 2 Int_0^inf f(tanh t) tanh^{2(n+m)-1}(t) sech^{2(nu-n)}(t) dt.
// Oscillatory symbols (the spherical functions) have uniform frequency in t,
// so doubling the panel count until the moments stabilize is reliable, and
// the monomial powers s^m are accumulated per node across all m.
std::vector<Complex> toeplitz_moments(const RadialProfile& f, const ModelParams& params,
                                      int M) {
    if (M < 0) throw ParameterError("toeplitz_eigs: truncation must be >= 0");
    double nu = params.nu, n = static_cast<double>(params.n);
    double rate = 2.0 * (nu - n) + 2.0 * std::min(0.0, f.h_exponent);
    if (!(rate > 0.0))
        throw NonIntegrableError("toeplitz_eigs: symbol not integrable against the weight");
    double t_end = (f.support_radius < 1.0)
                       ? std::atanh(f.support_radius)
                       : 0.5 * std::log(2.0 * (M + 1.0)) + 40.0 / rate;
    std::vector<double> edges{0.0};
    for (double r : f.breakpoints)
        if (r > 0.0 && r < std::min(f.support_radius, 1.0)) edges.push_back(std::atanh(r));
    edges.push_back(t_end);
    std::sort(edges.begin(), edges.end());

    std::vector<double> gx, gw;
    gauss_legendre(16, gx, gw);
    std::vector<Complex> prev;
    double diff = 0.0, scale = 0.0;
    for (int split = 16; split <= 1024; split *= 2) {
        std::vector<Complex> mom(M + 1, 0.0);
        for (size_t e = 0; e + 1 < edges.size(); ++e) {
            double lo = edges[e], hi = edges[e + 1];
            int npan = std::max(1, static_cast<int>(std::ceil(split * (hi - lo) / t_end)));
            for (int pnl = 0; pnl < npan; ++pnl) {
                double a = lo + (hi - lo) * pnl / npan;
                double b = lo + (hi - lo) * (pnl + 1) / npan;
                double mid = 0.5 * (a + b), half = 0.5 * (b - a);
                for (size_t i = 0; i < gx.size(); ++i) {
                    double t = mid + half * gx[i];
                    double ch = std::cosh(t);
                    double om = 1.0 / (ch * ch);
                    double th = std::tanh(t);
                    double s = th * th;
                    Complex fe = f.eval_s ? f.eval_s(s, om) : f.eval(th);
                    Complex v = fe * (2.0 * half * gw[i] *
                                      std::pow(th, 2.0 * n - 1.0) * std::pow(om, nu - n));
                    for (int m = 0; m <= M; ++m) {
                        mom[m] += v;
                        v *= s;
                    }
                }
            }
        }
        if (!prev.empty()) {
            diff = 0.0;
            scale = 0.0;
            for (int m = 0; m <= M; ++m) {
                diff = std::max(diff, std::abs(mom[m] - prev[m]));
                scale = std::max(scale, std::abs(mom[m]));
            }
            if (diff <= 1e-13 * (1.0 + scale)) return mom;
        }
        prev = std::move(mom);
    }
    throw QuadratureError("toeplitz_eigs: moment quadrature did not stabilize", scale, diff);
}

}  // namespace

RadialOperator toeplitz_eigs(const RadialProfile& f, const ModelParams& params, int M) {
    params.validate();
    auto mom = toeplitz_moments(f, params, M);
    RadialOperator A;
    A.params_hash = params_hash(params);
    A.coeffs.reserve(M + 1);
    double nu = params.nu, n = static_cast<double>(params.n);
    for (int m = 0; m <= M; ++m) {
        double km = gamma_ratio({nu + m}, {nu - n, n + m}).real();
        A.coeffs.push_back(km * mom[m]);
    }
    return A;
}

RadialOperator t_lambda_eigs(const ModelParams& params, SpectralPoint lambda, int M) {
    params.validate();
    if (!is_bounded(params, lambda))
        throw ParameterError("t_lambda_eigs: lambda outside the bounded locus");
    Complex hh = h_hat(params.nu, params, lambda);
    if (std::abs(hh) < 1e-290)
        throw DegenerateError("t_lambda_eigs: transform of the weight vanishes at lambda");
    // Closed form. Reducing the eigenvalue moment integral of the spherical
    // symbol by the same termwise Gauss summation as h_hat, then applying a
    // Thomae relation, turns the slowly convergent series into a terminating
    // one:
    //   tau_m = sqrt(h_hat) * Gamma(n) Gamma(nu+m) / (Gamma(n+m) Gamma(nu))
    //           * 3F2(-m, nu-n+a, nu-n+b; nu-n+rho, nu; 1),
    // a = (rho + i lambda)/2, b = (rho - i lambda)/2. Unlike the quadrature
    // route this stays stable when h_hat underflows toward large |lambda|,
    // because the exponentially large polynomial factor multiplies
    // sqrt(h_hat) analytically instead of dividing two tiny integrals.
    // The terminating sum alternates, so it is accumulated in quad precision.
    double n = static_cast<double>(params.n), nu = params.nu;
    Complex il = Complex(0.0, 1.0) * lambda.lambda;
    Complex a1 = nu - n + 0.5 * (params.rho + il);
    Complex a2 = nu - n + 0.5 * (params.rho - il);
    double c1 = nu - n + params.rho, c2 = nu;
    Complex sq = std::sqrt(hh);  // principal branch, continuous on the pd locus
    RadialOperator T;
    T.coeffs.resize(M + 1);
    T.params_hash = params_hash(params);
    QC A1{a1.real(), a1.imag()}, A2{a2.real(), a2.imag()};
    double pref = 1.0;  // Gamma(n) Gamma(nu+m) / (Gamma(n+m) Gamma(nu))
    for (int m = 0; m <= M; ++m) {
        QC term{1.0, 0.0}, sum{1.0, 0.0};
        for (int k = 0; k < m; ++k) {
            __float128 qk = k;
            term = term * ((A1 + QC{qk, 0.0}) * (A2 + QC{qk, 0.0})) *
                   (static_cast<__float128>(k - m) / ((c1 + qk) * (c2 + qk) * (qk + 1.0)));
            sum = sum + term;
        }
        Complex f(static_cast<double>(sum.re), static_cast<double>(sum.im));
        T.coeffs[m] = sq * pref * f;
        pref *= (nu + m) / (n + m);
    }
    return T;
}

double schatten_norm(const RadialOperator& A, const ModelParams& params, double p) {
    A.validate();
    if (!(p >= 1.0)) throw ParameterError("schatten_norm: p must be >= 1");
    if (std::isinf(p)) {
        double m = 0.0;
        for (const Complex& c : A.coeffs) m = std::max(m, std::abs(c));
        return m;
    }
    double acc = 0.0;
    for (size_t m = 0; m < A.coeffs.size(); ++m)
        acc += static_cast<double>(dim_pm(params.n, static_cast<int>(m))) *
               std::pow(std::abs(A.coeffs[m]), p);
    return std::pow(acc, 1.0 / p);
}

Complex trace(const RadialOperator& A, const ModelParams& params) {
    A.validate();
    Complex acc = 0.0;
    for (size_t m = 0; m < A.coeffs.size(); ++m)
        acc += static_cast<double>(dim_pm(params.n, static_cast<int>(m))) * A.coeffs[m];
    return acc;
}

RadialOperator adjoint(const RadialOperator& A) {
    A.validate();
    RadialOperator B = A;
    for (Complex& c : B.coeffs) c = std::conj(c);
    return B;
}

bool is_positive(const RadialOperator& A, double tol) {
    A.validate();
    for (const Complex& c : A.coeffs)
        if (std::abs(c.imag()) > tol || c.real() < -tol) return false;
    return true;
}

Complex berezin(const RadialOperator& A, const ModelParams& params, double r) {
    A.validate();
    if (r < 0.0 || r >= 1.0) throw ParameterError("berezin: radius must lie in [0,1)");
    double r2 = r * r;
    Complex acc = 0.0;
    double term = 1.0;  // (nu)_m / m! * r^{2m}
    for (size_t m = 0; m < A.coeffs.size(); ++m) {
        acc += A.coeffs[m] * term;
        term *= (params.nu + static_cast<double>(m)) / (static_cast<double>(m) + 1.0) * r2;
    }
    return std::pow(1.0 - r2, params.nu) * acc;
}

MatrixRep matrix_rep_oracle(const ModelParams& params, double t, int M) {
    params.validate();
    if (params.n != 1)
        throw ParameterError("matrix_rep_oracle: only the disc case is implemented");
    if (M < 0) throw ParameterError("matrix_rep_oracle: truncation must be >= 0");
    double nu = params.nu;
    double w = std::tanh(t);
    int dim = M + 1;
    MatrixRep rep;
    rep.dim = dim;
    rep.u.assign(static_cast<size_t>(dim) * dim, Complex(0.0));

    // beta_a = ||z^a||^2 = a! Gamma(nu) / Gamma(nu + a)
    std::vector<double> beta(dim);
    beta[0] = 1.0;
    for (int a = 1; a < dim; ++a) beta[a] = beta[a - 1] * a / (nu + a - 1.0);

    double pref = std::pow(1.0 - w * w, 0.5 * nu);
    double worst = 0.0;
    // Column b holds the Taylor coefficients of F_b(z) = (z-w)^b (1-wz)^{-(nu+b)}.
    // Expanding the binomial directly cancels catastrophically at large b, so
    // advance by the stable recurrence F_{b+1} = F_b * (z-w)/(1-wz), whose
    // multiplier has the bounded coefficient sequence
    //   -w, (1-w^2), (1-w^2) w, (1-w^2) w^2, ...
    std::vector<double> mult(dim);
    mult[0] = -w;
    double fac = 1.0 - w * w;
    for (int k = 1; k < dim; ++k) {
        mult[k] = fac;
        fac *= w;
    }
    std::vector<double> g(dim, 0.0);
    double coef_q = 1.0;  // (nu)_q / q! * w^q: coefficients of (1-wz)^{-nu}
    for (int q = 0; q < dim; ++q) {
        g[q] = coef_q;
        coef_q *= (nu + q) / (q + 1.0) * w;
    }
    for (int b = 0; b < dim; ++b) {
        double colsq = 0.0;
        for (int a = 0; a < dim; ++a) {
            double uab = pref * g[a] * std::sqrt(beta[a] / beta[b]);
            rep.u[static_cast<size_t>(a) * dim + b] = uab;
            colsq += uab * uab;
        }
        worst = std::max(worst, std::abs(1.0 - colsq));
        if (b + 1 < dim) {
            std::vector<double> next(dim, 0.0);
            for (int a = 0; a < dim; ++a) {
                if (g[a] == 0.0) continue;
                for (int k = 0; a + k < dim; ++k) next[a + k] += g[a] * mult[k];
            }
            g = std::move(next);
        }
    }
    rep.truncation_error = worst;
    return rep;
}

}  // namespace qha
