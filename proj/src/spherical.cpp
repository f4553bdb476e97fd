#include "qha/spherical.hpp"

#include <quadmath.h>

#include "qc.hpp"

#include <cmath>

namespace qha {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Circle average (1/2pi) Int g(u e^{i theta}) dtheta by the trapezoid rule
// with doubling: exponentially convergent for analytic periodic integrands.
Complex circle_average(const std::function<Complex(Complex)>& g, double u, double tol) {
    int N = 32;
    Complex sum = 0.0;
    for (int k = 0; k < N; ++k) sum += g(std::polar(u, 2.0 * kPi * k / N));
    Complex avg = sum / static_cast<double>(N);
    while (true) {
        // double the rule, reusing existing points: new nodes are the midpoints
        Complex odd = 0.0;
        for (int k = 0; k < N; ++k) odd += g(std::polar(u, kPi * (2.0 * k + 1.0) / N));
        Complex refined = 0.5 * (avg + odd / static_cast<double>(N));
        N *= 2;
        if (std::abs(refined - avg) <= tol * (1.0 + std::abs(refined))) return refined;
        if (N >= 8192)
            throw QuadratureError("circle_average: trapezoid rule did not converge",
                                  std::abs(refined), std::abs(refined - avg));
        avg = refined;
    }
}

// Average of g over the first coordinate of the unit sphere S^{2n-1}:
// n=1 averages over the circle; n>=2 integrates omega_1 = u e^{i theta}
// over the unit disc against ((n-1)/pi)(1-u^2)^{n-2} u du dtheta.
Complex sphere_average(const ModelParams& params,
                       const std::function<Complex(Complex)>& g,
                       const QuadSettings& quad) {
    double tol = std::max(quad.rel_tol, 1e-12);
    if (params.n == 1) return circle_average(g, 1.0, tol);
    double nm2 = static_cast<double>(params.n) - 2.0;
    // The radial factor is smooth on [0,1]; a fixed Gauss-Legendre rule with
    // a one-shot doubling check suffices.
    Complex prev = 0.0;
    for (int npts = 40;; npts *= 2) {
        std::vector<double> x, w;
        gauss_legendre(npts, x, w);
        Complex sum = 0.0;
        for (int i = 0; i < npts; ++i) {
            double u = 0.5 * (x[i] + 1.0);
            sum += 0.5 * w[i] * circle_average(g, u, tol) * u * std::pow(1.0 - u * u, nm2);
        }
        sum *= 2.0 * (params.n - 1);
        if (npts > 40 && std::abs(sum - prev) <= tol * (1.0 + std::abs(sum))) return sum;
        if (npts >= 320)
            throw QuadratureError("sphere_average: radial rule did not converge",
                                  std::abs(sum), std::abs(sum - prev));
        prev = sum;
    }
}

}  // namespace

namespace {

// Plain Gauss series with complex lower parameter, |x| < 1 (used by the
// large-argument connection below, where |x| <= 1/3).
Complex gauss_series(Complex a, Complex b, Complex c, double x) {
    Complex sum = 1.0, term = 1.0;
    for (int k = 0; k < 5000; ++k) {
        term *= (a + static_cast<double>(k)) * (b + static_cast<double>(k)) /
                ((c + static_cast<double>(k)) * static_cast<double>(k + 1)) * x;
        sum += term;
        if (std::abs(term) <= 1e-16 * std::abs(sum)) return sum;
    }
    throw ConvergenceError("gauss_series: no convergence");
}

// Near the boundary the defining series loses digits (or, in quadrature form,
// the kernel develops an exp(4t)-narrow peak). Use the exact z -> infinity
// connection of the hypergeometric form instead: with z = -sinh^2 t,
//   2F1(a,b;c;z) = G(a,b) (sinh^2 t)^{-a} 2F1(a, 1-c+a; 1-b+a; 1/z) + (a <-> b),
// convergent whenever sinh^2 t > 1.
Complex phi_boundary(const ModelParams& params, Complex lam, double sh2) {
    const Complex i(0.0, 1.0);
    Complex a = 0.5 * (params.rho + i * lam);
    Complex b = 0.5 * (params.rho - i * lam);
    if (std::abs(a) < 1e-12 || std::abs(b) < 1e-12) return 1.0;  // phi_{i rho} == 1
    double c = static_cast<double>(params.n);
    Complex ba = b - a;
    if (std::abs(ba.imag()) < 1e-9 &&
        std::abs(ba.real() - std::round(ba.real())) < 1e-9) {
        // b - a integral: both connection terms have simple poles that cancel
        // in the sum. Evaluate at lam +- delta and average; the odd 1/delta
        // parts drop out and the remaining error is O(delta^2).
        const double delta = 1e-5;
        return 0.5 * (phi_boundary(params, lam + delta, sh2) +
                      phi_boundary(params, lam - delta, sh2));
    }
    double x = -1.0 / sh2;
    Complex t1 = gamma_ratio({Complex(c), ba}, {b, c - a}) * std::pow(Complex(sh2), -a) *
                 gauss_series(a, 1.0 - c + a, 1.0 - ba, x);
    Complex t2 = gamma_ratio({Complex(c), -ba}, {a, c - b}) * std::pow(Complex(sh2), -b) *
                 gauss_series(b, 1.0 - c + b, 1.0 + ba, x);
    return t1 + t2;
}

// Extended-precision evaluation of the Pfaff-reduced series,
//   phi = om^a 2F1(a, c - b; c; r^2),   a = (rho + i lambda)/2,
// for the mid-radius band where the double series cancels catastrophically
// at large real lambda but the large-argument connection does not yet
// converge. Quad precision absorbs roughly exp(0.85 |Re lambda| atanh r)
// of cancellation, which covers every lambda the transforms sample.
Complex phi_series_extended(const ModelParams& params, Complex lam, double r2, double om) {
    Complex ad = 0.5 * (params.rho + Complex(0.0, 1.0) * lam);
    Complex bd = 0.5 * (params.rho - Complex(0.0, 1.0) * lam);
    double c = static_cast<double>(params.n);
    Complex cbd = c - bd;
    QC A{ad.real(), ad.imag()}, B{cbd.real(), cbd.imag()};
    QC term{1.0, 0.0}, sum{1.0, 0.0};
    const __float128 U = r2, C = c;
    for (int k = 0; k < 20000; ++k) {
        __float128 qk = k;
        term = term * ((A + QC{qk, 0.0}) * (B + QC{qk, 0.0})) * (U / ((C + qk) * (qk + 1.0)));
        sum = sum + term;
        if (qnorm(term) <= 1e-72q * qnorm(sum)) {
            __float128 lom = logq(static_cast<__float128>(om));
            __float128 mag = expq(A.re * lom), ang = A.im * lom;
            QC pref{mag * cosq(ang), mag * sinq(ang)};
            QC res = pref * sum;
            return Complex(static_cast<double>(res.re), static_cast<double>(res.im));
        }
    }
    throw ConvergenceError("phi_series_extended: no convergence");
}

Complex phi_core(const ModelParams& params, SpectralPoint lambda, double r2, double om,
                 double series_limit) {
    if (r2 <= 0.0) return 1.0;
    if (r2 <= series_limit) {
        Complex a = 0.5 * (params.rho + Complex(0.0, 1.0) * lambda.lambda);
        Complex b = 0.5 * (params.rho - Complex(0.0, 1.0) * lambda.lambda);
        return hyp2f1(a, b, static_cast<double>(params.n), -r2 / om);
    }
    double sh2 = r2 / om;
    if (sh2 >= 1.5) {
        try {
            return phi_boundary(params, lambda.lambda, sh2);
        } catch (const ConvergenceError&) {
            // degenerate parameter combination: fall through
        }
    }
    // t = atanh(r) via the complement: (1+r)/(1-r) = (1+r)^2 / (1-r^2)
    double r = std::sqrt(r2);
    double t = 0.5 * std::log((1.0 + r) * (1.0 + r) / om);
    // the extended series needs both headroom for the cancellation and a
    // geometric ratio r^2 far enough from 1 to finish within its term cap
    if (r2 <= 0.98 && 0.85 * std::abs(lambda.lambda.real()) * t <= 55.0)
        return phi_series_extended(params, lambda.lambda, r2, om);
    return phi_integral_rep(params, lambda, t);
}

Complex phi_impl(const ModelParams& params, SpectralPoint lambda, double r,
                 double series_limit) {
    if (r < 0.0 || r >= 1.0) throw ParameterError("phi: radius must lie in [0,1)");
    double r2 = r * r;
    return phi_core(params, lambda, r2, 1.0 - r2, series_limit);
}

}  // namespace

double series_limit(Complex lambda) {
    double a = std::abs(lambda.real());
    if (a <= 7.5) return 0.85;
    double th = std::tanh(12.0 / a);
    return th * th;
}

Complex phi(const ModelParams& params, SpectralPoint lambda, double r) {
    return phi_impl(params, lambda, r, series_limit(lambda.lambda));
}

Complex phi_with_switch(const ModelParams& params, SpectralPoint lambda, double r,
                        double series_limit_r2) {
    return phi_impl(params, lambda, r, series_limit_r2);
}

Complex phi_s(const ModelParams& params, SpectralPoint lambda, double s,
              double one_minus_s, double series_limit_r2) {
    return phi_core(params, lambda, s, one_minus_s, series_limit_r2);
}

Complex phi_integral_rep(const ModelParams& params, SpectralPoint lambda, double t) {
    if (t < 0.0) throw ParameterError("phi_integral_rep: t must be >= 0");
    if (t == 0.0) return 1.0;
    double ch = std::cosh(t), sh = std::sinh(t);
    Complex expo = Complex(0.0, 1.0) * lambda.lambda - params.rho;
    QuadSettings quad = params.quad;
    quad.singularity_exponents.reset();
    auto g = [&](Complex w1) {
        double mod2 = std::norm(w1 * sh + ch);
        return std::exp(0.5 * expo * std::log(mod2));
    };
    return sphere_average(params, g, quad);
}

bool is_bounded(const ModelParams& params, SpectralPoint lambda) {
    return std::abs(lambda.lambda.imag()) <= static_cast<double>(params.n) + 1e-12;
}

bool is_positive_definite(const ModelParams& params, SpectralPoint lambda) {
    Complex lam = lambda.lambda;
    double n = static_cast<double>(params.n);
    bool real_axis = std::abs(lam.imag()) <= 1e-12;
    bool imag_segment = std::abs(lam.real()) <= 1e-12 && std::abs(lam.imag()) <= n + 1e-12;
    return real_axis || imag_segment;
}

double product_defect(const ModelParams& params, SpectralPoint lambda, double s, double t) {
    if (!is_bounded(params, lambda))
        throw ParameterError("product_defect: lambda must be bounded");
    if (s == 0.0 || t == 0.0) return 0.0;
    double rs = std::tanh(s), rt = std::tanh(t);
    QuadSettings quad = params.quad;
    quad.singularity_exponents.reset();
    quad.rel_tol = std::max(quad.rel_tol, 1e-9);  // defect threshold is far above
    auto g = [&](Complex w1) {
        double combined = mobius_arg(rs, rt * w1, rt);
        // extended series range: nesting the sphere-integral representation
        // inside the average would be quadratically more expensive
        return phi_impl(params, lambda, combined, 0.97);
    };
    Complex avg = sphere_average(params, g, quad);
    Complex prod = phi(params, lambda, rs) * phi(params, lambda, rt);
    return std::abs(avg - prod);
}

}  // namespace qha
