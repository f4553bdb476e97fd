#include "qha/model.hpp"

#include <cmath>

namespace qha {

void ModelParams::validate() const {
    if (n < 1) throw ParameterError("ModelParams: n must be >= 1");
    if (nu <= static_cast<double>(n))
        throw ParameterError("ModelParams: nu must exceed n");
    if (truncation < 0) throw ParameterError("ModelParams: truncation must be >= 0");
    quad.validate();
}

RadialProfile hpow(double sigma, const ModelParams& params) {
    RadialProfile p;
    p.kind = "hpow(" + std::to_string(sigma) + ")";
    p.eval = [sigma](double r) { return Complex(std::pow(1.0 - r * r, sigma)); };
    p.eval_s = [sigma](double, double om) { return Complex(std::pow(om, sigma)); };
    p.h_exponent = sigma;
    double n = static_cast<double>(params.n);
    p.is_L1_invariant = sigma > n;
    p.is_L2_invariant = 2.0 * sigma > n;
    return p;
}

RadialProfile rpow(int k) {
    RadialProfile p;
    p.kind = "rpow(" + std::to_string(k) + ")";
    p.eval = [k](double r) { return Complex(std::pow(r, k)); };
    p.eval_s = [k](double s, double) { return Complex(std::pow(s, 0.5 * k)); };
    return p;
}

RadialProfile indicator(double r0, const ModelParams&) {
    if (r0 <= 0.0 || r0 >= 1.0)
        throw ParameterError("indicator: radius must lie in (0,1)");
    RadialProfile p;
    p.kind = "indicator(" + std::to_string(r0) + ")";
    p.eval = [r0](double r) { return Complex(r <= r0 ? 1.0 : 0.0); };
    p.eval_s = [r0](double s, double) { return Complex(s <= r0 * r0 ? 1.0 : 0.0); };
    // compactly supported inside the ball: integrable for every weight
    p.is_L1_invariant = true;
    p.is_L2_invariant = true;
    p.h_exponent = 0.0;
    p.support_radius = r0;
    p.breakpoints = {r0};
    return p;
}

RadialProfile lincomb(Complex a, const RadialProfile& f, Complex b, const RadialProfile& g) {
    RadialProfile p;
    p.kind = "lincomb";
    auto fe = f.eval, ge = g.eval;
    p.eval = [a, b, fe, ge](double r) { return a * fe(r) + b * ge(r); };
    if (f.eval_s && g.eval_s) {
        auto fs = f.eval_s, gs = g.eval_s;
        p.eval_s = [a, b, fs, gs](double s, double om) {
            return a * fs(s, om) + b * gs(s, om);
        };
    }
    p.is_L1_invariant = f.is_L1_invariant && g.is_L1_invariant;
    p.is_L2_invariant = f.is_L2_invariant && g.is_L2_invariant;
    p.h_exponent = std::min(f.h_exponent, g.h_exponent);
    p.support_radius = std::max(f.support_radius, g.support_radius);
    p.breakpoints = f.breakpoints;
    p.breakpoints.insert(p.breakpoints.end(), g.breakpoints.begin(), g.breakpoints.end());
    return p;
}

RadialProfile product(const RadialProfile& f, const RadialProfile& g, bool g_bounded) {
    RadialProfile p;
    p.kind = "product";
    auto fe = f.eval, ge = g.eval;
    p.eval = [fe, ge](double r) { return fe(r) * ge(r); };
    if (f.eval_s && g.eval_s) {
        auto fs = f.eval_s, gs = g.eval_s;
        p.eval_s = [fs, gs](double s, double om) { return fs(s, om) * gs(s, om); };
    }
    p.is_L1_invariant = (f.is_L1_invariant && g_bounded) ||
                        (f.is_L1_invariant && g.is_L1_invariant && f.h_exponent >= 0.0 &&
                         g.h_exponent >= 0.0);
    p.is_L2_invariant = f.is_L2_invariant && g_bounded;
    p.h_exponent = f.h_exponent + g.h_exponent;
    p.support_radius = std::min(f.support_radius, g.support_radius);
    p.breakpoints = f.breakpoints;
    p.breakpoints.insert(p.breakpoints.end(), g.breakpoints.begin(), g.breakpoints.end());
    return p;
}

RadialProfile numeric_profile(std::function<Complex(double)> eval, bool l1, bool l2,
                              double h_exponent) {
    RadialProfile p;
    p.eval = std::move(eval);
    p.is_L1_invariant = l1;
    p.is_L2_invariant = l2;
    p.h_exponent = h_exponent;
    return p;
}

double c_nu(const ModelParams& params) {
    params.validate();
    double n = static_cast<double>(params.n);
    return gamma_ratio({params.nu}, {n + 1.0, params.nu - n}).real();
}

long long dim_pm(int n, int m) {
    if (n < 1 || m < 0) throw ParameterError("dim_pm: need n >= 1, m >= 0");
    // binom(m + n - 1, n - 1)
    long long v = 1;
    for (int j = 1; j <= n - 1; ++j) v = v * (m + j) / j;
    return v;
}

double monomial_norm_sq(std::span<const int> multiindex, const ModelParams& params) {
    double log_mfact = 0.0;
    int total = 0;
    for (int mi : multiindex) {
        if (mi < 0) throw ParameterError("monomial_norm_sq: entries must be >= 0");
        log_mfact += std::lgamma(static_cast<double>(mi) + 1.0);
        total += mi;
    }
    return std::exp(log_mfact + std::lgamma(params.nu) -
                    std::lgamma(params.nu + static_cast<double>(total)));
}

namespace {

// Common radial integral in s = r^2: n Int_0^1 f(sqrt(s)) s^{n-1} (1-s)^w ds,
// with the profile's declared decay folded into the endpoint exponents.
Complex radial_integral(const RadialProfile& f, const ModelParams& params, double weight_pow) {
    double n = static_cast<double>(params.n);
    double right = f.h_exponent + weight_pow;
    if (f.support_radius < 1.0) {
        right = 0.0;  // integrand vanishes near the boundary
    } else if (right <= -1.0) {
        throw NonIntegrableError("radial integral: boundary exponent not integrable");
    }
    QuadSettings s = params.quad;
    s.singularity_exponents = {{n - 1.0, right}};
    auto g = [&](double t) {
        double om = 1.0 - t;
        Complex base = f.eval_s ? f.eval_s(t, om) : f.eval(std::sqrt(t));
        return base * std::pow(t, n - 1.0) * std::pow(om, weight_pow);
    };
    Complex v;
    if (f.breakpoints.empty()) {
        v = integrate_01(g, s);
    } else {
        std::vector<double> bp;
        for (double r : f.breakpoints) bp.push_back(r * r);
        v = integrate_01(g, s, bp);
    }
    return n * v;
}

}  // namespace

Complex invariant_integral(const RadialProfile& f, const ModelParams& params) {
    params.validate();
    if (!f.is_L1_invariant)
        throw NonIntegrableError("invariant_integral: profile not integrable (dlambda)");
    double n = static_cast<double>(params.n);
    return radial_integral(f, params, -(n + 1.0));
}

Complex weighted_integral(const RadialProfile& f, const ModelParams& params) {
    params.validate();
    double n = static_cast<double>(params.n);
    double w = f.h_exponent + params.nu - n - 1.0;
    if (w <= -1.0)
        throw NonIntegrableError("weighted_integral: combined exponent not integrable");
    return c_nu(params) * radial_integral(f, params, params.nu - n - 1.0);
}

double mobius_arg(double r, Complex w) { return mobius_arg(r, w, std::abs(w)); }

double mobius_arg(double r, Complex w1, double w_abs) {
    double num = (1.0 - r * r) * (1.0 - w_abs * w_abs);
    double den = std::norm(1.0 - r * std::conj(w1));
    double s2 = 1.0 - num / den;
    return std::sqrt(std::max(s2, 0.0));
}

Complex mobius_at(double t, Complex z) {
    double c = std::cosh(t), s = std::sinh(t);
    return (z * c + s) / (z * s + c);
}

Complex kernel_k(Complex z, Complex w, double nu) {
    double om = 1.0 - std::norm(w);
    return std::pow(om, 0.5 * nu) * std::pow(1.0 - z * std::conj(w), -nu);
}

}  // namespace qha
