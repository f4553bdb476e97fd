#include "qha/funxform.hpp"

#include <cmath>
#include <sstream>

namespace qha {

namespace {

constexpr double kRuleResidualLimit = 1e-4;

}  // namespace

void SampledTransform::validate() const {
    if (nodes.size() != values.size())
        throw ParameterError("SampledTransform: nodes/values length mismatch");
    for (size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i] < 0.0 || (i > 0 && nodes[i] <= nodes[i - 1]))
            throw ParameterError("SampledTransform: nodes must be increasing and >= 0");
    }
}

Complex sft(const RadialProfile& f, const ModelParams& params, SpectralPoint lambda) {
    params.validate();
    double n = static_cast<double>(params.n);
    double im = std::abs(lambda.lambda.imag());
    // boundary decay of phi: (1-r^2)^{(rho-|Im lambda|)/2}; only a growth
    // (negative) contribution is charged against f's declared decay
    double phi_growth = std::min(0.0, 0.5 * (params.rho - im));
    double right = f.h_exponent + phi_growth - (n + 1.0);
    if (f.support_radius < 1.0) {
        right = 0.0;
    } else if (!f.is_L1_invariant || right <= -1.0) {
        throw NonIntegrableError("sft: profile/lambda combination not integrable");
    }
    double lim = series_limit(lambda.lambda);
    if (f.support_radius < 1.0) {
        // compactly supported: no boundary singularity, integrate in s = r^2
        QuadSettings s = params.quad;
        s.singularity_exponents = {{n - 1.0, 0.0}};
        auto g = [&](double t) {
            double om = 1.0 - t;
            Complex base = f.eval_s ? f.eval_s(t, om) : f.eval(std::sqrt(t));
            return base * phi_s(params, lambda, t, om, lim) * std::pow(t, n - 1.0) *
                   std::pow(om, -(n + 1.0));
        };
        std::vector<double> bp;
        for (double r : f.breakpoints) bp.push_back(r * r);
        return n * (bp.empty() ? integrate_01(g, s) : integrate_01(g, s, bp));
    }
    // full support: integrate in the geodesic coordinate t = atanh(r), where
    // oscillation in lambda has uniform frequency and the boundary weight is
    // a clean exponential; the complement 1 - r^2 = sech^2 t needs no
    // cancellation-prone subtraction
    QuadSettings s = params.quad;
    s.singularity_exponents.reset();
    auto g = [&](double t) {
        double ch = std::cosh(t);
        double om = 1.0 / (ch * ch);
        double th = std::tanh(t);
        double s2 = th * th;
        Complex base = f.eval_s ? f.eval_s(s2, om) : f.eval(th);
        return base * phi_s(params, lambda, s2, om, lim) *
               std::pow(th, 2.0 * n - 1.0) * std::pow(ch, 2.0 * n);
    };
    return 2.0 * n * integrate_halfline(g, s);
}

Complex h_hat(double sigma, const ModelParams& params, SpectralPoint lambda) {
    double n = static_cast<double>(params.n);
    if (sigma <= n) throw ParameterError("h_hat: exponent must exceed n");
    // Same integrability condition as the defining integral: the spherical
    // function grows like (1-r^2)^{(rho-|Im lambda|)/2} toward the boundary.
    double im = std::abs(lambda.lambda.imag());
    if (sigma - n + 0.5 * (params.rho - im) <= 0.0)
        throw NonIntegrableError("h_hat: transform integral diverges at this lambda");
    // Closed form: expanding the spherical function's hypergeometric series
    // and integrating termwise gives a Gauss sum, so
    //   h_hat_sigma = n! Gamma(sigma-n+a) Gamma(sigma-n+b)
    //                 / (Gamma(sigma) Gamma(sigma-n+rho)),
    // with a = (rho + i lambda)/2, b = (rho - i lambda)/2. Cross-checked
    // against the direct quadrature in the tests.
    Complex il = Complex(0.0, 1.0) * lambda.lambda;
    Complex a = 0.5 * (params.rho + il), b = 0.5 * (params.rho - il);
    Complex lg = log_gamma(sigma - n + a) + log_gamma(sigma - n + b) -
                 log_gamma(Complex(sigma, 0.0)) -
                 log_gamma(Complex(sigma - n + params.rho, 0.0));
    return std::tgamma(n + 1.0) * std::exp(lg);
}

double plancherel_density(const ModelParams& params, double lambda) {
    if (lambda < 0.0) throw ParameterError("plancherel_density: lambda must be >= 0");
    if (lambda == 0.0) return 0.0;  // |Gamma(i lambda)|^{-2} vanishes like lambda^2
    Complex half(0.5 * params.rho, 0.5 * lambda);
    double log_num = 4.0 * log_gamma(half).real();
    double log_den = 2.0 * log_gamma(Complex(0.0, lambda)).real();
    return std::exp(log_num - log_den);
}

double plancherel_density_literal(const ModelParams& params, double lambda) {
    if (lambda <= 0.0)
        throw ParameterError("plancherel_density_literal: lambda must be > 0");
    return 1.0 / plancherel_density(params, lambda);
}

namespace {

// Exact L^2(invariant) norm of the weight power: ||(1-r^2)^sigma||^2 =
// n! Gamma(2 sigma - n) / Gamma(2 sigma).
double hpow_norm_sq(const ModelParams& params, double sigma) {
    double n = static_cast<double>(params.n);
    return gamma_ratio({n + 1.0, 2.0 * sigma - n}, {2.0 * sigma}).real();
}

}  // namespace

PlancherelRule build_plancherel_rule(const ModelParams& params) {
    params.validate();
    PlancherelRule rule;
    rule.params = params;

    auto tail_density = [&](double l) {
        double hh = h_hat(params.nu, params, SpectralPoint{Complex(l, 0.0)}).real();
        return plancherel_density(params, l) * hh * hh;
    };

    double lmax = params.lambda_max;
    if (lmax <= 0.0) {
        lmax = 20.0;
        while (lmax < 120.0) {
            double t1 = tail_density(lmax - 2.0), t2 = tail_density(lmax);
            if (t2 > 0.0 && t1 > t2) {
                double rate = 0.5 * std::log(t1 / t2);
                if (t2 / rate < 1e-12) break;
            }
            lmax += 10.0;
        }
    }
    rule.lambda_max = lmax;

    // Gauss-Legendre panels of width ~2
    int npanels = std::max(8, static_cast<int>(std::ceil(lmax / 2.0)));
    std::vector<double> gx, gw;
    gauss_legendre(16, gx, gw);
    for (int pnl = 0; pnl < npanels; ++pnl) {
        double a = lmax * pnl / npanels, b = lmax * (pnl + 1) / npanels;
        double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        for (size_t i = 0; i < gx.size(); ++i) {
            double l = mid + half * gx[i];
            rule.nodes.push_back(l);
            rule.weights.push_back(half * gw[i] * plancherel_density(params, l));
        }
    }

    rule.h_hat_values.reserve(rule.nodes.size());
    for (double l : rule.nodes)
        rule.h_hat_values.push_back(
            h_hat(params.nu, params, SpectralPoint{Complex(l, 0.0)}).real());

    // global constant from the Plancherel identity for the nu-th weight power
    double raw = 0.0;
    for (size_t i = 0; i < rule.nodes.size(); ++i)
        raw += rule.weights[i] * rule.h_hat_values[i] * rule.h_hat_values[i];
    double target = hpow_norm_sq(params, params.nu);
    if (raw <= 0.0) throw CalibrationError("build_plancherel_rule: degenerate fit");
    rule.c_P = target / raw;
    for (double& w : rule.weights) w *= rule.c_P;

    // validation 1: independent profile (nu+1 weight power)
    double lhs = 0.0;
    for (size_t i = 0; i < rule.nodes.size(); ++i) {
        double hh =
            h_hat(params.nu + 1.0, params, SpectralPoint{Complex(rule.nodes[i], 0.0)})
                .real();
        lhs += rule.weights[i] * hh * hh;
    }
    double rhs = hpow_norm_sq(params, params.nu + 1.0);
    double res1 = std::abs(lhs - rhs) / rhs;

    // validation 2: inversion at the origin, Int h_hat dmu = h(0) = 1
    double mass = 0.0;
    for (size_t i = 0; i < rule.nodes.size(); ++i)
        mass += rule.weights[i] * rule.h_hat_values[i];
    double res2 = std::abs(mass - 1.0);

    rule.calibration_residual = std::max(res1, res2);
    if (rule.calibration_residual > kRuleResidualLimit)
        throw CalibrationError("build_plancherel_rule: validation residual " +
                               std::to_string(rule.calibration_residual));
    return rule;
}

Complex isft(const std::function<Complex(double)>& F, double r, const PlancherelRule& rule) {
    Complex acc = 0.0;
    for (size_t i = 0; i < rule.nodes.size(); ++i) {
        SpectralPoint lam{Complex(rule.nodes[i], 0.0)};
        acc += rule.weights[i] * F(rule.nodes[i]) *
               phi_with_switch(rule.params, lam, r, series_limit(lam.lambda));
    }
    return acc;
}

Complex isft(const SampledTransform& F, double r, const PlancherelRule& rule) {
    F.validate();
    if (F.nodes.size() != rule.nodes.size())
        throw ParameterError("isft: sampled transform does not match the rule grid");
    Complex acc = 0.0;
    for (size_t i = 0; i < rule.nodes.size(); ++i) {
        SpectralPoint lam{Complex(rule.nodes[i], 0.0)};
        acc += rule.weights[i] * F.values[i] *
               phi_with_switch(rule.params, lam, r, series_limit(lam.lambda));
    }
    return acc;
}

SampledTransform sft_sample(const RadialProfile& f, const PlancherelRule& rule) {
    SampledTransform out;
    out.nodes = rule.nodes;
    out.params_hash = params_hash(rule.params);
    out.values.reserve(rule.nodes.size());
    // The transform of an L^1 profile decays, but the rule may extend far
    // beyond the profile's spectral support to cover operator-side mass.
    // Once two panels' worth of consecutive samples sit below the noise
    // floor relative to the peak (the transforms themselves carry an
    // absolute noise floor near 1e-13), the remaining tail is filled with
    // zeros.
    double gmax = 0.0;
    int quiet = 0;
    for (size_t i = 0; i < rule.nodes.size(); ++i) {
        Complex v = sft(f, rule.params, SpectralPoint{Complex(rule.nodes[i], 0.0)});
        out.values.push_back(v);
        gmax = std::max(gmax, std::abs(v));
        quiet = std::abs(v) <= 1e-12 * gmax ? quiet + 1 : 0;
        if (quiet >= 32 && rule.nodes[i] > 25.0) {
            out.values.resize(rule.nodes.size(), Complex(0.0));
            break;
        }
    }
    return out;
}

CalibrationReport calibrate(const ModelParams& params) {
    params.validate();
    CalibrationReport rep;

    const double defect_grid_lambda[3] = {0.7, 2.0, 4.0};
    const double defect_grid_s[3] = {0.3, 0.6, 1.0};
    const double defect_grid_t[3] = {0.4, 0.8, 1.2};
    double candidates[2] = {static_cast<double>(params.n),
                            static_cast<double>(params.n) - 0.5};
    double max_defect[2] = {0.0, 0.0};
    for (int c = 0; c < 2; ++c) {
        ModelParams p = params;
        p.rho = candidates[c];
        for (double l : defect_grid_lambda)
            for (double s : defect_grid_s)
                for (double t : defect_grid_t) {
                    double d = product_defect(p, SpectralPoint{Complex(l, 0.0)}, s, t);
                    max_defect[c] = std::max(max_defect[c], d);
                }
    }
    int winner = max_defect[0] <= max_defect[1] ? 0 : 1;
    if (max_defect[winner] > 1e-6)
        throw CalibrationError(
            "calibrate: product-formula defect too large for every rho candidate (best " +
            std::to_string(max_defect[winner]) + ")");
    rep.chosen_rho = candidates[winner];
    rep.product_defect_max = max_defect[winner];
    rep.rejected_defect_max = max_defect[1 - winner];

    ModelParams p = params;
    p.rho = rep.chosen_rho;

    // series vs integral representation on the overlap band
    double agree = 0.0;
    for (double l : {0.5, 2.0, 5.0}) {
        for (double r2 : {0.75, 0.80, 0.85}) {
            double r = std::sqrt(r2);
            SpectralPoint lam{Complex(l, 0.0)};
            agree = std::max(agree, std::abs(phi(p, lam, r) -
                                             phi_integral_rep(p, lam, std::atanh(r))));
        }
    }
    rep.integral_rep_agreement = agree;

    PlancherelRule rule = build_plancherel_rule(p);
    rep.c_P = rule.c_P;
    rep.plancherel_residual = rule.calibration_residual;

    double mass = 0.0;
    for (size_t i = 0; i < rule.nodes.size(); ++i)
        mass += rule.weights[i] * rule.h_hat_values[i];
    rep.hhat_mass_residual = std::abs(mass - 1.0);

    // round trip on the nu-th weight power
    SampledTransform hh;
    hh.nodes = rule.nodes;
    hh.params_hash = params_hash(p);
    for (double v : rule.h_hat_values) hh.values.push_back(Complex(v));
    double rt = 0.0;
    for (double r : {0.0, 0.3, 0.6}) {
        Complex back = isft(hh, r, rule);
        rt = std::max(rt, std::abs(back - std::pow(1.0 - r * r, p.nu)));
    }
    rep.roundtrip_residual = rt;

    rep.passed = rep.product_defect_max <= 1e-6 && rep.integral_rep_agreement <= 1e-8 &&
                 rep.roundtrip_residual <= 1e-5 && rep.plancherel_residual <= 1e-5 &&
                 rep.hhat_mass_residual <= 1e-5;
    return rep;
}

size_t params_hash(const ModelParams& params) {
    std::ostringstream os;
    os << params.n << '|' << params.nu << '|' << params.rho << '|' << params.truncation
       << '|' << params.lambda_max << '|' << params.quad.rel_tol << '|'
       << params.quad.abs_tol;
    return std::hash<std::string>{}(os.str());
}

}  // namespace qha
