#pragma once

#include "qha/spherical.hpp"

namespace qha {

// A function of the spectral parameter sampled on a lambda-grid on [0, inf)
// (even extension implicit).
struct SampledTransform {
    std::vector<double> nodes;    // strictly increasing, >= 0
    std::vector<Complex> values;
    size_t params_hash = 0;

    void validate() const;
};

// Calibrated quadrature embodying the spectral measure: integrating F against
// the rule means sum_i weights[i] * F(nodes[i]), with the density and the
// fitted global constant folded into the weights.
struct PlancherelRule {
    ModelParams params;
    std::vector<double> nodes;
    std::vector<double> weights;        // c_P * rho0(lambda_i) * GL weight
    std::vector<double> h_hat_values;   // h_hat(nu, lambda_i), cached
    double c_P = 0.0;
    double lambda_max = 0.0;
    double calibration_residual = 0.0;
};

struct CalibrationReport {
    double chosen_rho = 0.0;
    double product_defect_max = 0.0;    // winner's defect over the grid
    double rejected_defect_max = 0.0;   // loser's largest defect (should be large)
    double c_P = 0.0;
    double roundtrip_residual = 0.0;
    double integral_rep_agreement = 0.0;
    double plancherel_residual = 0.0;
    double hhat_mass_residual = 0.0;    // |Int h_hat dmu - 1|
    bool passed = false;
};

// Spherical transform of a radial profile:
//   2n Int_0^1 f(r) phi_lambda(r) r^{2n-1} (1-r^2)^{-(n+1)} dr.
Complex sft(const RadialProfile& f, const ModelParams& params, SpectralPoint lambda);

// Transform of the weight power (1-r^2)^sigma; real and positive on the
// positive-definite locus.
Complex h_hat(double sigma, const ModelParams& params, SpectralPoint lambda);

// Spectral density rho0(lambda) = |Gamma((rho + i lambda)/2)|^4 / |Gamma(i lambda)|^2
// (uncalibrated; the fitted global constant lives in PlancherelRule).
double plancherel_density(const ModelParams& params, double lambda);

// The literal density orientation as printed in the source material,
// |Gamma(i lambda)|^2 / |Gamma((rho + i lambda)/2)|^4. Diverges at 0 and fails
// every validation identity; retained for diagnostics only.
double plancherel_density_literal(const ModelParams& params, double lambda);

// Build the calibrated rule: Gauss-Legendre panels on [0, lambda_max]
// (adaptive lambda_max unless params.lambda_max > 0), global constant solved
// from the Plancherel identity for the nu-th weight power and validated on an
// independent profile.
PlancherelRule build_plancherel_rule(const ModelParams& params);

// Inverse transform Int F(lambda) phi_lambda(r) dmu(lambda) via the rule.
Complex isft(const std::function<Complex(double)>& F, double r, const PlancherelRule& rule);
Complex isft(const SampledTransform& F, double r, const PlancherelRule& rule);

// Sample the transform of f on the rule's nodes.
SampledTransform sft_sample(const RadialProfile& f, const PlancherelRule& rule);

// Run the full convention arbitration: product-formula defect over the rho
// candidates, series-vs-integral-representation agreement, the Plancherel
// constant fit and its validations. Throws CalibrationError if every
// candidate fails.
CalibrationReport calibrate(const ModelParams& params);

// Stable hash of the model parameters (cache keying, transform tagging).
size_t params_hash(const ModelParams& params);

}  // namespace qha
