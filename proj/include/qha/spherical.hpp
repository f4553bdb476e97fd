#pragma once

#include "qha/model.hpp"

namespace qha {

// A spectral parameter lambda, with the lambda ~ -lambda identification.
// The canonical representative has Re lambda >= 0, and Im lambda >= 0 when
// Re lambda = 0.
struct SpectralPoint {
    Complex lambda;

    static SpectralPoint canonical(Complex lam) {
        if (lam.real() < 0.0 || (lam.real() == 0.0 && lam.imag() < 0.0)) lam = -lam;
        return SpectralPoint{lam};
    }
    bool is_canonical() const { return canonical(lambda).lambda == lambda; }
};

// Largest r^2 at which the double-precision hypergeometric series for
// phi_lambda still retains ~11 digits; shrinks with |Re lambda| because the
// series cancellation grows like exp(0.85 |Re lambda| atanh r).
double series_limit(Complex lambda);

// Spherical function phi_lambda evaluated at radius r in [0,1):
//   2F1((rho + i lambda)/2, (rho - i lambda)/2; n; -r^2/(1-r^2)).
// The hypergeometric series (after Pfaff reduction, argument r^2) is used
// up to series_limit(lambda); beyond that the large-argument connection
// formula (or, in a narrow mid band, an extended-precision series) takes
// over.
Complex phi(const ModelParams& params, SpectralPoint lambda, double r);

// Same, with a caller-chosen switchover (in r^2) between the series and the
// integral representation. Radial integrals pick it per lambda: the series
// loses digits for large real lambda near the boundary, while nesting the
// sphere integral is costly.
Complex phi_with_switch(const ModelParams& params, SpectralPoint lambda, double r,
                        double series_limit_r2);

// Cancellation-free variant for radial integrals: takes s = r^2 and 1-s
// separately so the hypergeometric argument -s/(1-s) keeps full precision
// near the boundary.
Complex phi_s(const ModelParams& params, SpectralPoint lambda, double s,
              double one_minus_s, double series_limit_r2);

// Sphere-integral representation at geodesic parameter t >= 0 (r = tanh t):
//   n=1:  (1/2pi) Int_0^{2pi} |e^{i theta} sinh t + cosh t|^{i lambda - rho} d theta
//   n>=2: integral over the first coordinate omega_1 in the unit disc with
//         marginal density ((n-1)/pi)(1-|omega_1|^2)^{n-2}.
Complex phi_integral_rep(const ModelParams& params, SpectralPoint lambda, double t);

// phi_lambda is bounded iff |Im lambda| <= n; positive definite iff
// lambda in R union i[-n, n] (up to the lambda ~ -lambda identification).
bool is_bounded(const ModelParams& params, SpectralPoint lambda);
bool is_positive_definite(const ModelParams& params, SpectralPoint lambda);

// Defect of the spherical product formula avg_k phi(x k y) = phi(x) phi(y)
// at x = a_s . 0 and y = tanh(t) * omega, averaged over the sphere. Vanishes
// (numerically) exactly when rho carries the right convention; this is the
// calibration arbiter.
double product_defect(const ModelParams& params, SpectralPoint lambda, double s, double t);

}  // namespace qha
