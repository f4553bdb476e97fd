#include "qha/qha.hpp"

#include <algorithm>
#include <cmath>

namespace qha {

int SpectralTable::node_index(Complex lambda, double tol) const {
    if (std::abs(lambda.imag()) > tol) return -1;
    for (size_t i = 0; i < rule->nodes.size(); ++i)
        if (std::abs(lambda.real() - rule->nodes[i]) <= tol) return static_cast<int>(i);
    return -1;
}

SpectralTable build_spectral_table(const ModelParams& params, int M) {
    params.validate();
    if (M < 0) M = params.truncation;
    // The base rule only has to resolve the function side, but tau_m carries
    // spectral mass out to roughly lambda ~ 7m + 20. Extend the grid until
    // the discrete orthogonality sum_i w_i tau_m(lambda_i)^2 d_m reproduces
    // its exact value 1 for every tabulated degree, which is what the inverse
    // transform and the operator Plancherel identity rest on.
    ModelParams p = params;
    SpectralTable tab;
    for (;;) {
        tab = SpectralTable{};
        tab.params = p;
        tab.rule = std::make_shared<const PlancherelRule>(build_plancherel_rule(p));
        tab.M = M;
        tab.tau.clear();
        tab.tau.reserve(tab.rule->nodes.size());
        for (double l : tab.rule->nodes) {
            RadialOperator T = t_lambda_eigs(p, SpectralPoint{Complex(l, 0.0)}, M);
            tab.tau.push_back(std::move(T.coeffs));
        }
        if (params.lambda_max > 0.0) break;  // the caller pinned the grid
        double defect = 0.0;
        for (int m = 0; m <= M; ++m) {
            double s = 0.0;
            for (size_t i = 0; i < tab.rule->nodes.size(); ++i)
                s += tab.rule->weights[i] * std::norm(tab.tau[i][m]);
            defect = std::max(
                defect, std::abs(s * static_cast<double>(dim_pm(p.n, m)) - 1.0));
        }
        if (defect <= 1e-8 || tab.rule->lambda_max >= 390.0) break;
        p.lambda_max =
            std::min(400.0, std::max(tab.rule->lambda_max * 1.3, 7.0 * M + 20.0));
    }
    return tab;
}

RadialProfile zero_profile() {
    RadialProfile f;
    f.kind = "zero";
    f.is_L1_invariant = true;
    f.is_L2_invariant = true;
    f.support_radius = 0.5;
    f.eval = [](double) { return Complex(0.0); };
    f.eval_s = [](double, double) { return Complex(0.0); };
    return f;
}

RadialOperator zero_operator(int M) {
    RadialOperator A;
    A.coeffs.assign(static_cast<size_t>(std::max(0, M)) + 1, Complex(0.0));
    return A;
}

Complex op_fourier(const RadialOperator& A, const ModelParams& params, SpectralPoint lambda) {
    A.validate();
    RadialOperator T = t_lambda_eigs(params, lambda, A.truncation());
    Complex acc = 0.0;
    for (size_t m = 0; m < A.coeffs.size(); ++m)
        acc += static_cast<double>(dim_pm(params.n, static_cast<int>(m))) * A.coeffs[m] *
               T.coeffs[m];
    return acc;
}

Complex op_fourier(const RadialOperator& A, const SpectralTable& tab, SpectralPoint lambda) {
    A.validate();
    int i = tab.node_index(lambda.lambda);
    if (i < 0 || A.truncation() > tab.M) return op_fourier(A, tab.params, lambda);
    Complex acc = 0.0;
    for (size_t m = 0; m < A.coeffs.size(); ++m)
        acc += static_cast<double>(dim_pm(tab.params.n, static_cast<int>(m))) *
               A.coeffs[m] * tab.tau[i][m];
    return acc;
}

SampledTransform op_fourier_sample(const RadialOperator& A, const SpectralTable& tab) {
    A.validate();
    if (A.truncation() > tab.M)
        throw ParameterError("op_fourier_sample: operator exceeds the table truncation");
    SampledTransform out;
    out.nodes = tab.rule->nodes;
    out.params_hash = params_hash(tab.params);
    out.values.reserve(out.nodes.size());
    for (size_t i = 0; i < out.nodes.size(); ++i) {
        Complex acc = 0.0;
        for (size_t m = 0; m < A.coeffs.size(); ++m)
            acc += static_cast<double>(dim_pm(tab.params.n, static_cast<int>(m))) *
                   A.coeffs[m] * tab.tau[i][m];
        out.values.push_back(acc);
    }
    return out;
}

RadialOperator op_inverse_fourier(const SampledTransform& F, const SpectralTable& tab, int M) {
    F.validate();
    if (F.nodes.size() != tab.rule->nodes.size())
        throw ParameterError("op_inverse_fourier: samples do not match the rule grid");
    if (M < 0) M = tab.M;
    if (M > tab.M)
        throw ParameterError("op_inverse_fourier: truncation exceeds the table");
    RadialOperator A;
    A.params_hash = params_hash(tab.params);
    A.coeffs.assign(M + 1, Complex(0.0));
    for (size_t i = 0; i < F.values.size(); ++i) {
        Complex wf = tab.rule->weights[i] * F.values[i];
        for (int m = 0; m <= M; ++m) A.coeffs[m] += wf * tab.tau[i][m];
    }
    return A;
}

RadialOperator op_inverse_fourier(const std::function<Complex(double)>& F,
                                  const SpectralTable& tab, int M) {
    SampledTransform S;
    S.nodes = tab.rule->nodes;
    S.params_hash = params_hash(tab.params);
    for (double l : S.nodes) S.values.push_back(F(l));
    return op_inverse_fourier(S, tab, M);
}

RadialProfile synth_profile(SampledTransform samples, const SpectralTable& tab) {
    auto shared = std::make_shared<const SampledTransform>(std::move(samples));
    auto rule = tab.rule;
    RadialProfile f;
    f.kind = "synthesis";
    f.is_L1_invariant = true;
    f.is_L2_invariant = true;
    f.eval = [shared, rule](double r) { return isft(*shared, r, *rule); };
    return f;
}

namespace {

SampledTransform fun_samples(const RadialProfile& f, const SpectralTable& tab) {
    if (f.kind == "zero") {
        SampledTransform S;
        S.nodes = tab.rule->nodes;
        S.params_hash = params_hash(tab.params);
        S.values.assign(S.nodes.size(), Complex(0.0));
        return S;
    }
    return sft_sample(f, *tab.rule);
}

SampledTransform product_samples(const SampledTransform& X, const SampledTransform& Y) {
    SampledTransform S = X;
    for (size_t i = 0; i < S.values.size(); ++i) S.values[i] *= Y.values[i];
    return S;
}

}  // namespace

RadialProfile conv_ff(const RadialProfile& f, const RadialProfile& g, const SpectralTable& tab) {
    return synth_profile(product_samples(fun_samples(f, tab), fun_samples(g, tab)), tab);
}

RadialOperator conv_fo(const SampledTransform& fhat, const RadialOperator& A,
                       const SpectralTable& tab, int M) {
    return op_inverse_fourier(product_samples(fhat, op_fourier_sample(A, tab)), tab, M);
}

RadialOperator conv_fo(const RadialProfile& f, const RadialOperator& A,
                       const SpectralTable& tab, int M) {
    return conv_fo(fun_samples(f, tab), A, tab, M);
}

RadialProfile conv_oo(const RadialOperator& A, const RadialOperator& B, const SpectralTable& tab) {
    return synth_profile(
        product_samples(op_fourier_sample(A, tab), op_fourier_sample(B, tab)), tab);
}

AlgebraElement AlgebraElement::from_fun(RadialProfile f) {
    return AlgebraElement{std::move(f), zero_operator(0), nullptr, nullptr};
}

AlgebraElement AlgebraElement::from_op(RadialOperator A) {
    return AlgebraElement{zero_profile(), std::move(A), nullptr, nullptr};
}

AlgebraElement AlgebraElement::make(RadialProfile f, RadialOperator A) {
    return AlgebraElement{std::move(f), std::move(A), nullptr, nullptr};
}

AlgebraElement algebra_mul(const AlgebraElement& x, const AlgebraElement& y,
                           const SpectralTable& tab) {
    SampledTransform X = x.fun_hat ? *x.fun_hat : fun_samples(x.fun, tab);
    SampledTransform Y = y.fun_hat ? *y.fun_hat : fun_samples(y.fun, tab);
    SampledTransform XA = op_fourier_sample(x.op, tab);
    SampledTransform YA = op_fourier_sample(y.op, tab);

    // function part: f*g + A*B
    SampledTransform S = X;
    for (size_t i = 0; i < S.values.size(); ++i)
        S.values[i] = X.values[i] * Y.values[i] + XA.values[i] * YA.values[i];

    // operator part: f*B + g*A
    SampledTransform T = X;
    for (size_t i = 0; i < T.values.size(); ++i)
        T.values[i] = X.values[i] * YA.values[i] + Y.values[i] * XA.values[i];

    AlgebraElement out;
    out.op = op_inverse_fourier(T, tab);
    out.op_hat = std::make_shared<const SampledTransform>(std::move(T));
    out.fun_hat = std::make_shared<const SampledTransform>(S);
    out.fun = synth_profile(std::move(S), tab);
    return out;
}

AlgebraElement algebra_involution(const AlgebraElement& x) {
    AlgebraElement out;
    out.op = adjoint(x.op);
    RadialProfile f = x.fun;
    auto base_eval = x.fun.eval;
    f.eval = [base_eval](double r) { return std::conj(base_eval(r)); };
    if (x.fun.eval_s) {
        auto base_s = x.fun.eval_s;
        f.eval_s = [base_s](double s, double om) { return std::conj(base_s(s, om)); };
    }
    out.fun = std::move(f);
    // rule nodes are real and the tau_m / phi_lambda values are real there,
    // so the transform of the conjugate/adjoint is the conjugate transform
    if (x.fun_hat) {
        SampledTransform S = *x.fun_hat;
        for (Complex& v : S.values) v = std::conj(v);
        out.fun_hat = std::make_shared<const SampledTransform>(std::move(S));
    }
    if (x.op_hat) {
        SampledTransform S = *x.op_hat;
        for (Complex& v : S.values) v = std::conj(v);
        out.op_hat = std::make_shared<const SampledTransform>(std::move(S));
    }
    return out;
}

Complex gelfand_eval(const AlgebraElement& x, const SpectralTable& tab, const GelfandPoint& p) {
    if (!is_bounded(tab.params, p.lambda))
        throw ParameterError("gelfand_eval: spectral parameter outside the bounded locus");
    if (p.j != 0 && p.j != 1) throw ParameterError("gelfand_eval: j must be 0 or 1");
    Complex fhat;
    int i = tab.node_index(p.lambda.lambda);
    if (x.fun_hat && i >= 0) {
        fhat = x.fun_hat->values[i];
    } else if (x.fun.kind == "zero") {
        fhat = 0.0;
    } else {
        fhat = sft(x.fun, tab.params, p.lambda);
    }
    Complex ahat = x.op_hat && i >= 0 ? x.op_hat->values[i]
                                      : op_fourier(x.op, tab, p.lambda);
    return fhat + (p.j == 0 ? ahat : -ahat);
}

std::pair<double, double> op_plancherel_check(const RadialOperator& A, const SpectralTable& tab) {
    A.validate();
    double lhs = 0.0;
    for (size_t m = 0; m < A.coeffs.size(); ++m)
        lhs += static_cast<double>(dim_pm(tab.params.n, static_cast<int>(m))) *
               std::norm(A.coeffs[m]);
    SampledTransform F = op_fourier_sample(A, tab);
    double rhs = 0.0;
    for (size_t i = 0; i < F.values.size(); ++i)
        rhs += tab.rule->weights[i] * std::norm(F.values[i]);
    return {lhs, rhs};
}

namespace {

// Smallest eigenvalue of a small real symmetric matrix by cyclic Jacobi.
double min_eig_sym(std::vector<double> a, int k) {
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j) off += a[i * k + j] * a[i * k + j];
        if (off < 1e-26) break;
        for (int p = 0; p < k; ++p) {
            for (int q = p + 1; q < k; ++q) {
                double apq = a[p * k + q];
                if (std::abs(apq) < 1e-15) continue;
                double theta = 0.5 * (a[q * k + q] - a[p * k + p]) / apq;
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
                for (int i = 0; i < k; ++i) {
                    double aip = a[i * k + p], aiq = a[i * k + q];
                    a[i * k + p] = c * aip - s * aiq;
                    a[i * k + q] = s * aip + c * aiq;
                }
                for (int i = 0; i < k; ++i) {
                    double api = a[p * k + i], aqi = a[q * k + i];
                    a[p * k + i] = c * api - s * aqi;
                    a[q * k + i] = s * api + c * aqi;
                }
            }
        }
    }
    double mn = a[0];
    for (int i = 1; i < k; ++i) mn = std::min(mn, a[i * k + i]);
    return mn;
}

}  // namespace

double pd_gram_check(const RadialOperator& A, const SpectralTable& tab,
                     const std::vector<double>& t_samples) {
    if (tab.params.n != 1)
        throw ParameterError("pd_gram_check: group sampling implemented on the disc only");
    if (t_samples.empty()) throw ParameterError("pd_gram_check: no sample points");
    SampledTransform F = op_fourier_sample(A, tab);
    for (Complex& v : F.values) v = Complex(std::norm(v), 0.0);  // (A* conv A)-hat
    int k = static_cast<int>(t_samples.size());
    std::vector<double> G(static_cast<size_t>(k) * k);
    for (int j = 0; j < k; ++j)
        for (int l = 0; l < k; ++l) {
            double r = std::abs(std::tanh(t_samples[l] - t_samples[j]));
            G[j * k + l] = isft(F, r, *tab.rule).real();
        }
    return min_eig_sym(std::move(G), k);
}

}  // namespace qha
