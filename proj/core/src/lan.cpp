#include "lanpower/lan.hpp"

#include <cmath>
#include <stdexcept>

#include "lanpower/errors.hpp"

namespace lanpower {

namespace {

void require_length(const SeriesSample& sample) {
    if (sample.values.size() < 2) {
        throw std::invalid_argument("central_seq: sample length must be >= 2");
    }
}

void check_finite(double x, const char* where) {
    if (!std::isfinite(x)) {
        throw NumericError(std::string(where) + ": non-finite intermediate");
    }
}

}  // namespace

CentralSeqEval central_seq_ar1(const SeriesSample& sample, double rho,
                               const PerturbationSpec& g) {
    require_length(sample);
    const int n = sample.n();
    const double sqn = std::sqrt(static_cast<double>(n));
    double s = 0.0, s1 = 0.0;
    for (int i = 1; i <= n; ++i) {
        double yl = sample.values[static_cast<std::size_t>(i - 1)];
        double e = sample.values[static_cast<std::size_t>(i)] - rho * yl;
        double gy = g(yl);
        s += score_mf(e) * gy;
        s1 += yl * gy;
    }
    CentralSeqEval out;
    out.value = -s / sqn;
    out.d1 = -s1 / sqn;
    out.d1_scaled = out.d1 / sqn;
    out.d2_scaled_bound = 0.0;  // V_n is affine in rho for this family
    check_finite(out.value, "central_seq_ar1");
    check_finite(out.d1, "central_seq_ar1");
    return out;
}

CentralSeqEval central_seq_arch(const SeriesSample& sample, double rho,
                                const PerturbationSpec& g,
                                const PerturbationSpec& b) {
    require_length(sample);
    const int n = sample.n();
    const double sqn = std::sqrt(static_cast<double>(n));
    double s = 0.0, s1 = 0.0, sum_y2 = 0.0;
    for (int i = 1; i <= n; ++i) {
        double yl = sample.values[static_cast<std::size_t>(i - 1)];
        double e = sample.values[static_cast<std::size_t>(i)] - rho * yl;
        double gy = g(yl);
        double by = b(yl);
        // Gaussian score: M_f(e) = -e, 1 + e M_f(e) = 1 - e^2.
        s += score_mf(e) * gy + (1.0 - e * e) * by;
        // d/drho of the summand: dM_f(e)/drho = Y_{i-1},
        // d(1 - e^2)/drho = 2 e Y_{i-1}.
        s1 += yl * gy + 2.0 * e * yl * by;
        sum_y2 += yl * yl;
    }
    CentralSeqEval out;
    out.value = -s / sqn;
    out.d1 = -s1 / sqn;
    out.d1_scaled = out.d1 / sqn;
    // |d2 V_n/drho2|/sqrt(n) = (1/n)|sum Y^2 B * 2 Mdot_f| <= bound below,
    // with |2 Mdot_f| = 2 for the Gaussian score.
    out.d2_scaled_bound = 2.0 * b.bound() * sum_y2 / static_cast<double>(n);
    check_finite(out.value, "central_seq_arch");
    check_finite(out.d1, "central_seq_arch");
    return out;
}

CentralSeqEval central_seq(const SeriesSample& sample, double rho,
                           const ModelSpec& spec) {
    if (spec.family == Family::arch) {
        if (!spec.b) {
            throw std::invalid_argument("central_seq: arch spec has no B");
        }
        return central_seq_arch(sample, rho, spec.g, *spec.b);
    }
    return central_seq_ar1(sample, rho, spec.g);
}

Tau2 tau2_analytic(const ModelSpec& spec, const NoiseMoments& moments) {
    ModelSpec null_spec = spec;
    null_spec.hypothesis = Hypothesis::null;
    double value = moments.i0 * expected_functional(null_spec, Functional::g_squared);
    if (spec.family == Family::arch) {
        value += 0.25 * (moments.i2 - 1.0) *
                     expected_functional(null_spec, Functional::b_squared) +
                 moments.i1 *
                     expected_functional(null_spec, Functional::g_times_b);
    }
    return Tau2{value, Tau2Source::analytic};
}

Tau2 tau2_plugin(const SeriesSample& sample, double rho, const ModelSpec& spec) {
    const int n = sample.n();
    if (n < 10) {
        throw InsufficientDataError("tau2_plugin: need n >= 10");
    }
    double i0 = 0.0, i1 = 0.0, i2 = 0.0;
    double eg2 = 0.0, eb2 = 0.0, egb = 0.0;
    const bool arch = spec.family == Family::arch;
    for (int i = 1; i <= n; ++i) {
        double yl = sample.values[static_cast<std::size_t>(i - 1)];
        double e = sample.values[static_cast<std::size_t>(i)] - rho * yl;
        double m2 = e * e;  // M_f(e)^2
        i0 += m2;
        i1 += e * m2;
        i2 += e * e * m2;
        double gy = spec.g(yl);
        eg2 += gy * gy;
        if (arch) {
            double by = (*spec.b)(yl);
            eb2 += by * by;
            egb += gy * by;
        }
    }
    const double inv_n = 1.0 / static_cast<double>(n);
    i0 *= inv_n;
    i1 *= inv_n;
    i2 *= inv_n;
    double value = i0 * eg2 * inv_n;
    if (arch) {
        value += 0.25 * (i2 - 1.0) * eb2 * inv_n + i1 * egb * inv_n;
    }
    return Tau2{value, Tau2Source::plugin};
}

double log_likelihood_ratio(const SeriesSample& sample, const ModelSpec& spec) {
    if (spec.family != Family::ar1) {
        throw std::invalid_argument(
            "log_likelihood_ratio: Gaussian closed form is ar1-only");
    }
    require_length(sample);
    const int n = sample.n();
    const double delta = 1.0 / std::sqrt(static_cast<double>(n));
    double sum = 0.0;
    for (int i = 1; i <= n; ++i) {
        double yl = sample.values[static_cast<std::size_t>(i - 1)];
        double e = sample.values[static_cast<std::size_t>(i)] - spec.rho0 * yl;
        double shifted = e - delta * spec.g(yl);
        // log f(shifted) - log f(e) for the standard normal density
        sum += 0.5 * (e * e - shifted * shifted);
    }
    check_finite(sum, "log_likelihood_ratio");
    return sum;
}

}  // namespace lanpower
