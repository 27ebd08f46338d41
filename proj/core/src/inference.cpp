#include "lanpower/inference.hpp"

#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

#include "lanpower/errors.hpp"

namespace lanpower {

double lse(const SeriesSample& sample) {
    if (sample.values.size() < 2) {
        throw std::invalid_argument("lse: sample length must be >= 2");
    }
    const int n = sample.n();
    double num = 0.0, den = 0.0;
    for (int i = 1; i <= n; ++i) {
        double yl = sample.values[static_cast<std::size_t>(i - 1)];
        num += sample.values[static_cast<std::size_t>(i)] * yl;
        den += yl * yl;
    }
    if (den <= 0.0) {
        throw DegenerateDesignError("lse: all lagged values are zero");
    }
    return num / den;
}

std::vector<double> residuals(const SeriesSample& sample, double rho) {
    if (sample.values.size() < 2) {
        throw std::invalid_argument("residuals: sample length must be >= 2");
    }
    const int n = sample.n();
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) {
        out[static_cast<std::size_t>(i - 1)] =
            sample.values[static_cast<std::size_t>(i)] -
            rho * sample.values[static_cast<std::size_t>(i - 1)];
    }
    return out;
}

double bootstrap_bias(const SeriesSample& sample, int num_replicates,
                      std::uint64_t seed) {
    if (num_replicates < 100) {
        throw std::invalid_argument("bootstrap_bias: need B >= 100");
    }
    const int n = sample.n();
    const double rho_hat = lse(sample);
    std::vector<double> res = residuals(sample, rho_hat);
    const double mean =
        std::accumulate(res.begin(), res.end(), 0.0) / static_cast<double>(n);
    for (double& r : res) r -= mean;

    GaussianStream rng(seed);
    SeriesSample boot;
    boot.values.resize(sample.values.size());
    double acc = 0.0;
    for (int b = 0; b < num_replicates; ++b) {
        double y = sample.values[0];
        boot.values[0] = y;
        for (int i = 1; i <= n; ++i) {
            std::uint64_t k = rng.next_u64() % static_cast<std::uint64_t>(n);
            y = rho_hat * y + res[static_cast<std::size_t>(k)];
            boot.values[static_cast<std::size_t>(i)] = y;
        }
        acc += lse(boot) - rho_hat;
    }
    return acc / static_cast<double>(num_replicates);
}

double c1_empirical(const SeriesSample& sample, const PerturbationSpec& g) {
    if (sample.values.size() < 2) {
        throw std::invalid_argument("c1_empirical: sample length must be >= 2");
    }
    const int n = sample.n();
    double s = 0.0;
    for (int i = 1; i <= n; ++i) {
        double yl = sample.values[static_cast<std::size_t>(i - 1)];
        s += yl * g(yl);
    }
    return -s / static_cast<double>(n);
}

double c1_analytic(const ModelSpec& spec) {
    ModelSpec null_spec = spec;
    null_spec.hypothesis = Hypothesis::null;
    return -expected_functional(null_spec, Functional::y_times_g);
}

EstimateReport modified_estimate_univariate(const SeriesSample& sample,
                                            const ModelSpec& spec,
                                            double rho_hat, double b_hat,
                                            double c1, C1Source c1_source,
                                            BiasSource b_source) {
    if (!std::isfinite(rho_hat) || !std::isfinite(c1)) {
        throw std::invalid_argument(
            "modified_estimate_univariate: rho_hat and c1 must be finite");
    }
    const double sqn = std::sqrt(static_cast<double>(sample.n()));
    EstimateReport rep;
    rep.rho_hat = rho_hat;
    rep.c1 = c1;
    rep.c1_source = c1_source;
    rep.b_hat = b_hat;
    rep.b_source = b_source;
    rep.d_n = -c1 * sqn * b_hat;
    rep.modified_component = 0;

    CentralSeqEval cs = central_seq(sample, rho_hat, spec);
    if (std::abs(cs.d1_scaled) < kDegeneracyTol) {
        rep.degenerate = true;
        rep.rho_bar = rho_hat;
    } else {
        rep.degenerate = false;
        rep.rho_bar = rep.d_n / cs.d1 + rho_hat;
    }
    return rep;
}

VectorModifiedEstimate modified_estimate_vector(
    const std::vector<double>& phi_hat, const std::vector<double>& gradient,
    double d_n, std::pair<int, int> block_sizes, int component) {
    const int dim = static_cast<int>(phi_hat.size());
    if (static_cast<int>(gradient.size()) != dim) {
        throw std::invalid_argument(
            "modified_estimate_vector: gradient/phi_hat size mismatch");
    }
    if (block_sizes.first + block_sizes.second != dim ||
        block_sizes.first < 0 || block_sizes.second < 0) {
        throw std::invalid_argument(
            "modified_estimate_vector: block sizes must sum to the dimension");
    }
    if (component < 0 || component >= dim) {
        throw std::invalid_argument(
            "modified_estimate_vector: component out of range");
    }
    double gc = gradient[static_cast<std::size_t>(component)];
    if (std::abs(gc) < kDegeneracyTol) {
        throw DegenerateComponentError(
            "modified_estimate_vector: gradient component " +
                std::to_string(component) + " below tolerance",
            component);
    }
    VectorModifiedEstimate out;
    out.phi_hat = phi_hat;
    out.phi_bar = phi_hat;
    out.gradient = gradient;
    out.component = component;
    out.block = component < block_sizes.first ? 0 : 1;
    out.phi_bar[static_cast<std::size_t>(component)] += d_n / gc;
    return out;
}

int max_gradient_component(const std::vector<double>& gradient) {
    if (gradient.empty()) {
        throw std::invalid_argument("max_gradient_component: empty gradient");
    }
    int best = 0;
    for (int i = 1; i < static_cast<int>(gradient.size()); ++i) {
        if (std::abs(gradient[static_cast<std::size_t>(i)]) >
            std::abs(gradient[static_cast<std::size_t>(best)])) {
            best = i;
        }
    }
    return best;
}

}  // namespace lanpower
