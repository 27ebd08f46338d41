#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "lanpower/lan.hpp"
#include "lanpower/models.hpp"

namespace lanpower {

enum class C1Source { analytic, empirical };
enum class BiasSource { oracle_true_rho, bootstrap };

/// Gradient components below this magnitude are treated as degenerate; the
/// modified estimate then falls back to the base estimate.
inline constexpr double kDegeneracyTol = 1e-8;

/// Modified-estimator report for the univariate AR(1)/ARCH case.
struct EstimateReport {
    double rho_hat = 0.0;
    double c1 = 0.0;
    C1Source c1_source = C1Source::empirical;
    double b_hat = 0.0;
    BiasSource b_source = BiasSource::oracle_true_rho;
    double d_n = 0.0;
    double rho_bar = 0.0;
    int modified_component = 0;  // j_n; always 0 in the univariate case
    bool degenerate = false;
};

/// Vector-parameter modified estimate differing from phi_hat in exactly one
/// coordinate, chosen so gradient . (phi_bar - phi_hat) = d_n.
struct VectorModifiedEstimate {
    std::vector<double> phi_hat;
    std::vector<double> phi_bar;
    std::vector<double> gradient;
    int block = 0;      // 0: first (rho) block, 1: second (theta) block
    int component = 0;  // modified coordinate, 0-based
};

/// Least-squares estimate sum Y_i Y_{i-1} / sum Y_{i-1}^2.
/// Throws DegenerateDesignError when all lagged values are zero.
double lse(const SeriesSample& sample);

/// e_i = Y_i - rho Y_{i-1}, i = 1..n.
std::vector<double> residuals(const SeriesSample& sample, double rho);

/// Efron residual bootstrap of b_n = rho_hat - rho0: center the LSE
/// residuals, resample with replacement, regenerate series from the observed
/// Y_0 with rho_hat, re-estimate; returns the mean of rho*_b - rho_hat.
/// Deterministic given the seed. Requires B >= 100.
double bootstrap_bias(const SeriesSample& sample, int num_replicates,
                      std::uint64_t seed);

/// Ergodic estimate of c1 = -E[Y_0 G(Y_0)]: -(1/n) sum Y_{i-1} G(Y_{i-1}).
/// Equals the ar1 d1_scaled at any rho.
double c1_empirical(const SeriesSample& sample, const PerturbationSpec& g);

/// Quadrature c1 = -E[Y G(Y)] under the null stationary law (zero for the
/// symmetric reciprocal-quadratic G).
double c1_analytic(const ModelSpec& spec);

/// The univariate modified estimate: D_n = -c1 sqrt(n) b_hat and
/// rho_bar = D_n / d1(rho_hat) + rho_hat when |d1_scaled| is above
/// kDegeneracyTol, else rho_bar = rho_hat with the degenerate flag set.
EstimateReport modified_estimate_univariate(
    const SeriesSample& sample, const ModelSpec& spec, double rho_hat,
    double b_hat, double c1, C1Source c1_source = C1Source::empirical,
    BiasSource b_source = BiasSource::oracle_true_rho);

/// The general vector construction: perturb phi_hat in one component by
/// d_n / gradient[component]. block_sizes = (l, p) split the parameter into
/// the rho block (first l) and the theta block (last p).
/// Throws DegenerateComponentError naming the index when the gradient
/// component is below tolerance.
VectorModifiedEstimate modified_estimate_vector(
    const std::vector<double>& phi_hat, const std::vector<double>& gradient,
    double d_n, std::pair<int, int> block_sizes, int component);

/// Helper: index of the largest-magnitude gradient component (plumbing; the
/// choice of j_n is otherwise up to the caller).
int max_gradient_component(const std::vector<double>& gradient);

}  // namespace lanpower
