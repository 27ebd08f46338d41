#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "lanpower/rng.hpp"

namespace lanpower {

enum class Family { ar1, arch };
enum class Hypothesis { null, local_alternative };

/// Bounded perturbation of the reciprocal-quadratic kind,
/// G(y) = coefficient * a / (1 + y^2), so |G| <= coefficient * |a|.
struct PerturbationSpec {
    double amplitude_a = 0.0;
    double coefficient = 0.0;

    double operator()(double y) const {
        return coefficient * amplitude_a / (1.0 + y * y);
    }
    double bound() const;
};

/// An AR(1)-contiguous or ARCH-contiguous process:
///   ar1:  Y_i = rho0 Y_{i-1} + alpha G(Y_{i-1}) + eps_i
///   arch: Y_i = rho0 Y_{i-1} + alpha G(Y_{i-1})
///                + sqrt(1 + beta B(Y_{i-1})) eps_i
/// with alpha = beta = 0 under the null and n^{-1/2} under the local
/// alternative, eps_i iid N(0,1).
struct ModelSpec {
    Family family = Family::ar1;
    double rho0 = 0.0;
    PerturbationSpec g;
    std::optional<PerturbationSpec> b;  // arch only
    Hypothesis hypothesis = Hypothesis::null;
    int n = 0;
    int burn_in = 500;

    /// Throws std::invalid_argument on |rho0| >= 1, n < 1, a missing/invalid
    /// arch B-spec, or an arch alternative whose variance can reach zero.
    void validate() const;
};

/// One simulated trajectory Y_0..Y_n.
struct SeriesSample {
    std::vector<double> values;
    int burn_in = 0;
    std::uint64_t seed = 0;

    int n() const { return static_cast<int>(values.size()) - 1; }
};

/// Simulate the recursion with iid standard-normal innovations, discarding
/// burn_in initial steps started from Y = 0. Deterministic given the stream.
/// Throws SimulationError naming the step if the arch conditional variance
/// is non-positive.
SeriesSample simulate(const ModelSpec& spec, GaussianStream& rng);
SeriesSample simulate(const ModelSpec& spec, std::uint64_t seed);

/// 1/(1 - rho0^2), the stationary variance of the null AR(1) law.
/// Throws std::invalid_argument for an arch or non-null spec.
double stationary_variance(const ModelSpec& spec);

enum class Functional { g_squared, b_squared, g_times_b, y_times_g };

/// E[functional(Y)] under the null stationary law Y ~ N(0, 1/(1-rho0^2)),
/// by adaptive quadrature to absolute tolerance 1e-8. Both families share
/// that null law (alpha = beta = 0 reduces arch to the same AR(1)).
/// Throws std::invalid_argument for a non-null spec, NumericError on
/// quadrature non-convergence.
double expected_functional(const ModelSpec& spec, Functional functional);

}  // namespace lanpower
