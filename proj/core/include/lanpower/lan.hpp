#pragma once

#include "lanpower/dist.hpp"
#include "lanpower/models.hpp"

namespace lanpower {

/// Evaluation of the central sequence V_n at a parameter point.
/// For ar1, V_n is affine in rho, so d2_scaled_bound is exactly 0 and
/// value(rho') = value(rho) + (rho' - rho) * d1 holds to machine precision.
struct CentralSeqEval {
    double value = 0.0;            // V_n(rho)
    double d1 = 0.0;               // dV_n/drho
    double d1_scaled = 0.0;        // d1 / sqrt(n)
    double d2_scaled_bound = 0.0;  // sup bound on |d2 V_n/drho2| / sqrt(n)
};

enum class Tau2Source { analytic, plugin };

/// Asymptotic variance tau^2 of the central sequence.
struct Tau2 {
    double value = 0.0;
    Tau2Source source = Tau2Source::analytic;
};

/// V_n(rho) = -(1/sqrt(n)) sum M_f(Y_i - rho Y_{i-1}) G(Y_{i-1}), with its
/// first derivative d1 = -(1/sqrt(n)) sum Y_{i-1} G(Y_{i-1}).
CentralSeqEval central_seq_ar1(const SeriesSample& sample, double rho,
                               const PerturbationSpec& g);

/// V_n(rho) = -(1/sqrt(n)) { sum M_f(e_i) G(Y_{i-1})
///                           + sum (1 + e_i M_f(e_i)) B(Y_{i-1}) }
/// with e_i = Y_i - rho Y_{i-1}; d1 is the analytic derivative in rho.
CentralSeqEval central_seq_arch(const SeriesSample& sample, double rho,
                                const PerturbationSpec& g,
                                const PerturbationSpec& b);

/// Family dispatch using spec.g / spec.b.
CentralSeqEval central_seq(const SeriesSample& sample, double rho,
                           const ModelSpec& spec);

/// ar1: I0 E[G^2]; arch: I0 E[G^2] + (I2-1)/4 E[B^2] + I1 E[G B],
/// with expectations under the null stationary law by quadrature.
Tau2 tau2_analytic(const ModelSpec& spec, const NoiseMoments& moments);

/// Plug-in variant: I_j estimated from the residuals e_i = Y_i - rho Y_{i-1}
/// as sample averages of e^j M_f(e)^2, expectations of G, B as sample
/// averages over Y_{i-1}. Throws InsufficientDataError for n < 10.
Tau2 tau2_plugin(const SeriesSample& sample, double rho, const ModelSpec& spec);

/// Log-likelihood ratio Lambda_n of the local alternative against the null
/// for the Gaussian ar1 family:
///   sum [ log f(Y_i - rho0 Y_{i-1} - n^{-1/2} G(Y_{i-1}))
///         - log f(Y_i - rho0 Y_{i-1}) ].
double log_likelihood_ratio(const SeriesSample& sample, const ModelSpec& spec);

}  // namespace lanpower
