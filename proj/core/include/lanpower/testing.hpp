#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lanpower/inference.hpp"
#include "lanpower/lan.hpp"
#include "lanpower/models.hpp"

namespace lanpower {

enum class Variant { true_param, lse, me };

const char* variant_name(Variant v);

/// One Neyman-Pearson decision: reject iff V_n(rho_used)/tau >= Z(alpha).
struct TestOutcome {
    double statistic = 0.0;
    double threshold = 0.0;
    bool reject = false;
    Variant variant = Variant::true_param;
    Tau2 tau2_used;
};

/// The indicator test with the closed decision region (>=).
/// Throws DegenerateTestError when tau2 <= 0.
TestOutcome np_test(const SeriesSample& sample, const ModelSpec& spec,
                    double rho_used, double alpha, const Tau2& tau2,
                    Variant variant);

/// 1 - Phi(Z(alpha) - tau^2), the power formula of the optimality theorem.
double asymptotic_power(double alpha, const Tau2& tau2);

/// Monte Carlo configuration for the power/size study.
struct PowerConfig {
    Family family = Family::ar1;
    double rho0 = 0.1;
    double coefficient = 5.0;  // G (and B, for arch) front coefficient
    std::vector<double> amplitude_grid;
    std::vector<int> n_list;
    int m = 1000;
    double alpha = 0.05;
    std::vector<Variant> variants{Variant::true_param, Variant::lse, Variant::me};
    BiasSource b_mode = BiasSource::oracle_true_rho;
    C1Source c1_mode = C1Source::empirical;
    int bootstrap_b = 500;
    std::uint64_t master_seed = 1;
    int burn_in = 500;

    /// 21 equispaced amplitudes on [0, 2].
    static std::vector<double> default_amplitude_grid();
};

struct PowerRow {
    Family family = Family::ar1;
    int n = 0;
    double a = 0.0;
    Variant variant = Variant::true_param;
    int m = 0;
    double rejection_rate = 0.0;
    double mc_stderr = 0.0;
    double asymptotic_power = 0.0;
    std::uint64_t seed = 0;
};

struct PowerCurve {
    std::vector<double> amplitude_grid;
    std::vector<PowerRow> rows;
    int m = 0;
    std::uint64_t master_seed = 0;
    long failed_replicates = 0;
};

/// Raised when more than 1% of replicates fail in any (n, a) cell; carries
/// the rows completed so far.
class ReplicateFailureError : public std::runtime_error {
public:
    ReplicateFailureError(const std::string& what, PowerCurve partial)
        : std::runtime_error(what), partial(std::move(partial)) {}
    PowerCurve partial;
};

/// For each (a, n): simulate m replicates under H1(n) (under H0 when a = 0)
/// and apply every requested variant to the same replicate, so curve
/// differences are paired. Replicate streams are derived from
/// (master_seed, n-index, a-index, replicate-index). Worker parallelism is
/// capped by the LANPOWER_THREADS environment variable.
///
/// For a = 0 the test direction G vanishes; the statistic V_n/tau is
/// invariant to the amplitude, so size rows evaluate the test at unit
/// amplitude while the data stay null.
PowerCurve power_study(const PowerConfig& config);

/// Canonical CSV serialization (%.10g, LF line endings):
/// family,n,a,variant,m,rejection_rate,mc_stderr,asymptotic_power,seed
std::string power_curve_csv(const PowerCurve& curve);

/// Run fn(i) for i in [0, count) on up to LANPOWER_THREADS workers (defaults
/// to the hardware count). fn must be safe to call concurrently.
void parallel_for(long count, const std::function<void(long)>& fn);

}  // namespace lanpower
