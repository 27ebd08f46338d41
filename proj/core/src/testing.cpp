#include "lanpower/testing.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "lanpower/dist.hpp"
#include "lanpower/errors.hpp"

namespace lanpower {

const char* variant_name(Variant v) {
    switch (v) {
        case Variant::true_param: return "true_param";
        case Variant::lse: return "lse";
        case Variant::me: return "me";
    }
    return "?";
}

TestOutcome np_test(const SeriesSample& sample, const ModelSpec& spec,
                    double rho_used, double alpha, const Tau2& tau2,
                    Variant variant) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw std::invalid_argument("np_test: alpha must lie in (0,1)");
    }
    if (!(tau2.value > 0.0)) {
        throw DegenerateTestError("np_test: tau2 must be positive");
    }
    TestOutcome out;
    out.variant = variant;
    out.tau2_used = tau2;
    out.statistic = central_seq(sample, rho_used, spec).value / std::sqrt(tau2.value);
    out.threshold = normal_quantile(alpha);
    out.reject = out.statistic >= out.threshold;
    return out;
}

double asymptotic_power(double alpha, const Tau2& tau2) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw std::invalid_argument("asymptotic_power: alpha must lie in (0,1)");
    }
    if (tau2.value < 0.0) {
        throw std::invalid_argument("asymptotic_power: tau2 must be >= 0");
    }
    return 1.0 - normal_cdf(normal_quantile(alpha) - tau2.value);
}

std::vector<double> PowerConfig::default_amplitude_grid() {
    std::vector<double> grid(21);
    for (int i = 0; i < 21; ++i) grid[static_cast<std::size_t>(i)] = 0.1 * i;
    return grid;
}

void parallel_for(long count, const std::function<void(long)>& fn) {
    unsigned workers = std::thread::hardware_concurrency();
    if (workers == 0) workers = 1;
    if (const char* env = std::getenv("LANPOWER_THREADS")) {
        long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1 && static_cast<unsigned long>(cap) < workers) {
            workers = static_cast<unsigned>(cap);
        }
    }
    if (count < static_cast<long>(workers)) {
        workers = count > 0 ? static_cast<unsigned>(count) : 1;
    }
    if (workers <= 1) {
        for (long i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<long> next{0};
    std::exception_ptr error;
    std::mutex error_mu;
    auto body = [&] {
        for (;;) {
            long i = next.fetch_add(1);
            if (i >= count) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mu);
                if (!error) error = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(body);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

namespace {

ModelSpec make_spec(const PowerConfig& cfg, int n, double a, Hypothesis hyp) {
    ModelSpec spec;
    spec.family = cfg.family;
    spec.rho0 = cfg.rho0;
    spec.g = PerturbationSpec{a, cfg.coefficient};
    if (cfg.family == Family::arch) {
        spec.b = PerturbationSpec{a, cfg.coefficient};  // G = B
    }
    spec.hypothesis = hyp;
    spec.n = n;
    spec.burn_in = cfg.burn_in;
    return spec;
}

}  // namespace

PowerCurve power_study(const PowerConfig& cfg) {
    if (cfg.m < 1) throw std::invalid_argument("power_study: m must be >= 1");
    if (cfg.amplitude_grid.empty() || cfg.n_list.empty()) {
        throw std::invalid_argument("power_study: grids must be nonempty");
    }
    if (cfg.variants.empty()) {
        throw std::invalid_argument("power_study: no variants requested");
    }

    PowerCurve curve;
    curve.amplitude_grid = cfg.amplitude_grid;
    curve.m = cfg.m;
    curve.master_seed = cfg.master_seed;

    const NoiseMoments moments = gaussian_noise_moments();
    const int num_variants = static_cast<int>(cfg.variants.size());

    for (std::size_t ni = 0; ni < cfg.n_list.size(); ++ni) {
        const int n = cfg.n_list[ni];
        for (std::size_t ai = 0; ai < cfg.amplitude_grid.size(); ++ai) {
            const double a = cfg.amplitude_grid[ai];
            // a = 0 means null data; the test statistic is evaluated at unit
            // amplitude since V_n/tau is amplitude-invariant.
            const double a_test = a == 0.0 ? 1.0 : a;
            const ModelSpec sim_spec = make_spec(
                cfg, n, a,
                a == 0.0 ? Hypothesis::null : Hypothesis::local_alternative);
            const ModelSpec test_spec =
                make_spec(cfg, n, a_test, Hypothesis::null);
            const Tau2 tau2_an = tau2_analytic(test_spec, moments);
            const Tau2 tau2_row =
                tau2_analytic(make_spec(cfg, n, a, Hypothesis::null), moments);
            const double c1_an = cfg.c1_mode == C1Source::analytic
                                     ? c1_analytic(test_spec)
                                     : 0.0;

            std::vector<std::uint8_t> rejects(
                static_cast<std::size_t>(cfg.m * num_variants), 0);
            std::vector<std::uint8_t> failed(static_cast<std::size_t>(cfg.m), 0);

            parallel_for(cfg.m, [&](long r) {
                GaussianStream rng(cfg.master_seed, ni, ai,
                                   static_cast<std::uint64_t>(r));
                try {
                    SeriesSample sample = simulate(sim_spec, rng);
                    double rho_hat = 0.0;
                    bool have_lse = false;
                    for (int v = 0; v < num_variants; ++v) {
                        Variant variant = cfg.variants[static_cast<std::size_t>(v)];
                        TestOutcome out;
                        switch (variant) {
                            case Variant::true_param:
                                out = np_test(sample, test_spec, cfg.rho0,
                                              cfg.alpha, tau2_an, variant);
                                break;
                            case Variant::lse: {
                                if (!have_lse) {
                                    rho_hat = lse(sample);
                                    have_lse = true;
                                }
                                Tau2 t2 = tau2_plugin(sample, rho_hat, test_spec);
                                out = np_test(sample, test_spec, rho_hat,
                                              cfg.alpha, t2, variant);
                                break;
                            }
                            case Variant::me: {
                                if (!have_lse) {
                                    rho_hat = lse(sample);
                                    have_lse = true;
                                }
                                double b_hat =
                                    cfg.b_mode == BiasSource::oracle_true_rho
                                        ? rho_hat - cfg.rho0
                                        : bootstrap_bias(sample, cfg.bootstrap_b,
                                                         rng.draw_seed());
                                double c1 = cfg.c1_mode == C1Source::empirical
                                                ? c1_empirical(sample, test_spec.g)
                                                : c1_an;
                                EstimateReport rep = modified_estimate_univariate(
                                    sample, test_spec, rho_hat, b_hat, c1,
                                    cfg.c1_mode, cfg.b_mode);
                                Tau2 t2 =
                                    tau2_plugin(sample, rep.rho_bar, test_spec);
                                out = np_test(sample, test_spec, rep.rho_bar,
                                              cfg.alpha, t2, variant);
                                break;
                            }
                        }
                        rejects[static_cast<std::size_t>(r * num_variants + v)] =
                            out.reject ? 1 : 0;
                    }
                } catch (const std::exception&) {
                    failed[static_cast<std::size_t>(r)] = 1;
                }
            });

            long cell_failures = 0;
            for (long r = 0; r < cfg.m; ++r) {
                cell_failures += failed[static_cast<std::size_t>(r)];
            }
            curve.failed_replicates += cell_failures;

            const double ref_power = asymptotic_power(cfg.alpha, tau2_row);
            for (int v = 0; v < num_variants; ++v) {
                long nrej = 0, nok = 0;
                for (long r = 0; r < cfg.m; ++r) {
                    if (failed[static_cast<std::size_t>(r)]) continue;
                    ++nok;
                    nrej += rejects[static_cast<std::size_t>(r * num_variants + v)];
                }
                PowerRow row;
                row.family = cfg.family;
                row.n = n;
                row.a = a;
                row.variant = cfg.variants[static_cast<std::size_t>(v)];
                row.m = static_cast<int>(nok);
                double p = nok > 0 ? static_cast<double>(nrej) /
                                         static_cast<double>(nok)
                                   : 0.0;
                row.rejection_rate = p;
                row.mc_stderr =
                    nok > 0 ? std::sqrt(p * (1.0 - p) / static_cast<double>(nok))
                            : 0.0;
                row.asymptotic_power = ref_power;
                row.seed = cfg.master_seed;
                curve.rows.push_back(row);
            }

            if (cell_failures > cfg.m / 100) {
                char buf[128];
                std::snprintf(buf, sizeof(buf),
                              "power_study: %ld of %d replicates failed at "
                              "n=%d a=%g",
                              cell_failures, cfg.m, n, a);
                throw ReplicateFailureError(buf, curve);
            }
        }
    }
    return curve;
}

std::string power_curve_csv(const PowerCurve& curve) {
    std::string out =
        "family,n,a,variant,m,rejection_rate,mc_stderr,asymptotic_power,seed\n";
    char buf[256];
    for (const PowerRow& row : curve.rows) {
        std::snprintf(buf, sizeof(buf), "%s,%d,%.10g,%s,%d,%.10g,%.10g,%.10g,%llu\n",
                      row.family == Family::ar1 ? "ar1" : "arch", row.n, row.a,
                      variant_name(row.variant), row.m, row.rejection_rate,
                      row.mc_stderr, row.asymptotic_power,
                      static_cast<unsigned long long>(row.seed));
        out += buf;
    }
    return out;
}

}  // namespace lanpower
