#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "config.hpp"
#include "lanpower/errors.hpp"
#include "lanpower/testing.hpp"
#include "svg.hpp"

namespace fs = std::filesystem;
using namespace lanpower;
using cli::ConfigError;
using cli::ExperimentConfig;

namespace {

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

int cmd_simulate(const std::string& family_s, double rho0, int n,
                 std::uint64_t seed, double a, double coef, double b_coef,
                 const std::string& hypothesis_s, int burn_in,
                 const std::string& output) {
    ModelSpec spec;
    spec.family = cli::parse_family(family_s);
    spec.rho0 = rho0;
    spec.n = n;
    spec.burn_in = burn_in;
    spec.g = PerturbationSpec{a, coef};
    if (spec.family == Family::arch) {
        spec.b = PerturbationSpec{a, b_coef};
    }
    if (hypothesis_s == "auto") {
        spec.hypothesis =
            a != 0.0 ? Hypothesis::local_alternative : Hypothesis::null;
    } else if (hypothesis_s == "null") {
        spec.hypothesis = Hypothesis::null;
    } else if (hypothesis_s == "alt") {
        spec.hypothesis = Hypothesis::local_alternative;
    } else {
        throw ConfigError("hypothesis must be auto, null or alt");
    }
    spec.validate();

    SeriesSample sample = simulate(spec, seed);

    std::string csv = "index,value\n";
    char buf[64];
    for (std::size_t i = 0; i < sample.values.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%zu,%.10g\n", i, sample.values[i]);
        csv += buf;
    }
    write_file(output, csv);

    const int len = static_cast<int>(sample.values.size());
    double mean = 0.0;
    for (double y : sample.values) mean += y;
    mean /= len;
    double var = 0.0, cov = 0.0;
    for (int i = 0; i < len; ++i) {
        double d = sample.values[static_cast<std::size_t>(i)] - mean;
        var += d * d;
        if (i > 0) {
            cov += d * (sample.values[static_cast<std::size_t>(i - 1)] - mean);
        }
    }
    var /= len;
    double ac1 = var > 0.0 ? (cov / (len - 1)) / var : 0.0;
    std::printf("wrote %s (%d values)\n", output.c_str(), len);
    std::printf("mean %.10g\nvariance %.10g\nlag1_autocorr %.10g\n", mean, var,
                ac1);
    return 0;
}

int cmd_power(const ExperimentConfig& cfg) {
    if (cfg.power.amplitude_grid.empty()) {
        throw ConfigError("amplitude grid is empty");
    }
    if (cfg.power.n_list.empty()) {
        throw ConfigError("n list is empty");
    }
    fs::create_directories(cfg.output_dir);
    const std::string csv_path =
        (fs::path(cfg.output_dir) / "power.csv").string();

    PowerCurve curve;
    try {
        curve = power_study(cfg.power);
    } catch (const ReplicateFailureError& e) {
        write_file(csv_path, power_curve_csv(e.partial));
        write_file(csv_path + ".failed", std::string(e.what()) + "\n");
        std::cerr << "power: aborted, " << e.what() << "\n";
        return 1;
    }
    write_file(csv_path, power_curve_csv(curve));
    std::printf("wrote %s (%zu rows", csv_path.c_str(), curve.rows.size());
    if (curve.failed_replicates > 0) {
        std::printf(", %ld failed replicates", curve.failed_replicates);
    }
    std::printf(")\n");

    if (cfg.plots) {
        double x_max = 0.0;
        for (double a : cfg.power.amplitude_grid) x_max = std::max(x_max, a);
        static const std::map<Variant, std::pair<std::string, std::string>>
            style = {{Variant::true_param, {"true parameter", "black"}},
                     {Variant::lse, {"LSE plug-in", "#1f77b4"}},
                     {Variant::me, {"modified estimate", "#d62728"}}};
        for (int n : cfg.power.n_list) {
            std::vector<cli::SvgCurve> curves;
            for (Variant v : cfg.power.variants) {
                cli::SvgCurve c;
                c.label = style.at(v).first;
                c.color = style.at(v).second;
                for (const PowerRow& row : curve.rows) {
                    if (row.n == n && row.variant == v) {
                        c.x.push_back(row.a);
                        c.y.push_back(row.rejection_rate);
                    }
                }
                curves.push_back(std::move(c));
            }
            cli::SvgCurve ref;
            ref.label = "asymptotic";
            ref.color = "#777777";
            ref.dashed = true;
            for (const PowerRow& row : curve.rows) {
                if (row.n == n && row.variant == cfg.power.variants.front()) {
                    ref.x.push_back(row.a);
                    ref.y.push_back(row.asymptotic_power);
                }
            }
            curves.push_back(std::move(ref));
            std::string path =
                (fs::path(cfg.output_dir) / ("power_n" + std::to_string(n) + ".svg"))
                    .string();
            write_file(path, cli::power_plot_svg("n = " + std::to_string(n),
                                                 curves, x_max));
            std::printf("wrote %s\n", path.c_str());
        }
    }
    return 0;
}

int cmd_diagnose(const ExperimentConfig& cfg) {
    double a = 1.0;
    for (double g : cfg.power.amplitude_grid) a = std::max(a, g);
    std::printf("family %s, rho0 %.10g, amplitude %.10g, coefficient %.10g, "
                "m %d\n",
                cfg.power.family == Family::ar1 ? "ar1" : "arch",
                cfg.power.rho0, a, cfg.power.coefficient, cfg.power.m);
    std::printf("%8s %14s %14s %18s %12s\n", "n", "c1_hat", "c1_se",
                "d2_bound/sqrt(n)", "degen_rate");
    for (std::size_t ni = 0; ni < cfg.power.n_list.size(); ++ni) {
        const int n = cfg.power.n_list[ni];
        ModelSpec spec;
        spec.family = cfg.power.family;
        spec.rho0 = cfg.power.rho0;
        spec.n = n;
        spec.burn_in = cfg.power.burn_in;
        spec.g = PerturbationSpec{a, cfg.power.coefficient};
        if (spec.family == Family::arch) {
            spec.b = PerturbationSpec{a, cfg.power.coefficient};
        }
        spec.hypothesis = Hypothesis::null;

        const int m = cfg.power.m;
        std::vector<double> c1s(static_cast<std::size_t>(m));
        std::vector<double> bounds(static_cast<std::size_t>(m));
        std::vector<std::uint8_t> degen(static_cast<std::size_t>(m));
        parallel_for(m, [&](long r) {
            GaussianStream rng(cfg.power.master_seed, 0xd1a6, ni,
                               static_cast<std::uint64_t>(r));
            SeriesSample sample = simulate(spec, rng);
            c1s[static_cast<std::size_t>(r)] = c1_empirical(sample, spec.g);
            CentralSeqEval cs = central_seq(sample, lse(sample), spec);
            bounds[static_cast<std::size_t>(r)] =
                cs.d2_scaled_bound / std::sqrt(static_cast<double>(n));
            degen[static_cast<std::size_t>(r)] =
                std::abs(cs.d1_scaled) < kDegeneracyTol ? 1 : 0;
        });
        double c1_mean = 0.0, bound_mean = 0.0;
        long ndeg = 0;
        for (int r = 0; r < m; ++r) {
            c1_mean += c1s[static_cast<std::size_t>(r)];
            bound_mean += bounds[static_cast<std::size_t>(r)];
            ndeg += degen[static_cast<std::size_t>(r)];
        }
        c1_mean /= m;
        bound_mean /= m;
        double c1_var = 0.0;
        for (int r = 0; r < m; ++r) {
            double d = c1s[static_cast<std::size_t>(r)] - c1_mean;
            c1_var += d * d;
        }
        double c1_se = m > 1 ? std::sqrt(c1_var / (m - 1) / m) : 0.0;
        std::printf("%8d %14.6g %14.6g %18.6g %12.4g\n", n, c1_mean, c1_se,
                    bound_mean, static_cast<double>(ndeg) / m);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"LAN-based Neyman-Pearson tests for AR(1)/ARCH models"};
    app.require_subcommand(1);

    // simulate
    auto* sim = app.add_subcommand("simulate", "simulate one trajectory");
    std::string sim_family = "ar1", sim_hyp = "auto", sim_out = "series.csv";
    double sim_rho0 = 0.0, sim_a = 0.0, sim_coef = 5.0, sim_bcoef = -1.0;
    int sim_n = 0, sim_burn = 500;
    std::uint64_t sim_seed = 1;
    sim->add_option("--family", sim_family, "ar1 or arch");
    sim->add_option("--rho0", sim_rho0, "AR coefficient, |rho0| < 1");
    sim->add_option("--n", sim_n, "sample size")->required();
    sim->add_option("--seed", sim_seed, "RNG seed");
    sim->add_option("--a", sim_a, "perturbation amplitude");
    sim->add_option("--coef", sim_coef, "G coefficient");
    sim->add_option("--b-coef", sim_bcoef, "B coefficient (arch; default --coef)");
    sim->add_option("--hypothesis", sim_hyp, "auto, null or alt");
    sim->add_option("--burn-in", sim_burn, "burn-in steps");
    sim->add_option("-o,--output", sim_out, "output CSV path");

    // shared config handling for power / diagnose
    auto add_experiment_flags = [](CLI::App* cmd, std::string& config_path,
                                   std::string& fig,
                                   std::vector<std::string>& sets,
                                   std::string& out_dir, bool& plots) {
        cmd->add_option("config", config_path, "flat key=value config file");
        cmd->add_option("--paper-figure", fig, "preset: ar1 or arch");
        cmd->add_option("--set", sets,
                        "override a config key, e.g. --set m=200");
        cmd->add_option("-o,--output-dir", out_dir, "output directory");
        cmd->add_flag("--plots", plots, "emit one SVG per n");
    };

    auto* pow = app.add_subcommand("power", "Monte Carlo power/size study");
    std::string pow_config, pow_fig, pow_out;
    std::vector<std::string> pow_sets;
    bool pow_plots = false;
    add_experiment_flags(pow, pow_config, pow_fig, pow_sets, pow_out, pow_plots);

    auto* diag =
        app.add_subcommand("diagnose", "condition diagnostics (c1, d2 bound)");
    std::string diag_config, diag_fig, diag_out;
    std::vector<std::string> diag_sets;
    bool diag_plots = false;
    add_experiment_flags(diag, diag_config, diag_fig, diag_sets, diag_out,
                         diag_plots);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    auto build_config = [](const std::string& config_path,
                           const std::string& fig,
                           const std::vector<std::string>& sets,
                           const std::string& out_dir, bool plots) {
        ExperimentConfig cfg =
            cli::preset(fig.empty() ? std::string("ar1") : fig);
        if (!config_path.empty()) cli::load_config_file(cfg, config_path);
        for (const std::string& kv : sets) {
            auto eq = kv.find('=');
            if (eq == std::string::npos) {
                throw ConfigError("--set expects key=value, got: " + kv);
            }
            cli::apply_key(cfg, kv.substr(0, eq), kv.substr(eq + 1));
        }
        if (!out_dir.empty()) cfg.output_dir = out_dir;
        if (plots) cfg.plots = true;
        return cfg;
    };

    try {
        if (sim->parsed()) {
            if (sim_bcoef < 0.0) sim_bcoef = sim_coef;
            return cmd_simulate(sim_family, sim_rho0, sim_n, sim_seed, sim_a,
                                sim_coef, sim_bcoef, sim_hyp, sim_burn, sim_out);
        }
        if (pow->parsed()) {
            return cmd_power(
                build_config(pow_config, pow_fig, pow_sets, pow_out, pow_plots));
        }
        if (diag->parsed()) {
            return cmd_diagnose(build_config(diag_config, diag_fig, diag_sets,
                                             diag_out, diag_plots));
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
