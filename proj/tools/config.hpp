#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "lanpower/testing.hpp"

namespace lanpower::cli {

class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Everything power_study consumes plus output paths and plot toggles.
struct ExperimentConfig {
    PowerConfig power;
    std::string output_dir = ".";
    bool plots = false;
};

inline Family parse_family(const std::string& s) {
    if (s == "ar1") return Family::ar1;
    if (s == "arch") return Family::arch;
    throw ConfigError("unknown family: " + s);
}

inline Variant parse_variant(const std::string& s) {
    if (s == "true_param") return Variant::true_param;
    if (s == "lse") return Variant::lse;
    if (s == "me") return Variant::me;
    throw ConfigError("unknown variant: " + s);
}

inline std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) out.push_back(tok);
    }
    return out;
}

inline double parse_double(const std::string& s) {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw ConfigError("bad number: " + s);
    return v;
}

inline long parse_long(const std::string& s) {
    std::size_t pos = 0;
    long v = std::stol(s, &pos);
    if (pos != s.size()) throw ConfigError("bad integer: " + s);
    return v;
}

/// The section 4 experiment presets.
inline ExperimentConfig preset(const std::string& name) {
    ExperimentConfig cfg;
    cfg.power.rho0 = 0.1;
    cfg.power.alpha = 0.05;
    cfg.power.m = 1000;
    cfg.power.amplitude_grid = PowerConfig::default_amplitude_grid();
    if (name == "ar1") {
        cfg.power.family = Family::ar1;
        cfg.power.coefficient = 5.0;
        cfg.power.n_list = {30, 40, 80, 400};
    } else if (name == "arch") {
        cfg.power.family = Family::arch;
        cfg.power.coefficient = 3.5;  // G = B
        cfg.power.n_list = {30, 40, 80, 200};
    } else {
        throw ConfigError("unknown preset: " + name);
    }
    return cfg;
}

/// Apply one key=value pair; unknown keys are rejected.
inline void apply_key(ExperimentConfig& cfg, const std::string& key,
                      const std::string& value) {
    PowerConfig& p = cfg.power;
    if (key == "family") {
        p.family = parse_family(value);
    } else if (key == "rho0") {
        p.rho0 = parse_double(value);
    } else if (key == "coefficient") {
        p.coefficient = parse_double(value);
    } else if (key == "alpha") {
        p.alpha = parse_double(value);
    } else if (key == "m") {
        p.m = static_cast<int>(parse_long(value));
    } else if (key == "n_list") {
        p.n_list.clear();
        for (const auto& tok : split_csv(value)) {
            p.n_list.push_back(static_cast<int>(parse_long(tok)));
        }
    } else if (key == "amplitude_grid") {
        p.amplitude_grid.clear();
        for (const auto& tok : split_csv(value)) {
            p.amplitude_grid.push_back(parse_double(tok));
        }
    } else if (key == "variants") {
        p.variants.clear();
        for (const auto& tok : split_csv(value)) {
            p.variants.push_back(parse_variant(tok));
        }
    } else if (key == "b_mode") {
        if (value == "oracle") {
            p.b_mode = BiasSource::oracle_true_rho;
        } else if (value == "bootstrap") {
            p.b_mode = BiasSource::bootstrap;
        } else {
            throw ConfigError("b_mode must be oracle or bootstrap");
        }
    } else if (key == "c1_mode") {
        if (value == "analytic") {
            p.c1_mode = C1Source::analytic;
        } else if (value == "empirical") {
            p.c1_mode = C1Source::empirical;
        } else {
            throw ConfigError("c1_mode must be analytic or empirical");
        }
    } else if (key == "bootstrap_b") {
        p.bootstrap_b = static_cast<int>(parse_long(value));
    } else if (key == "master_seed") {
        p.master_seed = static_cast<std::uint64_t>(parse_long(value));
    } else if (key == "burn_in") {
        p.burn_in = static_cast<int>(parse_long(value));
    } else if (key == "output_dir") {
        cfg.output_dir = value;
    } else if (key == "plots") {
        if (value == "true" || value == "1") {
            cfg.plots = true;
        } else if (value == "false" || value == "0") {
            cfg.plots = false;
        } else {
            throw ConfigError("plots must be true or false");
        }
    } else {
        throw ConfigError("unknown config key: " + key);
    }
}

/// Flat key=value text; '#' starts a comment, blank lines ignored.
inline void load_config_file(ExperimentConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        auto last = line.find_last_not_of(" \t\r");
        line = line.substr(first, last - first + 1);
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(path + ":" + std::to_string(lineno) +
                              ": expected key=value");
        }
        auto strip = [](std::string s) {
            auto b = s.find_first_not_of(" \t");
            auto e = s.find_last_not_of(" \t");
            return b == std::string::npos ? std::string()
                                          : s.substr(b, e - b + 1);
        };
        apply_key(cfg, strip(line.substr(0, eq)), strip(line.substr(eq + 1)));
    }
}

}  // namespace lanpower::cli
