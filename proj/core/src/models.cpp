#include "lanpower/models.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

#include "lanpower/errors.hpp"

namespace lanpower {

double PerturbationSpec::bound() const {
    return std::abs(coefficient * amplitude_a);
}

void ModelSpec::validate() const {
    if (!(std::abs(rho0) < 1.0)) {
        throw std::invalid_argument("ModelSpec: stationarity requires |rho0| < 1");
    }
    if (n < 1) {
        throw std::invalid_argument("ModelSpec: n must be positive");
    }
    if (burn_in < 0) {
        throw std::invalid_argument("ModelSpec: burn_in must be nonnegative");
    }
    if (family == Family::arch) {
        if (!b.has_value()) {
            throw std::invalid_argument("ModelSpec: arch requires a B perturbation");
        }
        if (hypothesis == Hypothesis::local_alternative) {
            // 1 + n^{-1/2} B(y) > 0 for all y since |B| <= bound.
            if (b->bound() / std::sqrt(static_cast<double>(n)) >= 1.0) {
                throw std::invalid_argument(
                    "ModelSpec: arch variance positivity fails, need "
                    "coefficient*|a|/sqrt(n) < 1");
            }
        }
    }
}

SeriesSample simulate(const ModelSpec& spec, GaussianStream& rng) {
    spec.validate();
    const bool alt = spec.hypothesis == Hypothesis::local_alternative;
    const double delta = alt ? 1.0 / std::sqrt(static_cast<double>(spec.n)) : 0.0;
    const bool arch = spec.family == Family::arch;

    auto step = [&](double y, double eps, long index) {
        double next = spec.rho0 * y;
        if (alt) {
            next += delta * spec.g(y);
            if (arch) {
                double v = 1.0 + delta * (*spec.b)(y);
                if (v <= 0.0) {
                    throw SimulationError(
                        "simulate: conditional variance non-positive at step " +
                        std::to_string(index));
                }
                // Exact scale; the paper's large-n form 1 + delta*B/2 is an
                // approximation of this.
                return next + std::sqrt(v) * eps;
            }
        }
        return next + eps;
    };

    double y = 0.0;
    for (int i = 0; i < spec.burn_in; ++i) {
        y = step(y, rng.normal(), i - spec.burn_in);
    }
    SeriesSample out;
    out.burn_in = spec.burn_in;
    out.seed = rng.id();
    out.values.resize(static_cast<std::size_t>(spec.n) + 1);
    out.values[0] = y;
    for (int i = 1; i <= spec.n; ++i) {
        y = step(y, rng.normal(), i);
        out.values[static_cast<std::size_t>(i)] = y;
    }
    return out;
}

SeriesSample simulate(const ModelSpec& spec, std::uint64_t seed) {
    GaussianStream rng(seed);
    return simulate(spec, rng);
}

double stationary_variance(const ModelSpec& spec) {
    if (spec.family != Family::ar1 || spec.hypothesis != Hypothesis::null) {
        throw std::invalid_argument(
            "stationary_variance: defined for the null ar1 law only");
    }
    return 1.0 / (1.0 - spec.rho0 * spec.rho0);
}

namespace {

// Recursive adaptive Simpson with absolute tolerance.
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double fa, double fm, double fb, double whole,
                        double tol, int depth) {
    if (depth > 60) {
        throw NumericError("expected_functional: quadrature failed to converge");
    }
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol) {
    double m = 0.5 * (a + b);
    double fa = f(a), fm = f(m), fb = f(b);
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 0);
}

}  // namespace

double expected_functional(const ModelSpec& spec, Functional functional) {
    if (spec.hypothesis != Hypothesis::null) {
        throw std::invalid_argument(
            "expected_functional: requires the null stationary law");
    }
    spec.validate();
    const double var = 1.0 / (1.0 - spec.rho0 * spec.rho0);
    const double sigma = std::sqrt(var);

    auto h = [&](double y) -> double {
        switch (functional) {
            case Functional::g_squared: {
                double g = spec.g(y);
                return g * g;
            }
            case Functional::b_squared: {
                if (!spec.b) {
                    throw std::invalid_argument(
                        "expected_functional: spec has no B perturbation");
                }
                double b = (*spec.b)(y);
                return b * b;
            }
            case Functional::g_times_b: {
                if (!spec.b) {
                    throw std::invalid_argument(
                        "expected_functional: spec has no B perturbation");
                }
                return spec.g(y) * (*spec.b)(y);
            }
            case Functional::y_times_g:
                return y * spec.g(y);
        }
        return 0.0;
    };

    const double inv_norm = 1.0 / (sigma * 2.5066282746310005024);
    auto integrand = [&](double y) {
        return h(y) * inv_norm * std::exp(-0.5 * y * y / var);
    };
    // Tails beyond 12 sigma are below 1e-30 of the mass; integrand is bounded.
    return integrate(integrand, -12.0 * sigma, 12.0 * sigma, 1e-8);
}

}  // namespace lanpower
