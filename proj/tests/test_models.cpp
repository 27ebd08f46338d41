#include <cmath>
#include <vector>

#include "doctest.h"
#include "lanpower/errors.hpp"
#include "lanpower/models.hpp"
#include "support.hpp"

using namespace lanpower;

namespace {

ModelSpec ar1_spec(double rho0, Hypothesis hyp, int n, double a = 0.0,
                   double coef = 5.0) {
    ModelSpec spec;
    spec.family = Family::ar1;
    spec.rho0 = rho0;
    spec.g = PerturbationSpec{a, coef};
    spec.hypothesis = hyp;
    spec.n = n;
    return spec;
}

}  // namespace

TEST_CASE("ModelSpec validation") {
    CHECK_THROWS_AS(ar1_spec(1.0, Hypothesis::null, 10).validate(),
                    std::invalid_argument);
    CHECK_THROWS_AS(ar1_spec(-1.2, Hypothesis::null, 10).validate(),
                    std::invalid_argument);
    CHECK_THROWS_AS(ar1_spec(0.1, Hypothesis::null, 0).validate(),
                    std::invalid_argument);
    ModelSpec arch = ar1_spec(0.1, Hypothesis::local_alternative, 4, 1.0, 3.5);
    arch.family = Family::arch;
    CHECK_THROWS_AS(arch.validate(), std::invalid_argument);  // missing B
    arch.b = PerturbationSpec{1.0, 3.5};
    // 3.5/sqrt(4) = 1.75 >= 1: the variance can reach zero
    CHECK_THROWS_AS(arch.validate(), std::invalid_argument);
    arch.n = 30;  // 3.5/sqrt(30) < 1
    CHECK_NOTHROW(arch.validate());
}

TEST_CASE("simulate: rho0 = 0 null series is iid N(0,1)") {
    ModelSpec spec = ar1_spec(0.0, Hypothesis::null, 100000);
    SeriesSample s = simulate(spec, 11);
    std::vector<double> sq;
    sq.reserve(s.values.size());
    for (double y : s.values) sq.push_back(y * y);
    // Var(Y^2) = 2 for a standard normal, so se(mean) = sqrt(2/n).
    double se = std::sqrt(2.0 / static_cast<double>(sq.size()));
    CHECK(std::abs(support::mean(sq) - 1.0) < 4.0 * se);
}

TEST_CASE("simulate: lag-1 autocorrelation matches rho0 on a long null run") {
    ModelSpec spec = ar1_spec(0.1, Hypothesis::null, 100000);
    SeriesSample s = simulate(spec, 5);
    const int n = s.n();
    double mu = support::mean(s.values);
    double num = 0.0, den = 0.0;
    for (int i = 0; i <= n; ++i) {
        double d = s.values[static_cast<std::size_t>(i)] - mu;
        den += d * d;
        if (i > 0) num += d * (s.values[static_cast<std::size_t>(i - 1)] - mu);
    }
    double ac1 = num / den;
    double se = 1.0 / std::sqrt(static_cast<double>(n));
    CHECK(std::abs(ac1 - 0.1) < 4.0 * se);
}

TEST_CASE("simulate: alternative run reproduces the recursion step by step") {
    // Oracle: replay the generator and the recursion independently.
    ModelSpec spec = ar1_spec(0.1, Hypothesis::local_alternative, 400, 1.0, 5.0);
    const std::uint64_t seed = 77;
    SeriesSample s = simulate(spec, seed);

    GaussianStream rng(seed);
    const double delta = 1.0 / std::sqrt(400.0);
    double y = 0.0;
    for (int i = 0; i < spec.burn_in; ++i) {
        y = spec.rho0 * y + delta * spec.g(y) + rng.normal();
    }
    CHECK(s.values[0] == y);
    for (int i = 1; i <= spec.n; ++i) {
        y = spec.rho0 * y + delta * spec.g(y) + rng.normal();
        CHECK(s.values[static_cast<std::size_t>(i)] == y);
    }
}

TEST_CASE("simulate: determinism") {
    ModelSpec spec = ar1_spec(0.3, Hypothesis::local_alternative, 200, 0.7);
    SeriesSample a = simulate(spec, 123);
    SeriesSample b = simulate(spec, 123);
    CHECK(a.values == b.values);
}

TEST_CASE("simulate: contiguity scaling of the null/alternative offset") {
    // Shared seed, same innovations: the trajectory offset shrinks when n
    // quadruples (rate n^{-1/2}).
    auto max_offset = [](int n) {
        ModelSpec null_spec = ar1_spec(0.1, Hypothesis::null, n, 1.0);
        ModelSpec alt_spec = ar1_spec(0.1, Hypothesis::local_alternative, n, 1.0);
        SeriesSample y0 = simulate(null_spec, 99);
        SeriesSample y1 = simulate(alt_spec, 99);
        double worst = 0.0;
        for (std::size_t i = 0; i < y0.values.size(); ++i) {
            worst = std::max(worst, std::abs(y1.values[i] - y0.values[i]));
        }
        return worst;
    };
    CHECK(max_offset(1600) <= 0.6 * max_offset(400));
}

TEST_CASE("simulate: arch variance positivity failure is reported") {
    ModelSpec spec;
    spec.family = Family::arch;
    spec.rho0 = 0.1;
    spec.n = 4;
    spec.g = PerturbationSpec{-1.0, 3.5};
    spec.b = PerturbationSpec{-1.0, 3.5};  // 1 + delta*B(0) < 0 reachable
    spec.hypothesis = Hypothesis::local_alternative;
    CHECK_THROWS_AS(simulate(spec, 1), std::invalid_argument);
}

TEST_CASE("simulate: arch alternative runs when positivity holds") {
    ModelSpec spec;
    spec.family = Family::arch;
    spec.rho0 = 0.1;
    spec.n = 30;
    spec.g = PerturbationSpec{1.0, 3.5};
    spec.b = PerturbationSpec{1.0, 3.5};
    spec.hypothesis = Hypothesis::local_alternative;
    SeriesSample s = simulate(spec, 3);
    CHECK(s.n() == 30);
    for (double y : s.values) CHECK(std::isfinite(y));
}

TEST_CASE("stationary_variance closed form") {
    CHECK(stationary_variance(ar1_spec(0.0, Hypothesis::null, 10)) == 1.0);
    CHECK(stationary_variance(ar1_spec(0.1, Hypothesis::null, 10)) ==
          doctest::Approx(1.0 / 0.99).epsilon(1e-14));
    CHECK(stationary_variance(ar1_spec(0.9, Hypothesis::null, 10)) ==
          doctest::Approx(1.0 / 0.19).epsilon(1e-14));
    CHECK_THROWS_AS(
        stationary_variance(ar1_spec(0.1, Hypothesis::local_alternative, 10)),
        std::invalid_argument);
    ModelSpec arch = ar1_spec(0.1, Hypothesis::null, 10);
    arch.family = Family::arch;
    arch.b = PerturbationSpec{0.0, 0.0};
    CHECK_THROWS_AS(stationary_variance(arch), std::invalid_argument);
}

TEST_CASE("expected_functional: odd integrand vanishes") {
    ModelSpec spec = ar1_spec(0.1, Hypothesis::null, 10, 1.0, 5.0);
    CHECK(std::abs(expected_functional(spec, Functional::y_times_g)) <= 1e-8);
}

TEST_CASE("expected_functional: quadrature agrees with Monte Carlo") {
    ModelSpec spec = ar1_spec(0.0, Hypothesis::null, 10, 1.0, 2.0);
    double quad = expected_functional(spec, Functional::g_squared);

    const int n = 10000000;
    GaussianStream rng(2718);
    double s = 0.0, s2 = 0.0;
    for (int i = 0; i < n; ++i) {
        double g = spec.g(rng.normal());
        double v = g * g;
        s += v;
        s2 += v * v;
    }
    double mc = s / n;
    double se = std::sqrt((s2 / n - mc * mc) / n);
    CHECK(std::abs(quad - mc) < 4.0 * se);
}

TEST_CASE("expected_functional: quadratic amplitude scaling") {
    ModelSpec one = ar1_spec(0.1, Hypothesis::null, 10, 1.0, 5.0);
    ModelSpec two = ar1_spec(0.1, Hypothesis::null, 10, 2.0, 5.0);
    double e1 = expected_functional(one, Functional::g_squared);
    double e2 = expected_functional(two, Functional::g_squared);
    CHECK(e2 == doctest::Approx(4.0 * e1).epsilon(1e-6));
}

TEST_CASE("ergodic mean of Y^2 approaches the stationary variance") {
    ModelSpec spec = ar1_spec(0.5, Hypothesis::null, 100000);
    SeriesSample s = simulate(spec, 31);
    // Batch means give an honest standard error despite autocorrelation.
    const int batches = 100;
    const int len = s.n() / batches;
    std::vector<double> bm(batches);
    for (int b = 0; b < batches; ++b) {
        double acc = 0.0;
        for (int i = 0; i < len; ++i) {
            double y = s.values[static_cast<std::size_t>(b * len + i)];
            acc += y * y;
        }
        bm[static_cast<std::size_t>(b)] = acc / len;
    }
    double target = stationary_variance(spec);
    CHECK(std::abs(support::mean(bm) - target) < 4.0 * support::stderr_of_mean(bm));
}
