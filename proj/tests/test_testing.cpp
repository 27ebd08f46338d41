#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "lanpower/dist.hpp"
#include "lanpower/errors.hpp"
#include "lanpower/testing.hpp"
#include "support.hpp"

using namespace lanpower;

namespace {

SeriesSample make_sample(std::vector<double> values) {
    SeriesSample s;
    s.values = std::move(values);
    return s;
}

ModelSpec ar1_spec(double rho0, int n, double a, double coef = 5.0) {
    ModelSpec spec;
    spec.family = Family::ar1;
    spec.rho0 = rho0;
    spec.g = PerturbationSpec{a, coef};
    spec.hypothesis = Hypothesis::null;
    spec.n = n;
    return spec;
}

}  // namespace

TEST_CASE("np_test: decision boundary is closed") {
    // Y = (0, z) with G(0) = 1 and tau2 = 1 puts the statistic exactly at the
    // threshold; the closed rejection region must reject.
    double z = normal_quantile(0.05);
    SeriesSample s = make_sample({0.0, z});
    ModelSpec spec = ar1_spec(0.0, 1, 1.0, 1.0);  // G(y) = 1/(1+y^2), G(0)=1
    Tau2 unit{1.0, Tau2Source::analytic};
    TestOutcome out = np_test(s, spec, 0.0, 0.05, unit, Variant::true_param);
    CHECK(out.statistic == doctest::Approx(z).epsilon(1e-13));
    CHECK(out.threshold == z);
    CHECK(out.reject);

    SeriesSample below = make_sample({0.0, z - 1e-6});
    CHECK_FALSE(
        np_test(below, spec, 0.0, 0.05, unit, Variant::true_param).reject);
}

TEST_CASE("np_test: degenerate variance is an error") {
    SeriesSample s = make_sample({0.0, 1.0});
    ModelSpec spec = ar1_spec(0.0, 1, 1.0);
    Tau2 zero{0.0, Tau2Source::analytic};
    CHECK_THROWS_AS(np_test(s, spec, 0.0, 0.05, zero, Variant::true_param),
                    DegenerateTestError);
}

TEST_CASE("np_test: normalization scales the statistic by 1/tau") {
    ModelSpec spec = ar1_spec(0.1, 100, 1.0);
    SeriesSample s = simulate(spec, 3);
    Tau2 one{1.0, Tau2Source::analytic};
    Tau2 four{4.0, Tau2Source::analytic};
    TestOutcome t1 = np_test(s, spec, 0.1, 0.05, one, Variant::lse);
    TestOutcome t4 = np_test(s, spec, 0.1, 0.05, four, Variant::lse);
    CHECK(t1.statistic == doctest::Approx(2.0 * t4.statistic).epsilon(1e-13));
    CHECK(t4.variant == Variant::lse);
    CHECK(t4.tau2_used.value == 4.0);
}

TEST_CASE("asymptotic_power values") {
    Tau2 zero{0.0, Tau2Source::analytic};
    CHECK(asymptotic_power(0.05, zero) == doctest::Approx(0.05).epsilon(1e-12));
    CHECK(asymptotic_power(0.20, zero) == doctest::Approx(0.20).epsilon(1e-12));

    // tau^2 = Z(alpha) centers the argument at zero.
    Tau2 at_z{normal_quantile(0.05), Tau2Source::analytic};
    CHECK(asymptotic_power(0.05, at_z) == doctest::Approx(0.5).epsilon(1e-12));

    double prev = 0.0;
    for (double t2 = 0.0; t2 <= 6.0; t2 += 0.25) {
        double p = asymptotic_power(0.05, Tau2{t2, Tau2Source::analytic});
        CHECK(p >= prev);
        CHECK(p <= 1.0);
        prev = p;
    }
}

TEST_CASE("variant_name round trip") {
    CHECK(std::string(variant_name(Variant::true_param)) == "true_param");
    CHECK(std::string(variant_name(Variant::lse)) == "lse");
    CHECK(std::string(variant_name(Variant::me)) == "me");
}

TEST_CASE("power_study: validation") {
    PowerConfig cfg;
    cfg.amplitude_grid = {};
    cfg.n_list = {50};
    cfg.m = 10;
    CHECK_THROWS_AS(power_study(cfg), std::invalid_argument);

    cfg.amplitude_grid = {0.5};
    cfg.n_list = {};
    CHECK_THROWS_AS(power_study(cfg), std::invalid_argument);

    cfg.n_list = {50};
    cfg.m = 0;
    CHECK_THROWS_AS(power_study(cfg), std::invalid_argument);
}

TEST_CASE("power_study: determinism and row layout") {
    PowerConfig cfg;
    cfg.amplitude_grid = {0.0, 1.0};
    cfg.n_list = {60};
    cfg.m = 40;
    cfg.master_seed = 501;
    PowerCurve c1 = power_study(cfg);
    PowerCurve c2 = power_study(cfg);
    CHECK(power_curve_csv(c1) == power_curve_csv(c2));

    REQUIRE(c1.rows.size() == 2 * 3);  // grid x variants
    for (const PowerRow& row : c1.rows) {
        CHECK(row.n == 60);
        CHECK(row.m == 40);
        CHECK(row.rejection_rate >= 0.0);
        CHECK(row.rejection_rate <= 1.0);
        double p = row.rejection_rate;
        CHECK(row.mc_stderr ==
              doctest::Approx(std::sqrt(p * (1.0 - p) / 40.0)).epsilon(1e-12));
    }
    // a = 0 rows report the nominal level as the asymptotic reference.
    CHECK(c1.rows[0].a == 0.0);
    CHECK(c1.rows[0].asymptotic_power == doctest::Approx(0.05).epsilon(1e-12));
}

TEST_CASE("power_study: variants are paired on identical replicates") {
    // true_param and lse see the same data; with a large amplitude both
    // reject almost always, so their rates cannot differ by much.
    PowerConfig cfg;
    cfg.amplitude_grid = {2.0};
    cfg.n_list = {200};
    cfg.m = 100;
    cfg.master_seed = 7;
    cfg.variants = {Variant::true_param, Variant::lse};
    PowerCurve c = power_study(cfg);
    REQUIRE(c.rows.size() == 2);
    CHECK(std::abs(c.rows[0].rejection_rate - c.rows[1].rejection_rate) <= 0.1);
    CHECK(c.rows[0].rejection_rate > 0.9);
}

TEST_CASE("power_curve_csv: header and parse-back") {
    PowerConfig cfg;
    cfg.amplitude_grid = {0.5};
    cfg.n_list = {50};
    cfg.m = 20;
    cfg.variants = {Variant::lse};
    PowerCurve c = power_study(cfg);
    std::string csv = power_curve_csv(c);

    std::istringstream in(csv);
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line ==
          "family,n,a,variant,m,rejection_rate,mc_stderr,asymptotic_power,seed");
    REQUIRE(std::getline(in, line));
    std::vector<std::string> fields;
    std::istringstream row(line);
    std::string f;
    while (std::getline(row, f, ',')) fields.push_back(f);
    REQUIRE(fields.size() == 9);
    CHECK(fields[0] == "ar1");
    CHECK(fields[1] == "50");
    CHECK(std::stod(fields[2]) == 0.5);
    CHECK(fields[3] == "lse");
    CHECK(fields[4] == "20");
    CHECK(std::stod(fields[5]) == c.rows[0].rejection_rate);
    CHECK(std::stod(fields[7]) ==
          doctest::Approx(c.rows[0].asymptotic_power).epsilon(1e-9));
    CHECK_FALSE(std::getline(in, line));  // single data row, LF-terminated
    CHECK(csv.back() == '\n');
}

TEST_CASE("parallel_for covers every index exactly once and propagates") {
    std::vector<int> hits(1000, 0);
    parallel_for(1000, [&](long i) { hits[static_cast<std::size_t>(i)]++; });
    for (int h : hits) CHECK(h == 1);

    CHECK_THROWS_AS(
        parallel_for(8, [](long i) {
            if (i == 5) throw std::runtime_error("boom");
        }),
        std::runtime_error);
}
