#pragma once

// Test-side oracles, independent of the library implementation paths they
// check: plain statistics helpers, a Simpson integrator, and a one-sample
// Kolmogorov-Smirnov test.

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace support {

inline double mean(const std::vector<double>& xs) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s / static_cast<double>(xs.size());
}

inline double sample_sd(const std::vector<double>& xs) {
    double m = mean(xs);
    double s = 0.0;
    for (double x : xs) s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(xs.size() - 1));
}

inline double stderr_of_mean(const std::vector<double>& xs) {
    return sample_sd(xs) / std::sqrt(static_cast<double>(xs.size()));
}

inline double correlation(const std::vector<double>& xs,
                          const std::vector<double>& ys) {
    double mx = mean(xs), my = mean(ys);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    return sxy / std::sqrt(sxx * syy);
}

/// Fixed-grid composite Simpson rule; grid fine enough for the smooth
/// integrands used in the tests.
inline double simpson(const std::function<double(double)>& f, double a,
                      double b, int intervals = 40000) {
    if (intervals % 2 != 0) ++intervals;
    const double h = (b - a) / intervals;
    double s = f(a) + f(b);
    for (int i = 1; i < intervals; ++i) {
        s += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
    }
    return s * h / 3.0;
}

/// Asymptotic Kolmogorov distribution Q(t) = 2 sum (-1)^{k-1} exp(-2 k^2 t^2).
inline double kolmogorov_pvalue(double t) {
    if (t < 1e-8) return 1.0;
    double sum = 0.0;
    for (int k = 1; k <= 200; ++k) {
        double term = std::exp(-2.0 * k * k * t * t);
        sum += (k % 2 == 1 ? term : -term);
        if (term < 1e-16) break;
    }
    return std::min(1.0, std::max(0.0, 2.0 * sum));
}

/// One-sample KS test against the CDF `cdf`; returns the p-value.
inline double ks_test_pvalue(std::vector<double> xs,
                             const std::function<double(double)>& cdf) {
    std::sort(xs.begin(), xs.end());
    const double n = static_cast<double>(xs.size());
    double d = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double f = cdf(xs[i]);
        d = std::max(d, std::abs((static_cast<double>(i) + 1.0) / n - f));
        d = std::max(d, std::abs(f - static_cast<double>(i) / n));
    }
    return kolmogorov_pvalue(std::sqrt(n) * d);
}

}  // namespace support
