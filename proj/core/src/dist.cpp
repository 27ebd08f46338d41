#include "lanpower/dist.hpp"

#include <cmath>
#include <stdexcept>

namespace lanpower {

double score_mf(double x) {
    if (!std::isfinite(x)) {
        throw std::domain_error("score_mf: non-finite input");
    }
    return -x;
}

double normal_pdf(double x) {
    static const double inv_sqrt_2pi = 0.3989422804014326779;
    return inv_sqrt_2pi * std::exp(-0.5 * x * x);
}

double normal_cdf(double x) {
    if (!std::isfinite(x)) {
        throw std::domain_error("normal_cdf: non-finite input");
    }
    static const double inv_sqrt2 = 0.7071067811865475244;
    return 0.5 * std::erfc(-x * inv_sqrt2);
}

double normal_quantile(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw std::domain_error("normal_quantile: alpha must lie in (0,1)");
    }
    const double p = 1.0 - alpha;  // solve Phi(z) = p
    double lo = -40.0, hi = 40.0;
    for (int i = 0; i < 200 && hi - lo > 1e-15 * (1.0 + std::abs(lo)); ++i) {
        double mid = 0.5 * (lo + hi);
        if (normal_cdf(mid) < p) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    double z = 0.5 * (lo + hi);
    // Newton polish; pdf is exact enough that two steps reach ~1e-16.
    for (int i = 0; i < 3; ++i) {
        double d = normal_pdf(z);
        if (d <= 0.0) break;
        z -= (normal_cdf(z) - p) / d;
    }
    return z;
}

NoiseMoments gaussian_noise_moments() {
    // M_f(eps)^2 = eps^2, so I_j = E[eps^(j+2)] = (1, 0, 3).
    return NoiseMoments{1.0, 0.0, 3.0};
}

}  // namespace lanpower
