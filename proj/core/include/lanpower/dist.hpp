#pragma once

namespace lanpower {

/// Moments I_j = E[eps^j * M_f(eps)^2] of the innovation density.
/// For the standard normal: i0 = 1, i1 = 0, i2 = 3.
struct NoiseMoments {
    double i0;
    double i1;
    double i2;
};

/// Score M_f(x) = f'(x)/f(x) of the standard normal density; equals -x.
/// Throws std::domain_error on non-finite input.
double score_mf(double x);

/// Standard normal density.
double normal_pdf(double x);

/// Standard normal CDF Phi(x). Absolute error below 1e-12 for |x| <= 8.
double normal_cdf(double x);

/// Z(alpha): the (1-alpha)-quantile of the standard normal, solved by
/// bracketed root-finding on normal_cdf so that Phi(Z(alpha)) = 1-alpha
/// to within 1e-12. Throws std::domain_error unless 0 < alpha < 1.
double normal_quantile(double alpha);

/// Exact Gaussian values (1, 0, 3) of the I_j moments.
NoiseMoments gaussian_noise_moments();

}  // namespace lanpower
