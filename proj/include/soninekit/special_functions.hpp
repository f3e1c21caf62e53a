#ifndef SONINEKIT_SPECIAL_FUNCTIONS_HPP
#define SONINEKIT_SPECIAL_FUNCTIONS_HPP

namespace soninekit::sf {

/// 1/Gamma(x), finite for all real x (zero at the poles of Gamma).
double rgamma(double x);

/// Regularized lower incomplete gamma P(a, x) = gamma(a,x)/Gamma(a), a > 0, x >= 0.
double reg_lower_gamma(double a, double x);

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
double reg_upper_gamma(double a, double x);

/// Upper incomplete gamma with negative parameter, Gamma(-a, x), for a in (0,1), x > 0.
/// Small x goes through the lower-gamma series, large x through the continued
/// fraction; both avoid the cancellation in the textbook recurrence.
double upper_gamma_neg(double a, double x);

/// Lower incomplete gamma with negative parameter, gamma(-a, x) = Gamma(-a) - Gamma(-a, x),
/// computed by its series (stable for small and moderate x).
double lower_gamma_neg(double a, double x);

/// Gamma(-a) for a in (0,1): Gamma(1-a)/(-a). Negative.
double gamma_neg(double a);

/// Ascending series for t^{-lam} * sum_m (-t)^m / (m! Gamma(m+1-lam)),
/// i.e. t^{-lam/2} J_{-lam}(2 sqrt(t)). Valid for desk-scale t (<= ~50).
double bessel_k_series(double lam, double t);

/// Ascending series for t^{lam-1} * sum_m t^m / (m! Gamma(lam+m)),
/// i.e. t^{(lam-1)/2} I_{lam-1}(2 sqrt(t)).
double bessel_l_series(double lam, double t);

} // namespace soninekit::sf

#endif
