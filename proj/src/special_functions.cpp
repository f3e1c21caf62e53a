#include "soninekit/special_functions.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace soninekit::sf {

namespace {

constexpr int kMaxIter = 400;
constexpr double kEps = 1e-16;
constexpr double kTiny = 1e-300;

// Series for P(a,x), x < a+1.
double gamma_p_series(double a, double x)
{
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int n = 0; n < kMaxIter; ++n) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * kEps)
            break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Modified Lentz continued fraction for Q(a,x), x >= a+1. Also valid for
// negative a as the unregularized fraction part.
double gamma_cf(double a, double x)
{
    double b = x + 1.0 - a;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= kMaxIter; ++i) {
        double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps)
            break;
    }
    return h; // Gamma(a,x) = exp(-x + a ln x) * h
}

} // namespace

double rgamma(double x)
{
    if (x > 0.5)
        return 1.0 / std::tgamma(x);
    if (x <= 0.0 && x == std::floor(x))
        return 0.0; // poles of Gamma
    // Reflection: 1/Gamma(x) = Gamma(1-x) sin(pi x)/pi.
    return std::tgamma(1.0 - x) * std::sin(M_PI * x) / M_PI;
}

double reg_lower_gamma(double a, double x)
{
    if (!(a > 0.0) || x < 0.0)
        throw std::domain_error("reg_lower_gamma: need a > 0, x >= 0");
    if (x == 0.0)
        return 0.0;
    if (x < a + 1.0)
        return gamma_p_series(a, x);
    double q = gamma_cf(a, x) * std::exp(-x + a * std::log(x) - std::lgamma(a));
    return 1.0 - q;
}

double reg_upper_gamma(double a, double x)
{
    if (!(a > 0.0) || x < 0.0)
        throw std::domain_error("reg_upper_gamma: need a > 0, x >= 0");
    if (x == 0.0)
        return 1.0;
    if (x < a + 1.0)
        return 1.0 - gamma_p_series(a, x);
    return gamma_cf(a, x) * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_neg(double a)
{
    return std::tgamma(1.0 - a) / (-a);
}

double lower_gamma_neg(double a, double x)
{
    // gamma(-a, x) = x^{-a} sum_k (-x)^k / (k! (k - a))
    if (x <= 0.0)
        throw std::domain_error("lower_gamma_neg: need x > 0");
    if (x > 40.0)
        return gamma_neg(a) - upper_gamma_neg(a, x);
    double term = 1.0;
    double sum = 1.0 / (-a);
    for (int k = 1; k < kMaxIter; ++k) {
        term *= -x / k;
        double del = term / (k - a);
        sum += del;
        if (std::fabs(del) < kEps * std::fabs(sum) && k > x)
            break;
    }
    return std::pow(x, -a) * sum;
}

double upper_gamma_neg(double a, double x)
{
    if (!(a > 0.0 && a < 1.0) || x <= 0.0)
        throw std::domain_error("upper_gamma_neg: need a in (0,1), x > 0");
    if (x >= 1.5) {
        // CF form holds for negative parameter as well once x dominates.
        return gamma_cf(-a, x) * std::exp(-x - a * std::log(x));
    }
    return gamma_neg(a) - lower_gamma_neg(a, x);
}

double bessel_k_series(double lam, double t)
{
    if (t <= 0.0)
        throw std::domain_error("bessel_k_series: need t > 0");
    double u = 1.0;                 // (-t)^m / m!
    double sum = rgamma(1.0 - lam); // m = 0 term
    double peak = std::fabs(sum);
    for (int m = 1; m < kMaxIter; ++m) {
        u *= -t / m;
        double del = u * rgamma(m + 1.0 - lam);
        sum += del;
        peak = std::max(peak, std::fabs(sum));
        if (std::fabs(u) < 1e-14 * std::max(std::fabs(sum), 1e-3 * peak) && m > t)
            break;
    }
    return std::pow(t, -lam) * sum;
}

double bessel_l_series(double lam, double t)
{
    if (t <= 0.0)
        throw std::domain_error("bessel_l_series: need t > 0");
    double u = 1.0; // t^m / m!
    double sum = rgamma(lam);
    for (int m = 1; m < kMaxIter; ++m) {
        u *= t / m;
        double del = u * rgamma(lam + m);
        sum += del;
        if (del < 1e-14 * sum && m > t)
            break;
    }
    return std::pow(t, lam - 1.0) * sum;
}

} // namespace soninekit::sf
