#include "soninekit/special_functions.hpp"

#include <doctest.h>

#include <cmath>
#include <initializer_list>

using namespace soninekit;

TEST_CASE("regularized incomplete gamma against reference values")
{
    // Reference values computed with 30-digit arithmetic.
    CHECK(sf::reg_lower_gamma(0.5, 0.25) == doctest::Approx(0.520499877813046538).epsilon(1e-13));
    CHECK(sf::reg_lower_gamma(0.5, 2.0) == doctest::Approx(0.954499736103641586).epsilon(1e-13));
    CHECK(sf::reg_lower_gamma(0.3, 1.0) == doctest::Approx(0.915674156241108762).epsilon(1e-13));
    CHECK(sf::reg_lower_gamma(0.9, 5.0) == doctest::Approx(0.994722232148953845).epsilon(1e-13));
    CHECK(sf::reg_lower_gamma(0.5, 0.0) == 0.0);
    CHECK(sf::reg_upper_gamma(0.5, 0.0) == 1.0);
}

TEST_CASE("P + Q = 1 across the series/fraction switch")
{
    for (double a : {0.1, 0.3, 0.5, 0.9, 1.0, 1.7})
        for (double x : {0.01, 0.4, 1.0, 1.3, 2.6, 10.0, 40.0}) {
            double p = sf::reg_lower_gamma(a, x);
            double q = sf::reg_upper_gamma(a, x);
            CHECK(p + q == doctest::Approx(1.0).epsilon(1e-13));
            CHECK(p >= 0.0);
            CHECK(q >= 0.0);
        }
}

TEST_CASE("upper incomplete gamma with negative parameter")
{
    CHECK(sf::upper_gamma_neg(0.5, 0.1) == doctest::Approx(3.40176933669161542).epsilon(1e-12));
    CHECK(sf::upper_gamma_neg(0.5, 0.5) == doctest::Approx(0.590691306732599344).epsilon(1e-12));
    CHECK(sf::upper_gamma_neg(0.5, 1.0) == doctest::Approx(0.178147711781560690).epsilon(1e-12));
    CHECK(sf::upper_gamma_neg(0.5, 2.0) == doctest::Approx(0.0300987571001864663).epsilon(1e-12));
    CHECK(sf::upper_gamma_neg(0.5, 10.0) == doctest::Approx(1.26090426132415707e-6).epsilon(1e-11));
}

TEST_CASE("recurrence Gamma(1-a,x) = -a Gamma(-a,x) + x^{-a} e^{-x}")
{
    for (double a : {0.2, 0.5, 0.8})
        for (double x : {0.05, 0.7, 1.4, 3.0, 12.0}) {
            double lhs = sf::reg_upper_gamma(1.0 - a, x) * std::tgamma(1.0 - a);
            double rhs = -a * sf::upper_gamma_neg(a, x) + std::pow(x, -a) * std::exp(-x);
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-11));
        }
}

TEST_CASE("reciprocal gamma has exact zeros at the poles")
{
    CHECK(sf::rgamma(0.0) == 0.0);
    CHECK(sf::rgamma(-1.0) == 0.0);
    CHECK(sf::rgamma(-2.0) == 0.0);
    CHECK(sf::rgamma(1.0) == doctest::Approx(1.0));
    CHECK(sf::rgamma(0.5) == doctest::Approx(1.0 / std::sqrt(M_PI)).epsilon(1e-14));
    CHECK(sf::rgamma(-0.5) == doctest::Approx(1.0 / (-2.0 * std::sqrt(M_PI))).epsilon(1e-14));
}

TEST_CASE("Bessel-type series match the half-order closed forms")
{
    // lam = 1/2: cos(2 sqrt t)/sqrt(pi t) and cosh(2 sqrt t)/sqrt(pi t).
    for (double t : {0.25, 1.0, 2.0, 10.0, 40.0}) {
        double kc = std::cos(2.0 * std::sqrt(t)) / std::sqrt(M_PI * t);
        double lc = std::cosh(2.0 * std::sqrt(t)) / std::sqrt(M_PI * t);
        CHECK(sf::bessel_k_series(0.5, t) == doctest::Approx(kc).epsilon(1e-10));
        CHECK(sf::bessel_l_series(0.5, t) == doctest::Approx(lc).epsilon(1e-12));
    }
    CHECK(sf::bessel_k_series(0.5, 1.0) == doctest::Approx(-0.234785710406248469).epsilon(1e-12));
    CHECK(sf::bessel_l_series(0.5, 10.0) == doctest::Approx(49.7869977589901664).epsilon(1e-12));
}

TEST_CASE("Bessel antiderivative series differentiates back")
{
    // d/dt of the lam-1 series is the lam series (checked by central quotients).
    for (double t : {0.3, 1.1, 4.0}) {
        double h = 1e-6 * t;
        double quotient = (sf::bessel_k_series(-0.5, t + h) - sf::bessel_k_series(-0.5, t - h))
                          / (2.0 * h);
        CHECK(quotient == doctest::Approx(sf::bessel_k_series(0.5, t)).epsilon(1e-6));
        double lquot = (sf::bessel_l_series(1.5, t + h) - sf::bessel_l_series(1.5, t - h))
                       / (2.0 * h);
        CHECK(lquot == doctest::Approx(sf::bessel_l_series(0.5, t)).epsilon(1e-6));
    }
}
