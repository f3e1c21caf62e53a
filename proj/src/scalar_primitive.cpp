#include "soninekit/scalar_primitive.hpp"
#include "soninekit/special_functions.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace soninekit {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

void require(bool ok, const char* msg)
{
    if (!ok)
        throw std::invalid_argument(msg);
}
} // namespace

ScalarPrimitive::ScalarPrimitive(PrimitiveKind kind, double a, double lam)
    : kind_(kind), a_(a), lam_(lam)
{
}

ScalarPrimitive ScalarPrimitive::power_law(double a)
{
    require(a > 0.0 && a <= 1.0, "power_law: exponent a must lie in (0, 1]");
    return {PrimitiveKind::PowerLaw, a, 0.0};
}

ScalarPrimitive ScalarPrimitive::damped_power_law(double a, double lam)
{
    require(a > 0.0 && a < 1.0, "damped_power_law: a must lie in (0, 1)");
    require(lam > 0.0, "damped_power_law: lam must be positive");
    return {PrimitiveKind::DampedPowerLaw, a, lam};
}

ScalarPrimitive ScalarPrimitive::damped_power_law_dual(double a, double lam)
{
    require(a > 0.0 && a < 1.0, "damped_power_law_dual: a must lie in (0, 1)");
    require(lam >= 0.0, "damped_power_law_dual: lam must be nonnegative");
    return {PrimitiveKind::DampedPowerLawDual, a, lam};
}

ScalarPrimitive ScalarPrimitive::exponential(double r)
{
    require(r >= 0.0, "exponential: rate r must be nonnegative");
    return {PrimitiveKind::Exponential, 0.0, r};
}

ScalarPrimitive ScalarPrimitive::bessel_k(double lam)
{
    require(lam > 0.0, "bessel_k: lam must be positive");
    return {PrimitiveKind::BesselK, 0.0, lam};
}

ScalarPrimitive ScalarPrimitive::bessel_l(double lam)
{
    require(lam > 0.0, "bessel_l: lam must be positive");
    return {PrimitiveKind::BesselL, 0.0, lam};
}

bool ScalarPrimitive::completely_monotone() const
{
    switch (kind_) {
    case PrimitiveKind::PowerLaw:
    case PrimitiveKind::DampedPowerLaw:
    case PrimitiveKind::DampedPowerLawDual:
    case PrimitiveKind::Exponential:
        return true;
    case PrimitiveKind::BesselK:
    case PrimitiveKind::BesselL:
        return false;
    }
    return false;
}

bool ScalarPrimitive::singular_at_zero() const
{
    switch (kind_) {
    case PrimitiveKind::PowerLaw:
        return a_ < 1.0;
    case PrimitiveKind::DampedPowerLaw:
    case PrimitiveKind::DampedPowerLawDual:
        return true;
    case PrimitiveKind::Exponential:
        return false;
    case PrimitiveKind::BesselK:
        // t^{-lam}/Gamma(1-lam) leading behaviour; bounded exactly at integer lam.
        return lam_ != std::round(lam_);
    case PrimitiveKind::BesselL:
        return lam_ < 1.0;
    }
    return false;
}

double ScalarPrimitive::value(double t) const
{
    if (!(t > 0.0))
        throw std::domain_error("ScalarPrimitive::value: need t > 0");
    switch (kind_) {
    case PrimitiveKind::PowerLaw:
        if (a_ == 1.0)
            return 1.0;
        return std::pow(t, a_ - 1.0) * sf::rgamma(a_);
    case PrimitiveKind::DampedPowerLaw:
        return std::pow(t, a_ - 1.0) * std::exp(-lam_ * t) * sf::rgamma(a_);
    case PrimitiveKind::DampedPowerLawDual: {
        if (lam_ == 0.0)
            return std::pow(t, -a_) * sf::rgamma(1.0 - a_);
        double x = lam_ * t;
        double la = std::pow(lam_, a_);
        if (x < 1.5)
            return la * sf::lower_gamma_neg(a_, x) / sf::gamma_neg(a_);
        return la * (1.0 - sf::upper_gamma_neg(a_, x) / sf::gamma_neg(a_));
    }
    case PrimitiveKind::Exponential:
        return std::exp(-lam_ * t);
    case PrimitiveKind::BesselK:
        return sf::bessel_k_series(lam_, t);
    case PrimitiveKind::BesselL:
        return sf::bessel_l_series(lam_, t);
    }
    return 0.0;
}

double ScalarPrimitive::antiderivative(double t) const
{
    if (t < 0.0)
        throw std::domain_error("ScalarPrimitive::antiderivative: need t >= 0");
    if (t == 0.0)
        return 0.0;
    switch (kind_) {
    case PrimitiveKind::PowerLaw:
        return std::pow(t, a_) * sf::rgamma(a_ + 1.0);
    case PrimitiveKind::DampedPowerLaw:
        return sf::reg_lower_gamma(a_, lam_ * t) * std::pow(lam_, -a_);
    case PrimitiveKind::DampedPowerLawDual: {
        if (lam_ == 0.0)
            return std::pow(t, 1.0 - a_) * sf::rgamma(2.0 - a_);
        double x = lam_ * t;
        double gn = sf::gamma_neg(a_);
        double las = std::pow(lam_, a_ - 1.0);
        if (x < 1.5) {
            // int_0^t l = lam^{a-1} [x gamma(-a,x) - gamma(1-a,x)] / Gamma(-a)
            double g1 = sf::reg_lower_gamma(1.0 - a_, x) * std::tgamma(1.0 - a_);
            return las * (x * sf::lower_gamma_neg(a_, x) - g1) / gn;
        }
        double up = sf::upper_gamma_neg(a_, x);
        double u1 = sf::reg_upper_gamma(1.0 - a_, x) * std::tgamma(1.0 - a_);
        return std::pow(lam_, a_) * t - las * (x * up - u1 + std::tgamma(1.0 - a_)) / gn;
    }
    case PrimitiveKind::Exponential:
        if (lam_ == 0.0)
            return t;
        return -std::expm1(-lam_ * t) / lam_;
    case PrimitiveKind::BesselK:
        return sf::bessel_k_series(lam_ - 1.0, t);
    case PrimitiveKind::BesselL:
        return sf::bessel_l_series(lam_ + 1.0, t);
    }
    return 0.0;
}

double ScalarPrimitive::moment(double lo, double hi) const
{
    if (lo < 0.0 || hi < lo)
        throw std::domain_error("ScalarPrimitive::moment: need 0 <= lo <= hi");
    if (hi == lo)
        return 0.0;
    switch (kind_) {
    case PrimitiveKind::Exponential: {
        if (lam_ == 0.0)
            return hi - lo;
        return std::exp(-lam_ * lo) * (-std::expm1(-lam_ * (hi - lo))) / lam_;
    }
    case PrimitiveKind::DampedPowerLaw: {
        double s = std::pow(lam_, -a_);
        if (lam_ * lo >= a_ + 1.0)
            return s * (sf::reg_upper_gamma(a_, lam_ * lo) - sf::reg_upper_gamma(a_, lam_ * hi));
        return s * (sf::reg_lower_gamma(a_, lam_ * hi) - sf::reg_lower_gamma(a_, lam_ * lo));
    }
    case PrimitiveKind::DampedPowerLawDual: {
        if (lam_ == 0.0 || lam_ * lo < 3.0)
            return antiderivative(hi) - antiderivative(lo);
        // Far from the origin the primitive is lam^a plus an exp-small tail;
        // split off the linear part so narrow cells keep full precision.
        double tail_hi = antiderivative(hi) - std::pow(lam_, a_) * hi;
        double tail_lo = antiderivative(lo) - std::pow(lam_, a_) * lo;
        return std::pow(lam_, a_) * (hi - lo) + (tail_hi - tail_lo);
    }
    default:
        return antiderivative(hi) - antiderivative(lo);
    }
}

double ScalarPrimitive::limit_at_zero() const
{
    if (singular_at_zero())
        return kInf;
    switch (kind_) {
    case PrimitiveKind::PowerLaw:
    case PrimitiveKind::Exponential:
        return 1.0;
    case PrimitiveKind::BesselK: {
        int k = static_cast<int>(std::lround(lam_));
        double v = sf::rgamma(k + 1.0);
        return (k % 2 == 0) ? v : -v;
    }
    case PrimitiveKind::BesselL:
        return lam_ == 1.0 ? 1.0 : 0.0;
    default:
        return kInf;
    }
}

double ScalarPrimitive::limit_at_infinity() const
{
    switch (kind_) {
    case PrimitiveKind::PowerLaw:
        return a_ == 1.0 ? 1.0 : 0.0;
    case PrimitiveKind::DampedPowerLaw:
        return 0.0;
    case PrimitiveKind::DampedPowerLawDual:
        return lam_ == 0.0 ? 0.0 : std::pow(lam_, a_);
    case PrimitiveKind::Exponential:
        return lam_ == 0.0 ? 1.0 : 0.0;
    case PrimitiveKind::BesselK:
        return 0.0;
    case PrimitiveKind::BesselL:
        throw std::domain_error("BesselL primitive is unbounded as t -> infinity");
    }
    return 0.0;
}

std::complex<double> ScalarPrimitive::laplace(std::complex<double> p) const
{
    using std::exp;
    using std::pow;
    switch (kind_) {
    case PrimitiveKind::PowerLaw:
        return pow(p, -a_);
    case PrimitiveKind::DampedPowerLaw:
        return pow(p + lam_, -a_);
    case PrimitiveKind::DampedPowerLawDual:
        return pow(p + lam_, a_) / p;
    case PrimitiveKind::Exponential:
        return 1.0 / (p + lam_);
    case PrimitiveKind::BesselK:
        return exp(-1.0 / p) * pow(p, lam_ - 1.0);
    case PrimitiveKind::BesselL:
        return exp(1.0 / p) * pow(p, -lam_);
    }
    return {};
}

std::string ScalarPrimitive::describe() const
{
    std::ostringstream os;
    switch (kind_) {
    case PrimitiveKind::PowerLaw:
        os << "power_law(a=" << a_ << ")";
        break;
    case PrimitiveKind::DampedPowerLaw:
        os << "damped_power_law(a=" << a_ << ", lam=" << lam_ << ")";
        break;
    case PrimitiveKind::DampedPowerLawDual:
        os << "damped_power_law_dual(a=" << a_ << ", lam=" << lam_ << ")";
        break;
    case PrimitiveKind::Exponential:
        os << "exponential(r=" << lam_ << ")";
        break;
    case PrimitiveKind::BesselK:
        os << "bessel_k(lam=" << lam_ << ")";
        break;
    case PrimitiveKind::BesselL:
        os << "bessel_l(lam=" << lam_ << ")";
        break;
    }
    return os.str();
}

} // namespace soninekit
