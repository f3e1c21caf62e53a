#ifndef SONINEKIT_SCALAR_PRIMITIVE_HPP
#define SONINEKIT_SCALAR_PRIMITIVE_HPP

#include <complex>
#include <string>

namespace soninekit {

enum class PrimitiveKind {
    PowerLaw,           // t^{a-1}/Gamma(a), a in (0,1]
    DampedPowerLaw,     // t^{a-1} e^{-lam t}/Gamma(a), a in (0,1), lam > 0
    DampedPowerLawDual, // lam^a [1 - Gamma(-a, lam t)/Gamma(-a)], lam >= 0
    Exponential,        // e^{-r t}, r >= 0
    BesselK,            // t^{-lam/2} J_{-lam}(2 sqrt t), lam > 0 (not CM)
    BesselL,            // t^{(lam-1)/2} I_{lam-1}(2 sqrt t), lam > 0 (not CM)
};

/// One scalar analytic kernel building block. Immutable value type; every
/// member is pure, so concurrent evaluation is safe.
class ScalarPrimitive {
public:
    static ScalarPrimitive power_law(double a);
    static ScalarPrimitive damped_power_law(double a, double lam);
    static ScalarPrimitive damped_power_law_dual(double a, double lam);
    static ScalarPrimitive exponential(double r);
    static ScalarPrimitive bessel_k(double lam);
    static ScalarPrimitive bessel_l(double lam);

    PrimitiveKind kind() const { return kind_; }
    double param_a() const { return a_; }
    double param_lam() const { return lam_; }
    double param_r() const { return lam_; }

    /// True for the catalog members that are CM by construction; the Bessel
    /// primitives carry a non-CM flag.
    bool completely_monotone() const;

    /// Value unbounded as t -> 0+.
    bool singular_at_zero() const;

    /// Pointwise value, t > 0.
    double value(double t) const;

    /// Exact antiderivative int_0^t, t >= 0.
    double antiderivative(double t) const;

    /// Exact subinterval mass int_lo^hi, 0 <= lo <= hi, computed in a form
    /// that avoids cancellation for narrow intervals far from the origin.
    double moment(double lo, double hi) const;

    /// Limit as t -> 0+ (may be +inf for singular primitives).
    double limit_at_zero() const;

    /// Limit as t -> infinity; throws std::domain_error for BesselL, which
    /// grows without bound.
    double limit_at_infinity() const;

    /// Closed-form Laplace transform at complex p (Re p on the usual
    /// contours; principal branches).
    std::complex<double> laplace(std::complex<double> p) const;

    std::string describe() const;

private:
    ScalarPrimitive(PrimitiveKind kind, double a, double lam);

    PrimitiveKind kind_;
    double a_;   // exponent parameter where applicable
    double lam_; // rate / damping parameter (also r for Exponential, lam for Bessel)
};

} // namespace soninekit

#endif
