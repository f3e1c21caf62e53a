#ifndef SONINEKIT_MATRIX_KERNEL_HPP
#define SONINEKIT_MATRIX_KERNEL_HPP

#include "soninekit/scalar_primitive.hpp"
#include "soninekit/sym_matrix.hpp"

#include <vector>

namespace soninekit {

struct KernelTerm {
    Matrix coef; // symmetric dim x dim
    ScalarPrimitive prim;
};

/// Finite mixture F(t) = sum_j coef_j * prim_j(t) of symmetric coefficient
/// matrices times scalar analytic primitives. This is the finite
/// discretization of the exponential-mixture representation of matrix LICM
/// functions, and also carries the Bernstein derivatives and memory kernels.
class MatrixKernel {
public:
    MatrixKernel(int dim, std::vector<KernelTerm> terms);

    /// Scalar kernel (dim 1) from a single primitive.
    static MatrixKernel scalar(const ScalarPrimitive& prim);

    /// prim scaled by a fixed symmetric coefficient matrix.
    static MatrixKernel single(const Matrix& coef, const ScalarPrimitive& prim);

    int dim() const { return dim_; }
    const std::vector<KernelTerm>& terms() const { return terms_; }

    /// All primitives CM-flagged and all coefficients PSD.
    bool licm_flagged() const;

    /// Some term is unbounded at 0+ with a nonzero coefficient.
    bool singular_at_zero() const;

    /// F(t) = sum coef_j prim_j(t), t > 0.
    Matrix eval(double t) const;

    /// int_0^t F, t >= 0, exact per-primitive antiderivatives.
    Matrix antiderivative(double t) const;

    /// int_lo^hi F with cancellation-safe per-primitive moments.
    Matrix moment(double lo, double hi) const;

    struct F0Result {
        Matrix value;  // zero matrix when singular
        bool singular; // F(t) unbounded at 0 => limit of F(t)^{-1} is 0
    };

    /// F0 = lim_{t->0} F(t)^{-1}. Singular kernels give the zero matrix with
    /// the singular tag set; bounded kernels invert the finite limit and
    /// throw HypothesisError when that limit is not invertible.
    F0Result f0_limit() const;

    /// lim_{t->infinity} F(t): the non-decaying terms' coefficients
    /// (constant primitives contribute their coefficient, the damped dual
    /// contributes lam^a). Throws for BesselL terms.
    Matrix f_infinity() const;

    /// Probe-based test that no direction v has v^T F(t) v identically zero:
    /// canonical + seeded random probes evaluated at the given times.
    bool condition_star(const std::vector<double>& probe_times = {0.1, 1.0, 10.0}) const;

private:
    int dim_;
    std::vector<KernelTerm> terms_;
};

/// B(t) = b0 + int_0^t derivative; nondecreasing in the quadratic-form sense
/// when b0 is PSD and the derivative kernel is LICM.
struct BernsteinFn {
    Matrix b0;
    MatrixKernel derivative;

    BernsteinFn(Matrix b0_in, MatrixKernel derivative_in);

    int dim() const { return derivative.dim(); }
    Matrix eval(double t) const;

    /// Probe test for a non-constant quadratic form in every direction,
    /// i.e. the derivative kernel satisfies the non-vanishing condition.
    bool non_constant() const { return derivative.condition_star(); }
};

} // namespace soninekit

#endif
