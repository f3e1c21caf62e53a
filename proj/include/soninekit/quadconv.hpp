#ifndef SONINEKIT_QUADCONV_HPP
#define SONINEKIT_QUADCONV_HPP

#include "soninekit/matrix_kernel.hpp"
#include "soninekit/time_grid.hpp"

#include <variant>

namespace soninekit {

/// A measure atom * delta_0 + density(t) dt. The atom is the coefficient of
/// the convolution unit; solutions of the convolution equations live here.
struct MeasureFn {
    Matrix atom;
    std::variant<std::monostate, MatrixKernel, SampledMatrixFunction> density;
};

/// Product-integration convolution (k * g)(t_i) = int_0^{t_i} k(t_i - s) g(s) ds.
/// g is taken piecewise constant on (t_{j-1}, t_j] with its right-node value;
/// kernel masses over the subintervals are exact moments. The matrix product
/// order k(t-s) g(s) is preserved. rhs blocks may be rectangular (dim x m).
std::vector<Matrix> product_convolve(const MatrixKernel& k, const TimeGrid& grid,
                                     const std::vector<Matrix>& rhs);

SampledMatrixFunction convolve(const MatrixKernel& k, const SampledMatrixFunction& g);

/// Convolution with a piecewise-constant sampled density d (the image of a
/// solver output). Masses of d over arbitrary intervals are exact integrals
/// of its piecewise-constant extension.
SampledMatrixFunction convolve_sampled(const SampledMatrixFunction& d,
                                       const SampledMatrixFunction& g);

/// atom * g + density * g.
SampledMatrixFunction convolve_measure(const MeasureFn& m, const SampledMatrixFunction& g);

/// Exact running integral of the piecewise-constant extension of a sampled
/// function, evaluable between nodes. Used wherever solver densities (which
/// are defined cell-wise) enter further convolutions.
class PiecewiseConstantIntegral {
public:
    explicit PiecewiseConstantIntegral(const SampledMatrixFunction& f);

    /// int_0^tau of the pc extension, 0 <= tau <= t_end.
    Matrix at(double tau) const;

    /// int_lo^hi.
    Matrix over(double lo, double hi) const { return at(hi) - at(lo); }

private:
    std::vector<double> nodes_;      // grid nodes t_0..t_n
    std::vector<Matrix> values_;     // cell values (right-node samples)
    std::vector<Matrix> cumulative_; // cumulative_[i] = int_0^{t_i}
};

} // namespace soninekit

#endif
