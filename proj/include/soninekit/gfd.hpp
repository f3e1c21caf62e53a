#ifndef SONINEKIT_GFD_HPP
#define SONINEKIT_GFD_HPP

#include "soninekit/matrix_kernel.hpp"
#include "soninekit/quadconv.hpp"
#include "soninekit/time_grid.hpp"

#include <functional>
#include <optional>

namespace soninekit {

/// Vector-valued path sampled at every grid node (node 0 included), with
/// optional caller-supplied derivative samples in the same layout.
struct VectorPath {
    TimeGrid grid;
    std::vector<Vector> values; // size n+1
    std::optional<std::vector<Vector>> derivative;

    VectorPath(TimeGrid g, std::vector<Vector> vals,
               std::optional<std::vector<Vector>> deriv = std::nullopt);

    int dim() const { return static_cast<int>(values.front().size()); }
    const Vector& at(int i) const { return values[static_cast<std::size_t>(i)]; }

    static VectorPath sample(const TimeGrid& g,
                             const std::function<Vector(double)>& fn);
    static VectorPath sample_with_derivative(const TimeGrid& g,
                                             const std::function<Vector(double)>& fn,
                                             const std::function<Vector(double)>& dfn);
};

/// F-derivative of an absolutely continuous path, in the convolution form
/// (f * Dw)(t). Requires a kernel singular at 0; bounded kernels would need
/// an explicit atom term and are rejected. Node 0 of the result is 0.
VectorPath gfd_derivative(const MatrixKernel& f, const VectorPath& w);

/// F-integral: convolution with the Sonine associate density of f. The
/// associate is solved internally; use gfd_integral_with to reuse one.
VectorPath gfd_integral(const MatrixKernel& f, const VectorPath& v);

VectorPath gfd_integral_with(const SampledMatrixFunction& sonine_density,
                             const VectorPath& v);

/// Nonlinear relaxation march for sigma = sigma0 + X * K(sigma, E), the
/// fixed-point form of D_F sigma = K(sigma, E). K must be pure; the solver
/// calls it repeatedly inside the per-node Picard iteration.
struct RelaxationProblem {
    MatrixKernel f; // singular LICM kernel
    std::function<Vector(const Vector&, const Vector&)> rhs;
    Vector sigma0;
    std::optional<VectorPath> strain; // defaults to the zero path
    TimeGrid grid;
    double picard_tol = 1e-10;
    int picard_max_iter = 50;
};

struct RelaxationResult {
    VectorPath sigma;
    std::vector<int> picard_iterations; // per node
};

RelaxationResult solve_relaxation(const RelaxationProblem& p);

} // namespace soninekit

#endif
