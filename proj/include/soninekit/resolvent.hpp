#ifndef SONINEKIT_RESOLVENT_HPP
#define SONINEKIT_RESOLVENT_HPP

#include "soninekit/matrix_kernel.hpp"
#include "soninekit/time_grid.hpp"

#include <string>
#include <vector>

namespace soninekit {

/// The convolution equation a1 X + (f * X)(t) = t^n/n! I on a grid.
struct ResolventProblem {
    Matrix a1;       // PSD, possibly zero
    MatrixKernel f;  // mixture kernel, non-vanishing in every direction
    int rhs_order;   // n
    TimeGrid grid;
};

enum class SolutionClass { Licm, Bernstein, NFoldIntegral };
const char* to_string(SolutionClass c);

/// Solution in atom + density form. For rhs_order 0 the measure solution is
/// atom * unit + density; the atom is the inverse small-time kernel limit
/// when a1 = 0 and the kernel is bounded, zero otherwise. For rhs_order >= 1
/// the solution is a genuine function held in density (value0 carries the
/// jump X(0)) and atom is zero.
struct ResolventSolution {
    Matrix atom;
    SampledMatrixFunction density;
    SolutionClass classification;
    std::vector<std::string> warnings;
};

/// Sonine-equation solve (rhs_order must be 0).
ResolventSolution solve_sonine(const ResolventProblem& p);

/// General right-hand side t^n/n! I; solves the order-0 problem and
/// integrates n times.
ResolventSolution solve_rhs(const ResolventProblem& p);

/// Solve B * X = t I for a Bernstein function B by differentiating to
/// B(0) X + B' * X = I and delegating.
ResolventSolution solve_from_bernstein(const BernsteinFn& b, const TimeGrid& grid);

/// max over nodes (with t >= t_min) of ||a1 X(t_i) + (f*X)(t_i) +
/// f(t_i) atom - R(t_i)||_inf using the solver's own quadrature weights.
double residual(const ResolventProblem& p, const ResolventSolution& s, double t_min = 0.0);

} // namespace soninekit

#endif
