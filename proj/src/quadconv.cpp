#include "soninekit/quadconv.hpp"

#include <algorithm>
#include <stdexcept>

namespace soninekit {

std::vector<Matrix> product_convolve(const MatrixKernel& k, const TimeGrid& grid,
                                     const std::vector<Matrix>& rhs)
{
    const int n = grid.n();
    if (static_cast<int>(rhs.size()) != n)
        throw std::invalid_argument("product_convolve: rhs must have one block per node i >= 1");
    const auto cols = rhs.front().cols();
    std::vector<Matrix> out(static_cast<std::size_t>(n),
                            Matrix::Zero(k.dim(), cols));
    // Row i uses kernel masses over [t_i - t_j, t_i - t_{j-1}]. Accumulate
    // per term with scalar moments so no per-pair weight matrix is built.
    Matrix partial(k.dim(), cols);
    for (int i = 1; i <= n; ++i) {
        double ti = grid.node(i);
        Matrix& acc = out[static_cast<std::size_t>(i - 1)];
        for (const auto& term : k.terms()) {
            partial.setZero();
            for (int j = 1; j <= i; ++j) {
                double m = term.prim.moment(ti - grid.node(j), ti - grid.node(j - 1));
                partial.noalias() += m * rhs[static_cast<std::size_t>(j - 1)];
            }
            acc.noalias() += term.coef * partial;
        }
    }
    return out;
}

SampledMatrixFunction convolve(const MatrixKernel& k, const SampledMatrixFunction& g)
{
    if (k.dim() != g.dim())
        throw std::invalid_argument("convolve: dimension mismatch");
    auto vals = product_convolve(k, g.grid, g.values);
    // A locally integrable kernel convolved with bounded samples vanishes at 0.
    return SampledMatrixFunction(g.grid, std::move(vals),
                                 Matrix::Zero(k.dim(), k.dim()), false);
}

PiecewiseConstantIntegral::PiecewiseConstantIntegral(const SampledMatrixFunction& f)
    : nodes_(f.grid.nodes()), values_(f.values)
{
    const int n = f.grid.n();
    cumulative_.resize(static_cast<std::size_t>(n) + 1);
    cumulative_[0] = Matrix::Zero(f.dim(), f.dim());
    for (int i = 1; i <= n; ++i)
        cumulative_[static_cast<std::size_t>(i)] =
            cumulative_[static_cast<std::size_t>(i - 1)]
            + values_[static_cast<std::size_t>(i - 1)] * f.grid.step(i);
}

Matrix PiecewiseConstantIntegral::at(double tau) const
{
    if (tau <= 0.0)
        return cumulative_.front();
    if (tau >= nodes_.back())
        return cumulative_.back();
    auto it = std::upper_bound(nodes_.begin(), nodes_.end(), tau);
    auto cell = static_cast<std::size_t>(it - nodes_.begin()); // tau in (t_{cell-1}, t_cell]
    return cumulative_[cell - 1] + values_[cell - 1] * (tau - nodes_[cell - 1]);
}

SampledMatrixFunction convolve_sampled(const SampledMatrixFunction& d,
                                       const SampledMatrixFunction& g)
{
    if (d.dim() != g.dim())
        throw std::invalid_argument("convolve_sampled: dimension mismatch");
    if (!d.grid.same_as(g.grid))
        throw std::invalid_argument("convolve_sampled: functions must share a grid");
    PiecewiseConstantIntegral mass(d);
    const int n = g.grid.n();
    std::vector<Matrix> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) {
        double ti = g.grid.node(i);
        Matrix acc = Matrix::Zero(d.dim(), d.dim());
        for (int j = 1; j <= i; ++j) {
            Matrix w = mass.over(ti - g.grid.node(j), ti - g.grid.node(j - 1));
            acc.noalias() += w * g.at(j);
        }
        out.push_back(acc);
    }
    return SampledMatrixFunction(g.grid, std::move(out),
                                 Matrix::Zero(d.dim(), d.dim()), false);
}

SampledMatrixFunction convolve_measure(const MeasureFn& m, const SampledMatrixFunction& g)
{
    require_symmetric(m.atom, "convolve_measure atom");
    SampledMatrixFunction out(g.grid,
                              std::vector<Matrix>(g.values.size()),
                              std::nullopt, false);
    std::vector<Matrix> conv;
    if (std::holds_alternative<MatrixKernel>(m.density)) {
        conv = convolve(std::get<MatrixKernel>(m.density), g).values;
    } else if (std::holds_alternative<SampledMatrixFunction>(m.density)) {
        conv = convolve_sampled(std::get<SampledMatrixFunction>(m.density), g).values;
    }
    for (std::size_t idx = 0; idx < g.values.size(); ++idx) {
        out.values[idx] = m.atom * g.values[idx];
        if (!conv.empty())
            out.values[idx] += conv[idx];
    }
    if (g.value0.has_value())
        out.value0 = m.atom * (*g.value0);
    return out;
}

} // namespace soninekit
