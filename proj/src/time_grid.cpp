#include "soninekit/time_grid.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

namespace soninekit {

TimeGrid::TimeGrid(double t_end, int n, double gamma)
    : t_end_(t_end), n_(n), gamma_(gamma)
{
    if (!(t_end > 0.0))
        throw std::domain_error("TimeGrid: t_end must be positive");
    if (n < 2)
        throw std::domain_error("TimeGrid: need at least 2 steps");
    if (!(gamma >= 1.0))
        throw std::domain_error("TimeGrid: grading exponent must be >= 1");
    nodes_.resize(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i)
        nodes_[static_cast<std::size_t>(i)] =
            t_end * std::pow(static_cast<double>(i) / n, gamma);
    nodes_.front() = 0.0;
    nodes_.back() = t_end;
}

bool TimeGrid::same_as(const TimeGrid& other) const
{
    return n_ == other.n_ && t_end_ == other.t_end_ && gamma_ == other.gamma_;
}

TimeGrid make_grid(double t_end, int n, double gamma)
{
    return TimeGrid(t_end, n, gamma);
}

TimeGrid default_grid(double t_end)
{
    return TimeGrid(t_end, 512, 2.0);
}

SampledMatrixFunction::SampledMatrixFunction(TimeGrid g, std::vector<Matrix> vals,
                                             std::optional<Matrix> v0, bool singular_tag)
    : grid(std::move(g)), values(std::move(vals)), value0(std::move(v0)), singular(singular_tag)
{
    if (static_cast<int>(values.size()) != grid.n())
        throw std::invalid_argument("SampledMatrixFunction: need one value per node i >= 1");
    if (singular && value0.has_value())
        throw std::invalid_argument("SampledMatrixFunction: singular functions store no value at t = 0");
}

SampledMatrixFunction SampledMatrixFunction::sample(const TimeGrid& g,
                                                    const std::function<Matrix(double)>& fn,
                                                    bool include_zero, bool singular_tag)
{
    std::vector<Matrix> vals;
    vals.reserve(static_cast<std::size_t>(g.n()));
    for (int i = 1; i <= g.n(); ++i)
        vals.push_back(fn(g.node(i)));
    std::optional<Matrix> v0;
    if (include_zero && !singular_tag)
        v0 = fn(0.0);
    return SampledMatrixFunction(g, std::move(vals), std::move(v0), singular_tag);
}

} // namespace soninekit
