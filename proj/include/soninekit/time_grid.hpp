#ifndef SONINEKIT_TIME_GRID_HPP
#define SONINEKIT_TIME_GRID_HPP

#include "soninekit/sym_matrix.hpp"

#include <optional>
#include <vector>

namespace soninekit {

/// Graded grid t_i = t_end (i/n)^gamma, i = 0..n. gamma = 1 is uniform;
/// gamma = 2 is the default that compensates the weak kernel singularities
/// handled here.
class TimeGrid {
public:
    TimeGrid(double t_end, int n, double gamma);

    double t_end() const { return t_end_; }
    int n() const { return n_; }
    double gamma() const { return gamma_; }

    double node(int i) const { return nodes_[static_cast<std::size_t>(i)]; }
    double step(int i) const { return nodes_[static_cast<std::size_t>(i)] - nodes_[static_cast<std::size_t>(i - 1)]; }
    const std::vector<double>& nodes() const { return nodes_; }

    bool same_as(const TimeGrid& other) const;

private:
    double t_end_;
    int n_;
    double gamma_;
    std::vector<double> nodes_;
};

TimeGrid make_grid(double t_end, int n, double gamma);

/// Default production grid for t_end = 1 scale problems.
TimeGrid default_grid(double t_end = 1.0);

/// Matrix samples on a grid. Values live at nodes 1..n; the value at t = 0
/// is optional and absent for singular functions (which blow up there).
struct SampledMatrixFunction {
    TimeGrid grid;
    std::vector<Matrix> values;    // values[i-1] is the sample at node i
    std::optional<Matrix> value0;  // sample at t = 0 when finite
    bool singular = false;

    SampledMatrixFunction(TimeGrid g, std::vector<Matrix> vals,
                          std::optional<Matrix> v0 = std::nullopt,
                          bool singular_tag = false);

    int dim() const { return static_cast<int>(values.front().rows()); }
    const Matrix& at(int i) const { return values[static_cast<std::size_t>(i - 1)]; }
    Matrix& at(int i) { return values[static_cast<std::size_t>(i - 1)]; }

    /// Sample an analytic matrix function on a grid.
    static SampledMatrixFunction sample(const TimeGrid& g,
                                        const std::function<Matrix(double)>& fn,
                                        bool include_zero = false,
                                        bool singular_tag = false);
};

} // namespace soninekit

#endif
