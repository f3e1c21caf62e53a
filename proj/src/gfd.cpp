#include "soninekit/gfd.hpp"
#include "soninekit/errors.hpp"
#include "soninekit/resolvent.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace soninekit {

namespace {

void require_singular(const MatrixKernel& f, const char* op)
{
    if (!f.singular_at_zero())
        throw HypothesisError(std::string(op)
                              + ": kernel is bounded at 0; the generalized derivative/"
                                "integral needs a singular kernel (a bounded kernel's "
                                "Sonine solution carries an atom - add that term "
                                "explicitly if it is what you want)");
}

// Second-order three-point derivative of path values at nodes 1..n on a
// nonuniform grid.
std::vector<Vector> differentiate(const VectorPath& w)
{
    const auto& t = w.grid.nodes();
    const int n = w.grid.n();
    std::vector<Vector> dw(static_cast<std::size_t>(n), Vector::Zero(w.dim()));
    auto d3 = [&](int a, int b, int c, double x) {
        double xa = t[static_cast<std::size_t>(a)];
        double xb = t[static_cast<std::size_t>(b)];
        double xc = t[static_cast<std::size_t>(c)];
        Vector out = w.at(a) * ((2 * x - xb - xc) / ((xa - xb) * (xa - xc)));
        out += w.at(b) * ((2 * x - xa - xc) / ((xb - xa) * (xb - xc)));
        out += w.at(c) * ((2 * x - xa - xb) / ((xc - xa) * (xc - xb)));
        return out;
    };
    for (int i = 1; i <= n; ++i) {
        if (i < n)
            dw[static_cast<std::size_t>(i - 1)] = d3(i - 1, i, i + 1, t[static_cast<std::size_t>(i)]);
        else
            dw[static_cast<std::size_t>(i - 1)] = d3(n - 2, n - 1, n, t[static_cast<std::size_t>(n)]);
    }
    return dw;
}

// Exact running integral of the piecewise-linear interpolant of a path,
// evaluable between nodes.
class PathIntegral {
public:
    explicit PathIntegral(const VectorPath& v) : nodes_(v.grid.nodes()), values_(v.values)
    {
        cum_.resize(values_.size(), Vector::Zero(v.dim()));
        for (std::size_t i = 1; i < values_.size(); ++i) {
            double h = nodes_[i] - nodes_[i - 1];
            cum_[i] = cum_[i - 1] + 0.5 * h * (values_[i - 1] + values_[i]);
        }
    }

    Vector at(double tau) const
    {
        if (tau <= 0.0)
            return cum_.front();
        if (tau >= nodes_.back())
            return cum_.back();
        auto it = std::upper_bound(nodes_.begin(), nodes_.end(), tau);
        auto c = static_cast<std::size_t>(it - nodes_.begin());
        double h = nodes_[c] - nodes_[c - 1];
        double d = tau - nodes_[c - 1];
        Vector slope = (values_[c] - values_[c - 1]) / h;
        return cum_[c - 1] + values_[c - 1] * d + 0.5 * d * d * slope;
    }

private:
    std::vector<double> nodes_;
    std::vector<Vector> values_;
    std::vector<Vector> cum_;
};

} // namespace

VectorPath::VectorPath(TimeGrid g, std::vector<Vector> vals,
                       std::optional<std::vector<Vector>> deriv)
    : grid(std::move(g)), values(std::move(vals)), derivative(std::move(deriv))
{
    if (static_cast<int>(values.size()) != grid.n() + 1)
        throw std::invalid_argument("VectorPath: need one value per node, node 0 included");
    if (derivative && derivative->size() != values.size())
        throw std::invalid_argument("VectorPath: derivative samples must match the node layout");
}

VectorPath VectorPath::sample(const TimeGrid& g, const std::function<Vector(double)>& fn)
{
    std::vector<Vector> vals;
    vals.reserve(static_cast<std::size_t>(g.n()) + 1);
    for (int i = 0; i <= g.n(); ++i)
        vals.push_back(fn(g.node(i)));
    return VectorPath(g, std::move(vals));
}

VectorPath VectorPath::sample_with_derivative(const TimeGrid& g,
                                              const std::function<Vector(double)>& fn,
                                              const std::function<Vector(double)>& dfn)
{
    VectorPath p = sample(g, fn);
    std::vector<Vector> dv;
    dv.reserve(static_cast<std::size_t>(g.n()) + 1);
    for (int i = 0; i <= g.n(); ++i)
        dv.push_back(dfn(g.node(i)));
    p.derivative = std::move(dv);
    return p;
}

VectorPath gfd_derivative(const MatrixKernel& f, const VectorPath& w)
{
    require_singular(f, "gfd_derivative");
    if (f.dim() != w.dim())
        throw std::invalid_argument("gfd_derivative: dimension mismatch");

    const int n = w.grid.n();
    std::vector<Vector> dw;
    if (w.derivative) {
        dw.assign(w.derivative->begin() + 1, w.derivative->end());
    } else {
        dw = differentiate(w);
    }

    std::vector<Matrix> rhs;
    rhs.reserve(static_cast<std::size_t>(n));
    for (const auto& v : dw)
        rhs.push_back(v);
    auto conv = product_convolve(f, w.grid, rhs);

    std::vector<Vector> out;
    out.reserve(static_cast<std::size_t>(n) + 1);
    out.push_back(Vector::Zero(w.dim()));
    for (const auto& m : conv)
        out.push_back(m.col(0));
    return VectorPath(w.grid, std::move(out));
}

VectorPath gfd_integral(const MatrixKernel& f, const VectorPath& v)
{
    require_singular(f, "gfd_integral");
    if (f.dim() != v.dim())
        throw std::invalid_argument("gfd_integral: dimension mismatch");
    ResolventProblem p{Matrix::Zero(f.dim(), f.dim()), f, 0, v.grid};
    return gfd_integral_with(solve_sonine(p).density, v);
}

VectorPath gfd_integral_with(const SampledMatrixFunction& sonine_density, const VectorPath& v)
{
    if (sonine_density.dim() != v.dim())
        throw std::invalid_argument("gfd_integral_with: dimension mismatch");
    if (!sonine_density.grid.same_as(v.grid))
        throw std::invalid_argument("gfd_integral_with: grids differ");

    const TimeGrid& grid = v.grid;
    const int n = grid.n();
    PathIntegral vmass(v);

    std::vector<Vector> out;
    out.reserve(static_cast<std::size_t>(n) + 1);
    out.push_back(Vector::Zero(v.dim())); // the F-integral vanishes at 0
    for (int i = 1; i <= n; ++i) {
        double ti = grid.node(i);
        Vector acc = Vector::Zero(v.dim());
        for (int j = 1; j <= i; ++j) {
            Vector cell = vmass.at(ti - grid.node(j - 1)) - vmass.at(ti - grid.node(j));
            acc.noalias() += sonine_density.at(j) * cell;
        }
        out.push_back(acc);
    }
    return VectorPath(grid, std::move(out));
}

RelaxationResult solve_relaxation(const RelaxationProblem& p)
{
    require_singular(p.f, "solve_relaxation");
    const int dim = p.f.dim();
    if (p.sigma0.size() != dim)
        throw std::invalid_argument("solve_relaxation: sigma0 dimension mismatch");
    if (p.strain && (p.strain->dim() != dim || !p.strain->grid.same_as(p.grid)))
        throw std::invalid_argument("solve_relaxation: strain path incompatible");

    ResolventProblem sp{Matrix::Zero(dim, dim), p.f, 0, p.grid};
    SampledMatrixFunction g = solve_sonine(sp).density;
    PiecewiseConstantIntegral gmass(g);

    const int n = p.grid.n();
    auto strain_at = [&](int i) -> Vector {
        if (p.strain)
            return p.strain->at(i);
        return Vector::Zero(dim);
    };

    std::vector<Vector> sigma;
    sigma.reserve(static_cast<std::size_t>(n) + 1);
    sigma.push_back(p.sigma0);
    std::vector<Vector> k_values; // converged K(sigma_j, E_j) per node
    std::vector<int> iters;
    iters.reserve(static_cast<std::size_t>(n));

    for (int i = 1; i <= n; ++i) {
        double ti = p.grid.node(i);
        Vector known = p.sigma0;
        for (int j = 1; j < i; ++j) {
            Matrix w = gmass.over(ti - p.grid.node(j), ti - p.grid.node(j - 1));
            known.noalias() += w * k_values[static_cast<std::size_t>(j - 1)];
        }
        Matrix w_ii = gmass.over(ti - p.grid.node(i), ti - p.grid.node(i - 1));
        Vector e_i = strain_at(i);

        Vector cur = sigma.back(); // warm start from the previous node
        double prev_res = std::numeric_limits<double>::infinity();
        bool damped = false;
        int growth_streak = 0;
        int it = 0;
        for (; it < p.picard_max_iter; ++it) {
            Vector candidate = known + w_ii * p.rhs(cur, e_i);
            double res = (candidate - cur).lpNorm<Eigen::Infinity>();
            if (res > prev_res) {
                damped = true;
                if (++growth_streak >= 5)
                    throw HypothesisError(
                        "solve_relaxation: Picard iteration is not contracting "
                        "(step size or Lipschitz failure)");
            } else {
                growth_streak = 0;
            }
            cur = damped ? Vector(cur + 0.5 * (candidate - cur)) : candidate;
            prev_res = res;
            if (res <= p.picard_tol)
                break;
        }
        iters.push_back(it + 1);
        k_values.push_back(p.rhs(cur, e_i));
        sigma.push_back(cur);
    }

    return {VectorPath(p.grid, std::move(sigma)), std::move(iters)};
}

} // namespace soninekit
