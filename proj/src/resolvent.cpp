#include "soninekit/resolvent.hpp"
#include "soninekit/errors.hpp"

#include <cmath>
#include <stdexcept>

namespace soninekit {

namespace {

constexpr double kCondLimit = 1e12;

bool is_zero_matrix(const Matrix& m)
{
    return m.cwiseAbs().maxCoeff() == 0.0;
}

void validate(const ResolventProblem& p)
{
    require_symmetric(p.a1, "ResolventProblem a1");
    if (p.a1.rows() != p.f.dim())
        throw std::invalid_argument("ResolventProblem: a1 and kernel dimensions differ");
    if (!is_psd(p.a1))
        throw HypothesisError("ResolventProblem: a1 must be positive semi-definite");
    if (p.rhs_order < 0)
        throw std::invalid_argument("ResolventProblem: rhs_order must be nonnegative");
    bool f_zero = true;
    for (const auto& term : p.f.terms())
        if (term.coef.cwiseAbs().maxCoeff() > 0.0)
            f_zero = false;
    if (f_zero && is_zero_matrix(p.a1))
        throw HypothesisError("ResolventProblem: need a1 > 0 or a nonzero kernel");
    if (!f_zero && !p.f.condition_star())
        throw HypothesisError(
            "ResolventProblem: kernel quadratic form vanishes identically in some direction");
}

// Forward substitution for a1 G(t_i) + sum_j W_ij G_j = rhs(t_i), where
// W_ij are exact kernel masses over [t_i - t_j, t_i - t_{j-1}] and rhs is
// the identity minus the atom contribution f(t_i) * atom.
std::vector<Matrix> forward_solve(const ResolventProblem& p, const Matrix& atom)
{
    const TimeGrid& grid = p.grid;
    const int n = grid.n();
    const int dim = p.f.dim();
    const bool has_atom = atom.cwiseAbs().maxCoeff() > 0.0;
    const Matrix eye = Matrix::Identity(dim, dim);

    std::vector<Matrix> sol;
    sol.reserve(static_cast<std::size_t>(n));
    Matrix partial(dim, dim), acc(dim, dim), step(dim, dim);
    for (int i = 1; i <= n; ++i) {
        const double ti = grid.node(i);
        acc.setZero();
        step = p.a1;
        for (const auto& term : p.f.terms()) {
            partial.setZero();
            for (int j = 1; j < i; ++j) {
                double m = term.prim.moment(ti - grid.node(j), ti - grid.node(j - 1));
                partial.noalias() += m * sol[static_cast<std::size_t>(j - 1)];
            }
            acc.noalias() += term.coef * partial;
            step.noalias() += term.coef * term.prim.moment(0.0, grid.step(i));
        }
        Matrix rhs = eye - acc;
        if (has_atom)
            rhs.noalias() -= p.f.eval(ti) * atom;
        if (sym_condition(step) > kCondLimit)
            throw HypothesisError(
                "resolvent: step matrix is numerically singular; the kernel violates "
                "the non-vanishing or invertible-limit conditions");
        // The one-sided scheme drifts off symmetry at quadrature level for
        // non-commuting mixtures; project back each step.
        sol.push_back(symmetrize(step.ldlt().solve(rhs)));
    }
    return sol;
}

Matrix trapezoid_cumsum_step(const Matrix& lo, const Matrix& hi, double h)
{
    return 0.5 * h * (lo + hi);
}

} // namespace

const char* to_string(SolutionClass c)
{
    switch (c) {
    case SolutionClass::Licm: return "licm";
    case SolutionClass::Bernstein: return "bernstein";
    case SolutionClass::NFoldIntegral: return "n_fold_integral";
    }
    return "unknown";
}

ResolventSolution solve_sonine(const ResolventProblem& p)
{
    if (p.rhs_order != 0)
        throw std::invalid_argument("solve_sonine: rhs_order must be 0 (use solve_rhs)");
    validate(p);

    std::vector<std::string> warnings;
    if (!p.f.licm_flagged())
        warnings.push_back("kernel is not CM-flagged: solve proceeds, solution theory "
                           "does not guarantee an LICM density");

    const int dim = p.f.dim();
    Matrix atom = Matrix::Zero(dim, dim);
    bool singular = false;
    if (is_zero_matrix(p.a1)) {
        auto f0 = p.f.f0_limit();
        singular = f0.singular;
        atom = f0.value;
    }

    auto values = forward_solve(p, atom);
    std::optional<Matrix> value0;
    SampledMatrixFunction density(p.grid, std::move(values), std::move(value0), singular);
    return {atom, std::move(density), SolutionClass::Licm, std::move(warnings)};
}

ResolventSolution solve_rhs(const ResolventProblem& p)
{
    if (p.rhs_order == 0)
        return solve_sonine(p);

    ResolventProblem base = p;
    base.rhs_order = 0;
    ResolventSolution s0 = solve_sonine(base);

    const int n = p.grid.n();
    const int dim = p.f.dim();

    // Level 1: X1(t) = atom + int_0^t G, with the integral taken cell-exact
    // on the piecewise-constant density (the sense in which the solver
    // determined G).
    std::vector<Matrix> level(static_cast<std::size_t>(n), Matrix::Zero(dim, dim));
    Matrix run = s0.atom;
    for (int i = 1; i <= n; ++i) {
        run += s0.density.at(i) * p.grid.step(i);
        level[static_cast<std::size_t>(i - 1)] = run;
    }
    Matrix jump = s0.atom;

    // Levels 2..n: trapezoid on the now-continuous integrand.
    for (int k = 2; k <= p.rhs_order; ++k) {
        std::vector<Matrix> next(static_cast<std::size_t>(n), Matrix::Zero(dim, dim));
        Matrix acc = Matrix::Zero(dim, dim);
        Matrix prev = jump; // value at t = 0 of the current level
        for (int i = 1; i <= n; ++i) {
            acc += trapezoid_cumsum_step(prev, level[static_cast<std::size_t>(i - 1)],
                                         p.grid.step(i));
            next[static_cast<std::size_t>(i - 1)] = acc;
            prev = level[static_cast<std::size_t>(i - 1)];
        }
        level = std::move(next);
        jump = Matrix::Zero(dim, dim);
    }

    SampledMatrixFunction density(p.grid, std::move(level), jump, false);
    SolutionClass cls = (p.rhs_order == 1) ? SolutionClass::Bernstein
                                           : SolutionClass::NFoldIntegral;
    return {Matrix::Zero(dim, dim), std::move(density), cls, std::move(s0.warnings)};
}

ResolventSolution solve_from_bernstein(const BernsteinFn& b, const TimeGrid& grid)
{
    if (!b.non_constant())
        throw HypothesisError(
            "solve_from_bernstein: Bernstein input is constant in some direction");
    ResolventProblem p{b.b0, b.derivative, 0, grid};
    return solve_sonine(p);
}

double residual(const ResolventProblem& p, const ResolventSolution& s, double t_min)
{
    const TimeGrid& grid = p.grid;
    if (!grid.same_as(s.density.grid))
        throw std::invalid_argument("residual: grids differ");
    const int n = grid.n();
    const int dim = p.f.dim();
    const bool has_atom = s.atom.cwiseAbs().maxCoeff() > 0.0;

    double rfact = 1.0;
    for (int k = 2; k <= p.rhs_order; ++k)
        rfact *= k;

    double worst = 0.0;
    Matrix partial(dim, dim), acc(dim, dim);
    for (int i = 1; i <= n; ++i) {
        const double ti = grid.node(i);
        if (ti < t_min)
            continue;
        acc.setZero();
        for (const auto& term : p.f.terms()) {
            partial.setZero();
            for (int j = 1; j <= i; ++j) {
                double m = term.prim.moment(ti - grid.node(j), ti - grid.node(j - 1));
                partial.noalias() += m * s.density.at(j);
            }
            acc.noalias() += term.coef * partial;
        }
        Matrix lhs = p.a1 * s.density.at(i) + acc;
        if (has_atom)
            lhs.noalias() += p.f.eval(ti) * s.atom;
        double rhs = std::pow(ti, p.rhs_order) / rfact;
        Matrix defect = lhs - rhs * Matrix::Identity(dim, dim);
        worst = std::max(worst, defect.cwiseAbs().maxCoeff());
    }
    return worst;
}

} // namespace soninekit
