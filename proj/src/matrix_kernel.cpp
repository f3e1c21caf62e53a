#include "soninekit/matrix_kernel.hpp"
#include "soninekit/errors.hpp"

#include <cmath>
#include <stdexcept>

namespace soninekit {

MatrixKernel::MatrixKernel(int dim, std::vector<KernelTerm> terms)
    : dim_(dim), terms_(std::move(terms))
{
    if (dim_ <= 0)
        throw std::invalid_argument("MatrixKernel: dim must be positive");
    for (const auto& term : terms_) {
        if (term.coef.rows() != dim_ || term.coef.cols() != dim_)
            throw std::invalid_argument("MatrixKernel: coefficient dimension mismatch");
        require_symmetric(term.coef, "MatrixKernel coefficient");
    }
}

MatrixKernel MatrixKernel::scalar(const ScalarPrimitive& prim)
{
    return single(Matrix::Identity(1, 1), prim);
}

MatrixKernel MatrixKernel::single(const Matrix& coef, const ScalarPrimitive& prim)
{
    std::vector<KernelTerm> terms;
    terms.push_back({coef, prim});
    return MatrixKernel(static_cast<int>(coef.rows()), std::move(terms));
}

bool MatrixKernel::licm_flagged() const
{
    for (const auto& term : terms_) {
        if (!term.prim.completely_monotone())
            return false;
        if (!is_psd(term.coef))
            return false;
    }
    return true;
}

bool MatrixKernel::singular_at_zero() const
{
    for (const auto& term : terms_) {
        if (term.prim.singular_at_zero() && term.coef.cwiseAbs().maxCoeff() > 0.0)
            return true;
    }
    return false;
}

Matrix MatrixKernel::eval(double t) const
{
    if (!(t > 0.0))
        throw std::domain_error("MatrixKernel::eval: need t > 0");
    Matrix out = Matrix::Zero(dim_, dim_);
    for (const auto& term : terms_)
        out += term.coef * term.prim.value(t);
    return out;
}

Matrix MatrixKernel::antiderivative(double t) const
{
    if (t < 0.0)
        throw std::domain_error("MatrixKernel::antiderivative: need t >= 0");
    Matrix out = Matrix::Zero(dim_, dim_);
    for (const auto& term : terms_)
        out += term.coef * term.prim.antiderivative(t);
    return out;
}

Matrix MatrixKernel::moment(double lo, double hi) const
{
    Matrix out = Matrix::Zero(dim_, dim_);
    for (const auto& term : terms_)
        out += term.coef * term.prim.moment(lo, hi);
    return out;
}

MatrixKernel::F0Result MatrixKernel::f0_limit() const
{
    if (!condition_star())
        throw HypothesisError(
            "f0_limit: kernel has a direction with identically vanishing quadratic form");
    if (singular_at_zero())
        return {Matrix::Zero(dim_, dim_), true};
    Matrix at_zero = Matrix::Zero(dim_, dim_);
    for (const auto& term : terms_)
        at_zero += term.coef * term.prim.limit_at_zero();
    return {sym_inverse(at_zero, "f0_limit: limit of F at 0 violates invertibility"), false};
}

Matrix MatrixKernel::f_infinity() const
{
    Matrix out = Matrix::Zero(dim_, dim_);
    for (const auto& term : terms_)
        out += term.coef * term.prim.limit_at_infinity();
    return out;
}

bool MatrixKernel::condition_star(const std::vector<double>& probe_times) const
{
    auto probes = probe_vectors(dim_);
    for (const auto& v : probes) {
        double best = 0.0;
        for (double t : probe_times) {
            Matrix f = eval(t);
            best = std::max(best, std::fabs(v.dot(f * v)));
        }
        if (best == 0.0)
            return false;
    }
    return true;
}

BernsteinFn::BernsteinFn(Matrix b0_in, MatrixKernel derivative_in)
    : b0(std::move(b0_in)), derivative(std::move(derivative_in))
{
    require_symmetric(b0, "BernsteinFn b0");
    if (b0.rows() != derivative.dim())
        throw std::invalid_argument("BernsteinFn: b0 dimension mismatch");
    if (!is_psd(b0))
        throw std::invalid_argument("BernsteinFn: b0 must be PSD");
}

Matrix BernsteinFn::eval(double t) const
{
    return b0 + derivative.antiderivative(t);
}

} // namespace soninekit
