#include "soninekit/laplace.hpp"
#include "soninekit/alternation.hpp"
#include "soninekit/errors.hpp"

#include <cmath>
#include <stdexcept>

namespace soninekit {

namespace {

// Gaver-Stehfest weights for order 2M (Abate-Whitt form); exact small-integer
// combinatorics, fine in double for M = 7.
std::vector<double> gaver_stehfest_weights(int m)
{
    auto binom = [](int n, int k) {
        double b = 1.0;
        for (int i = 1; i <= k; ++i)
            b = b * (n - k + i) / i;
        return b;
    };
    double mfact = 1.0;
    for (int i = 2; i <= m; ++i)
        mfact *= i;
    std::vector<double> w(static_cast<std::size_t>(2 * m) + 1, 0.0);
    for (int k = 1; k <= 2 * m; ++k) {
        double sum = 0.0;
        for (int j = (k + 1) / 2; j <= std::min(k, m); ++j) {
            double term = std::pow(static_cast<double>(j), m + 1) / mfact;
            term *= binom(m, j) * binom(2 * j, j) * binom(j, k - j);
            sum += term;
        }
        w[static_cast<std::size_t>(k)] = ((m + k) % 2 == 0 ? 1.0 : -1.0) * sum;
    }
    return w;
}

constexpr int kGaverM = 7;   // order 14
constexpr int kTalbotM = 32; // contour points

Matrix invert_gaver(const LaplaceFn& fn, double t)
{
    static const std::vector<double> w = gaver_stehfest_weights(kGaverM);
    const double c = M_LN2 / t;
    Matrix acc = Matrix::Zero(fn.dim(), fn.dim());
    for (int k = 1; k <= 2 * kGaverM; ++k)
        acc += w[static_cast<std::size_t>(k)] * fn.eval_real(c * k);
    Matrix out = c * acc;
    if (!out.allFinite())
        throw std::runtime_error(
            "invert: Gaver-Stehfest summation overflowed; try the Talbot method");
    return out;
}

Matrix invert_talbot(const LaplaceFn& fn, double t)
{
    const int m = kTalbotM;
    const double r = 2.0 * m / (5.0 * t);
    ComplexMatrix acc = 0.5 * std::exp(r * t) * fn.eval(std::complex<double>(r, 0.0));
    for (int k = 1; k < m; ++k) {
        double theta = k * M_PI / m;
        double cot = std::cos(theta) / std::sin(theta);
        std::complex<double> s(r * theta * cot, r * theta);
        double sigma = theta + (theta * cot - 1.0) * cot;
        std::complex<double> weight = std::exp(s * t) * std::complex<double>(1.0, sigma);
        acc += weight * fn.eval(s);
    }
    Matrix out = (r / m) * acc.real();
    if (!out.allFinite())
        throw std::runtime_error("invert: Talbot summation produced non-finite values");
    return out;
}

} // namespace

Matrix LaplaceFn::eval_real(double p) const
{
    if (!(p > 0.0))
        throw std::domain_error("LaplaceFn::eval_real: need p > 0");
    return symmetrize(eval_(std::complex<double>(p, 0.0)).real());
}

LaplaceFn transform(const MatrixKernel& k)
{
    return LaplaceFn(k.dim(), [k](std::complex<double> p) {
        ComplexMatrix out = ComplexMatrix::Zero(k.dim(), k.dim());
        for (const auto& term : k.terms())
            out += term.coef.cast<std::complex<double>>() * term.prim.laplace(p);
        return out;
    });
}

LaplaceFn resolvent_transform(const Matrix& a1, const MatrixKernel& f)
{
    require_symmetric(a1, "resolvent_transform a1");
    LaplaceFn ft = transform(f);
    Matrix a1c = a1;
    return LaplaceFn(f.dim(), [a1c, ft](std::complex<double> p) {
        ComplexMatrix m = p * (a1c.cast<std::complex<double>>() + ft.eval(p));
        return ComplexMatrix(m.partialPivLu().inverse());
    });
}

Matrix invert(const LaplaceFn& fn, double t, InversionMethod method)
{
    if (!(t > 0.0))
        throw std::domain_error("invert: need t > 0");
    switch (method) {
    case InversionMethod::GaverStehfest:
        return invert_gaver(fn, t);
    case InversionMethod::Talbot:
        return invert_talbot(fn, t);
    }
    throw std::logic_error("invert: unknown method");
}

double invert_scalar(const std::function<std::complex<double>(std::complex<double>)>& fn,
                     double t, InversionMethod method)
{
    LaplaceFn wrapped(1, [&fn](std::complex<double> p) {
        ComplexMatrix m(1, 1);
        m(0, 0) = fn(p);
        return m;
    });
    return invert(wrapped, t, method)(0, 0);
}

Matrix StieltjesForm::stieltjes_eval(double p) const
{
    Matrix out = b;
    for (const auto& term : terms)
        out += term.h / (p + term.r);
    return out;
}

Matrix StieltjesForm::cbf_eval(double p) const
{
    return p * stieltjes_eval(p);
}

void StieltjesForm::validate() const
{
    require_symmetric(b, "StieltjesForm b");
    if (!is_psd(b))
        throw std::invalid_argument("StieltjesForm: b must be PSD");
    for (const auto& term : terms) {
        require_symmetric(term.h, "StieltjesForm term");
        if (term.h.rows() != b.rows())
            throw std::invalid_argument("StieltjesForm: term dimension mismatch");
        if (!is_psd(term.h))
            throw std::invalid_argument("StieltjesForm: mixture coefficients must be PSD");
        if (term.r < 0.0)
            throw std::invalid_argument("StieltjesForm: nodes r must be nonnegative");
    }
}

std::vector<double> log_spaced(double lo, double hi, int points)
{
    if (!(lo > 0.0) || !(hi > lo) || points < 2)
        throw std::invalid_argument("log_spaced: need 0 < lo < hi and points >= 2");
    std::vector<double> out(static_cast<std::size_t>(points));
    double step = std::log(hi / lo) / (points - 1);
    for (int i = 0; i < points; ++i)
        out[static_cast<std::size_t>(i)] = lo * std::exp(step * i);
    return out;
}

namespace {

const char* difference_check_name(int order)
{
    switch (order) {
    case 0: return "nonnegative";
    case 1: return "nonincreasing";
    case 2: return "convex";
    case 3: return "alternating-order-3";
    case 4: return "alternating-order-4";
    case 5: return "alternating-order-5";
    default: return "alternating-order-6";
    }
}

} // namespace

StieltjesReport check_stieltjes_samples(const std::function<Matrix(double)>& y, int dim,
                                        const std::vector<double>& p_grid,
                                        int max_order, double tol_factor)
{
    StieltjesReport report;
    if (max_order > 6)
        throw std::invalid_argument("check_stieltjes_samples: max_order must be <= 6");

    std::vector<Matrix> samples;
    std::vector<double> ps;
    samples.reserve(p_grid.size());
    for (double p : p_grid) {
        Matrix m = y(p);
        if (!m.allFinite()) {
            report.skipped_nodes.push_back(p);
            continue;
        }
        samples.push_back(symmetrize(m));
        ps.push_back(p);
    }
    if (ps.size() < static_cast<std::size_t>(max_order + 2))
        throw std::invalid_argument("check_stieltjes_samples: not enough usable nodes");

    std::vector<StieltjesCheckItem> per_order(static_cast<std::size_t>(max_order) + 1);
    for (int n = 0; n <= max_order; ++n)
        per_order[static_cast<std::size_t>(n)] = {difference_check_name(n), 0.0, 0.0};

    auto probes = probe_vectors(dim);
    std::vector<double> phi(ps.size());
    for (const auto& v : probes) {
        for (std::size_t i = 0; i < ps.size(); ++i)
            phi[i] = v.dot(samples[i] * v);
        auto res = check_alternating_differences(ps, phi, max_order, tol_factor);
        for (int n = 0; n <= max_order; ++n) {
            auto un = static_cast<std::size_t>(n);
            if (res.per_order_worst[un] > per_order[un].worst_violation) {
                per_order[un].worst_violation = res.per_order_worst[un];
                per_order[un].location = res.per_order_location[un];
            }
        }
        if (res.found) {
            report.passed = false;
            report.worst_violation = std::max(report.worst_violation, res.worst);
        }
    }
    report.checks = std::move(per_order);
    return report;
}

StieltjesReport cbf_inverse_check(const StieltjesForm& z, const std::vector<double>& p_grid,
                                  int max_order, double tol_factor)
{
    z.validate();
    auto inv = [&z](double p) -> Matrix {
        Matrix m = z.cbf_eval(p);
        if (sym_condition(m) > 1e14)
            return Matrix::Constant(m.rows(), m.cols(),
                                    std::numeric_limits<double>::quiet_NaN());
        return sym_inverse(m, "cbf_inverse_check");
    };
    return check_stieltjes_samples(inv, z.dim(), p_grid, max_order, tol_factor);
}

} // namespace soninekit
