#include "soninekit/cmcheck.hpp"
#include "soninekit/alternation.hpp"
#include "soninekit/quadconv.hpp"

#include <cmath>
#include <stdexcept>

namespace soninekit {

AlternationViolation check_alternating_differences(const std::vector<double>& xs,
                                                   const std::vector<double>& ys,
                                                   int max_order, double tol)
{
    if (xs.size() != ys.size() || xs.size() < static_cast<std::size_t>(max_order) + 1)
        throw std::invalid_argument("check_alternating_differences: bad sample sizes");

    AlternationViolation out;
    out.per_order_worst.assign(static_cast<std::size_t>(max_order) + 1, 0.0);
    out.per_order_location.assign(static_cast<std::size_t>(max_order) + 1, 0.0);

    std::vector<double> dd = ys; // order-n divided differences in place
    for (int n = 0; n <= max_order; ++n) {
        std::size_t len = ys.size() - static_cast<std::size_t>(n);
        if (n > 0) {
            for (std::size_t i = 0; i < len; ++i)
                dd[i] = (dd[i + 1] - dd[i]) / (xs[i + static_cast<std::size_t>(n)] - xs[i]);
        }
        double scale = 0.0;
        for (std::size_t i = 0; i < len; ++i)
            scale = std::max(scale, std::fabs(dd[i]));
        if (scale == 0.0)
            continue;
        double sign = (n % 2 == 0) ? 1.0 : -1.0;
        bool first_found = false;
        for (std::size_t i = 0; i < len; ++i) {
            double signed_dd = sign * dd[i];
            if (signed_dd < -tol * scale) {
                double violation = -signed_dd / scale;
                double location = xs[i];
                out.found = true;
                auto un = static_cast<std::size_t>(n);
                if (violation > out.per_order_worst[un]) {
                    out.per_order_worst[un] = violation;
                    out.per_order_location[un] = location;
                }
                if (violation > out.worst) {
                    out.worst = violation;
                    out.worst_location = location;
                    out.worst_order = n;
                }
                if (!first_found && (out.first_order == -1 || n < out.first_order)) {
                    out.first_order = n;
                    out.first_location = location;
                    first_found = true;
                }
            }
        }
    }
    return out;
}

namespace {

std::vector<double> geometric_points(double t_min, double t_max, int points)
{
    std::vector<double> out(static_cast<std::size_t>(points));
    double ratio = std::log(t_max / t_min) / (points - 1);
    for (int i = 0; i < points; ++i)
        out[static_cast<std::size_t>(i)] = t_min * std::exp(ratio * i);
    return out;
}

// Thin a graded sample grid to a geometric subsequence so that high-order
// differences act on well-separated abscissas.
std::vector<int> geometric_thinning(const TimeGrid& grid, double ratio)
{
    std::vector<int> keep;
    double last = 0.0;
    for (int i = 1; i <= grid.n(); ++i) {
        if (keep.empty() || grid.node(i) >= ratio * last) {
            keep.push_back(i);
            last = grid.node(i);
        }
    }
    if (keep.back() != grid.n())
        keep.push_back(grid.n());
    return keep;
}

void merge_probe_result(CheckReport& report, const AlternationViolation& res, int probe)
{
    if (!res.found)
        return;
    report.passed = false;
    if (res.worst > report.worst_violation) {
        report.worst_violation = res.worst;
    }
    // Witness: first violation at the lowest violating order seen so far.
    if (report.witness.order == -1 || res.first_order < report.witness.order
        || (res.first_order == report.witness.order && res.first_location < report.witness.t)) {
        report.witness.order = res.first_order;
        report.witness.t = res.first_location;
        report.witness.probe = probe;
    }
}

} // namespace

CheckReport check_cm(const MatrixKernel& f, double t_min, double t_max, const CmOptions& opts)
{
    if (!(t_min > 0.0) || !(t_max > t_min))
        throw std::domain_error("check_cm: need 0 < t_min < t_max");
    if (opts.max_order > 6)
        throw std::invalid_argument("check_cm: max_order must be <= 6");

    CheckReport report;
    report.name = "cm";
    auto ts = geometric_points(t_min, t_max, opts.points);
    std::vector<Matrix> samples;
    samples.reserve(ts.size());
    for (double t : ts)
        samples.push_back(f.eval(t));

    auto probes = probe_vectors(f.dim(), opts.random_probes, opts.seed);
    std::vector<double> phi(ts.size());
    for (std::size_t pi = 0; pi < probes.size(); ++pi) {
        for (std::size_t i = 0; i < ts.size(); ++i)
            phi[i] = probes[pi].dot(samples[i] * probes[pi]);
        auto res = check_alternating_differences(ts, phi, opts.max_order, opts.tol_factor);
        merge_probe_result(report, res, static_cast<int>(pi));
    }
    return report;
}

CheckReport check_cm_samples(const SampledMatrixFunction& f, const CmOptions& opts)
{
    CheckReport report;
    report.name = "cm-samples";
    auto keep = geometric_thinning(f.grid, opts.thinning_ratio);
    if (static_cast<int>(keep.size()) < opts.max_order + 2) {
        report.passed = false;
        report.worst_violation = std::numeric_limits<double>::quiet_NaN();
        return report;
    }
    std::vector<double> ts;
    ts.reserve(keep.size());
    for (int i : keep)
        ts.push_back(f.grid.node(i));

    auto probes = probe_vectors(f.dim(), opts.random_probes, opts.seed);
    std::vector<double> phi(ts.size());
    for (std::size_t pi = 0; pi < probes.size(); ++pi) {
        for (std::size_t i = 0; i < keep.size(); ++i)
            phi[i] = probes[pi].dot(f.at(keep[i]) * probes[pi]);
        auto res = check_alternating_differences(ts, phi, opts.max_order, opts.tol_factor);
        merge_probe_result(report, res, static_cast<int>(pi));
    }
    return report;
}

CheckReport check_bernstein(const SampledMatrixFunction& b, const CmOptions& opts)
{
    CheckReport report;
    report.name = "bernstein";

    // PSD of b at (thinned) nodes.
    auto keep = geometric_thinning(b.grid, opts.thinning_ratio);
    for (int i : keep) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrize(b.at(i)), Eigen::EigenvaluesOnly);
        double lo = es.eigenvalues().minCoeff();
        double hi = es.eigenvalues().cwiseAbs().maxCoeff();
        double scale = std::max(hi, 1e-300);
        if (lo < -opts.tol_factor * scale) {
            report.passed = false;
            double violation = -lo / scale;
            if (violation > report.worst_violation) {
                report.worst_violation = violation;
                report.witness.t = b.grid.node(i);
                report.witness.order = 0;
            }
        }
    }

    // First-difference quotients delegated to the CM machinery.
    std::vector<double> ts;
    std::vector<Matrix> quot;
    int prev = 0;
    bool have_zero = b.value0.has_value();
    for (int i : keep) {
        double t_lo = (prev == 0) ? 0.0 : b.grid.node(prev);
        if (prev == 0 && !have_zero) {
            prev = i;
            continue;
        }
        const Matrix& lo_val = (prev == 0) ? *b.value0 : b.at(prev);
        double dt = b.grid.node(i) - t_lo;
        quot.push_back((b.at(i) - lo_val) / dt);
        ts.push_back(0.5 * (b.grid.node(i) + t_lo));
        prev = i;
    }
    if (ts.size() >= static_cast<std::size_t>(std::max(2, opts.max_order)) ) {
        int order = std::max(0, opts.max_order - 1);
        auto probes = probe_vectors(b.dim(), opts.random_probes, opts.seed);
        std::vector<double> phi(ts.size());
        for (std::size_t pi = 0; pi < probes.size(); ++pi) {
            for (std::size_t i = 0; i < ts.size(); ++i)
                phi[i] = probes[pi].dot(quot[i] * probes[pi]);
            auto res = check_alternating_differences(ts, phi, order, opts.tol_factor);
            merge_probe_result(report, res, static_cast<int>(pi));
        }
    }
    return report;
}

CheckReport check_sonine_pair(const MatrixKernel& k, const MatrixKernel& l,
                              const TimeGrid& grid, const PairOptions& opts)
{
    if (k.dim() != l.dim())
        throw std::invalid_argument("check_sonine_pair: dimension mismatch");
    CheckReport report;
    report.name = "sonine-pair";
    const int n = grid.n();
    const int dim = k.dim();

    // Two-sided product integration of (k*l)(t): masses of one factor against
    // exact cell averages of the other, averaged over the two pairings. Both
    // factors are analytic here, so cell averages come from exact moments;
    // this kills the head-cell bias of right-node sampling for singular
    // factors, and the symmetrized form is invariant under argument swap for
    // commuting pairs by construction.
    std::vector<Matrix> l_avg, k_avg;
    l_avg.reserve(static_cast<std::size_t>(n));
    k_avg.reserve(static_cast<std::size_t>(n));
    for (int j = 1; j <= n; ++j) {
        double h = grid.step(j);
        l_avg.push_back(l.moment(grid.node(j - 1), grid.node(j)) / h);
        k_avg.push_back(k.moment(grid.node(j - 1), grid.node(j)) / h);
    }
    Matrix eye = Matrix::Identity(dim, dim);
    double worst = 0.0;
    double worst_t = 0.0;
    for (int i = 1; i <= n; ++i) {
        double ti = grid.node(i);
        if (ti < opts.t_min)
            continue;
        Matrix acc = Matrix::Zero(dim, dim);
        for (int j = 1; j <= i; ++j) {
            double lo = ti - grid.node(j);
            double hi = ti - grid.node(j - 1);
            acc.noalias() += 0.5 * (k.moment(lo, hi) * l_avg[static_cast<std::size_t>(j - 1)]);
            acc.noalias() += 0.5 * (k_avg[static_cast<std::size_t>(j - 1)] * l.moment(lo, hi));
        }
        double err = (acc - eye).cwiseAbs().maxCoeff();
        if (err > worst) {
            worst = err;
            worst_t = ti;
        }
    }
    report.worst_violation = worst;
    report.witness.t = worst_t;
    report.passed = worst <= opts.tolerance;
    return report;
}

} // namespace soninekit
