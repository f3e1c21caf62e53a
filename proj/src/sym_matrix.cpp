#include "soninekit/sym_matrix.hpp"
#include "soninekit/errors.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace soninekit {

bool is_symmetric(const Matrix& a, double tol)
{
    if (a.rows() != a.cols())
        return false;
    double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    return (a - a.transpose()).cwiseAbs().maxCoeff() <= tol * scale;
}

void require_symmetric(const Matrix& a, const char* what)
{
    if (!is_symmetric(a)) {
        std::ostringstream os;
        os << what << ": matrix is not symmetric within 1e-12";
        throw std::invalid_argument(os.str());
    }
}

bool is_psd(const Matrix& a, double tol_scale)
{
    Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrize(a), Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    double scale = std::max(std::fabs(ev.minCoeff()), std::fabs(ev.maxCoeff()));
    return ev.minCoeff() >= -tol_scale * std::max(scale, 1e-300);
}

Matrix symmetrize(const Matrix& a)
{
    return 0.5 * (a + a.transpose());
}

double sym_condition(const Matrix& a)
{
    Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrize(a), Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    double lo = ev.cwiseAbs().minCoeff();
    double hi = ev.cwiseAbs().maxCoeff();
    if (lo == 0.0)
        return std::numeric_limits<double>::infinity();
    return hi / lo;
}

Matrix sym_inverse(const Matrix& a, const char* context, double cond_limit)
{
    double cond = sym_condition(a);
    if (!(cond < cond_limit)) {
        std::ostringstream os;
        os << context << ": matrix is numerically singular (condition " << cond << ")";
        throw HypothesisError(os.str());
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrize(a));
    Matrix inv = es.eigenvectors()
                 * es.eigenvalues().cwiseInverse().asDiagonal()
                 * es.eigenvectors().transpose();
    return symmetrize(inv);
}

std::vector<Vector> probe_vectors(int dim, int n_random, std::uint64_t seed)
{
    std::vector<Vector> probes;
    probes.reserve(static_cast<std::size_t>(dim + n_random));
    for (int i = 0; i < dim; ++i)
        probes.push_back(Vector::Unit(dim, i));
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int k = 0; k < n_random; ++k) {
        Vector v(dim);
        do {
            for (int i = 0; i < dim; ++i)
                v[i] = gauss(rng);
        } while (v.norm() < 1e-8);
        probes.push_back(v / v.norm());
    }
    return probes;
}

} // namespace soninekit
