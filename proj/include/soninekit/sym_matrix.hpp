#ifndef SONINEKIT_SYM_MATRIX_HPP
#define SONINEKIT_SYM_MATRIX_HPP

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace soninekit {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Relative symmetry test: max |A - A^T| <= tol * max(1, max |A|).
bool is_symmetric(const Matrix& a, double tol = 1e-12);

/// Throws std::invalid_argument when the symmetry test fails.
void require_symmetric(const Matrix& a, const char* what);

/// Eigenvalue floor >= -tol_scale * max|eigenvalue| (scale-invariant PSD test).
bool is_psd(const Matrix& a, double tol_scale = 1e-10);

Matrix symmetrize(const Matrix& a);

/// 2-norm condition number of a symmetric matrix.
double sym_condition(const Matrix& a);

/// Inverse of a symmetric matrix with a condition guard; throws
/// HypothesisError when cond exceeds cond_limit.
Matrix sym_inverse(const Matrix& a, const char* context, double cond_limit = 1e12);

/// Canonical basis vectors followed by n_random seeded unit vectors; the
/// shared probe set used by the hypothesis checks and the CM tester.
std::vector<Vector> probe_vectors(int dim, int n_random = 8,
                                  std::uint64_t seed = 0xC0FFEE);

} // namespace soninekit

#endif
