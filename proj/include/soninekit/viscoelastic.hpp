#ifndef SONINEKIT_VISCOELASTIC_HPP
#define SONINEKIT_VISCOELASTIC_HPP

#include "soninekit/matrix_kernel.hpp"
#include "soninekit/resolvent.hpp"
#include "soninekit/time_grid.hpp"

#include <array>
#include <string>

namespace soninekit {

/// Rank-4 tensor on R^3 with the elasticity symmetries
/// T_ijkl = T_jikl = T_klij (21 independent constants).
class VoigtTensor {
public:
    /// Builds from full entries and validates the symmetries (within 1e-12
    /// relative; violations are rejected).
    static VoigtTensor from_entries(const std::array<double, 81>& entries);

    /// 21 constants in Voigt upper-triangle row-major order (the usual
    /// engineering table, no shear scaling).
    static VoigtTensor from_constants(const std::array<double, 21>& c);

    static VoigtTensor isotropic(double lambda, double mu);

    double at(int i, int j, int k, int l) const;
    std::array<double, 21> constants() const;

private:
    VoigtTensor() = default;
    std::array<double, 21> c_{};
};

/// Voigt pair of index I (0-based): 0..2 -> diagonal pairs, 3 -> (1,2),
/// 4 -> (0,2), 5 -> (0,1).
std::pair<int, int> voigt_pair(int index);
int voigt_index(int i, int j);

/// 6x6 matrix image R_IJ = f(I) f(J) T at the index pairs, f = 1 on the
/// normal indices and sqrt(2) on the shear indices, so bilinear forms of
/// symmetric rank-2 tensors are preserved exactly.
Matrix voigt_map(const VoigtTensor& t);
VoigtTensor voigt_unmap(const Matrix& r);

/// Symmetric 3x3 <-> 6-vector with the same scaling.
Vector voigt_vec(const Matrix& e);
Matrix voigt_unvec(const Vector& v);

/// Newtonian viscosity matrix plus LICM memory kernel, the (N, F) pair of a
/// relaxation law in Voigt-image form. Works for any matrix dimension; 6 is
/// the rank-4 tensor case.
struct RelaxationLaw {
    Matrix n_matrix;
    MatrixKernel f;

    void validate() const; // N PSD, kernel LICM-flagged and non-vanishing
};

/// Solves N C + F * C = t I for the creep function. The returned samples
/// carry C(0) in value0 (the creep either starts from 0 or jumps to the
/// inverse small-time kernel limit).
SampledMatrixFunction creep_from_relaxation(const RelaxationLaw& law, const TimeGrid& grid);

enum class CreepRegime {
    Jump,          // C(0) > 0: N = 0, kernel bounded with F(0+) = C(0)^{-1}
    Newtonian,     // C(0) = 0, C'(0) finite invertible: N = C'(0)^{-1}
    SingularKernel // C(0) = 0, C'(0+) divergent: N = 0, kernel singular
};
const char* to_string(CreepRegime r);

struct RecoveredRelaxation {
    Matrix n_matrix;
    SampledMatrixFunction f_samples; // singular-tagged in the singular regime
    CreepRegime regime;
    Matrix c0;                   // creep value at 0 used by the dichotomy
    Matrix cprime0;              // extrapolated first creep rate (when finite)
    Matrix f_infinity_estimate;  // 0 when the creep keeps growing, else C(t_end)^{-1}
    Matrix g2;                   // long-time creep rate estimate
};

/// Inverts the duality from creep samples: picks N by the dichotomy on C(0)
/// and C'(0+), then recovers the kernel samples by forward substitution on
/// the transposed, differentiated equation C(0) F + C' * F = I - C'(t) N.
RecoveredRelaxation relaxation_from_creep(const SampledMatrixFunction& creep);

struct DiagnosticItem {
    std::string name;
    bool applicable = true;
    double relative_deviation = 0.0;
    std::string note;
};

struct LimitReport {
    std::vector<DiagnosticItem> items;
    std::string creep_start; // "linear" | "jump" | "vertical"
    bool all_passed(double tol) const;
};

/// Measured-vs-predicted small- and long-time limits of a creep function
/// against its relaxation law: C(0), C'(0+) vs N^{-1}, C(t_end)^{-1} vs the
/// long-time kernel limit, and the decay of C'(t_end).
LimitReport limit_diagnostics(const RelaxationLaw& law, const SampledMatrixFunction& c);

} // namespace soninekit

#endif
