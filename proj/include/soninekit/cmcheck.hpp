#ifndef SONINEKIT_CMCHECK_HPP
#define SONINEKIT_CMCHECK_HPP

#include "soninekit/matrix_kernel.hpp"
#include "soninekit/time_grid.hpp"

#include <cstdint>
#include <string>

namespace soninekit {

struct CheckWitness {
    double t = 0.0;
    int order = -1;
    int probe = -1;
};

struct CheckReport {
    std::string name;
    bool passed = true;
    double worst_violation = 0.0; // normalized by the per-order scale
    CheckWitness witness;         // first violation at the lowest violating order
};

struct CmOptions {
    int max_order = 4;            // divided-difference depth, <= 6
    double tol_factor = 1e-9;     // violation threshold relative to local scale
    int points = 64;              // geometric sample count for analytic inputs
    double thinning_ratio = 1.35; // geometric thinning of sample grids
    int random_probes = 8;
    std::uint64_t seed = 0xC0FFEE;
};

/// Finite necessary-condition CM test: quadratic forms along probe vectors
/// sampled geometrically on [t_min, t_max], divided differences up to
/// max_order must alternate in sign. A clean sign change reports order 0
/// with the first offending abscissa as witness.
CheckReport check_cm(const MatrixKernel& f, double t_min, double t_max,
                     const CmOptions& opts = {});

/// Same test on sampled data; the sample grid is thinned geometrically so
/// high-order differences act on well-separated nodes.
CheckReport check_cm_samples(const SampledMatrixFunction& f, const CmOptions& opts = {});

/// Bernstein test on samples: PSD at the nodes plus CM-style alternation of
/// the first-difference quotients.
CheckReport check_bernstein(const SampledMatrixFunction& b, const CmOptions& opts = {});

struct PairOptions {
    double t_min = 0.05;     // nodes below this are quadrature-dominated
    double tolerance = 1e-2; // quadrature-limited pass threshold
};

/// max_i ||(k*l)(t_i) - I||_inf over grid nodes with t_i >= t_min, via
/// two-sided product integration.
CheckReport check_sonine_pair(const MatrixKernel& k, const MatrixKernel& l,
                              const TimeGrid& grid, const PairOptions& opts = {});

} // namespace soninekit

#endif
