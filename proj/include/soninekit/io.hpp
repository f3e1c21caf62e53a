#ifndef SONINEKIT_IO_HPP
#define SONINEKIT_IO_HPP

#include "soninekit/cmcheck.hpp"
#include "soninekit/gfd.hpp"
#include "soninekit/laplace.hpp"
#include "soninekit/matrix_kernel.hpp"
#include "soninekit/resolvent.hpp"
#include "soninekit/viscoelastic.hpp"

#include <json.hpp>

#include <string>

namespace soninekit::io {

using nlohmann::json;

/// Shortest round-trip decimal representation of a double (byte-stable
/// across platforms).
std::string format_double(double x);
double parse_double(std::string_view s);

json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const json& j, const char* what);

json kernel_to_json(const MatrixKernel& k);
MatrixKernel kernel_from_json(const json& j);
MatrixKernel load_kernel(const std::string& path);

json load_json(const std::string& path);
void save_json(const std::string& path, const json& j);

/// Matrix samples CSV: header "t, m11, m12, ..., mNN" (row-major upper
/// triangle), one row per node; a t = 0 row appears when the value at 0
/// exists. Grids are reconstructed (and verified) from the node column.
void write_sampled_csv(const std::string& path, const SampledMatrixFunction& f);
SampledMatrixFunction read_sampled_csv(const std::string& path);

/// Vector path CSV: header "t, v1, ..., vN", one row per node including 0.
void write_path_csv(const std::string& path, const VectorPath& p);
VectorPath read_path_csv(const std::string& path);

json check_report_to_json(const CheckReport& r);
json stieltjes_report_to_json(const StieltjesReport& r);
json limit_report_to_json(const LimitReport& r);
json solution_to_json(const ResolventSolution& s, const std::string& density_csv_path);

StieltjesForm stieltjes_form_from_json(const json& j);

/// Relaxation law {"n": [[...]], "f": <kernel spec>}; n defaults to zero.
RelaxationLaw law_from_json(const json& j);

/// Accepts {"voigt_constants": [21 values]} (rank-4 tensor, Voigt
/// upper-triangle order), {"matrix": [[6x6]]}, or a bare [[...]] matrix.
Matrix six_by_six_from_json(const json& j);

} // namespace soninekit::io

#endif
