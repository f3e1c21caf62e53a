#include "soninekit/io.hpp"
#include "soninekit/errors.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace soninekit::io {

std::string format_double(double x)
{
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

double parse_double(std::string_view s)
{
    // Trim blanks.
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    double v = 0.0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw IoError("failed to parse number '" + std::string(s) + "'");
    return v;
}

json matrix_to_json(const Matrix& m)
{
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const json& j, const char* what)
{
    if (!j.is_array() || j.empty() || !j.front().is_array())
        throw IoError(std::string(what) + ": expected an array of rows");
    auto rows = static_cast<Eigen::Index>(j.size());
    auto cols = static_cast<Eigen::Index>(j.front().size());
    Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const auto& row = j[static_cast<std::size_t>(i)];
        if (static_cast<Eigen::Index>(row.size()) != cols)
            throw IoError(std::string(what) + ": ragged matrix rows");
        for (Eigen::Index c = 0; c < cols; ++c)
            m(i, c) = row[static_cast<std::size_t>(c)].get<double>();
    }
    return m;
}

namespace {

json prim_to_json(const ScalarPrimitive& p)
{
    json j;
    switch (p.kind()) {
    case PrimitiveKind::PowerLaw:
        j["type"] = "power_law";
        j["a"] = p.param_a();
        break;
    case PrimitiveKind::DampedPowerLaw:
        j["type"] = "damped_power_law";
        j["a"] = p.param_a();
        j["lam"] = p.param_lam();
        break;
    case PrimitiveKind::DampedPowerLawDual:
        j["type"] = "damped_power_law_dual";
        j["a"] = p.param_a();
        j["lam"] = p.param_lam();
        break;
    case PrimitiveKind::Exponential:
        j["type"] = "exponential";
        j["r"] = p.param_r();
        break;
    case PrimitiveKind::BesselK:
        j["type"] = "bessel_k";
        j["lam"] = p.param_lam();
        break;
    case PrimitiveKind::BesselL:
        j["type"] = "bessel_l";
        j["lam"] = p.param_lam();
        break;
    }
    return j;
}

ScalarPrimitive prim_from_json(const json& j)
{
    const std::string type = j.at("type").get<std::string>();
    if (type == "power_law")
        return ScalarPrimitive::power_law(j.at("a").get<double>());
    if (type == "damped_power_law")
        return ScalarPrimitive::damped_power_law(j.at("a").get<double>(),
                                                 j.at("lam").get<double>());
    if (type == "damped_power_law_dual")
        return ScalarPrimitive::damped_power_law_dual(j.at("a").get<double>(),
                                                      j.at("lam").get<double>());
    if (type == "exponential")
        return ScalarPrimitive::exponential(j.at("r").get<double>());
    if (type == "bessel_k")
        return ScalarPrimitive::bessel_k(j.at("lam").get<double>());
    if (type == "bessel_l")
        return ScalarPrimitive::bessel_l(j.at("lam").get<double>());
    throw IoError("unknown primitive type '" + type + "'");
}

std::vector<std::string> split_csv_line(const std::string& line)
{
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

// Reconstruct the graded grid from the positive node column and verify the
// nodes actually follow the t_end (i/n)^gamma law.
TimeGrid grid_from_nodes(const std::vector<double>& ts)
{
    if (ts.size() < 2)
        throw IoError("CSV: need at least 2 positive nodes");
    int n = static_cast<int>(ts.size());
    double t_end = ts.back();
    double gamma = std::log(t_end / ts.front()) / std::log(static_cast<double>(n));
    if (!(gamma >= 1.0) || !std::isfinite(gamma))
        throw IoError("CSV: node column is not a graded grid");
    // Snap near-integer grading exponents so round trips rebuild exactly.
    if (std::fabs(gamma - std::round(gamma)) < 1e-9)
        gamma = std::round(gamma);
    TimeGrid grid(t_end, n, gamma);
    for (int i = 1; i <= n; ++i)
        if (std::fabs(grid.node(i) - ts[static_cast<std::size_t>(i - 1)]) > 1e-9 * t_end)
            throw IoError("CSV: node column is not a graded grid");
    return grid;
}

} // namespace

json kernel_to_json(const MatrixKernel& k)
{
    json j;
    j["dim"] = k.dim();
    json terms = json::array();
    for (const auto& term : k.terms()) {
        json t;
        t["coef"] = matrix_to_json(term.coef);
        t["prim"] = prim_to_json(term.prim);
        terms.push_back(std::move(t));
    }
    j["terms"] = std::move(terms);
    return j;
}

MatrixKernel kernel_from_json(const json& j)
{
    int dim = j.at("dim").get<int>();
    std::vector<KernelTerm> terms;
    for (const auto& t : j.at("terms")) {
        Matrix coef = matrix_from_json(t.at("coef"), "kernel coef");
        terms.push_back({std::move(coef), prim_from_json(t.at("prim"))});
    }
    return MatrixKernel(dim, std::move(terms));
}

json load_json(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw IoError("cannot parse '" + path + "': " + e.what());
    }
    return j;
}

void save_json(const std::string& path, const json& j)
{
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot write '" + path + "'");
    out << j.dump(2) << '\n';
}

MatrixKernel load_kernel(const std::string& path)
{
    try {
        return kernel_from_json(load_json(path));
    } catch (const json::exception& e) {
        throw IoError("kernel spec '" + path + "': " + e.what());
    }
}

void write_sampled_csv(const std::string& path, const SampledMatrixFunction& f)
{
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot write '" + path + "'");
    const int dim = f.dim();
    out << "t";
    for (int i = 1; i <= dim; ++i)
        for (int j = i; j <= dim; ++j)
            out << ", m" << i << j;
    out << '\n';
    auto write_row = [&](double t, const Matrix& m) {
        out << format_double(t);
        for (int i = 0; i < dim; ++i)
            for (int j = i; j < dim; ++j)
                out << ", " << format_double(m(i, j));
        out << '\n';
    };
    if (f.value0)
        write_row(0.0, *f.value0);
    for (int i = 1; i <= f.grid.n(); ++i)
        write_row(f.grid.node(i), f.at(i));
}

SampledMatrixFunction read_sampled_csv(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line))
        throw IoError("CSV '" + path + "' is empty");
    auto header = split_csv_line(line);
    auto ncols = header.size() - 1;
    // upper triangle of dim x dim has dim(dim+1)/2 entries
    int dim = static_cast<int>(std::round((std::sqrt(8.0 * ncols + 1.0) - 1.0) / 2.0));
    if (static_cast<std::size_t>(dim * (dim + 1) / 2) != ncols)
        throw IoError("CSV '" + path + "': header is not an upper-triangle layout");

    std::vector<double> ts;
    std::vector<Matrix> values;
    std::optional<Matrix> value0;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        auto fields = split_csv_line(line);
        if (fields.size() != ncols + 1)
            throw IoError("CSV '" + path + "': wrong field count");
        double t = parse_double(fields[0]);
        Matrix m(dim, dim);
        std::size_t pos = 1;
        for (int i = 0; i < dim; ++i)
            for (int j = i; j < dim; ++j) {
                double v = parse_double(fields[pos++]);
                m(i, j) = v;
                m(j, i) = v;
            }
        if (t == 0.0)
            value0 = std::move(m);
        else {
            ts.push_back(t);
            values.push_back(std::move(m));
        }
    }
    TimeGrid grid = grid_from_nodes(ts);
    return SampledMatrixFunction(grid, std::move(values), std::move(value0), false);
}

void write_path_csv(const std::string& path, const VectorPath& p)
{
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot write '" + path + "'");
    const int dim = p.dim();
    out << "t";
    for (int i = 1; i <= dim; ++i)
        out << ", v" << i;
    out << '\n';
    for (int i = 0; i <= p.grid.n(); ++i) {
        out << format_double(p.grid.node(i));
        for (int c = 0; c < dim; ++c)
            out << ", " << format_double(p.at(i)(c));
        out << '\n';
    }
}

VectorPath read_path_csv(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line))
        throw IoError("CSV '" + path + "' is empty");
    auto header = split_csv_line(line);
    int dim = static_cast<int>(header.size()) - 1;
    if (dim < 1)
        throw IoError("CSV '" + path + "': no value columns");

    std::vector<double> ts;
    std::vector<Vector> values;
    std::optional<Vector> value0;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        auto fields = split_csv_line(line);
        if (static_cast<int>(fields.size()) != dim + 1)
            throw IoError("CSV '" + path + "': wrong field count");
        double t = parse_double(fields[0]);
        Vector v(dim);
        for (int c = 0; c < dim; ++c)
            v(c) = parse_double(fields[static_cast<std::size_t>(c) + 1]);
        if (t == 0.0)
            value0 = std::move(v);
        else {
            ts.push_back(t);
            values.push_back(std::move(v));
        }
    }
    if (!value0)
        throw IoError("CSV '" + path + "': paths need a t = 0 row");
    TimeGrid grid = grid_from_nodes(ts);
    std::vector<Vector> all;
    all.reserve(values.size() + 1);
    all.push_back(std::move(*value0));
    for (auto& v : values)
        all.push_back(std::move(v));
    return VectorPath(grid, std::move(all));
}

json check_report_to_json(const CheckReport& r)
{
    json j;
    j["name"] = r.name;
    j["passed"] = r.passed;
    j["worst_violation"] = r.worst_violation;
    json w;
    w["t"] = r.witness.t;
    w["order"] = r.witness.order;
    w["probe"] = r.witness.probe;
    j["witness"] = std::move(w);
    return j;
}

json stieltjes_report_to_json(const StieltjesReport& r)
{
    json checks = json::array();
    for (const auto& c : r.checks) {
        json item;
        item["name"] = c.name;
        item["worst_violation"] = c.worst_violation;
        item["location"] = c.location;
        checks.push_back(std::move(item));
    }
    json j;
    j["passed"] = r.passed;
    j["worst_violation"] = r.worst_violation;
    j["checks"] = std::move(checks);
    j["skipped_nodes"] = r.skipped_nodes;
    return j;
}

json limit_report_to_json(const LimitReport& r)
{
    json items = json::array();
    for (const auto& item : r.items) {
        json ji;
        ji["name"] = item.name;
        ji["applicable"] = item.applicable;
        ji["relative_deviation"] = item.relative_deviation;
        ji["note"] = item.note;
        items.push_back(std::move(ji));
    }
    json j;
    j["items"] = std::move(items);
    j["creep_start"] = r.creep_start;
    return j;
}

json solution_to_json(const ResolventSolution& s, const std::string& density_csv_path)
{
    json j;
    j["atom"] = matrix_to_json(s.atom);
    j["density_csv"] = density_csv_path;
    j["classification"] = to_string(s.classification);
    j["singular_density"] = s.density.singular;
    if (!s.warnings.empty())
        j["warnings"] = s.warnings;
    return j;
}

StieltjesForm stieltjes_form_from_json(const json& j)
{
    StieltjesForm form;
    form.b = matrix_from_json(j.at("b"), "stieltjes b");
    for (const auto& t : j.at("terms")) {
        StieltjesTerm term;
        term.h = matrix_from_json(t.at("h"), "stieltjes term h");
        term.r = t.at("r").get<double>();
        form.terms.push_back(std::move(term));
    }
    form.validate();
    return form;
}

RelaxationLaw law_from_json(const json& j)
{
    MatrixKernel f = kernel_from_json(j.at("f"));
    Matrix n;
    if (j.contains("n"))
        n = matrix_from_json(j.at("n"), "law n");
    else
        n = Matrix::Zero(f.dim(), f.dim());
    return RelaxationLaw{std::move(n), std::move(f)};
}

Matrix six_by_six_from_json(const json& j)
{
    if (j.is_array())
        return matrix_from_json(j, "6x6 matrix");
    if (j.contains("matrix"))
        return matrix_from_json(j.at("matrix"), "6x6 matrix");
    if (j.contains("voigt_constants")) {
        const auto& c = j.at("voigt_constants");
        if (c.size() != 21)
            throw IoError("voigt_constants: expected 21 values");
        std::array<double, 21> vals{};
        for (std::size_t i = 0; i < 21; ++i)
            vals[i] = c[i].get<double>();
        return voigt_map(VoigtTensor::from_constants(vals));
    }
    throw IoError("expected 'voigt_constants', 'matrix', or a bare matrix array");
}

} // namespace soninekit::io
