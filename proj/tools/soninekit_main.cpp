#include "soninekit/errors.hpp"
#include "soninekit/io.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>

namespace fs = std::filesystem;
using namespace soninekit;
using soninekit::io::json;

namespace {

struct GridSpec {
    double t_end = 1.0;
    int n = 512;
    double gamma = 2.0;

    TimeGrid build() const { return TimeGrid(t_end, n, gamma); }
};

void add_grid_options(CLI::App* cmd, GridSpec& spec)
{
    cmd->add_option("--t-end", spec.t_end, "grid horizon")->check(CLI::PositiveNumber);
    cmd->add_option("--n", spec.n, "node count")->check(CLI::Range(2, 1 << 20));
    cmd->add_option("--gamma", spec.gamma, "grading exponent (>= 1)");
}

std::uint64_t resolve_seed(std::uint64_t flag_seed)
{
    // The environment variable takes precedence for reproducible pipelines.
    if (const char* env = std::getenv("SONINEKIT_SEED"))
        return std::strtoull(env, nullptr, 0);
    return flag_seed;
}

void ensure_out_dir(const std::string& out)
{
    std::error_code ec;
    fs::create_directories(out, ec);
    if (ec)
        throw IoError("cannot create output directory '" + out + "'");
}

Vector parse_vector_list(const std::string& csv)
{
    std::vector<double> vals;
    std::string cur;
    for (char c : csv + ",") {
        if (c == ',') {
            if (!cur.empty())
                vals.push_back(io::parse_double(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (vals.empty())
        throw IoError("empty vector literal");
    Vector v(static_cast<int>(vals.size()));
    for (std::size_t i = 0; i < vals.size(); ++i)
        v(static_cast<int>(i)) = vals[i];
    return v;
}

json builtin_catalog()
{
    json cat;
    cat["powerlaw05"] = io::kernel_to_json(
        MatrixKernel::scalar(ScalarPrimitive::power_law(0.5)));
    cat["powerlaw05_dual"] = io::kernel_to_json(
        MatrixKernel::scalar(ScalarPrimitive::power_law(0.5)));
    cat["damped05"] = io::kernel_to_json(
        MatrixKernel::scalar(ScalarPrimitive::damped_power_law(0.5, 1.0)));
    cat["damped05_dual"] = io::kernel_to_json(
        MatrixKernel::scalar(ScalarPrimitive::damped_power_law_dual(0.5, 1.0)));
    cat["exp1"] = io::kernel_to_json(
        MatrixKernel::scalar(ScalarPrimitive::exponential(1.0)));
    cat["constant"] = io::kernel_to_json(
        MatrixKernel::scalar(ScalarPrimitive::exponential(0.0)));
    cat["besselk05"] = io::kernel_to_json(
        MatrixKernel::scalar(ScalarPrimitive::bessel_k(0.5)));
    cat["bessell05"] = io::kernel_to_json(
        MatrixKernel::scalar(ScalarPrimitive::bessel_l(0.5)));
    return cat;
}

int run_catalog(const std::optional<std::string>& out)
{
    json cat = builtin_catalog();
    if (!out) {
        std::cout << cat.dump(2) << '\n';
        return 0;
    }
    ensure_out_dir(*out);
    for (auto& [name, spec] : cat.items())
        io::save_json(*out + "/" + name + ".json", spec);
    return 0;
}

int run_sonine(const std::string& kernel_path, const std::optional<std::string>& a1_path,
               int rhs_order, const GridSpec& gspec, const std::string& out)
{
    MatrixKernel f = io::load_kernel(kernel_path);
    Matrix a1 = Matrix::Zero(f.dim(), f.dim());
    if (a1_path)
        a1 = io::matrix_from_json(io::load_json(*a1_path), "a1");
    TimeGrid grid = gspec.build();

    ResolventProblem problem{std::move(a1), std::move(f), rhs_order, grid};
    ResolventSolution solution = solve_rhs(problem);
    double res = residual(problem, solution);

    ensure_out_dir(out);
    io::write_sampled_csv(out + "/density.csv", solution.density);
    io::save_json(out + "/solution.json", io::solution_to_json(solution, "density.csv"));
    json rep;
    rep["residual"] = res;
    rep["rhs_order"] = rhs_order;
    io::save_json(out + "/residual.json", rep);
    for (const auto& w : solution.warnings)
        std::cerr << "warning: " << w << '\n';
    return 0;
}

int run_duality_forward(const std::string& law_path, const GridSpec& gspec,
                        const std::string& out)
{
    RelaxationLaw law = io::law_from_json(io::load_json(law_path));
    TimeGrid grid = gspec.build();
    SampledMatrixFunction creep = creep_from_relaxation(law, grid);
    LimitReport limits = limit_diagnostics(law, creep);

    ensure_out_dir(out);
    io::write_sampled_csv(out + "/creep.csv", creep);
    io::save_json(out + "/limits.json", io::limit_report_to_json(limits));
    return 0;
}

int run_duality_inverse(const std::string& creep_path, const std::string& out)
{
    SampledMatrixFunction creep = io::read_sampled_csv(creep_path);
    RecoveredRelaxation rec = relaxation_from_creep(creep);

    ensure_out_dir(out);
    json nj;
    nj["n"] = io::matrix_to_json(rec.n_matrix);
    nj["regime"] = to_string(rec.regime);
    nj["c0"] = io::matrix_to_json(rec.c0);
    nj["f_infinity_estimate"] = io::matrix_to_json(rec.f_infinity_estimate);
    io::save_json(out + "/n_matrix.json", nj);
    io::write_sampled_csv(out + "/f.csv", rec.f_samples);
    return 0;
}

int run_gfd(const std::string& mode, const std::string& kernel_path,
            const std::optional<std::string>& path_csv, const std::string& k_choice,
            const std::optional<std::string>& k_matrix_path, const std::string& sigma0_csv,
            const std::optional<std::string>& strain_csv, const GridSpec& gspec,
            const std::string& out)
{
    MatrixKernel f = io::load_kernel(kernel_path);
    ensure_out_dir(out);
    if (mode == "deriv" || mode == "integ") {
        if (!path_csv)
            throw IoError("gfd " + mode + ": --path CSV is required");
        VectorPath p = io::read_path_csv(*path_csv);
        VectorPath r = (mode == "deriv") ? gfd_derivative(f, p) : gfd_integral(f, p);
        io::write_path_csv(out + "/path_out.csv", r);
        return 0;
    }

    // relax
    RelaxationProblem problem{std::move(f), {}, Vector(), std::nullopt,
                              gspec.build(), 1e-10, 50};
    problem.sigma0 = parse_vector_list(sigma0_csv);
    if (strain_csv)
        problem.strain = io::read_path_csv(*strain_csv);
    if (k_choice == "zero") {
        problem.rhs = [](const Vector& s, const Vector&) { return Vector::Zero(s.size()); };
    } else if (k_choice == "linear") {
        if (!k_matrix_path)
            throw IoError("gfd relax: --k-matrix is required for the linear choice");
        Matrix m = io::matrix_from_json(io::load_json(*k_matrix_path), "K matrix");
        problem.rhs = [m](const Vector& s, const Vector&) { return Vector(-m * s); };
    } else {
        throw IoError("gfd relax: unknown K choice '" + k_choice + "'");
    }

    RelaxationResult result = solve_relaxation(problem);
    io::write_path_csv(out + "/sigma.csv", result.sigma);
    json pj;
    pj["picard_iterations"] = result.picard_iterations;
    io::save_json(out + "/picard.json", pj);
    return 0;
}

int finish_check(const CheckReport& report, const std::string& report_path)
{
    io::save_json(report_path, io::check_report_to_json(report));
    return report.passed ? 0 : 3;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"matrix-valued Sonine equations, generalized fractional calculus "
                 "and viscoelastic duality"};
    app.require_subcommand(1);

    std::uint64_t seed = 0xC0FFEE;
    app.add_option("--seed", seed, "probe-vector seed (SONINEKIT_SEED overrides)");

    // catalog
    auto* cat = app.add_subcommand("catalog", "print or write the built-in kernel specs");
    std::optional<std::string> cat_out;
    cat->add_option("--out", cat_out, "write one JSON spec per kernel here");

    // sonine
    auto* son = app.add_subcommand("sonine", "solve a1 X + F * X = t^n/n! I");
    std::string son_kernel, son_out = "sonine-out";
    std::optional<std::string> son_a1;
    int son_order = 0;
    GridSpec son_grid;
    son->add_option("--kernel", son_kernel, "kernel spec JSON")->required();
    son->add_option("--a1", son_a1, "a1 matrix JSON");
    son->add_option("--rhs-order", son_order, "n in t^n/n! I")->check(CLI::NonNegativeNumber);
    add_grid_options(son, son_grid);
    son->add_option("--out", son_out, "output directory");

    // duality
    auto* dual = app.add_subcommand("duality", "relaxation <-> creep duality");
    auto* dual_fwd = dual->add_subcommand("forward", "(N, F) -> creep + limit diagnostics");
    std::string dual_law, dual_fwd_out = "duality-out";
    GridSpec dual_grid;
    dual_fwd->add_option("--law", dual_law, "relaxation law JSON {n, f}")->required();
    add_grid_options(dual_fwd, dual_grid);
    dual_fwd->add_option("--out", dual_fwd_out, "output directory");
    auto* dual_inv = dual->add_subcommand("inverse", "creep CSV -> (N, F) estimate");
    std::string dual_creep, dual_inv_out = "duality-out";
    dual_inv->add_option("--creep", dual_creep, "creep samples CSV")->required();
    dual_inv->add_option("--out", dual_inv_out, "output directory");
    dual->require_subcommand(1);

    // gfd
    auto* gfd = app.add_subcommand("gfd", "generalized fractional calculus");
    std::string gfd_kernel, gfd_out = "gfd-out", gfd_k_choice = "zero", gfd_sigma0 = "0";
    std::optional<std::string> gfd_path, gfd_k_matrix, gfd_strain;
    GridSpec gfd_grid;
    auto* gfd_deriv = gfd->add_subcommand("deriv", "F-derivative of a path");
    auto* gfd_integ = gfd->add_subcommand("integ", "F-integral of a path");
    auto* gfd_relax = gfd->add_subcommand("relax", "march D_F sigma = K(sigma, E)");
    for (auto* sub : {gfd_deriv, gfd_integ, gfd_relax}) {
        sub->add_option("--kernel", gfd_kernel, "singular kernel spec JSON")->required();
        sub->add_option("--out", gfd_out, "output directory");
    }
    for (auto* sub : {gfd_deriv, gfd_integ})
        sub->add_option("--path", gfd_path, "input path CSV")->required();
    gfd_relax->add_option("--k", gfd_k_choice, "built-in K: linear | zero");
    gfd_relax->add_option("--k-matrix", gfd_k_matrix, "M for K = -M sigma (JSON)");
    gfd_relax->add_option("--sigma0", gfd_sigma0, "initial state, comma separated");
    gfd_relax->add_option("--strain", gfd_strain, "strain path CSV");
    add_grid_options(gfd_relax, gfd_grid);
    gfd->require_subcommand(1);

    // check
    auto* chk = app.add_subcommand("check", "property-check suites");
    std::string chk_report = "report.json";
    auto* chk_cm = chk->add_subcommand("cm", "complete monotonicity of a kernel");
    std::string chk_kernel;
    double chk_tmin = 0.05, chk_tmax = 10.0, chk_tol = 1e-9;
    int chk_order = 4;
    chk_cm->add_option("--kernel", chk_kernel, "kernel spec JSON")->required();
    chk_cm->add_option("--t-min", chk_tmin, "window start");
    chk_cm->add_option("--t-max", chk_tmax, "window end");
    chk_cm->add_option("--max-order", chk_order, "difference depth (<= 6)");
    chk_cm->add_option("--tol", chk_tol, "violation tolerance factor");

    auto* chk_bern = chk->add_subcommand("bernstein", "Bernstein property of samples");
    std::string chk_samples;
    chk_bern->add_option("--samples", chk_samples, "matrix samples CSV")->required();
    chk_bern->add_option("--max-order", chk_order, "difference depth (<= 6)");
    chk_bern->add_option("--tol", chk_tol, "violation tolerance factor");

    auto* chk_pair = chk->add_subcommand("pair", "Sonine pair residual k * l = 1");
    std::string chk_k, chk_l;
    double pair_tmin = 0.05, pair_tol = 1e-2;
    GridSpec pair_grid;
    chk_pair->add_option("--k", chk_k, "first kernel JSON")->required();
    chk_pair->add_option("--l", chk_l, "second kernel JSON")->required();
    chk_pair->add_option("--t-min-check", pair_tmin, "smallest node included");
    chk_pair->add_option("--tol", pair_tol, "pass threshold");
    add_grid_options(chk_pair, pair_grid);

    auto* chk_st = chk->add_subcommand("stieltjes", "CBF inverse looks Stieltjes");
    std::string chk_cbf;
    double st_pmin = 1e-2, st_pmax = 1e2;
    int st_points = 60;
    chk_st->add_option("--cbf", chk_cbf, "CBF spec JSON {b, terms}")->required();
    chk_st->add_option("--p-min", st_pmin, "p grid start");
    chk_st->add_option("--p-max", st_pmax, "p grid end");
    chk_st->add_option("--p-points", st_points, "p grid size");
    chk_st->add_option("--max-order", chk_order, "difference depth (<= 6)");
    chk_st->add_option("--tol", chk_tol, "violation tolerance factor");
    for (auto* sub : {chk_cm, chk_bern, chk_pair, chk_st})
        sub->add_option("--report", chk_report, "report JSON path");
    chk->require_subcommand(1);

    CLI11_PARSE(app, argc, argv);
    seed = resolve_seed(seed);

    try {
        if (cat->parsed())
            return run_catalog(cat_out);
        if (son->parsed())
            return run_sonine(son_kernel, son_a1, son_order, son_grid, son_out);
        if (dual->parsed()) {
            if (dual_fwd->parsed())
                return run_duality_forward(dual_law, dual_grid, dual_fwd_out);
            return run_duality_inverse(dual_creep, dual_inv_out);
        }
        if (gfd->parsed()) {
            std::string mode = gfd_deriv->parsed() ? "deriv"
                               : gfd_integ->parsed() ? "integ" : "relax";
            return run_gfd(mode, gfd_kernel, gfd_path, gfd_k_choice, gfd_k_matrix,
                           gfd_sigma0, gfd_strain, gfd_grid, gfd_out);
        }
        if (chk->parsed()) {
            CmOptions opts;
            opts.max_order = chk_order;
            opts.tol_factor = chk_tol;
            opts.seed = seed;
            if (chk_cm->parsed()) {
                MatrixKernel k = io::load_kernel(chk_kernel);
                return finish_check(check_cm(k, chk_tmin, chk_tmax, opts), chk_report);
            }
            if (chk_bern->parsed()) {
                SampledMatrixFunction b = io::read_sampled_csv(chk_samples);
                return finish_check(check_bernstein(b, opts), chk_report);
            }
            if (chk_pair->parsed()) {
                MatrixKernel k = io::load_kernel(chk_k);
                MatrixKernel l = io::load_kernel(chk_l);
                PairOptions popts{pair_tmin, pair_tol};
                return finish_check(check_sonine_pair(k, l, pair_grid.build(), popts),
                                    chk_report);
            }
            StieltjesForm z = io::stieltjes_form_from_json(io::load_json(chk_cbf));
            auto p_grid = log_spaced(st_pmin, st_pmax, st_points);
            StieltjesReport rep = cbf_inverse_check(z, p_grid, chk_order, chk_tol);
            io::save_json(chk_report, io::stieltjes_report_to_json(rep));
            return rep.passed ? 0 : 3;
        }
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const HypothesisError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
