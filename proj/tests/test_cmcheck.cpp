#include "soninekit/cmcheck.hpp"
#include "soninekit/quadconv.hpp"

#include <doctest.h>

#include <cmath>
#include <initializer_list>
#include <random>

using namespace soninekit;

namespace {

Matrix spd2()
{
    Matrix k(2, 2);
    k << 2.0, 0.5, 0.5, 1.0;
    return k;
}

} // namespace

TEST_CASE("CM check passes on the closed catalog")
{
    CmOptions opts;
    opts.max_order = 6;
    std::vector<MatrixKernel> catalog;
    catalog.push_back(MatrixKernel::scalar(ScalarPrimitive::exponential(1.0)));
    catalog.push_back(MatrixKernel::single(spd2(), ScalarPrimitive::power_law(0.5)));
    catalog.push_back(MatrixKernel::single(spd2(), ScalarPrimitive::damped_power_law(0.3, 2.0)));
    catalog.push_back(MatrixKernel::single(spd2(), ScalarPrimitive::damped_power_law_dual(0.5, 1.0)));
    catalog.push_back(MatrixKernel(2, {{spd2(), ScalarPrimitive::exponential(0.7)},
                                       {Matrix::Identity(2, 2), ScalarPrimitive::power_law(0.9)}}));
    for (const auto& k : catalog) {
        auto report = check_cm(k, 0.1, 10.0, opts);
        CHECK(report.passed);
        CHECK(report.worst_violation == 0.0);
    }
}

TEST_CASE("CM check pins the Bessel sign change")
{
    auto bk = MatrixKernel::scalar(ScalarPrimitive::bessel_k(0.5));
    auto report = check_cm(bk, 0.1, 2.0);
    CHECK(!report.passed);
    CHECK(report.witness.order == 0);
    // First offending sample sits just past the first cosine root pi^2/16.
    CHECK(report.witness.t > 0.55);
    CHECK(report.witness.t < 0.70);
    CHECK(report.worst_violation > 0.1);
}

TEST_CASE("Bernstein check on samples")
{
    TimeGrid grid = make_grid(2.0, 256, 2.0);

    auto affine = SampledMatrixFunction::sample(
        grid, [](double t) { return Matrix::Constant(1, 1, 1.0 + t); }, true);
    CHECK(check_bernstein(affine).passed);

    // t^2 is PSD but its derivative grows: the quotient differences flip sign.
    auto square = SampledMatrixFunction::sample(
        grid, [](double t) { return Matrix::Constant(1, 1, t * t); }, true);
    auto report = check_bernstein(square);
    CHECK(!report.passed);
    CHECK(report.witness.order >= 1);

    // Negative values fail the PSD gate.
    auto dipped = SampledMatrixFunction::sample(
        grid, [](double t) { return Matrix::Constant(1, 1, t - 0.5); }, true);
    CHECK(!check_bernstein(dipped).passed);
}

TEST_CASE("Sonine pair residuals")
{
    TimeGrid grid = make_grid(1.0, 512, 2.0);

    auto root = MatrixKernel::scalar(ScalarPrimitive::power_law(0.5));
    auto self_dual = check_sonine_pair(root, root, grid);
    CHECK(self_dual.passed);
    CHECK(self_dual.worst_violation <= 1e-2);

    TimeGrid grid2 = make_grid(2.0, 512, 2.0);
    auto damped = MatrixKernel::scalar(ScalarPrimitive::damped_power_law(0.5, 1.0));
    auto dual = MatrixKernel::scalar(ScalarPrimitive::damped_power_law_dual(0.5, 1.0));
    auto damped_pair = check_sonine_pair(damped, dual, grid2);
    CHECK(damped_pair.passed);

    auto e1 = MatrixKernel::scalar(ScalarPrimitive::exponential(1.0));
    auto not_a_pair = check_sonine_pair(e1, e1, grid);
    CHECK(!not_a_pair.passed);
    // (e^{-t} * e^{-t})(t) = t e^{-t}; near the smallest checked node the
    // defect is essentially 1.
    CHECK(not_a_pair.worst_violation == doctest::Approx(1.0).epsilon(0.1));
}

TEST_CASE("matrix Sonine pairs: scalar pair times K0 and its inverse")
{
    std::mt19937_64 rng(7);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix a(3, 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            a(i, j) = gauss(rng);
    Matrix k0 = a * a.transpose() + 0.5 * Matrix::Identity(3, 3);
    Matrix k0inv = sym_inverse(k0, "test");

    auto k = MatrixKernel::single(k0, ScalarPrimitive::damped_power_law(0.5, 1.0));
    auto l = MatrixKernel::single(k0inv, ScalarPrimitive::damped_power_law_dual(0.5, 1.0));
    TimeGrid grid = make_grid(2.0, 512, 2.0);
    auto report = check_sonine_pair(k, l, grid);
    CHECK(report.passed);
}

TEST_CASE("pair check is symmetric for commuting pairs")
{
    TimeGrid grid = make_grid(1.0, 256, 2.0);
    auto damped = MatrixKernel::scalar(ScalarPrimitive::damped_power_law(0.5, 1.0));
    auto dual = MatrixKernel::scalar(ScalarPrimitive::damped_power_law_dual(0.5, 1.0));
    auto ab = check_sonine_pair(damped, dual, grid);
    auto ba = check_sonine_pair(dual, damped, grid);
    CHECK(std::fabs(ab.worst_violation - ba.worst_violation) <= 1e-10);
}
