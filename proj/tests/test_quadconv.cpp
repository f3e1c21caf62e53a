#include "soninekit/quadconv.hpp"
#include "soninekit/laplace.hpp"

#include <doctest.h>

#include <cmath>
#include <initializer_list>

using namespace soninekit;

TEST_CASE("graded grids")
{
    TimeGrid uniform = make_grid(1.0, 4, 1.0);
    std::vector<double> expect{0.0, 0.25, 0.5, 0.75, 1.0};
    for (int i = 0; i <= 4; ++i)
        CHECK(uniform.node(i) == doctest::Approx(expect[static_cast<std::size_t>(i)]));

    TimeGrid quad = make_grid(1.0, 2, 2.0);
    CHECK(quad.node(0) == 0.0);
    CHECK(quad.node(1) == doctest::Approx(0.25));
    CHECK(quad.node(2) == doctest::Approx(1.0));

    TimeGrid g24 = make_grid(2.0, 4, 2.0);
    CHECK(g24.node(1) == doctest::Approx(0.125));
    CHECK(g24.node(2) == doctest::Approx(0.5));
    CHECK(g24.node(3) == doctest::Approx(1.125));
    CHECK(g24.node(4) == doctest::Approx(2.0));

    CHECK_THROWS_AS(make_grid(0.0, 4, 1.0), std::domain_error);
    CHECK_THROWS_AS(make_grid(1.0, 1, 1.0), std::domain_error);
    CHECK_THROWS_AS(make_grid(1.0, 4, 0.5), std::domain_error);
}

TEST_CASE("convolution against closed forms")
{
    TimeGrid grid = default_grid();
    auto ones = SampledMatrixFunction::sample(
        grid, [](double) { return Matrix::Identity(1, 1); }, true);

    // (1 * 1)(t) = t, exact for constant data.
    auto unit_kernel = MatrixKernel::scalar(ScalarPrimitive::exponential(0.0));
    auto conv = convolve(unit_kernel, ones);
    for (int i = 1; i <= grid.n(); ++i)
        CHECK(conv.at(i)(0, 0) == doctest::Approx(grid.node(i)).epsilon(1e-13));

    // Weakly singular kernel against constant data: exact moments again.
    auto root_kernel = MatrixKernel::scalar(ScalarPrimitive::power_law(0.5));
    auto conv2 = convolve(root_kernel, ones);
    for (int i = 1; i <= grid.n(); ++i)
        CHECK(conv2.at(i)(0, 0)
              == doctest::Approx(std::sqrt(grid.node(i)) / std::tgamma(1.5)).epsilon(1e-12));

    // e^{-t} * e^{-t} = t e^{-t}, first-order quadrature error.
    auto exp_kernel = MatrixKernel::scalar(ScalarPrimitive::exponential(1.0));
    auto decaying = SampledMatrixFunction::sample(
        grid, [](double t) { return Matrix::Constant(1, 1, std::exp(-t)); }, true);
    auto conv3 = convolve(exp_kernel, decaying);
    for (int i = 1; i <= grid.n(); ++i) {
        double t = grid.node(i);
        if (t < 0.1)
            continue;
        CHECK(conv3.at(i)(0, 0) == doctest::Approx(t * std::exp(-t)).epsilon(5e-3));
    }
}

TEST_CASE("measure convolution handles the unit atom")
{
    TimeGrid grid = make_grid(1.0, 64, 2.0);
    auto g = SampledMatrixFunction::sample(
        grid, [](double t) { return Matrix::Constant(1, 1, std::cos(t)); }, true);

    MeasureFn unit{Matrix::Identity(1, 1), std::monostate{}};
    auto same = convolve_measure(unit, g);
    for (int i = 1; i <= grid.n(); ++i)
        CHECK(same.at(i)(0, 0) == g.at(i)(0, 0));

    auto constant = MatrixKernel::scalar(ScalarPrimitive::exponential(0.0));
    MeasureFn no_atom{Matrix::Zero(1, 1), constant};
    auto ones = SampledMatrixFunction::sample(
        grid, [](double) { return Matrix::Identity(1, 1); }, true);
    auto just_density = convolve_measure(no_atom, ones);
    auto direct = convolve(constant, ones);
    for (int i = 1; i <= grid.n(); ++i)
        CHECK(just_density.at(i)(0, 0) == doctest::Approx(direct.at(i)(0, 0)));

    MeasureFn both{Matrix::Identity(1, 1), constant};
    auto sum = convolve_measure(both, ones);
    for (int i = 1; i <= grid.n(); ++i)
        CHECK(sum.at(i)(0, 0) == doctest::Approx(1.0 + grid.node(i)).epsilon(1e-13));
}

TEST_CASE("bilinearity to floating tolerance")
{
    TimeGrid grid = make_grid(1.0, 48, 2.0);
    auto k = MatrixKernel::scalar(ScalarPrimitive::damped_power_law(0.5, 1.0));
    auto g1 = SampledMatrixFunction::sample(
        grid, [](double t) { return Matrix::Constant(1, 1, std::sin(t) + 1.2); }, true);
    auto g2 = SampledMatrixFunction::sample(
        grid, [](double t) { return Matrix::Constant(1, 1, std::exp(-2.0 * t)); }, true);
    double alpha = 0.7, beta = -1.9;

    auto combo = SampledMatrixFunction::sample(
        grid,
        [&](double t) {
            return Matrix::Constant(1, 1,
                                    alpha * (std::sin(t) + 1.2) + beta * std::exp(-2.0 * t));
        },
        true);
    auto lhs = convolve(k, combo);
    auto r1 = convolve(k, g1);
    auto r2 = convolve(k, g2);
    for (int i = 1; i <= grid.n(); ++i)
        CHECK(lhs.at(i)(0, 0)
              == doctest::Approx(alpha * r1.at(i)(0, 0) + beta * r2.at(i)(0, 0))
                     .epsilon(1e-12));
}

TEST_CASE("first-order convergence under grid halving")
{
    auto exp_kernel = MatrixKernel::scalar(ScalarPrimitive::exponential(1.0));
    double prev_err = 0.0;
    bool first = true;
    for (int n : {64, 128, 256, 512}) {
        TimeGrid grid = make_grid(1.0, n, 1.0);
        auto g = SampledMatrixFunction::sample(
            grid, [](double t) { return Matrix::Constant(1, 1, std::exp(-t)); }, true);
        auto conv = convolve(exp_kernel, g);
        double err = std::fabs(conv.at(n)(0, 0) - std::exp(-1.0));
        if (!first)
            CHECK(prev_err / err >= 1.8);
        prev_err = err;
        first = false;
    }
}

TEST_CASE("node values match Laplace-domain products")
{
    TimeGrid grid = make_grid(1.0, 1024, 2.0);
    auto k = MatrixKernel::scalar(ScalarPrimitive::damped_power_law(0.5, 1.0));
    auto g = SampledMatrixFunction::sample(
        grid, [](double t) { return Matrix::Constant(1, 1, std::exp(-t)); }, true);
    auto conv = convolve(k, g);

    LaplaceFn kt = transform(k);
    LaplaceFn product(1, [kt](std::complex<double> p) {
        return ComplexMatrix(kt.eval(p) / (p + 1.0));
    });
    for (double t : {0.1, 0.3, 0.5, 1.0}) {
        int i = static_cast<int>(std::round(std::sqrt(t / grid.t_end()) * grid.n()));
        double reference = invert(product, grid.node(i))(0, 0);
        CHECK(conv.at(i)(0, 0) == doctest::Approx(reference).epsilon(1e-3));
    }
}

TEST_CASE("sampled-density convolution matches the analytic kernel route")
{
    TimeGrid grid = make_grid(1.0, 256, 2.0);
    auto k = MatrixKernel::scalar(ScalarPrimitive::exponential(1.0));
    auto k_samples = SampledMatrixFunction::sample(
        grid, [&](double t) { return k.eval(t); }, false);
    auto g = SampledMatrixFunction::sample(
        grid, [](double t) { return Matrix::Constant(1, 1, 1.0 + t); }, true);

    auto exact_route = convolve(k, g);
    auto sampled_route = convolve_sampled(k_samples, g);
    for (int i = 1; i <= grid.n(); ++i) {
        double t = grid.node(i);
        if (t < 0.05)
            continue;
        CHECK(sampled_route.at(i)(0, 0)
              == doctest::Approx(exact_route.at(i)(0, 0)).epsilon(2e-2));
    }
}
