#include "soninekit/laplace.hpp"

#include <doctest.h>

#include <cmath>
#include <initializer_list>
#include <random>

using namespace soninekit;

TEST_CASE("closed-form transforms")
{
    auto damped = MatrixKernel::scalar(ScalarPrimitive::damped_power_law(0.5, 1.0));
    LaplaceFn dt = transform(damped);
    // (p + lam)^{-a}
    CHECK(dt.eval_real(1.0)(0, 0) == doctest::Approx(std::pow(2.0, -0.5)).epsilon(1e-14));
    CHECK(dt.eval_real(1.0)(0, 0) == doctest::Approx(0.70710678118654752).epsilon(1e-13));
    CHECK(dt.eval_real(3.0)(0, 0) == doctest::Approx(0.5).epsilon(1e-14));

    auto pl = MatrixKernel::scalar(ScalarPrimitive::power_law(0.5));
    CHECK(transform(pl).eval_real(1.0)(0, 0) == doctest::Approx(1.0).epsilon(1e-14));

    auto bk = MatrixKernel::scalar(ScalarPrimitive::bessel_k(0.5));
    CHECK(transform(bk).eval_real(2.0)(0, 0)
          == doctest::Approx(std::exp(-0.5) * std::pow(2.0, -0.5)).epsilon(1e-13));
    CHECK(transform(bk).eval_real(2.0)(0, 0) == doctest::Approx(0.428882).epsilon(1e-5));

    // Sonine identity in the Laplace domain: k~ l~ = 1/p for the catalog pairs.
    auto dual = MatrixKernel::scalar(ScalarPrimitive::damped_power_law_dual(0.5, 1.0));
    auto bl = MatrixKernel::scalar(ScalarPrimitive::bessel_l(0.5));
    LaplaceFn du = transform(dual), kl = transform(bl);
    for (double p : {0.3, 1.0, 7.0}) {
        CHECK(dt.eval_real(p)(0, 0) * du.eval_real(p)(0, 0)
              == doctest::Approx(1.0 / p).epsilon(1e-13));
        CHECK(transform(bk).eval_real(p)(0, 0) * kl.eval_real(p)(0, 0)
              == doctest::Approx(1.0 / p).epsilon(1e-13));
    }
}

TEST_CASE("numerical inversion accuracy")
{
    LaplaceFn simple(1, [](std::complex<double> p) {
        return ComplexMatrix(Matrix::Identity(1, 1).cast<std::complex<double>>() / (p + 1.0));
    });
    CHECK(invert(simple, 1.0, InversionMethod::Talbot)(0, 0)
          == doctest::Approx(std::exp(-1.0)).epsilon(1e-8));
    CHECK(invert(simple, 1.0, InversionMethod::GaverStehfest)(0, 0)
          == doctest::Approx(std::exp(-1.0)).epsilon(1e-5));

    LaplaceFn one_over_p(1, [](std::complex<double> p) {
        return ComplexMatrix(Matrix::Identity(1, 1).cast<std::complex<double>>() / p);
    });
    CHECK(invert(one_over_p, 5.0)(0, 0) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(invert(one_over_p, 5.0, InversionMethod::GaverStehfest)(0, 0)
          == doctest::Approx(1.0).epsilon(1e-8));

    double v = invert_scalar([](std::complex<double> p) { return std::pow(p, -0.5); }, 4.0);
    CHECK(v == doctest::Approx(std::pow(4.0, -0.5) / std::sqrt(M_PI)).epsilon(1e-6));
    CHECK(v == doctest::Approx(0.28209479177).epsilon(1e-6));
}

TEST_CASE("transform/invert round trip over the CM catalog")
{
    std::vector<MatrixKernel> catalog;
    catalog.push_back(MatrixKernel::scalar(ScalarPrimitive::power_law(0.5)));
    catalog.push_back(MatrixKernel::scalar(ScalarPrimitive::power_law(1.0)));
    catalog.push_back(MatrixKernel::scalar(ScalarPrimitive::damped_power_law(0.5, 1.0)));
    catalog.push_back(MatrixKernel::scalar(ScalarPrimitive::damped_power_law_dual(0.5, 1.0)));
    catalog.push_back(MatrixKernel::scalar(ScalarPrimitive::exponential(1.0)));
    catalog.push_back(MatrixKernel::scalar(ScalarPrimitive::exponential(0.0)));

    for (const auto& k : catalog) {
        LaplaceFn f = transform(k);
        for (int i = 0; i <= 20; ++i) {
            double t = 0.1 * std::pow(100.0, i / 20.0);
            double expect = k.eval(t)(0, 0);
            double got = invert(f, t)(0, 0);
            CHECK(got == doctest::Approx(expect).epsilon(1e-5));
        }
    }
}

TEST_CASE("transforms of LICM kernels decay monotonically in p")
{
    std::vector<MatrixKernel> catalog;
    catalog.push_back(MatrixKernel::scalar(ScalarPrimitive::power_law(0.5)));
    catalog.push_back(MatrixKernel::scalar(ScalarPrimitive::damped_power_law(0.3, 2.0)));
    catalog.push_back(MatrixKernel::scalar(ScalarPrimitive::damped_power_law_dual(0.5, 1.0)));
    catalog.push_back(MatrixKernel::scalar(ScalarPrimitive::exponential(1.0)));
    for (const auto& k : catalog) {
        LaplaceFn f = transform(k);
        double prev = std::numeric_limits<double>::infinity();
        for (int d = 1; d <= 6; ++d) {
            double p = std::pow(10.0, d);
            double norm = f.eval_real(p).cwiseAbs().maxCoeff();
            CHECK(norm < prev);
            prev = norm;
        }
        CHECK(prev < 1e-1);
    }
}

TEST_CASE("CBF inverses look Stieltjes")
{
    auto p_grid = log_spaced(1e-2, 1e2, 60);

    // Z(p) = p I: inverse is 1/p, the canonical Stieltjes function.
    StieltjesForm zi{Matrix::Identity(2, 2), {}};
    auto report = cbf_inverse_check(zi, p_grid);
    CHECK(report.passed);
    CHECK(report.worst_violation == 0.0);

    // Z(p) = p K0 + p/(p+1) I.
    Matrix k0(2, 2);
    k0 << 2.0, 0.5, 0.5, 1.0;
    StieltjesForm z2{k0, {{Matrix::Identity(2, 2), 1.0}}};
    auto report2 = cbf_inverse_check(z2, p_grid);
    CHECK(report2.passed);
}

TEST_CASE("the non-CM Bessel transform fails the Stieltjes sample check")
{
    // Y(p) = e^{-1/p} p^{-1/2} increases on (0, 2): a first-difference
    // violation on small p.
    auto bk = MatrixKernel::scalar(ScalarPrimitive::bessel_k(0.5));
    LaplaceFn y = transform(bk);
    auto p_grid = log_spaced(0.01, 0.2, 40);
    auto report = check_stieltjes_samples(
        [&y](double p) { return y.eval_real(p); }, 1, p_grid, 4, 1e-9);
    CHECK(!report.passed);
    bool monotonicity_violated = false;
    for (const auto& c : report.checks)
        if (c.name == "nonincreasing" && c.worst_violation > 0.0)
            monotonicity_violated = true;
    CHECK(monotonicity_violated);
}

TEST_CASE("random PSD CBF mixtures pass the inversion theorem check")
{
    std::mt19937_64 rng(2024);
    std::normal_distribution<double> gauss(0.0, 1.0);
    auto random_psd = [&](int dim) {
        Matrix a(dim, dim);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j)
                a(i, j) = gauss(rng);
        return Matrix(a * a.transpose());
    };
    auto p_grid = log_spaced(1e-2, 1e2, 60);
    for (int trial = 0; trial < 10; ++trial) {
        StieltjesForm z;
        z.b = random_psd(3);
        int terms = 1 + static_cast<int>(rng() % 3);
        for (int k = 0; k < terms; ++k)
            z.terms.push_back({random_psd(3), std::exp(gauss(rng))});
        auto report = cbf_inverse_check(z, p_grid, 4, 1e-9);
        CHECK(report.passed);
    }
}
