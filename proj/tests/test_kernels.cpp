#include "soninekit/matrix_kernel.hpp"
#include "soninekit/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <initializer_list>
#include <thread>

using namespace soninekit;

namespace {

Matrix spd2()
{
    Matrix k(2, 2);
    k << 2.0, 0.5, 0.5, 1.0;
    return k;
}

} // namespace

TEST_CASE("primitive evaluation closed forms")
{
    auto pl = MatrixKernel::scalar(ScalarPrimitive::power_law(0.5));
    CHECK(pl.eval(1.0)(0, 0) == doctest::Approx(1.0 / std::sqrt(M_PI)).epsilon(1e-13));

    auto constant = MatrixKernel::scalar(ScalarPrimitive::exponential(0.0));
    CHECK(constant.eval(0.37)(0, 0) == 1.0);
    CHECK(constant.eval(5.0)(0, 0) == 1.0);

    auto damped = MatrixKernel::scalar(ScalarPrimitive::damped_power_law(0.5, 1.0));
    CHECK(damped.eval(1.0)(0, 0)
          == doctest::Approx(std::exp(-1.0) / std::sqrt(M_PI)).epsilon(1e-13));
    CHECK(damped.eval(1.0)(0, 0) == doctest::Approx(0.20755374871029736).epsilon(1e-12));

    CHECK_THROWS_AS(pl.eval(0.0), std::domain_error);
    CHECK_THROWS_AS(pl.eval(-1.0), std::domain_error);
}

TEST_CASE("damped dual against reference values")
{
    auto dual = ScalarPrimitive::damped_power_law_dual(0.5, 1.0);
    CHECK(dual.value(0.01) == doctest::Approx(5.69822094996296961).epsilon(1e-12));
    CHECK(dual.value(0.1) == doctest::Approx(1.95962141269678482).epsilon(1e-12));
    CHECK(dual.value(0.5) == doctest::Approx(1.16663094117537260).epsilon(1e-12));
    CHECK(dual.value(1.0) == doctest::Approx(1.05025454166001222).epsilon(1e-12));
    CHECK(dual.value(2.0) == doctest::Approx(1.00849070261682964).epsilon(1e-12));
    CHECK(dual.value(5.0) == doctest::Approx(1.00013467106250152).epsilon(1e-12));

    CHECK(dual.antiderivative(0.1) == doctest::Approx(0.368601718260389965).epsilon(1e-12));
    CHECK(dual.antiderivative(0.5) == doctest::Approx(0.924660216656229241).epsilon(1e-12));
    CHECK(dual.antiderivative(1.0) == doctest::Approx(1.47160493813486965).epsilon(1e-12));
    CHECK(dual.antiderivative(2.0) == doctest::Approx(2.49423127328548006).epsilon(1e-12));

    // lam = 0 degenerates to the plain power-law dual t^{-a}/Gamma(1-a).
    auto dual0 = ScalarPrimitive::damped_power_law_dual(0.5, 0.0);
    for (double t : {0.2, 1.0, 3.0})
        CHECK(dual0.value(t)
              == doctest::Approx(std::pow(t, -0.5) / std::tgamma(0.5)).epsilon(1e-13));
}

TEST_CASE("antiderivative closed forms and small-time limit")
{
    auto pl = MatrixKernel::scalar(ScalarPrimitive::power_law(0.5));
    CHECK(pl.antiderivative(1.0)(0, 0) == doctest::Approx(1.12837916709551257).epsilon(1e-13));
    CHECK(pl.antiderivative(0.0)(0, 0) == 0.0);

    auto e1 = MatrixKernel::scalar(ScalarPrimitive::exponential(1.0));
    CHECK(e1.antiderivative(1.0)(0, 0) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-14));
    CHECK(e1.antiderivative(1.0)(0, 0) == doctest::Approx(0.63212055882855768).epsilon(1e-13));

    MatrixKernel mixture(2, {{spd2(), ScalarPrimitive::power_law(0.7)},
                             {Matrix::Identity(2, 2), ScalarPrimitive::exponential(2.0)}});
    CHECK(mixture.antiderivative(0.0).cwiseAbs().maxCoeff() == 0.0);
    CHECK(mixture.antiderivative(1e-12).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("moments agree with antiderivative differences and resist cancellation")
{
    for (auto prim : {ScalarPrimitive::power_law(0.4),
                      ScalarPrimitive::damped_power_law(0.5, 2.0),
                      ScalarPrimitive::damped_power_law_dual(0.3, 1.5),
                      ScalarPrimitive::exponential(1.0),
                      ScalarPrimitive::bessel_k(0.5),
                      ScalarPrimitive::bessel_l(0.5)}) {
        for (double lo : {0.0, 0.3, 2.0, 9.5}) {
            double hi = lo + 0.125;
            double direct = prim.moment(lo, hi);
            double diff = prim.antiderivative(hi) - prim.antiderivative(lo);
            CHECK(direct == doctest::Approx(diff).epsilon(1e-9));
        }
    }
    // Narrow cell far out; the exponential moment must stay accurate.
    auto e1 = ScalarPrimitive::exponential(1.0);
    double m = e1.moment(30.0, 30.0 + 1e-6);
    CHECK(m == doctest::Approx(std::exp(-30.0) * 1e-6).epsilon(1e-9));
}

TEST_CASE("f0_limit dichotomy")
{
    auto singular = MatrixKernel::scalar(ScalarPrimitive::power_law(0.5));
    auto f0 = singular.f0_limit();
    CHECK(f0.singular);
    CHECK(f0.value.cwiseAbs().maxCoeff() == 0.0);

    Matrix k0 = spd2();
    auto bounded = MatrixKernel::single(k0, ScalarPrimitive::exponential(1.0));
    auto fb = bounded.f0_limit();
    CHECK(!fb.singular);
    CHECK((fb.value - sym_inverse(k0, "test")).cwiseAbs().maxCoeff() < 1e-12);

    auto constant = MatrixKernel::single(k0, ScalarPrimitive::exponential(0.0));
    auto fc = constant.f0_limit();
    CHECK(!fc.singular);
    CHECK((fc.value - sym_inverse(k0, "test")).cwiseAbs().maxCoeff() < 1e-12);

    // Bounded kernel whose limit at 0 is rank deficient: hypothesis failure.
    Matrix rank1 = Matrix::Zero(2, 2);
    rank1(0, 0) = 1.0;
    MatrixKernel flat(2, {{rank1, ScalarPrimitive::exponential(1.0)},
                          {rank1, ScalarPrimitive::exponential(3.0)}});
    CHECK_THROWS_AS(flat.f0_limit(), HypothesisError);
}

TEST_CASE("f_infinity keeps only the non-decaying terms")
{
    auto e1 = MatrixKernel::scalar(ScalarPrimitive::exponential(1.0));
    CHECK(e1.f_infinity()(0, 0) == 0.0);

    Matrix k0 = spd2();
    MatrixKernel mix(2, {{k0, ScalarPrimitive::exponential(0.0)},
                         {Matrix::Identity(2, 2), ScalarPrimitive::exponential(2.0)}});
    CHECK((mix.f_infinity() - k0).cwiseAbs().maxCoeff() == 0.0);

    auto pl = MatrixKernel::scalar(ScalarPrimitive::power_law(0.5));
    CHECK(pl.f_infinity()(0, 0) == 0.0);

    // The damped dual saturates at lam^a.
    auto dual = MatrixKernel::scalar(ScalarPrimitive::damped_power_law_dual(0.5, 4.0));
    CHECK(dual.f_infinity()(0, 0) == doctest::Approx(2.0));

    auto bl = MatrixKernel::scalar(ScalarPrimitive::bessel_l(0.5));
    CHECK_THROWS_AS(bl.f_infinity(), std::domain_error);
}

TEST_CASE("LICM flags and probe condition")
{
    Matrix k0 = spd2();
    MatrixKernel good(2, {{k0, ScalarPrimitive::power_law(0.5)}});
    CHECK(good.licm_flagged());
    CHECK(good.condition_star());

    MatrixKernel bessel(1, {{Matrix::Identity(1, 1), ScalarPrimitive::bessel_k(0.5)}});
    CHECK(!bessel.licm_flagged());

    Matrix indef(2, 2);
    indef << 1.0, 0.0, 0.0, -1.0;
    MatrixKernel signed_coef(2, {{indef, ScalarPrimitive::exponential(1.0)}});
    CHECK(!signed_coef.licm_flagged());

    // A direction with identically vanishing quadratic form fails the probe.
    Matrix rank1 = Matrix::Zero(2, 2);
    rank1(0, 0) = 1.0;
    MatrixKernel flat(2, {{rank1, ScalarPrimitive::exponential(1.0)}});
    CHECK(!flat.condition_star());
}

TEST_CASE("CM and monotonicity spot properties of the catalog")
{
    Matrix k0 = spd2();
    std::vector<MatrixKernel> catalog;
    catalog.push_back(MatrixKernel::single(k0, ScalarPrimitive::power_law(0.5)));
    catalog.push_back(MatrixKernel::single(k0, ScalarPrimitive::damped_power_law(0.3, 2.0)));
    catalog.push_back(MatrixKernel::single(k0, ScalarPrimitive::damped_power_law_dual(0.7, 1.0)));
    catalog.push_back(MatrixKernel::single(k0, ScalarPrimitive::exponential(0.5)));
    auto probes = probe_vectors(2);
    for (const auto& k : catalog) {
        for (const auto& v : probes) {
            double prev = std::numeric_limits<double>::infinity();
            for (int i = 0; i <= 40; ++i) {
                double t = 0.01 * std::pow(10.0, i / 13.0);
                double phi = v.dot(k.eval(t) * v);
                CHECK(phi >= 0.0);
                CHECK(phi <= prev * (1.0 + 1e-12));
                prev = phi;
            }
        }
    }

    for (const auto& k : catalog) {
        for (const auto& v : probes) {
            double prev = 0.0;
            for (double t : {0.1, 0.5, 1.0, 3.0, 10.0}) {
                double cur = v.dot(k.antiderivative(t) * v);
                CHECK(cur >= prev - 1e-12);
                prev = cur;
            }
        }
    }
}

TEST_CASE("bessel_k sign change brackets the first cosine root")
{
    auto bk = ScalarPrimitive::bessel_k(0.5);
    double root = M_PI * M_PI / 16.0;
    CHECK(bk.value(root - 0.01) > 0.0);
    CHECK(bk.value(root + 0.01) < 0.0);
}

TEST_CASE("Bernstein function wraps b0 plus the running kernel integral")
{
    Matrix b0 = Matrix::Identity(2, 2);
    BernsteinFn b(b0, MatrixKernel::single(spd2(), ScalarPrimitive::exponential(1.0)));
    CHECK((b.eval(0.0) - b0).cwiseAbs().maxCoeff() == 0.0);
    Matrix expect = b0 + spd2() * (1.0 - std::exp(-1.0));
    CHECK((b.eval(1.0) - expect).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(b.non_constant());

    Matrix neg = -Matrix::Identity(2, 2);
    CHECK_THROWS_AS(BernsteinFn(neg, MatrixKernel::scalar(ScalarPrimitive::exponential(1.0))),
                    std::invalid_argument);
}

TEST_CASE("concurrent evaluation of shared kernels is safe")
{
    auto k = MatrixKernel::single(spd2(), ScalarPrimitive::damped_power_law(0.5, 1.0));
    std::vector<std::thread> pool;
    std::vector<double> results(8, 0.0);
    for (int i = 0; i < 8; ++i)
        pool.emplace_back([&k, &results, i] {
            double acc = 0.0;
            for (int j = 1; j <= 200; ++j)
                acc += k.eval(0.01 * j)(0, 1);
            results[static_cast<std::size_t>(i)] = acc;
        });
    for (auto& th : pool)
        th.join();
    for (int i = 1; i < 8; ++i)
        CHECK(results[static_cast<std::size_t>(i)] == results[0]);
}
