#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <random>

#include "thresholdscope/linalg.hpp"
#include "thresholdscope/roots.hpp"

using namespace thresholdscope;

TEST_CASE("linear root") {
    double t = find_zero([](double x) { return cplx(x - 2.0, 0.0); }, 0.0, 4.0,
                         Tolerance{1e-12, 1e-12, 200});
    CHECK(t == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("square root through the quadratic") {
    double t = find_zero([](double x) { return cplx(x * x - 0.25, 0.0); }, 0.0, 1.0,
                         Tolerance{1e-12, 1e-12, 200});
    CHECK(t == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("complex-valued objective with a real zero location") {
    // |f| minimized at x = 1 where f vanishes.
    auto f = [](double x) { return cplx(x - 1.0, (x - 1.0) * 0.5); };
    double t = find_zero(f, -1.0, 3.0, Tolerance{1e-12, 1e-12, 200});
    CHECK(t == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("absent root raises NoRoot") {
    CHECK_THROWS_AS(find_zero([](double x) { return cplx(x * x + 1.0, 0.0); }, -1.0, 1.0,
                              Tolerance{1e-12, 1e-12, 100}),
                    NoRoot);
}

TEST_CASE("newton refinement of an analytic zero") {
    cplx root = newton_complex([](cplx z) { return z * z + 1.0; }, cplx(0.3, 0.8),
                               Tolerance{1e-14, 1e-13, 100});
    CHECK(std::abs(root - cplx(0.0, 1.0)) < 1e-10);
}

TEST_CASE("identity and diagonal singular values") {
    CHECK(top_singular_value(MatrixXcd::Identity(3, 3)) == doctest::Approx(1.0).epsilon(1e-10));
    MatrixXcd D = MatrixXcd::Zero(3, 3);
    D(0, 0) = 3.0;
    D(1, 1) = 1.0;
    D(2, 2) = 0.5;
    CHECK(top_singular_value(D) == doctest::Approx(3.0).epsilon(1e-10));
}

TEST_CASE("power iteration matches the dense SVD oracle") {
    std::mt19937 rng(777);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int rep = 0; rep < 5; ++rep) {
        MatrixXcd M(5, 5);
        for (Eigen::Index i = 0; i < 5; ++i)
            for (Eigen::Index j = 0; j < 5; ++j) M(i, j) = cplx(gauss(rng), gauss(rng));
        Eigen::JacobiSVD<MatrixXcd> svd(M);
        double expect = svd.singularValues()(0);
        CHECK(top_singular_value(M, Tolerance{1e-12, 1e-14, 100000}) ==
              doctest::Approx(expect).epsilon(1e-8));
    }
}

TEST_CASE("adjoint invariance of the top singular value") {
    std::mt19937 rng(31);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int rep = 0; rep < 8; ++rep) {
        Eigen::Index n = 2 + rep % 5;
        MatrixXcd M(n, n);
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j) M(i, j) = cplx(gauss(rng), gauss(rng));
        double a = top_singular_value(M);
        double b = top_singular_value(MatrixXcd(M.adjoint()));
        CHECK(a == doctest::Approx(b).epsilon(1e-8));
    }
}

TEST_CASE("least squares line fit") {
    ArrayXd x(4), y(4);
    x << 1, 2, 3, 4;
    y << 3.0, 5.0, 7.0, 9.0;
    auto [a, b] = lsq_fit(x, y);
    CHECK(a == doctest::Approx(2.0));
    CHECK(b == doctest::Approx(1.0));
}
