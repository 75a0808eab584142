#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "thresholdscope/discrete.hpp"
#include "thresholdscope/linalg.hpp"

using namespace thresholdscope;

namespace {
const cplx I(0.0, 1.0);

MatrixXcd planted_nullity_matrix(Eigen::Index n, int nullity, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    auto random_unitary = [&]() {
        MatrixXcd A(n, n);
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j) A(i, j) = cplx(gauss(rng), gauss(rng));
        Eigen::HouseholderQR<MatrixXcd> qr(A);
        return MatrixXcd(qr.householderQ());
    };
    VectorXd sv(n);
    std::uniform_real_distribution<double> mag(0.5, 3.0);
    for (Eigen::Index i = 0; i < n; ++i) sv(i) = (i < n - nullity) ? mag(rng) : 0.0;
    return random_unitary() * sv.asDiagonal() * random_unitary();
}
}  // namespace

TEST_CASE("shift resolvent entries at n=3, z=2") {
    MatrixXcd R = shift_resolvent(3, cplx(2.0, 0.0));
    CHECK(std::abs(R(0, 0) - cplx(-0.5)) < 1e-15);
    CHECK(std::abs(R(1, 1) - cplx(-0.5)) < 1e-15);
    CHECK(std::abs(R(0, 1) - cplx(-0.25)) < 1e-15);
    CHECK(std::abs(R(0, 2) - cplx(-0.125)) < 1e-15);
    CHECK(std::abs(R(1, 0)) == 0.0);
}

TEST_CASE("algebraic identity holds on all non-boundary rows") {
    for (cplx z : {cplx(2.0, 0.0), cplx(1.1, 0.4), cplx(-1.5, 0.8)}) {
        MatrixXcd R = shift_resolvent(24, z);
        CHECK(shift_resolvent_defect(R, z) < 1e-13);
    }
}

TEST_CASE("uniform entry bound for |z| slightly above one") {
    for (int k = 0; k < 8; ++k) {
        cplx z = 1.1 * std::exp(I * (2.0 * pi * k / 8.0));
        MatrixXcd R = shift_resolvent(40, z);
        CHECK(R.cwiseAbs().maxCoeff() <= 1.0);
    }
}

TEST_CASE("entrywise radial limit onto the unit circle") {
    double th0 = 0.7;
    cplx z0 = std::exp(I * th0);
    MatrixXcd limit = MatrixXcd::Zero(6, 6);
    for (Eigen::Index i = 0; i < 6; ++i)
        for (Eigen::Index j = i; j < 6; ++j)
            limit(i, j) = -std::exp(-I * th0 * double(1 + j - i));
    for (double rho : {1.5, 1.1, 1.01, 1.0001}) {
        MatrixXcd R = shift_resolvent(6, rho * z0);
        double dist = (R - limit).cwiseAbs().maxCoeff();
        if (rho == 1.0001) CHECK(dist < 1e-3);
    }
}

TEST_CASE("|z| <= 1 is rejected") {
    CHECK_THROWS_AS(shift_resolvent(4, cplx(0.9, 0.0)), DomainError);
    CHECK_THROWS_AS(shift_resolvent(4, cplx(0.6, 0.8)), DomainError);
}

TEST_CASE("engineered virtual state: residual tracks the tail") {
    auto phi = [](Eigen::Index i) { return 1.0 / double(i * i); };
    double prev = -1;
    for (Eigen::Index n : {100, 200, 400}) {
        ShiftModel m = engineered_virtual_state(n, cplx(1.0, 0.0), phi);
        CHECK(m.residual <= 1.2 * m.predicted_tail);
        CHECK(m.residual >= 0.5 * m.predicted_tail);
        if (prev > 0) CHECK(prev / m.residual >= 1.8);  // halves-like under doubling
        prev = m.residual;
        CHECK_FALSE(m.degenerate);
    }
}

TEST_CASE("engineered virtual state: harmonic profile of Psi") {
    ShiftModel m = engineered_virtual_state(3000, cplx(1.0, 0.0),
                                            [](Eigen::Index i) { return 1.0 / double(i * i); });
    // Psi_i ~ -1/i.
    for (Eigen::Index i : {1000, 2000, 2900}) {
        cplx ratio = m.Psi(i - 1) * double(i);
        CHECK(std::abs(ratio - cplx(-1.0)) < 2e-3);
    }
    // Partial sums of |Psi| grow like log n: successive doublings add ~log 2.
    auto partial = [&](Eigen::Index n) {
        double s = 0;
        for (Eigen::Index i = 0; i < n; ++i) s += std::abs(m.Psi(i));
        return s;
    };
    double d1 = partial(1200) - partial(600);
    double d2 = partial(2400) - partial(1200);
    CHECK(d1 == doctest::Approx(std::log(2.0)).epsilon(0.05));
    CHECK(d2 == doctest::Approx(std::log(2.0)).epsilon(0.05));
}

TEST_CASE("engineered state on a rotated circle point") {
    cplx z0 = std::exp(I * 0.9);
    ShiftModel m = engineered_virtual_state(300, z0,
                                            [](Eigen::Index i) { return 1.0 / double(i * i); });
    CHECK(m.residual < 1.2 * m.predicted_tail);
    // The defining relation away from the boundary row is exact.
    VectorXcd defect = m.A * m.Psi - z0 * m.Psi;
    double interior = 0;
    for (Eigen::Index i = 0; i + 1 < m.n; ++i) interior = std::max(interior, std::abs(defect(i)));
    CHECK(interior < 1e-12);
}

TEST_CASE("finitely supported phi degenerates to an eigenvector") {
    auto phi = [](Eigen::Index i) { return i <= 5 ? 1.0 / double(i) : 0.0; };
    ShiftModel m = engineered_virtual_state(60, cplx(1.0, 0.0), phi);
    CHECK(m.degenerate);
    CHECK(m.predicted_tail == 0.0);
    CHECK(m.residual < 1e-14);
    // Psi vanishes beyond the support of phi.
    for (Eigen::Index i = 6; i < 60; ++i) CHECK(std::abs(m.Psi(i)) < 1e-15);
}

TEST_CASE("min-rank regularizer on the canonical examples") {
    MatrixXcd J = MatrixXcd::Zero(3, 3);
    J(0, 1) = 1.0;
    J(1, 2) = 1.0;
    CHECK(min_rank_regularizer(J) == 1);
    CHECK(svd_nullity(J) == 1);

    CHECK(min_rank_regularizer(MatrixXcd::Zero(4, 4)) == 4);

    std::mt19937 rng(99);
    std::normal_distribution<double> gauss(0.0, 1.0);
    MatrixXcd M(5, 5);
    for (Eigen::Index i = 0; i < 5; ++i)
        for (Eigen::Index j = 0; j < 5; ++j) M(i, j) = cplx(gauss(rng), gauss(rng));
    CHECK(min_rank_regularizer(M) == 0);
}

TEST_CASE("min-rank equals planted nullity across a seeded family") {
    std::mt19937 seeds(2024);
    for (int trial = 0; trial < 40; ++trial) {
        Eigen::Index n = 3 + (seeds() % 5);
        int nullity = int(seeds() % std::min<Eigen::Index>(4, n));
        MatrixXcd M = planted_nullity_matrix(n, nullity, seeds());
        CAPTURE(n);
        CAPTURE(nullity);
        CHECK(min_rank_regularizer(M, 7, seeds()) == nullity);
        CHECK(svd_nullity(M) == nullity);
    }
}

TEST_CASE("oversized matrices are rejected") {
    CHECK_THROWS_AS(min_rank_regularizer(MatrixXcd::Zero(13, 13)), DomainError);
}
