#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tdo/clifford.hpp"

#include <random>

using namespace tdo::clifford;
using Eigen::MatrixXcd;
using Eigen::VectorXd;

namespace {
const Complex I(0.0, 1.0);
}

TEST_CASE("n=3 generators are the Pauli spin matrices") {
    const auto rep = build_clifford(3);
    REQUIRE(rep.k == 2);
    MatrixXcd c1(2, 2), c2(2, 2), c3(2, 2);
    c1 << 0, I, I, 0;
    c2 << 0, 1, -1, 0;
    c3 << I, 0, 0, -I;
    CHECK((rep.generator(0) - c1).cwiseAbs().maxCoeff() == 0.0);
    CHECK((rep.generator(1) - c2).cwiseAbs().maxCoeff() == 0.0);
    CHECK((rep.generator(2) - c3).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("n=1 is the 1x1 matrix (i)") {
    const auto rep = build_clifford(1);
    REQUIRE(rep.k == 1);
    CHECK(rep.generator(0)(0, 0) == I);
}

TEST_CASE("representation dimension is 2^floor(n/2)") {
    for (int n = 1; n <= 9; ++n)
        CHECK(build_clifford(n).k == (1 << (n / 2)));
}

TEST_CASE("anticommutators are exactly -2 delta_ij for n=1..8") {
    for (int n = 1; n <= 8; ++n)
        CHECK(relation_residual(build_clifford(n)) == 0.0);
}

TEST_CASE("n=4 anticommutators checked by direct matrix products") {
    const auto rep = build_clifford(4);
    const MatrixXcd id = MatrixXcd::Identity(rep.k, rep.k);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            MatrixXcd anti = rep.generator(i) * rep.generator(j) +
                             rep.generator(j) * rep.generator(i);
            MatrixXcd expect = (i == j) ? MatrixXcd(-2.0 * id) : MatrixXcd(0.0 * id);
            CHECK((anti - expect).cwiseAbs().maxCoeff() == 0.0);
        }
}

TEST_CASE("dimension bounds are rejected") {
    CHECK_THROWS_AS(build_clifford(0), std::invalid_argument);
    CHECK_THROWS_AS(build_clifford(-2), std::invalid_argument);
    CHECK_THROWS_AS(build_clifford(13), std::invalid_argument);
    CHECK_NOTHROW(build_clifford(5, 5));
    CHECK_THROWS_AS(build_clifford(6, 5), std::invalid_argument);
}

TEST_CASE("clifford_vector selects generators on basis vectors") {
    const auto rep = build_clifford(3);
    VectorXd e1 = VectorXd::Zero(3);
    e1[0] = 1.0;
    CHECK((clifford_vector(rep, e1) - rep.generator(0)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("c(v)^2 = -I for unit vectors") {
    const auto rep = build_clifford(3);
    VectorXd v(3);
    v << 1.0, 1.0, 0.0;
    v /= std::sqrt(2.0);
    MatrixXcd sq = clifford_vector(rep, v) * clifford_vector(rep, v);
    CHECK((sq + MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("clifford relation for random vectors in n=4") {
    const auto rep = build_clifford(4);
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (int trial = 0; trial < 25; ++trial) {
        VectorXd v(4), w(4);
        for (int i = 0; i < 4; ++i) {
            v[i] = unit(rng);
            w[i] = unit(rng);
        }
        MatrixXcd anti = clifford_vector(rep, v) * clifford_vector(rep, w) +
                         clifford_vector(rep, w) * clifford_vector(rep, v);
        MatrixXcd expect = -2.0 * v.dot(w) * MatrixXcd::Identity(rep.k, rep.k);
        CHECK((anti - expect).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("clifford_vector rejects dimension mismatch") {
    const auto rep = build_clifford(3);
    CHECK_THROWS_AS(clifford_vector(rep, VectorXd::Zero(2)), std::invalid_argument);
}

TEST_CASE("chirality for n=2 is diag(1,-1)") {
    const auto g = chirality_grading(build_clifford(2));
    MatrixXcd expect(2, 2);
    expect << 1, 0, 0, -1;
    CHECK((g.gamma - expect).cwiseAbs().maxCoeff() == 0.0);
    CHECK((g.gamma * g.gamma - MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("chirality projectors are idempotent, orthogonal and sum to I") {
    for (int n : {2, 4, 6}) {
        const auto g = chirality_grading(build_clifford(n));
        const auto& p = g.projector_plus;
        const auto& m = g.projector_minus;
        CHECK((p * p - p).cwiseAbs().maxCoeff() < 1e-14);
        CHECK((m * m - m).cwiseAbs().maxCoeff() < 1e-14);
        CHECK((p * m).cwiseAbs().maxCoeff() < 1e-14);
        CHECK((p + m - MatrixXcd::Identity(p.rows(), p.cols())).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("gamma anticommutes with every generator for n=4") {
    const auto rep = build_clifford(4);
    const auto g = chirality_grading(rep);
    for (int i = 0; i < 4; ++i) {
        MatrixXcd anti = g.gamma * rep.generator(i) + rep.generator(i) * g.gamma;
        CHECK(anti.cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("odd n has no chirality grading") {
    CHECK_THROWS_AS(chirality_grading(build_clifford(3)), std::invalid_argument);
}

TEST_CASE("c(v) exchanges the chirality eigenspaces") {
    const auto rep = build_clifford(4);
    const auto g = chirality_grading(rep);
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    VectorXd v(4);
    for (int i = 0; i < 4; ++i)
        v[i] = unit(rng);
    const MatrixXcd cv = clifford_vector(rep, v);
    // plus-to-plus block vanishes; plus-to-minus block has full rank
    CHECK((g.projector_plus * cv * g.projector_plus).cwiseAbs().maxCoeff() < 1e-14);
    Eigen::JacobiSVD<MatrixXcd> svd(g.projector_minus * cv * g.projector_plus);
    int rank = 0;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()(i) > 1e-10)
            ++rank;
    CHECK(rank == rep.k / 2);
}
