#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tdo/cohomology.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace tdo;
using namespace tdo::cohomology;
using Eigen::MatrixXcd;

namespace {

const double kLambda = (3.0 + std::sqrt(5.0)) / 2.0; // from A = [[2,1],[1,1]]

TrigPoly h_bump(double amplitude) {
    TrigPoly h;
    h.omega = 2.0 * std::numbers::pi; // period 1
    h.sin_coeffs = {amplitude};
    return h;
}

double dtilde_square_residual(const TwistedComplex& c, bool twisted) {
    const auto dt = twisted_differential(c, twisted);
    double worst = 0.0;
    for (size_t k = 0; k + 1 < dt.size(); ++k) {
        const MatrixXcd prod = dt[k + 1] * dt[k];
        if (prod.size() > 0)
            worst = std::max(worst, prod.cwiseAbs().maxCoeff());
    }
    return worst;
}

} // namespace

TEST_CASE("builders produce valid complexes with zero residuals") {
    for (const auto& c : {carriere_model(kLambda, 8), carriere_model(3.7, 16),
                          suspension_model(6), torus_invariant_model(3, 4)}) {
        const auto rep = validate_complex(c);
        CHECK(rep.d_squared == 0.0);
        CHECK(rep.kappa_squared == 0.0);
        CHECK(rep.anticommutator == 0.0);
    }
}

TEST_CASE("trivial complexes validate; shape errors are rejected") {
    TwistedComplex zero;
    zero.q = 1;
    zero.dims = {2, 2};
    zero.d = {MatrixXcd::Zero(2, 2)};
    zero.kappa_wedge = {MatrixXcd::Zero(2, 2)};
    CHECK(validate_complex(zero).max_residual() == 0.0);

    TwistedComplex bad = zero;
    bad.d = {MatrixXcd::Zero(3, 2)};
    CHECK_THROWS_AS(validate_complex(bad), std::invalid_argument);
}

TEST_CASE("a complex with non-closed kappa is rejected with the named residual") {
    auto c = carriere_model(kLambda, 8);
    // scaling one kappa block breaks d K + K d = 0 but keeps K^2 = 0
    c.kappa_wedge[1] *= 1.1;
    const auto rep = validate_complex(c);
    CHECK(rep.anticommutator > 0.0);
    CHECK(rep.d_squared == 0.0);
    try {
        require_valid(c);
        CHECK(false);
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("kappa not closed") != std::string::npos);
    }
}

TEST_CASE("twisted differential reduces to d when kappa vanishes") {
    const auto c = torus_invariant_model(2, 4);
    const auto dt = twisted_differential(c, true);
    for (int k = 0; k < c.q; ++k)
        CHECK((dt[static_cast<size_t>(k)] - c.d[static_cast<size_t>(k)]).cwiseAbs().maxCoeff() ==
              0.0);
}

TEST_CASE("Carriere degree-0 twisted differential is f' - (log lambda/2) f") {
    const int N = 8;
    const auto c = carriere_model(kLambda, N);
    const auto dt = twisted_differential(c, true);
    const double half_log = 0.5 * std::log(kLambda);
    for (int k = -N; k <= N; ++k) {
        const std::complex<double> got = dt[0](k + N, k + N);
        const std::complex<double> expect(-half_log, 2.0 * std::numbers::pi * k);
        CHECK(std::abs(got - expect) < 1e-15);
    }
}

TEST_CASE("dtilde squares to zero exactly on all builders") {
    std::mt19937 rng(2718);
    std::uniform_real_distribution<double> lam(1.3, 6.0);
    for (int trial = 0; trial < 8; ++trial) {
        const int N = 8 + static_cast<int>(rng() % 9);
        CHECK(dtilde_square_residual(carriere_model(lam(rng), N), true) == 0.0);
        CHECK(dtilde_square_residual(carriere_model(lam(rng), N), false) == 0.0);
    }
    for (int q : {1, 2, 3, 4})
        CHECK(dtilde_square_residual(torus_invariant_model(q, 5), true) == 0.0);
    for (int P : {4, 6, 9})
        CHECK(dtilde_square_residual(suspension_model(P), true) == 0.0);
}

TEST_CASE("Carriere cohomology: twisted trivial, untwisted (1,1,0)") {
    const auto c = carriere_model(kLambda, 32);
    const auto tw = cohomology_dims(c, true);
    CHECK(tw.betti == std::vector<int>{0, 0, 0});
    CHECK(tw.harmonic == tw.betti);
    CHECK(tw.euler == 0);
    CHECK(tw.rank_stable);

    const auto un = cohomology_dims(c, false);
    CHECK(un.betti == std::vector<int>{1, 1, 0});
    CHECK(un.euler == 0);
}

TEST_CASE("Carriere conclusions hold across truncations and eigenvalues of A") {
    for (int N : {8, 16, 64})
        CHECK(cohomology_dims(carriere_model(kLambda, N), true).betti ==
              std::vector<int>{0, 0, 0});
    // trace 4 matrix [[3,1],[2,1]]: lambda = (4+sqrt(12))/2
    const double lam = (4.0 + std::sqrt(12.0)) / 2.0;
    CHECK(cohomology_dims(carriere_model(lam, 16), true).betti == std::vector<int>{0, 0, 0});
    CHECK(cohomology_dims(carriere_model(lam, 16), false).betti == std::vector<int>{1, 1, 0});
}

TEST_CASE("identity-differential toy complex has no cohomology") {
    TwistedComplex c;
    c.q = 1;
    c.dims = {3, 3};
    c.d = {MatrixXcd::Identity(3, 3)};
    c.kappa_wedge = {MatrixXcd::Zero(3, 3)};
    CHECK(cohomology_dims(c, true).betti == std::vector<int>{0, 0});
}

TEST_CASE("tautness detection") {
    CHECK_FALSE(is_taut(carriere_model(kLambda, 16)));
    CHECK(is_taut(suspension_model(6)));
    CHECK(is_taut(torus_invariant_model(2, 4)));
}

TEST_CASE("suspension model: betti (1,0,1), chi = 2") {
    const auto c = suspension_model(8);
    const auto rep = cohomology_dims(c, true);
    CHECK(rep.betti == std::vector<int>{1, 0, 1});
    CHECK(rep.euler == 2);
    // kappa = 0: twisted and untwisted cohomology coincide
    CHECK(cohomology_dims(c, false).betti == rep.betti);
}

TEST_CASE("torus-invariant model: betti are binomial coefficients, chi = 0") {
    for (int q : {1, 2, 3}) {
        const auto rep = cohomology_dims(torus_invariant_model(q, 5), true);
        for (int r = 0; r <= q; ++r) {
            int binom = 1;
            for (int i = 0; i < r; ++i)
                binom = binom * (q - i) / (i + 1);
            CHECK(rep.betti[static_cast<size_t>(r)] == binom);
        }
        CHECK(rep.euler == 0);
    }
}

TEST_CASE("conformal shift with h = 0 is the identity") {
    const auto c = carriere_model(kLambda, 8);
    const auto res = conformal_shift(c, TrigPoly{0.0, {}, {}, 2.0 * std::numbers::pi});
    CHECK(res.residual < 1e-13);
    for (int k = 0; k < c.q; ++k)
        CHECK((res.shifted.kappa_wedge[static_cast<size_t>(k)] -
               c.kappa_wedge[static_cast<size_t>(k)])
                  .cwiseAbs()
                  .maxCoeff() < 1e-15);
}

TEST_CASE("conformal shift preserves betti numbers and the residual decreases") {
    const TrigPoly h = h_bump(0.3);
    double prev = 1e300;
    for (int N : {16, 32, 64}) {
        const auto c = carriere_model(kLambda, N);
        const auto res = conformal_shift(c, h);
        CHECK(validate_complex(res.shifted).max_residual() < 1e-12);
        CHECK(cohomology_dims(res.shifted, true).betti == std::vector<int>{0, 0, 0});
        CHECK(cohomology_dims(res.shifted, false).betti == std::vector<int>{1, 1, 0});
        CHECK(res.residual < prev);
        prev = res.residual;
    }
}

TEST_CASE("conformal shift rejects out-of-model functions") {
    const auto c = carriere_model(kLambda, 8);
    TrigPoly too_wide;
    too_wide.omega = 2.0 * std::numbers::pi;
    too_wide.sin_coeffs.assign(9, 0.0);
    too_wide.sin_coeffs[8] = 1.0;
    CHECK_THROWS_AS(conformal_shift(c, too_wide), std::invalid_argument);
    CHECK_THROWS_AS(conformal_shift(suspension_model(5), h_bump(0.1)), std::invalid_argument);
}

TEST_CASE("Poincare duality: Carriere") {
    const auto rep = poincare_check(carriere_model(kLambda, 16));
    CHECK(rep.dims_symmetric);
    CHECK(rep.twisted_euler == 0);
    CHECK(rep.eigenvalue_mismatch >= 0.0);
    CHECK(rep.eigenvalue_mismatch < 1e-8);
}

TEST_CASE("Poincare duality: torus-invariant models, eigenvalues included") {
    for (int q : {2, 3}) {
        const auto rep = poincare_check(torus_invariant_model(q, 4));
        CHECK(rep.dims_symmetric);
        CHECK(rep.eigenvalue_mismatch < 1e-8);
    }
}

TEST_CASE("Poincare duality: suspension dims only") {
    const auto rep = poincare_check(suspension_model(7));
    CHECK(rep.betti == std::vector<int>{1, 0, 1});
    CHECK(rep.dims_symmetric);
    CHECK(rep.twisted_euler == 2);
    CHECK(rep.eigenvalue_mismatch == -1.0); // model has no exact finite duality
}

TEST_CASE("odd-codimension oriented models have vanishing twisted Euler characteristic") {
    for (int q : {1, 3})
        CHECK(cohomology_dims(torus_invariant_model(q, 6), true).euler == 0);
}

TEST_CASE("non-oriented models are rejected by the duality check") {
    auto c = torus_invariant_model(2, 4);
    c.oriented = false;
    CHECK_THROWS_AS(poincare_check(c), std::invalid_argument);
}

TEST_CASE("harmonic kernel of the twisted Laplacian matches the rank route") {
    // suspension model exercises non-identity Gram matrices
    const auto c = suspension_model(9);
    const auto rep = cohomology_dims(c, true);
    CHECK(rep.betti == rep.harmonic);
    const auto lap = twisted_laplacian(c, true);
    // Laplacian blocks are self-adjoint w.r.t. the Grams: G Lap = (G Lap)^H
    for (int k = 0; k <= c.q; ++k) {
        const MatrixXcd glap =
            c.inner[static_cast<size_t>(k)].cast<std::complex<double>>() *
            lap[static_cast<size_t>(k)];
        CHECK((glap - glap.adjoint()).cwiseAbs().maxCoeff() < 1e-10);
    }
}
