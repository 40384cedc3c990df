#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tdo/exterior.hpp"

#include <cmath>
#include <random>

using namespace tdo::exterior;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

const Complex I(0.0, 1.0);

MetricPoint random_spd_metric(std::mt19937& rng, int n) {
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    MatrixXd R(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            R(i, j) = unit(rng);
    MetricPoint m;
    m.g = R.transpose() * R + 0.5 * MatrixXd::Identity(n, n);
    return m;
}

Form random_form(std::mt19937& rng, int n, int r) {
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    Form f(n);
    for (uint32_t mask : grade_basis(n, r))
        f.coeff[mask] = Complex(unit(rng), unit(rng));
    return f;
}

// The R^4 exercise metric ds^2 = dx1^2 + 4 dx2^2 + dx3^2 + (1+e^{x1})^2 dx4^2.
MetricPoint exercise_metric_r4(double x1) {
    MetricPoint m;
    m.g = MatrixXd::Zero(4, 4);
    m.g(0, 0) = 1.0;
    m.g(1, 1) = 4.0;
    m.g(2, 2) = 1.0;
    m.g(3, 3) = std::pow(1.0 + std::exp(x1), 2);
    return m;
}

} // namespace

TEST_CASE("inverse metric: identity and the diagonal exercise metric") {
    const MetricPoint id = euclidean_metric(3);
    CHECK((inverse_metric(id) - MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() == 0.0);

    const MetricPoint m = exercise_metric_r4(1.0);
    const MatrixXd gi = inverse_metric(m);
    CHECK(gi(1, 1) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(gi(3, 3) == doctest::Approx(1.0 / std::pow(1.0 + std::exp(1.0), 2)).epsilon(1e-14));
}

TEST_CASE("inverse metric: residual check on random SPD metrics") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const MetricPoint m = random_spd_metric(rng, 3);
        CHECK((inverse_metric(m) * m.g - MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("degenerate or asymmetric metrics are rejected") {
    MetricPoint bad;
    bad.g = MatrixXd::Zero(2, 2);
    bad.g(0, 0) = 1.0; // singular
    CHECK_THROWS_AS(inverse_metric(bad), std::invalid_argument);
    bad.g << 1.0, 0.5, -0.5, 1.0; // asymmetric
    CHECK_THROWS_AS(inverse_metric(bad), std::invalid_argument);
    bad.g << 1.0, 2.0, 2.0, 1.0; // indefinite
    CHECK_THROWS_AS(inverse_metric(bad), std::invalid_argument);
}

TEST_CASE("wedge: basis products and antisymmetry") {
    const Form dx1 = basis_form(4, {1});
    const Form dx2 = basis_form(4, {2});
    CHECK((wedge(dx1, dx2) - basis_form(4, {1, 2})).max_abs() == 0.0);
    CHECK(wedge(dx1, dx1).max_abs() == 0.0);
    CHECK((wedge(dx2, dx1) + basis_form(4, {1, 2})).max_abs() == 0.0);
}

TEST_CASE("wedge grade overflow is an error") {
    const Form a = basis_form(2, {1, 2});
    CHECK_THROWS_AS(wedge(a, basis_form(2, {1})), std::invalid_argument);
}

TEST_CASE("interior product contracts the first slot") {
    VectorXd e1 = VectorXd::Zero(3);
    e1[0] = 1.0;
    CHECK((interior(e1, basis_form(3, {1, 2})) - basis_form(3, {2})).max_abs() == 0.0);
    // second slot picks up a sign
    VectorXd e2 = VectorXd::Zero(3);
    e2[1] = 1.0;
    CHECK((interior(e2, basis_form(3, {1, 2})) + basis_form(3, {1})).max_abs() == 0.0);
}

TEST_CASE("sharp inverts flat for random metrics") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 4);
        const MetricPoint m = random_spd_metric(rng, n);
        VectorXd v(n);
        for (int i = 0; i < n; ++i)
            v[i] = unit(rng);
        CHECK((sharp(m, flat(m, v)) - v).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("volume form") {
    CHECK((volume_form(euclidean_metric(2)) - basis_form(2, {1, 2})).max_abs() == 0.0);

    const MetricPoint m = exercise_metric_r4(1.0);
    const double expect = 2.0 * (1.0 + std::exp(1.0));
    CHECK(volume_form(m).coefficient(0b1111).real() == doctest::Approx(expect).epsilon(1e-14));

    MetricPoint flipped = euclidean_metric(2);
    flipped.orientation = -1;
    CHECK((volume_form(flipped) + basis_form(2, {1, 2})).max_abs() == 0.0);
}

TEST_CASE("hodge star on the Euclidean plane") {
    const MetricPoint m = euclidean_metric(2);
    CHECK((hodge_star(m, basis_form(2, {1})) - basis_form(2, {2})).max_abs() < 1e-15);
    CHECK((hodge_star(m, basis_form(2, {2})) + basis_form(2, {1})).max_abs() < 1e-15);
    CHECK((hodge_star(m, scalar_form(2, 1.0)) - basis_form(2, {1, 2})).max_abs() < 1e-15);
}

TEST_CASE("hodge star of the R^4 exercise form") {
    // omega = x1^2 x2 dx2 ^ dx4 at (x1,x2) = (1,1); the defining-system
    // solve gives -(x1^2 x2 / (2(1+e^{x1}))) dx1 ^ dx3 there.
    const MetricPoint m = exercise_metric_r4(1.0);
    Form omega(4);
    omega.coeff[0b1010] = 1.0; // dx2 ^ dx4
    const Form star = hodge_star(m, omega);
    const double expect = -1.0 / (2.0 * (1.0 + std::exp(1.0)));
    CHECK(star.coeff.size() == 1);
    CHECK(star.coefficient(0b0101).real() == doctest::Approx(expect).epsilon(1e-13));
    CHECK(star.coefficient(0b0101).imag() == 0.0);

    // bigstar factor i^{r(r-1)+n/2} = i^4 = 1 on 2-forms in dimension 4
    CHECK((bigstar(m, omega) - star).max_abs() < 1e-15);
}

TEST_CASE("defining property b ^ *a = (b,a) dvol as a residual") {
    std::mt19937 rng(17);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 4);
        const int r = static_cast<int>(rng() % static_cast<unsigned>(n + 1));
        const MetricPoint m = random_spd_metric(rng, n);
        const Form a = random_form(rng, n, r);
        Form b = random_form(rng, n, r);
        for (auto& [mask, c] : b.coeff)
            c = Complex(c.real(), 0.0); // real test form; star is complex-linear
        const Form lhs = wedge(b, hodge_star(m, a));
        const Form rhs = volume_form(m) * form_inner(m, a, b);
        CHECK((lhs - rhs).max_abs() < 1e-12);
    }
}

TEST_CASE("star-star sign law over random metrics and grades") {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 5);
        const int r = static_cast<int>(rng() % static_cast<unsigned>(n + 1));
        const MetricPoint m = random_spd_metric(rng, n);
        const Form a = random_form(rng, n, r);
        const double sign = ((r * (n - r)) % 2 == 0) ? 1.0 : -1.0;
        CHECK((hodge_star(m, hodge_star(m, a)) - a * sign).max_abs() < 1e-11);
    }
}

TEST_CASE("bigstar normalization and involutivity") {
    const MetricPoint m2 = euclidean_metric(2);
    // grade 0 in dimension 2: exponent r(r-1)+n/2 = 1
    const Form b = bigstar(m2, scalar_form(2, 1.0));
    CHECK((b - basis_form(2, {1, 2}) * I).max_abs() < 1e-15);

    const MetricPoint m4 = euclidean_metric(4);
    const Form a = basis_form(4, {1, 2});
    CHECK((bigstar(m4, a) - basis_form(4, {3, 4})).max_abs() < 1e-15);

    std::mt19937 rng(31);
    for (int n : {2, 4}) {
        const MetricPoint m = random_spd_metric(rng, n);
        for (int r = 0; r <= n; ++r) {
            const Form f = random_form(rng, n, r);
            CHECK((bigstar(m, bigstar(m, f)) - f).max_abs() < 1e-11);
        }
    }
    CHECK_THROWS_AS(bigstar(euclidean_metric(3), scalar_form(3, 1.0)), std::invalid_argument);
}

TEST_CASE("clifford action on forms: basic values") {
    const MetricPoint m = euclidean_metric(3);
    VectorXd e1 = VectorXd::Zero(3);
    e1[0] = 1.0;
    CHECK((clifford_form_action(m, e1, scalar_form(3, 1.0)) - basis_form(3, {1})).max_abs() == 0.0);
    CHECK((clifford_form_action(m, e1, basis_form(3, {1})) + scalar_form(3, 1.0)).max_abs() == 0.0);
}

TEST_CASE("clifford relation as an operator identity on the full form space") {
    std::mt19937 rng(41);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 3);
        const MetricPoint m = random_spd_metric(rng, n);
        VectorXd v(n), w(n);
        for (int i = 0; i < n; ++i) {
            v[i] = unit(rng);
            w[i] = unit(rng);
        }
        const double vw = double(v.transpose() * m.g * w);
        for (int r = 0; r <= n; ++r)
            for (uint32_t mask : grade_basis(n, r)) {
                Form e(n);
                e.coeff[mask] = 1.0;
                Form lhs = clifford_form_action(m, v, clifford_form_action(m, w, e)) +
                           clifford_form_action(m, w, clifford_form_action(m, v, e));
                Form rhs = e * (-2.0 * vw);
                CHECK((lhs - rhs).max_abs() < 1e-12);
            }
    }
}

TEST_CASE("mixed-grade forms: grade bookkeeping") {
    Form f(3);
    f.coeff[0b001] = 1.0;
    CHECK(f.grade() == 1);
    f.coeff[0b011] = 1.0;
    CHECK(f.grade() == -1);
    CHECK(f.grade_part(1).coeff.size() == 1);
    CHECK(f.grade_part(2).coeff.size() == 1);
}
