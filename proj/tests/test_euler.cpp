#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tdo/euler.hpp"
#include "tdo/workbench.hpp"

#include <cmath>

using namespace tdo::euler;

namespace {

std::string dataset(const std::string& name) {
    return tdo::workbench::read_text_file(std::string(TDO_DATA_DIR) + "/" + name);
}

Eigen::MatrixXi rot90() {
    Eigen::MatrixXi m(2, 2);
    m << 0, -1, 1, 0;
    return m;
}

} // namespace

TEST_CASE("group presets and arithmetic") {
    const auto z4 = FiniteGroup::parse("cyclic(4)");
    CHECK(z4.order == 4);
    CHECK(z4.multiply(3, 2) == 1);
    CHECK(z4.inverse(1) == 3);

    const auto z2z2 = FiniteGroup::parse("cyclic(2)xcyclic(2)");
    CHECK(z2z2.order == 4);
    CHECK(z2z2.multiply(1, 2) == 3);
    CHECK(z2z2.inverse(3) == 3);

    CHECK_THROWS_AS(FiniteGroup::parse("dihedral(4)"), std::invalid_argument);
}

TEST_CASE("characters of Z2 and Z4") {
    const auto z2 = FiniteGroup::cyclic(2);
    const auto chars2 = irreducible_characters(z2);
    REQUIRE(chars2.size() == 2);
    CHECK(chars2[0].label == "1");
    CHECK(chars2[1].label == "xi");
    CHECK(chars2[1].values[0] == std::complex<double>(1.0, 0.0));
    CHECK(std::abs(chars2[1].values[1] - std::complex<double>(-1.0, 0.0)) < 1e-15);

    // rho_j(k) = e^{i k j pi / 2}
    const auto z4 = FiniteGroup::cyclic(4);
    const auto chars4 = irreducible_characters(z4);
    REQUIRE(chars4.size() == 4);
    for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k) {
            const auto expect = std::polar(1.0, k * j * std::numbers::pi / 2.0);
            CHECK(std::abs(chars4[static_cast<size_t>(j)].values[static_cast<size_t>(k)] -
                           expect) < 1e-14);
        }
}

TEST_CASE("character orthonormality") {
    for (const auto& preset : {"cyclic(2)", "cyclic(4)", "cyclic(2)xcyclic(2)", "cyclic(6)"}) {
        const auto g = FiniteGroup::parse(preset);
        const auto chars = irreducible_characters(g);
        for (size_t i = 0; i < chars.size(); ++i)
            for (size_t j = 0; j < chars.size(); ++j) {
                const auto ip = character_inner(g, chars[i], chars[j]);
                const double expect = (i == j) ? 1.0 : 0.0;
                CHECK(std::abs(ip - expect) < 1e-12);
            }
    }
}

TEST_CASE("integer determinants") {
    Eigen::MatrixXi m(3, 3);
    m << 2, 0, 1, 1, 1, 0, 0, 3, -1;
    CHECK(integer_determinant(m) == -5);
    CHECK(integer_determinant(Eigen::MatrixXi::Identity(4, 4)) == 1);
    CHECK(integer_determinant(Eigen::MatrixXi::Zero(2, 2)) == 0);
}

TEST_CASE("torus action validation") {
    const auto z4 = FiniteGroup::cyclic(4);
    CHECK_NOTHROW(make_torus_action(z4, {rot90()}));

    Eigen::MatrixXi not_order4(2, 2);
    not_order4 << 1, 1, 0, 1; // infinite order shear
    CHECK_THROWS_AS(make_torus_action(z4, {not_order4}), std::invalid_argument);

    Eigen::MatrixXi singular(2, 2);
    singular << 2, 0, 0, 1; // det 2, not invertible over Z
    CHECK_THROWS_AS(make_torus_action(FiniteGroup::cyclic(1), {singular}),
                    std::invalid_argument);
}

TEST_CASE("Lefschetz oracle: Z4 rotation on T^2") {
    const auto z4 = FiniteGroup::cyclic(4);
    const auto action = make_torus_action(z4, {rot90()});
    const auto chars = irreducible_characters(z4);
    CHECK(lefschetz_euler(action, find_character(chars, "1")) == 2);
    CHECK(lefschetz_euler(action, find_character(chars, "rho1")) == -1);
    CHECK(lefschetz_euler(action, find_character(chars, "rho2")) == 0);
    CHECK(lefschetz_euler(action, find_character(chars, "rho3")) == -1);
}

TEST_CASE("Lefschetz oracle: trivial action and -I on T^2") {
    const auto triv = FiniteGroup::cyclic(1);
    const auto chars1 = irreducible_characters(triv);
    for (int n : {1, 2, 3}) {
        const auto action = make_torus_action(triv, {Eigen::MatrixXi::Identity(n, n)});
        CHECK(lefschetz_euler(action, chars1[0]) == 0); // chi(T^n) = 0
    }

    const auto z2 = FiniteGroup::cyclic(2);
    const auto action = make_torus_action(z2, {-Eigen::MatrixXi::Identity(2, 2)});
    const auto chars = irreducible_characters(z2);
    CHECK(lefschetz_euler(action, find_character(chars, "1")) == 2);
    CHECK(lefschetz_euler(action, find_character(chars, "xi")) == -2);
}

TEST_CASE("Peter-Weyl completeness: character-weighted sum rebuilds chi(T^n) = 0") {
    const auto z4 = FiniteGroup::cyclic(4);
    const auto action = make_torus_action(z4, {rot90()});
    long long total = 0;
    for (const auto& ch : irreducible_characters(z4))
        total += lefschetz_euler(action, ch); // all irreducibles are 1-dimensional
    CHECK(total == 0);
}

TEST_CASE("strata formula: Z4 dataset agrees with the Lefschetz oracle") {
    const auto records = tdo::workbench::parse_strata_dataset(dataset("z4_torus.json"));
    CHECK(strata_euler(records, "1") == 2);
    CHECK(strata_euler(records, "rho1") == -1);
    CHECK(strata_euler(records, "rho2") == 0);
    CHECK(strata_euler(records, "rho3") == -1);
    CHECK(tdo::workbench::lefschetz_from_dataset(dataset("z4_torus.json"), "rho1") == -1);
}

TEST_CASE("strata formula: O(n) on S^n") {
    for (int n : {2, 3, 4, 5}) {
        const auto records = tdo::workbench::parse_strata_dataset(
            dataset("on_sphere_s" + std::to_string(n) + ".json"));
        CHECK(strata_euler(records, "1") == 1);
        CHECK(strata_euler(records, "xi") == ((n % 2 == 0) ? 1 : -1));
    }
}

TEST_CASE("strata formula: antipodal actions, cross-checked by the sphere oracle") {
    for (int n : {2, 3, 4, 5}) {
        const std::string text = dataset("z2_antipodal_s" + std::to_string(n) + ".json");
        const auto records = tdo::workbench::parse_strata_dataset(text);
        const long long expect = (n % 2 == 0) ? 1 : 0;
        CHECK(strata_euler(records, "1") == expect);
        CHECK(strata_euler(records, "xi") == expect);

        // independent oracle: 1 + (-1)^n det on the (n+1)x(n+1) matrices
        const auto z2 = FiniteGroup::cyclic(2);
        std::vector<Eigen::MatrixXi> mats{Eigen::MatrixXi::Identity(n + 1, n + 1),
                                          -Eigen::MatrixXi::Identity(n + 1, n + 1)};
        const auto chars = irreducible_characters(z2);
        CHECK(sphere_euler(z2, mats, n, find_character(chars, "1")) == expect);
        CHECK(sphere_euler(z2, mats, n, find_character(chars, "xi")) == expect);
    }
}

TEST_CASE("strata formula: Z2xZ2 on S^2 agrees with the sphere oracle") {
    const auto records = tdo::workbench::parse_strata_dataset(dataset("z2xz2_s2.json"));
    const auto group = FiniteGroup::parse("cyclic(2)xcyclic(2)");
    Eigen::MatrixXi s1 = Eigen::MatrixXi::Identity(3, 3);
    s1(0, 0) = -1;
    Eigen::MatrixXi s2 = Eigen::MatrixXi::Identity(3, 3);
    s2(1, 1) = -1;
    std::vector<Eigen::MatrixXi> mats;
    for (int a = 0; a < group.order; ++a) {
        const auto t = group.tuple_of(a);
        Eigen::MatrixXi m = Eigen::MatrixXi::Identity(3, 3);
        for (int p = 0; p < t[0]; ++p)
            m = m * s1;
        for (int p = 0; p < t[1]; ++p)
            m = m * s2;
        mats.push_back(m);
    }
    const auto chars = irreducible_characters(group);
    for (const auto& label : {"1", "rho01", "rho10", "rho11"}) {
        const long long via_strata = strata_euler(records, label);
        const long long via_oracle = sphere_euler(group, mats, 2, find_character(chars, label));
        CHECK(via_strata == via_oracle);
    }
    CHECK(strata_euler(records, "1") == 1);
    CHECK(strata_euler(records, "rho11") == 1);
    CHECK(strata_euler(records, "rho01") == 0);
    CHECK(strata_euler(records, "rho10") == 0);
}

TEST_CASE("strata formula: single free stratum reduces to a product") {
    std::vector<StratumRecord> records(1);
    records[0].label = "principal";
    records[0].principal = true;
    records[0].chi_rel = 5;
    records[0].chi_rho_orbit = {{"1", 1}, {"xi", 0}};
    CHECK(strata_euler(records, "1") == 5);
    CHECK(strata_euler(records, "xi") == 0);
}

TEST_CASE("strata formula validates its inputs") {
    std::vector<StratumRecord> records(2);
    records[0].principal = true;
    records[0].chi_rho_orbit = {{"1", 1}};
    records[1].principal = true;
    records[1].chi_rho_orbit = {{"1", 1}};
    CHECK_THROWS_AS(strata_euler(records, "1"), std::invalid_argument); // two principals
    records[1].principal = false;
    CHECK_THROWS_AS(strata_euler(records, "xi"), std::invalid_argument); // missing label
}

TEST_CASE("open-manifold Euler convention") {
    CHECK(open_euler(0, true) == -1); // open interval: compactifies to a circle
    CHECK(open_euler(2, true) == 1);  // open disk: compactifies to a sphere
    CHECK(open_euler(7, false) == 7); // closed: passthrough
}

TEST_CASE("basic Gauss-Bonnet datasets") {
    const std::pair<const char*, long long> cases[] = {
        {"rotation_suspension.json", 2},
        {"carriere_flow.json", 0},
        {"klein_suspension.json", 2},
        {"codim3_suspension.json", 0},
    };
    for (const auto& [file, expect] : cases) {
        const auto records = tdo::workbench::parse_foliation_dataset(dataset(file));
        CHECK(basic_gauss_bonnet(records) == expect);
    }
    CHECK_THROWS_AS(basic_gauss_bonnet({}), std::invalid_argument);
}
