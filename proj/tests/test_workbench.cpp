#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tdo/workbench.hpp"

#include <json.hpp>

using namespace tdo::workbench;
using nlohmann::json;

namespace {
const std::string kData = TDO_DATA_DIR;
}

TEST_CASE("circle-dirac as CSV lists the integers") {
    const auto res = run(R"json({"command":"circle-dirac","M":5,"format":"csv"})json");
    REQUIRE(res.status == 0);
    CHECK(res.report.find("eigenvalue,multiplicity") != std::string::npos);
    CHECK(res.report.find("\n-5,1\n") != std::string::npos);
    CHECK(res.report.find("\n0,1\n") != std::string::npos);
    CHECK(res.report.find("\n5,1\n") != std::string::npos);
}

TEST_CASE("carriere run reports twisted betti (0,0,0)") {
    const auto res = run(R"json({"command":"carriere","lambda":2.618,"N":32,"twisted":true})json");
    REQUIRE(res.status == 0);
    const json j = json::parse(res.report);
    CHECK(j.at("betti") == json::array({0, 0, 0}));
    CHECK(j.at("taut") == false);
    CHECK(j.at("euler") == 0);
}

TEST_CASE("strata-euler run on the shipped Z4 dataset") {
    const auto res = run(R"json({"command":"strata-euler","dataset":"z4_torus.json","rho":"rho1","data_dir":")json" +
                         kData + R"json("})json");
    REQUIRE(res.status == 0);
    CHECK(json::parse(res.report).at("value") == -1);
}

TEST_CASE("unknown keys are rejected") {
    const auto res = run(R"json({"command":"circle-dirac","M":5,"bogus":1})json");
    CHECK(res.status == 2);
    CHECK(res.error.find("bogus") != std::string::npos);
}

TEST_CASE("unknown commands and bad configs are validation failures") {
    CHECK(run(R"json({"command":"no-such-op"})json").status == 2);
    CHECK(run("not json").status == 2);
    CHECK(run(R"json({"M":5})json").status == 2);
    CHECK(run(R"json({"command":"circle-dirac","M":5,"tol":-1.0})json").status == 2);
    CHECK(run(R"json({"command":"circle-dirac","M":5,"format":"xml"})json").status == 2);
}

TEST_CASE("csv is only available for spectra") {
    CHECK(run(R"json({"command":"harmonic-dims","n":2,"M":2,"r":1,"format":"csv"})json").status == 2);
}

TEST_CASE("reports are byte-identical across runs and thread counts") {
    const std::string cfg1 = R"json({"command":"dirac-t2","M":4,"threads":1})json";
    const std::string cfg4 = R"json({"command":"dirac-t2","M":4,"threads":4})json";
    const auto a = run(cfg1);
    const auto b = run(cfg1);
    const auto c = run(cfg4);
    REQUIRE(a.status == 0);
    CHECK(a.report == b.report);
    CHECK(a.report == c.report);
}

TEST_CASE("every JSON report re-parses") {
    const std::vector<std::string> configs = {
        R"json({"command":"clifford","n":3})json",
        R"json({"command":"harmonic-dims","n":2,"M":4,"r":1})json",
        R"json({"command":"heat-supertrace","matrix":[[[0,0],[0,0]]],"t":1.0})json",
        R"json({"command":"symbol-limit","operator":"dirac-t2","mode":[1,0],"xi":[1,0],"ts":[100.0,1000.0]})json",
        R"json({"command":"warped-dl","g_sin":[1.0],"N":64})json",
        R"json({"command":"warped-dq","g_sin":[1.0],"x_mode":1,"N":64})json",
        R"json({"command":"warped-mean-curvature","g_sin":[1.0],"which":"HQ","samples":[0.5,1.5]})json",
        R"json({"command":"heisenberg-mean-curvature","points":[[0.3,0.2,0.1]]})json",
        R"json({"command":"adjoint-defect","g_sin":[1.0],"N":64})json",
        R"json({"command":"slope-dq","r":1.0,"M":3})json",
        R"json({"command":"suspension","P":6})json",
        R"json({"command":"torus-invariant","q":2,"N":4})json",
        R"json({"command":"conformal-shift","N":16,"h_sin":[0.3]})json",
        R"json({"command":"poincare","model":"carriere","N":16})json",
        R"json({"command":"characters","group":"cyclic(4)"})json",
        R"json({"command":"open-euler","chi":2,"open":true})json",
    };
    for (const auto& cfg : configs) {
        const auto res = run(cfg);
        REQUIRE_MESSAGE(res.status == 0, cfg + " -> " + res.error);
        CHECK_NOTHROW(json::parse(res.report));
    }
}

TEST_CASE("clifford generators serialize as [re, im] pairs") {
    const auto res = run(R"json({"command":"clifford","n":3})json");
    REQUIRE(res.status == 0);
    const json j = json::parse(res.report);
    CHECK(j.at("k") == 2);
    // c1 = [[0, i], [i, 0]]
    CHECK(j.at("generators").at(0).at(0).at(1) == json::array({0.0, 1.0}));
    CHECK(j.at("relation_residual") == 0.0);
}

TEST_CASE("lefschetz and gauss-bonnet commands read the shipped datasets") {
    const auto lef = run(R"json({"command":"lefschetz-euler","dataset":"z4_torus.json","rho":"1","data_dir":")json" +
                         kData + R"json("})json");
    REQUIRE(lef.status == 0);
    CHECK(json::parse(lef.report).at("value") == 2);

    const auto gb = run(R"json({"command":"gauss-bonnet","dataset":"rotation_suspension.json","data_dir":")json" +
                        kData + R"json("})json");
    REQUIRE(gb.status == 0);
    CHECK(json::parse(gb.report).at("value") == 2);

    const auto sph = run(R"json({"command":"sphere-euler","dataset":"z2xz2_s2.json","rho":"rho11","data_dir":")json" +
                         kData + R"json("})json");
    REQUIRE(sph.status == 0);
    CHECK(json::parse(sph.report).at("value") == 1);
}

TEST_CASE("missing dataset files are validation failures") {
    const auto res = run(R"json({"command":"gauss-bonnet","dataset":"no_such_file.json"})json");
    CHECK(res.status == 2);
}

TEST_CASE("form serialization uses multi-index keys with [re, im] values") {
    tdo::exterior::Form f(3);
    f.coeff[0b011] = std::complex<double>(0.5, -2.0);
    const std::string text = form_to_json_text(f);
    const json j = json::parse(text);
    CHECK(j.at("coefficients").at("1,2") == json::array({0.5, -2.0}));
}
