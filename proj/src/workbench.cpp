#include "tdo/workbench.hpp"

#include "tdo/clifford.hpp"
#include "tdo/torus.hpp"
#include "tdo/transversal.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

namespace tdo::workbench {

using nlohmann::json;

namespace {

std::string format_double(double v) {
    char buf[40];
    auto res = std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf, static_cast<size_t>(res));
}

json spectrum_to_json(const SpectrumReport& rep) {
    json j;
    j["eigenvalues"] = rep.eigenvalues;
    j["multiplicities"] = rep.multiplicities;
    j["operator"] = rep.operator_label;
    j["truncation"] = rep.truncation;
    return j;
}

json complex_to_json(const std::complex<double>& c) { return json::array({c.real(), c.imag()}); }

json matrix_to_json(const Eigen::MatrixXcd& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            row.push_back(complex_to_json(m(i, j)));
        rows.push_back(row);
    }
    return rows;
}

void require_keys(const json& cfg, std::set<std::string> allowed) {
    allowed.insert("command");
    allowed.insert("format");
    allowed.insert("tol");
    allowed.insert("threads");
    allowed.insert("data_dir");
    for (auto it = cfg.begin(); it != cfg.end(); ++it)
        if (!allowed.count(it.key()))
            throw std::invalid_argument("config: unknown key '" + it.key() + "'");
}

TrigPoly trig_from_config(const json& cfg, const std::string& prefix, double omega) {
    TrigPoly p;
    p.omega = omega;
    if (cfg.contains(prefix + "_c0"))
        p.c0 = cfg.at(prefix + "_c0").get<double>();
    if (cfg.contains(prefix + "_cos"))
        p.cos_coeffs = cfg.at(prefix + "_cos").get<std::vector<double>>();
    if (cfg.contains(prefix + "_sin"))
        p.sin_coeffs = cfg.at(prefix + "_sin").get<std::vector<double>>();
    return p;
}

Eigen::MatrixXcd matrix_from_config(const json& rows) {
    if (!rows.is_array() || rows.empty())
        throw std::invalid_argument("config: matrix must be a nonempty array of rows");
    const size_t cols = rows.at(0).size();
    Eigen::MatrixXcd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols));
    for (size_t i = 0; i < rows.size(); ++i) {
        if (rows.at(i).size() != cols)
            throw std::invalid_argument("config: ragged matrix rows");
        for (size_t j = 0; j < cols; ++j) {
            const auto& e = rows.at(i).at(j);
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                std::complex<double>(e.at(0).get<double>(), e.at(1).get<double>());
        }
    }
    return m;
}

Eigen::MatrixXi int_matrix_from_json(const json& rows) {
    const size_t n = rows.size();
    Eigen::MatrixXi m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(rows.at(0).size()));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < rows.at(i).size(); ++j)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                rows.at(i).at(j).get<int>();
    return m;
}

std::string resolve_dataset(const json& cfg) {
    std::string path = cfg.at("dataset").get<std::string>();
    if (!path.empty() && path.front() != '/' && cfg.contains("data_dir"))
        path = cfg.at("data_dir").get<std::string>() + "/" + path;
    return path;
}

json load_dataset(const json& cfg) { return json::parse(read_text_file(resolve_dataset(cfg))); }

euler::LinearTorusAction torus_action_from_json(const json& data) {
    const euler::FiniteGroup group = euler::FiniteGroup::parse(data.at("group").get<std::string>());
    std::vector<Eigen::MatrixXi> gens;
    for (const auto& g : data.at("generators"))
        gens.push_back(int_matrix_from_json(g));
    return euler::make_torus_action(group, gens);
}

cohomology::TwistedComplex model_from_config(const json& cfg) {
    const std::string model = cfg.value("model", "carriere");
    if (model == "carriere")
        return cohomology::carriere_model(cfg.value("lambda", (3.0 + std::sqrt(5.0)) / 2.0),
                                          cfg.value("N", 32));
    if (model == "suspension")
        return cohomology::suspension_model(cfg.value("P", 8));
    if (model == "torus-invariant")
        return cohomology::torus_invariant_model(cfg.value("q", 3), cfg.value("N", 8));
    throw std::invalid_argument("config: unknown model '" + model + "'");
}

json cohomology_report_json(const cohomology::CohomologyReport& rep) {
    json j;
    j["betti"] = rep.betti;
    j["euler"] = rep.euler;
    j["twisted"] = rep.twisted;
    j["truncation"] = rep.truncation;
    j["rank_stable"] = rep.rank_stable;
    return j;
}

struct Dispatch {
    json report;
    const SpectrumReport* spectrum = nullptr; // set when CSV output is meaningful
    SpectrumReport owned_spectrum;
};

Dispatch dispatch(const json& cfg) {
    const std::string command = cfg.at("command").get<std::string>();
    Dispatch out;

    if (command == "clifford") {
        require_keys(cfg, {"n"});
        const auto rep = clifford::build_clifford(cfg.at("n").get<int>());
        json j;
        j["command"] = command;
        j["n"] = rep.n;
        j["k"] = rep.k;
        json gens = json::array();
        for (const auto& g : rep.generators)
            gens.push_back(matrix_to_json(g));
        j["generators"] = gens;
        j["relation_residual"] = clifford::relation_residual(rep);
        out.report = j;
        return out;
    }
    if (command == "circle-dirac") {
        require_keys(cfg, {"M"});
        out.owned_spectrum = torus::circle_dirac(cfg.at("M").get<int>());
        out.spectrum = &out.owned_spectrum;
        out.report = spectrum_to_json(out.owned_spectrum);
        out.report["command"] = command;
        return out;
    }
    if (command == "dirac-t2") {
        require_keys(cfg, {"M"});
        const int M = cfg.at("M").get<int>();
        out.owned_spectrum = torus::dirac_t2(M, cfg.value("threads", 1));
        out.spectrum = &out.owned_spectrum;
        out.report = spectrum_to_json(out.owned_spectrum);
        auto [plus, minus] = torus::dirac_t2_kernel_chirality(M);
        out.report["command"] = command;
        out.report["kernel_chirality"] = json::array({plus, minus});
        return out;
    }
    if (command == "harmonic-dims") {
        require_keys(cfg, {"n", "M", "r"});
        json j;
        j["command"] = command;
        j["dim"] = torus::harmonic_dims(cfg.at("n").get<int>(), cfg.at("M").get<int>(),
                                        cfg.at("r").get<int>(),
                                        cfg.value("tol", 1e-9));
        out.report = j;
        return out;
    }
    if (command == "heat-supertrace") {
        require_keys(cfg, {"matrix", "t"});
        json j;
        j["command"] = command;
        j["value"] = torus::heat_supertrace_index(matrix_from_config(cfg.at("matrix")),
                                                  cfg.at("t").get<double>());
        out.report = j;
        return out;
    }
    if (command == "symbol-limit") {
        require_keys(cfg, {"operator", "mode", "xi", "ts"});
        const std::string opname = cfg.value("operator", "dirac-t2");
        torus::SymbolFamily fam = (opname == "laplacian-t2") ? torus::SymbolFamily::LaplacianT2
                                                             : torus::SymbolFamily::DiracT2;
        if (opname != "dirac-t2" && opname != "laplacian-t2")
            throw std::invalid_argument("config: unknown symbol operator '" + opname + "'");
        const auto mode_v = cfg.at("mode").get<std::vector<int>>();
        const auto xi_v = cfg.at("xi").get<std::vector<double>>();
        if (mode_v.size() != 2 || xi_v.size() != 2)
            throw std::invalid_argument("config: symbol-limit expects 2d mode and xi");
        Eigen::VectorXi mode(2);
        mode << mode_v[0], mode_v[1];
        Eigen::Vector2d xi(xi_v[0], xi_v[1]);
        json res = json::array();
        for (double t : cfg.at("ts").get<std::vector<double>>())
            res.push_back(torus::symbol_limit_residual(fam, mode, xi, t));
        json j;
        j["command"] = command;
        j["residuals"] = res;
        out.report = j;
        return out;
    }
    if (command == "warped-dl" || command == "warped-dq") {
        require_keys(cfg, {"g_c0", "g_cos", "g_sin", "N", "x_mode"});
        const TrigPoly g = trig_from_config(cfg, "g", 1.0);
        const int N = cfg.value("N", 256);
        if (command == "warped-dl")
            out.owned_spectrum = transversal::warped_torus_dl(g, N);
        else
            out.owned_spectrum = transversal::warped_torus_dq(g, cfg.value("x_mode", 1), N);
        out.spectrum = &out.owned_spectrum;
        out.report = spectrum_to_json(out.owned_spectrum);
        out.report["command"] = command;
        if (command == "warped-dl")
            out.report["resolved_window"] = transversal::resolved_window(N);
        return out;
    }
    if (command == "warped-mean-curvature") {
        require_keys(cfg, {"g_c0", "g_cos", "g_sin", "which", "samples"});
        const TrigPoly g = trig_from_config(cfg, "g", 1.0);
        const std::string which = cfg.value("which", "HQ");
        if (which != "HQ" && which != "HL")
            throw std::invalid_argument("config: which must be HQ or HL");
        std::vector<Eigen::VectorXd> pts;
        for (double y : cfg.at("samples").get<std::vector<double>>()) {
            Eigen::VectorXd p(2);
            p << 0.0, y;
            pts.push_back(p);
        }
        auto field = transversal::mean_curvature(
            transversal::warped_torus_frame(g),
            which == "HL" ? transversal::MeanCurvatureKind::OfL
                          : transversal::MeanCurvatureKind::OfQ,
            pts);
        json vals = json::array();
        for (const auto& v : field.values)
            vals.push_back(std::vector<double>(v.data(), v.data() + v.size()));
        json j;
        j["command"] = command;
        j["label"] = field.label;
        j["values"] = vals;
        j["off_bundle_residual"] = field.off_bundle_residual;
        out.report = j;
        return out;
    }
    if (command == "heisenberg-mean-curvature") {
        require_keys(cfg, {"points"});
        std::vector<Eigen::VectorXd> pts;
        for (const auto& p : cfg.at("points")) {
            Eigen::VectorXd v(3);
            v << p.at(0).get<double>(), p.at(1).get<double>(), p.at(2).get<double>();
            pts.push_back(v);
        }
        auto field = transversal::mean_curvature(transversal::heisenberg_frame(),
                                                 transversal::MeanCurvatureKind::OfL, pts);
        json vals = json::array();
        for (const auto& v : field.values)
            vals.push_back(std::vector<double>(v.data(), v.data() + v.size()));
        json j;
        j["command"] = command;
        j["label"] = field.label;
        j["values"] = vals;
        j["off_bundle_residual"] = field.off_bundle_residual;
        out.report = j;
        return out;
    }
    if (command == "adjoint-defect") {
        require_keys(cfg, {"g_c0", "g_cos", "g_sin", "N"});
        const auto rep = transversal::adjoint_defect(trig_from_config(cfg, "g", 1.0),
                                                     cfg.value("N", 256));
        json j;
        j["command"] = command;
        j["defect"] = rep.defect;
        j["dl_hermiticity"] = rep.dl_hermiticity;
        out.report = j;
        return out;
    }
    if (command == "slope-dq") {
        require_keys(cfg, {"r", "M"});
        auto rep = transversal::slope_distribution_dq(cfg.at("r").get<double>(),
                                                      cfg.at("M").get<int>());
        out.owned_spectrum = rep.spectrum;
        out.spectrum = &out.owned_spectrum;
        out.report = spectrum_to_json(rep.spectrum);
        out.report["command"] = command;
        out.report["min_gap"] = rep.min_gap;
        return out;
    }
    if (command == "carriere" || command == "suspension" || command == "torus-invariant") {
        require_keys(cfg, {"model", "lambda", "N", "P", "q", "twisted"});
        json mcfg = cfg;
        mcfg["model"] = command;
        const auto model = model_from_config(mcfg);
        const bool twisted = cfg.value("twisted", true);
        auto rep = cohomology::cohomology_dims(model, twisted, cfg.value("tol", 1e-9));
        out.report = cohomology_report_json(rep);
        out.report["command"] = command;
        out.report["taut"] = cohomology::is_taut(model, cfg.value("tol", 1e-9));
        return out;
    }
    if (command == "conformal-shift") {
        require_keys(cfg, {"lambda", "N", "h_c0", "h_cos", "h_sin"});
        const auto model = cohomology::carriere_model(
            cfg.value("lambda", (3.0 + std::sqrt(5.0)) / 2.0), cfg.value("N", 32));
        const TrigPoly h = trig_from_config(cfg, "h", 2.0 * std::numbers::pi);
        auto res = cohomology::conformal_shift(model, h);
        json j;
        j["command"] = command;
        j["betti_twisted"] = cohomology::cohomology_dims(model, true).betti;
        j["betti_untwisted"] = cohomology::cohomology_dims(model, false).betti;
        j["shifted_betti_twisted"] = cohomology::cohomology_dims(res.shifted, true).betti;
        j["shifted_betti_untwisted"] = cohomology::cohomology_dims(res.shifted, false).betti;
        j["residual"] = res.residual;
        out.report = j;
        return out;
    }
    if (command == "poincare") {
        require_keys(cfg, {"model", "lambda", "N", "P", "q"});
        const auto rep = cohomology::poincare_check(model_from_config(cfg), cfg.value("tol", 1e-9));
        json j;
        j["command"] = command;
        j["betti"] = rep.betti;
        j["dims_symmetric"] = rep.dims_symmetric;
        j["twisted_euler"] = rep.twisted_euler;
        j["eigenvalue_mismatch"] = rep.eigenvalue_mismatch;
        out.report = j;
        return out;
    }
    if (command == "characters") {
        require_keys(cfg, {"group"});
        const auto group = euler::FiniteGroup::parse(cfg.at("group").get<std::string>());
        const auto chars = euler::irreducible_characters(group);
        json table = json::array();
        for (const auto& c : chars) {
            json row;
            row["label"] = c.label;
            json vals = json::array();
            for (const auto& v : c.values)
                vals.push_back(complex_to_json(v));
            row["values"] = vals;
            table.push_back(row);
        }
        json j;
        j["command"] = command;
        j["characters"] = table;
        out.report = j;
        return out;
    }
    if (command == "lefschetz-euler") {
        require_keys(cfg, {"dataset", "group", "generators", "rho"});
        json data = cfg.contains("dataset") ? load_dataset(cfg) : cfg;
        const auto action = torus_action_from_json(data);
        const auto chars = euler::irreducible_characters(action.group);
        const auto& rho = euler::find_character(chars, cfg.at("rho").get<std::string>());
        json j;
        j["command"] = command;
        j["rho"] = rho.label;
        j["value"] = euler::lefschetz_euler(action, rho);
        out.report = j;
        return out;
    }
    if (command == "sphere-euler") {
        require_keys(cfg, {"dataset", "rho"});
        json data = load_dataset(cfg);
        const auto group = euler::FiniteGroup::parse(data.at("group").get<std::string>());
        std::vector<Eigen::MatrixXi> gens;
        for (const auto& g : data.at("generators"))
            gens.push_back(int_matrix_from_json(g));
        // Element matrices from generator powers (abelian product).
        std::vector<Eigen::MatrixXi> mats;
        const int n = static_cast<int>(gens.front().rows());
        for (int a = 0; a < group.order; ++a) {
            Eigen::MatrixXi m = Eigen::MatrixXi::Identity(n, n);
            const auto t = group.tuple_of(a);
            for (size_t i = 0; i < gens.size(); ++i)
                for (int p = 0; p < t[i]; ++p)
                    m = m * gens[i];
            mats.push_back(m);
        }
        const auto chars = euler::irreducible_characters(group);
        const auto& rho = euler::find_character(chars, cfg.at("rho").get<std::string>());
        json j;
        j["command"] = command;
        j["rho"] = rho.label;
        j["value"] = euler::sphere_euler(group, mats, data.at("sphere_dim").get<int>(), rho);
        out.report = j;
        return out;
    }
    if (command == "strata-euler") {
        require_keys(cfg, {"dataset", "rho"});
        std::string group;
        const auto records = parse_strata_dataset(read_text_file(resolve_dataset(cfg)), &group);
        json j;
        j["command"] = command;
        j["group"] = group;
        j["rho"] = cfg.at("rho").get<std::string>();
        j["value"] = euler::strata_euler(records, cfg.at("rho").get<std::string>());
        out.report = j;
        return out;
    }
    if (command == "gauss-bonnet") {
        require_keys(cfg, {"dataset"});
        const auto records = parse_foliation_dataset(read_text_file(resolve_dataset(cfg)));
        json j;
        j["command"] = command;
        j["value"] = euler::basic_gauss_bonnet(records);
        out.report = j;
        return out;
    }
    if (command == "open-euler") {
        require_keys(cfg, {"chi", "open"});
        json j;
        j["command"] = command;
        j["value"] = euler::open_euler(cfg.at("chi").get<long long>(),
                                       cfg.at("open").get<bool>());
        out.report = j;
        return out;
    }
    throw std::invalid_argument("config: unknown command '" + command + "'");
}

} // namespace

std::string spectrum_to_csv(const SpectrumReport& rep) {
    std::ostringstream os;
    os << "# operator=" << rep.operator_label << " truncation=" << rep.truncation << "\n";
    os << "eigenvalue,multiplicity\n";
    for (size_t i = 0; i < rep.eigenvalues.size(); ++i)
        os << format_double(rep.eigenvalues[i]) << "," << rep.multiplicities[i] << "\n";
    return os.str();
}

std::string spectrum_to_json_text(const SpectrumReport& rep) {
    return spectrum_to_json(rep).dump(2) + "\n";
}

std::string form_to_json_text(const exterior::Form& f) {
    json j;
    j["n"] = f.n;
    json coeffs;
    for (const auto& [mask, c] : f.coeff) {
        std::string key;
        for (int b = 0; b < f.n; ++b)
            if (mask & (1u << b)) {
                if (!key.empty())
                    key += ",";
                key += std::to_string(b + 1);
            }
        coeffs[key.empty() ? "1" : key] = complex_to_json(c);
    }
    j["coefficients"] = coeffs;
    return j.dump(2) + "\n";
}

std::vector<euler::StratumRecord> parse_strata_dataset(const std::string& json_text,
                                                       std::string* group) {
    const json data = json::parse(json_text);
    if (group)
        *group = data.value("group", "");
    std::vector<euler::StratumRecord> records;
    for (const auto& s : data.at("strata")) {
        euler::StratumRecord r;
        r.label = s.value("label", "");
        r.principal = s.value("principal", false);
        r.chi_rel = s.at("chi_rel").get<long long>();
        for (auto it = s.at("chi_rho_orbit").begin(); it != s.at("chi_rho_orbit").end(); ++it)
            r.chi_rho_orbit[it.key()] = it.value().get<long long>();
        records.push_back(std::move(r));
    }
    return records;
}

long long lefschetz_from_dataset(const std::string& json_text, const std::string& rho) {
    const auto action = torus_action_from_json(json::parse(json_text));
    const auto chars = euler::irreducible_characters(action.group);
    return euler::lefschetz_euler(action, euler::find_character(chars, rho));
}

std::vector<euler::FoliationStratumRecord> parse_foliation_dataset(const std::string& json_text) {
    const json data = json::parse(json_text);
    std::vector<euler::FoliationStratumRecord> records;
    for (const auto& s : data.at("strata")) {
        euler::FoliationStratumRecord r;
        r.label = s.value("label", "");
        r.chi_quotient = s.at("chi_quotient").get<long long>();
        r.chi_leaf_closure = s.at("chi_leaf_closure").get<long long>();
        records.push_back(std::move(r));
    }
    return records;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::invalid_argument("cannot open file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunResult run(const std::string& config_json) {
    RunResult res;
    try {
        json cfg;
        try {
            cfg = json::parse(config_json);
        } catch (const json::parse_error& e) {
            throw std::invalid_argument(std::string("config: parse error: ") + e.what());
        }
        if (!cfg.is_object() || !cfg.contains("command"))
            throw std::invalid_argument("config: expected an object with a 'command' key");
        if (cfg.contains("tol") && !(cfg.at("tol").get<double>() > 0.0))
            throw std::invalid_argument("config: tolerance must be positive");

        Dispatch d = dispatch(cfg);
        const std::string format = cfg.value("format", "json");
        if (format == "json") {
            res.report = d.report.dump(2) + "\n";
        } else if (format == "csv") {
            if (!d.spectrum)
                throw std::invalid_argument("config: csv format is only available for spectra");
            res.report = spectrum_to_csv(*d.spectrum);
        } else {
            throw std::invalid_argument("config: unknown format '" + format + "'");
        }
        res.status = 0;
    } catch (const std::invalid_argument& e) {
        res.status = 2;
        res.error = e.what();
    } catch (const std::exception& e) {
        res.status = 3;
        res.error = e.what();
    }
    return res;
}

} // namespace tdo::workbench
