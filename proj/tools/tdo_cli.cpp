// Command-line front end; all functionality comes through the C API.

#include "tdo.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::cerr << "error: cannot open config '" << path << "'\n";
        std::exit(2);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"transversal Dirac operator workbench"};
    std::string config_path;
    std::string out_path;
    std::string format;
    std::string suite;
    std::string data_dir = "datasets";
    double tol = -1.0;
    int threads = 0;

    app.add_option("--config", config_path, "JSON config file with a 'command' entry");
    app.add_option("--out", out_path, "output file (default: stdout)");
    app.add_option("--format", format, "report format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--tol", tol, "tolerance override");
    app.add_option("--threads", threads, "worker threads for independent blocks");
    app.add_option("--suite", suite,
                   "run an acceptance suite (clifford|spectra|transversal|cohomology|euler|all)");
    app.add_option("--data", data_dir, "directory with the shipped dataset files");
    CLI11_PARSE(app, argc, argv);

    if (suite.empty() && config_path.empty()) {
        std::cerr << "error: provide --config or --suite\n";
        return 2;
    }

    if (!suite.empty()) {
        char* table = nullptr;
        const tdo_status status = tdo_acceptance(suite.c_str(), data_dir.c_str(), &table);
        if (table) {
            std::cout << table;
            tdo_string_free(table);
        }
        if (status != TDO_OK && std::string(tdo_last_error()).size() > 0)
            std::cerr << "error: " << tdo_last_error() << "\n";
        return status == TDO_OK ? 0 : (status == TDO_INVALID_ARGUMENT ? 2 : 1);
    }

    nlohmann::json config;
    try {
        config = nlohmann::json::parse(read_file(config_path));
    } catch (const std::exception& e) {
        std::cerr << "error: config parse: " << e.what() << "\n";
        return 2;
    }
    if (!format.empty())
        config["format"] = format;
    if (tol > 0.0)
        config["tol"] = tol;
    if (threads > 0)
        config["threads"] = threads;
    if (!config.contains("data_dir"))
        config["data_dir"] = data_dir;

    char* report = nullptr;
    const tdo_status status = tdo_run_config(config.dump().c_str(), &report);
    if (status != TDO_OK) {
        std::cerr << "error: " << tdo_last_error() << "\n";
        if (report)
            tdo_string_free(report);
        return static_cast<int>(status);
    }
    if (out_path.empty()) {
        std::cout << report;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot write '" << out_path << "'\n";
            tdo_string_free(report);
            return 2;
        }
        out << report;
    }
    tdo_string_free(report);
    return 0;
}
