#pragma once

#include <string>
#include <vector>

namespace tdo::acceptance {

struct CriterionResult {
    std::string id;
    std::string name;
    bool pass = false;
    std::string detail; // measured value vs expected, with tolerance
};

struct SuiteResult {
    std::string suite;
    std::vector<CriterionResult> results;
    double seconds = 0.0;

    bool all_pass() const {
        for (const auto& r : results)
            if (!r.pass)
                return false;
        return true;
    }
    std::string table() const;
};

// suite in {clifford, spectra, transversal, cohomology, euler, all};
// data_dir points at the shipped dataset files.
SuiteResult run_suite(const std::string& suite, const std::string& data_dir);

} // namespace tdo::acceptance
