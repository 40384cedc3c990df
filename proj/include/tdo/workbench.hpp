#pragma once

#include "tdo/cohomology.hpp"
#include "tdo/euler.hpp"
#include "tdo/exterior.hpp"
#include "tdo/spectrum.hpp"

#include <string>
#include <vector>

namespace tdo::workbench {

struct RunResult {
    int status = 0;          // 0 ok, 2 validation failure, 3 contract violation
    std::string report;      // JSON or CSV payload
    std::string error;       // named residual / invariant on failure
};

// Dispatches a JSON config {"command": ..., ...} to the module operations
// and renders a deterministic report. Unknown keys are rejected.
RunResult run(const std::string& config_json);

std::string spectrum_to_csv(const SpectrumReport& rep);
std::string spectrum_to_json_text(const SpectrumReport& rep);
std::string form_to_json_text(const exterior::Form& f);

// Dataset files (JSON) for the stratified Euler characteristic formulas.
std::vector<euler::StratumRecord> parse_strata_dataset(const std::string& json_text,
                                                       std::string* group = nullptr);
std::vector<euler::FoliationStratumRecord> parse_foliation_dataset(const std::string& json_text);

// Lefschetz oracle from a dataset carrying {"group": preset, "generators":
// [integer matrices]}.
long long lefschetz_from_dataset(const std::string& json_text, const std::string& rho);

std::string read_text_file(const std::string& path);

} // namespace tdo::workbench
