#pragma once

#include <string>
#include <vector>

namespace tdo {

// Sorted eigenvalues with multiplicities plus truncation metadata.
struct SpectrumReport {
    std::vector<double> eigenvalues;    // strictly increasing
    std::vector<int> multiplicities;    // parallel, all >= 1
    int truncation = 0;
    std::string operator_label;

    size_t size() const { return eigenvalues.size(); }
    int total_count() const {
        int t = 0;
        for (int m : multiplicities)
            t += m;
        return t;
    }
};

// Sort raw eigenvalues and coalesce values closer than
// tol * max(1, |value|) into multiplicity counts.
SpectrumReport make_spectrum(std::vector<double> raw, int truncation, std::string label,
                             double group_tol = 1e-12);

} // namespace tdo
