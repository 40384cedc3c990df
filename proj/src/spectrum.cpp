#include "tdo/spectrum.hpp"

#include <algorithm>
#include <cmath>

namespace tdo {

SpectrumReport make_spectrum(std::vector<double> raw, int truncation, std::string label,
                             double group_tol) {
    std::sort(raw.begin(), raw.end());
    SpectrumReport rep;
    rep.truncation = truncation;
    rep.operator_label = std::move(label);
    for (double v : raw) {
        if (!rep.eigenvalues.empty() &&
            std::abs(v - rep.eigenvalues.back()) <= group_tol * std::max(1.0, std::abs(v))) {
            ++rep.multiplicities.back();
        } else {
            rep.eigenvalues.push_back(v);
            rep.multiplicities.push_back(1);
        }
    }
    return rep;
}

} // namespace tdo
