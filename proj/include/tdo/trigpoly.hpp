#pragma once

#include <cmath>
#include <complex>
#include <vector>

namespace tdo {

// Real trigonometric polynomial
//   p(y) = c0 + sum_j ( cos_coeffs[j-1] cos(j w y) + sin_coeffs[j-1] sin(j w y) )
// with fundamental angular frequency w (2*pi/period).
struct TrigPoly {
    double c0 = 0.0;
    std::vector<double> cos_coeffs;
    std::vector<double> sin_coeffs;
    double omega = 1.0;

    static TrigPoly zero(double omega = 1.0) { return TrigPoly{0.0, {}, {}, omega}; }

    int bandwidth() const {
        return static_cast<int>(std::max(cos_coeffs.size(), sin_coeffs.size()));
    }

    double operator()(double y) const {
        double v = c0;
        for (size_t j = 0; j < cos_coeffs.size(); ++j)
            v += cos_coeffs[j] * std::cos(static_cast<double>(j + 1) * omega * y);
        for (size_t j = 0; j < sin_coeffs.size(); ++j)
            v += sin_coeffs[j] * std::sin(static_cast<double>(j + 1) * omega * y);
        return v;
    }

    TrigPoly derivative() const {
        TrigPoly d;
        d.omega = omega;
        const int b = bandwidth();
        d.cos_coeffs.assign(static_cast<size_t>(b), 0.0);
        d.sin_coeffs.assign(static_cast<size_t>(b), 0.0);
        for (size_t j = 0; j < sin_coeffs.size(); ++j)
            d.cos_coeffs[j] = static_cast<double>(j + 1) * omega * sin_coeffs[j];
        for (size_t j = 0; j < cos_coeffs.size(); ++j)
            d.sin_coeffs[j] = -static_cast<double>(j + 1) * omega * cos_coeffs[j];
        return d;
    }

    // Exponential Fourier coefficient of e^{i k w y} for |k| <= bandwidth.
    std::complex<double> fourier_coefficient(int k) const {
        if (k == 0)
            return {c0, 0.0};
        const size_t j = static_cast<size_t>(std::abs(k)) - 1;
        const double c = j < cos_coeffs.size() ? cos_coeffs[j] : 0.0;
        const double s = j < sin_coeffs.size() ? sin_coeffs[j] : 0.0;
        return k > 0 ? std::complex<double>(c / 2.0, -s / 2.0)
                     : std::complex<double>(c / 2.0, s / 2.0);
    }
};

} // namespace tdo
