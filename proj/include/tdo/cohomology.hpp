#pragma once

#include "tdo/trigpoly.hpp"

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace tdo::cohomology {

using Matrix = Eigen::MatrixXcd;

// Finite-dimensional cochain complex with a twisting one-form: degrees
// 0..q, differentials d[k]: deg k -> k+1, wedge-by-kappa matrices K[k] of
// the same shapes, and optional Gram matrices per degree (identity when
// absent). Valid complexes satisfy d.d = 0, K.K = 0 and dK + Kd = 0
// (kappa closed), which makes dtilde = d - K/2 a differential.
struct TwistedComplex {
    int q = 0;
    std::vector<int> dims;                    // size q+1
    std::vector<Matrix> d;                    // size q
    std::vector<Matrix> kappa_wedge;          // size q
    std::vector<Eigen::MatrixXd> inner;       // size q+1 or empty
    std::vector<std::vector<std::string>> labels;
    bool oriented = true;
    // Exact finite Hodge-duality: Laplacian spectra may be compared
    // between degrees k and q-k.
    bool spectral_duality = false;
    std::string name;
    int truncation = 0;

    // Fourier-model hooks (absent for generic complexes): frequency of
    // each basis element, a builder for wedge-by-(kappa(t) dt), and a
    // builder for multiplication by a smooth periodic function.
    std::vector<std::vector<int>> frequencies;
    std::optional<TrigPoly> kappa_form;
    std::function<std::vector<Matrix>(const TrigPoly&)> kappa_wedge_builder;
    std::function<Matrix(const std::function<double(double)>&, int)> multiplication_builder;
};

struct ValidationReport {
    double d_squared = 0.0;
    double kappa_squared = 0.0;
    double anticommutator = 0.0;

    double max_residual() const {
        return std::max({d_squared, kappa_squared, anticommutator});
    }
    bool valid(double tol = 1e-12) const { return max_residual() <= tol; }
};

ValidationReport validate_complex(const TwistedComplex& c);
void require_valid(const TwistedComplex& c, double tol = 1e-12);

// dtilde[k] = d[k] - K[k]/2 (or plain d when twisted == false).
std::vector<Matrix> twisted_differential(const TwistedComplex& c, bool twisted = true);
// Adjoints with respect to the complex's inner products:
// delta[k]: deg k -> k-1 (index k-1 in the returned vector).
std::vector<Matrix> twisted_codifferential(const TwistedComplex& c, bool twisted = true);
// Laplacian per degree, delta.d + d.delta.
std::vector<Matrix> twisted_laplacian(const TwistedComplex& c, bool twisted = true);

struct CohomologyReport {
    std::vector<int> betti;
    std::vector<int> harmonic; // dim ker of the Laplacian; must equal betti
    bool twisted = true;
    long long euler = 0;
    int truncation = 0;
    bool rank_stable = true;
};

CohomologyReport cohomology_dims(const TwistedComplex& c, bool twisted, double rank_tol = 1e-9);

// A Riemannian foliation model is taut iff its twisted H^0 is nonzero.
bool is_taut(const TwistedComplex& c, double rank_tol = 1e-9);

// Carriere flow on the hyperbolic torus T^3_A: basic forms encoded as
// Fourier blocks over t of period 1 -- degree 0: f(t); degree 1:
// f(t)dt + g(t)eta; degree 2: h(t) dt^eta -- with dη = log(lambda) dt^eta
// and kappa_b = log(lambda) dt. Modes |k| <= N.
TwistedComplex carriere_model(double lambda, int N);

// Rotation-invariant forms of the irrational-rotation suspension over S^2,
// in a Legendre polynomial basis of degree <= P on the cylindrical
// coordinate z; kappa = 0 (taut), round-metric inner products.
TwistedComplex suspension_model(int P);

// Invariant forms f(x_1) dx^I on a q-dimensional transversal torus with
// Fourier modes |k| <= N and kappa = 0; exactly self-dual.
TwistedComplex torus_invariant_model(int q, int N);

struct ConformalShiftResult {
    TwistedComplex shifted;                  // kappa replaced by kappa + dh
    std::vector<Matrix> intertwiner;         // multiplication by e^{h/2} per degree
    // Commutation residual |dtilde' E - E dtilde| measured against
    // analytic test vectors (coefficients rho^|frequency|); tends to zero
    // with the truncation.
    double residual = 0.0;
};

ConformalShiftResult conformal_shift(const TwistedComplex& c, const TrigPoly& h,
                                     double rho = 0.8);

struct PoincareReport {
    std::vector<int> betti;
    bool dims_symmetric = false;
    long long twisted_euler = 0;
    // Max mismatch of sorted nonzero Laplacian eigenvalues between degrees
    // k and q-k; only evaluated for spectral_duality models (else -1).
    double eigenvalue_mismatch = -1.0;
};

PoincareReport poincare_check(const TwistedComplex& c, double rank_tol = 1e-9);

} // namespace tdo::cohomology
