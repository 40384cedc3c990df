#pragma once

#include "tdo/spectrum.hpp"
#include "tdo/trigpoly.hpp"

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

namespace tdo::transversal {

// Orthonormal frame data for a distribution Q inside a Riemannian ambient
// space: f_1..f_q span Q, f_{q+1}..f_n span L = Q-perp. Fields are given
// as closed-form evaluators; the Christoffel evaluator is optional (when
// absent it is recovered from the metric by finite differences).
struct DistributionFrame {
    int ambient = 0;
    int q = 0;
    std::function<Eigen::MatrixXd(const Eigen::VectorXd&)> metric;
    std::vector<std::function<Eigen::VectorXd(const Eigen::VectorXd&)>> frame;
    // christoffel(x)[k](i,j) = Gamma^k_ij
    std::function<std::vector<Eigen::MatrixXd>(const Eigen::VectorXd&)> christoffel;
    std::string name;
};

DistributionFrame coordinate_axes_frame(int n, int q);
// Torus (R/2piZ)^2 with metric e^{2g(y)}dx^2 + dy^2, Q spanned by the unit
// x-direction e^{-g} d_x, L by d_y.
DistributionFrame warped_torus_frame(const TrigPoly& g, bool analytic_christoffel = false);
// Q = ker(dz - (x dy - y dx)/2) in flat R^3, orthonormalized.
DistributionFrame heisenberg_frame();

enum class MeanCurvatureKind { OfL, OfQ }; // H^L lies in Q, H^Q lies in L

enum class FdScheme { Central2, FivePoint4 };

struct FdOptions {
    FdScheme scheme = FdScheme::Central2;
    double step = 1e-5;
};

struct MeanCurvatureField {
    std::string label;
    std::vector<Eigen::VectorXd> points;
    std::vector<Eigen::VectorXd> values;
    // Max norm of the component outside the expected bundle (Q for H^L,
    // L for H^Q), normalized; the projection property of the definition.
    double off_bundle_residual = 0.0;
};

MeanCurvatureField mean_curvature(const DistributionFrame& frame, MeanCurvatureKind which,
                                  const std::vector<Eigen::VectorXd>& points,
                                  const FdOptions& fd = FdOptions{});

// D_L = i(d/dy + g'(y)/2) on 2pi-periodic functions, assembled on an odd
// collocation grid of >= N points via the Fourier differentiation matrix
// plus pointwise multiplication. The report keeps eigenvalues in the
// resolved window |lambda| <= K/2 (K the mode cutoff); eigenvalues near the
// truncation edge belong to badly represented eigenfunctions and are
// discarded, see `resolved_window`.
SpectrumReport warped_torus_dl(const TrigPoly& g, int N);
int resolved_window(int N);

// D_Q = i e^{-g(y)} d_x on the x-mode n: multiplication by -n e^{-g(y)},
// sampled on the collocation grid.
SpectrumReport warped_torus_dq(const TrigPoly& g, int x_mode, int N);

// Residual of the discrete conjugation identity
// e^{-g/2} (i d/dy) e^{g/2} = D_L, measured against analytic test vectors
// (Fourier coefficients rho^|k|), which the truncation resolves.
double dl_conjugation_residual(const TrigPoly& g, int N);

struct AdjointReport {
    // || A* - (A - c(H)) || with A = i d/dy and A* the adjoint in the
    // weighted inner product (weight sqrt(det g) = e^g).
    double defect = 0.0;
    // Hermiticity residual of D_L in the same weighted inner product.
    double dl_hermiticity = 0.0;
};

AdjointReport adjoint_defect(const TrigPoly& g, int N);

struct SlopeReport {
    SpectrumReport spectrum;
    double min_gap = 0.0; // minimum gap between distinct eigenvalues
};

// D_Q = i (d_x + r d_y)/sqrt(1+r^2) on scalar Fourier modes of T^2;
// eigenvalues 2 pi (m + r n)/sqrt(1+r^2) over |m|,|n| <= M.
SlopeReport slope_distribution_dq(double r, int M);

// Seminorm of a collocation-space matrix against analytic test vectors;
// shared measure for the defect and conjugation checks above.
double analytic_test_norm(const Eigen::MatrixXcd& m, double rho = 0.8);

// Antisymmetric spectral differentiation matrix on an odd equispaced
// 2pi-periodic grid.
Eigen::MatrixXd fourier_diff_matrix(int n_points);

} // namespace tdo::transversal
