#pragma once

#include "tdo/clifford.hpp"
#include "tdo/exterior.hpp"
#include "tdo/spectrum.hpp"

#include <Eigen/Dense>
#include <map>
#include <vector>

namespace tdo::torus {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

// Modes m in Z^n with max-norm at most M, in lexicographic order.
std::vector<Eigen::VectorXi> mode_lattice(int n, int M);

// Truncated Fourier series of a form field on T^n = R^n/Z^n: one exterior
// form of coefficients per mode.
struct FourierFormField {
    int n = 0;
    int truncation = 0;
    std::map<std::vector<int>, exterior::Form> modes;
};

// Per-mode exterior derivative on grade-r coefficients: 2 pi i (m-flat ^ .).
Matrix d_block(int n, int r, const Eigen::VectorXi& mode);

// Codifferential block computed two independent ways, which must agree:
// the L2 adjoint of d (conjugate transpose, Parseval inner product) and
// the sign formula (-1)^{nr+n+1} * d * applied modewise. Returns the
// adjoint route; `route_disagreement` reports the max entrywise gap.
Matrix delta_block(int n, int r, const Eigen::VectorXi& mode, double* route_disagreement = nullptr);

// Assembled matrices over all modes with max-norm <= M (block diagonal in
// the mode index; basis order: lexicographic modes, then multi-indices).
Matrix exterior_d(int n, int M, int r);
Matrix codifferential(int n, int M, int r, double* route_disagreement = nullptr);
Matrix laplacian(int n, int M, int r);

// Applies d to a truncated form field, modewise.
FourierFormField apply_d(const FourierFormField& field);

// dim ker of the grade-r Laplacian at truncation M; equals binomial(n, r)
// on flat tori for every M >= 1.
int harmonic_dims(int n, int M, int r, double rank_tol = 1e-9);

// Spin^c Dirac operator on T^2 built from the first two Pauli generators;
// per mode the block is 2 pi i (m1 c1 + m2 c2).
SpectrumReport dirac_t2(int M, int threads = 1);
Matrix dirac_t2_block(const Eigen::VectorXi& mode);
// Kernel dimensions of the assembled operator per chirality eigenspace of
// gamma = i c1 c2.
std::pair<int, int> dirac_t2_kernel_chirality(int M, double rank_tol = 1e-9);

// -i d/dtheta on span{e^{i n theta} : |n| <= M}.
SpectrumReport circle_dirac(int M);

enum class SymbolFamily { DiracT2, LaplacianT2 };

// (1/t^order) e^{-itf} P e^{itf} restricted to one Fourier mode, for f with
// df = xi; converges to i c(xi) (Dirac) or |xi|^2 I (Laplacian).
Matrix principal_symbol_limit(SymbolFamily family, const Eigen::VectorXi& mode,
                              const Eigen::Vector2d& xi, double t);
// Norm of the gap to the limiting symbol at parameter t.
double symbol_limit_residual(SymbolFamily family, const Eigen::VectorXi& mode,
                             const Eigen::Vector2d& xi, double t);

// tr exp(-t D*D) - tr exp(-t D D*) for a finite rectangular matrix; equals
// dim ker D - dim ker D* for every t > 0.
double heat_supertrace_index(const Matrix& D, double t);

struct FlipReport {
    double anticommutator_residual = 0.0;
    double flip_residual = 0.0;
};

// For anticommuting S, T: verifies T maps each eigenspace E_lambda of S
// into E_{-lambda}. S must be diagonalizable; here S is required Hermitian.
FlipReport anticommuting_flip_check(const Matrix& S, const Matrix& T, double tol = 1e-10);

} // namespace tdo::torus
