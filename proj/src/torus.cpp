#include "tdo/torus.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace tdo::torus {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
const Complex kI(0.0, 1.0);

Eigen::VectorXcd mode_covector(int n, const Eigen::VectorXi& mode) {
    Eigen::VectorXcd w(n);
    for (int j = 0; j < n; ++j)
        w[j] = Complex(static_cast<double>(mode[j]), 0.0);
    return w;
}

// Hodge star on T^n (Euclidean metric, standard orientation) as a matrix
// from grade r to grade n-r.
Eigen::MatrixXcd star_matrix(int n, int r) {
    const auto dom = exterior::grade_basis(n, r);
    const auto img = exterior::grade_basis(n, n - r);
    const exterior::MetricPoint flat = exterior::euclidean_metric(n);
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(img.size()),
                                                static_cast<Eigen::Index>(dom.size()));
    for (size_t j = 0; j < dom.size(); ++j) {
        exterior::Form f(n);
        f.coeff[dom[j]] = Complex(1.0, 0.0);
        exterior::Form s = exterior::hodge_star(flat, f);
        for (size_t i = 0; i < img.size(); ++i)
            M(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = s.coefficient(img[i]);
    }
    return M;
}

int rank_of(const Eigen::MatrixXcd& m, double rel_tol, double scale = -1.0) {
    if (m.rows() == 0 || m.cols() == 0)
        return 0;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    const auto& s = svd.singularValues();
    const double cutoff = rel_tol * std::max(scale > 0.0 ? scale : s(0), 1e-300);
    int r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > cutoff)
            ++r;
    return r;
}

void check_grade(int n, int r) {
    if (r < 0 || r > n)
        throw std::invalid_argument("torus: grade out of range");
}

} // namespace

std::vector<Eigen::VectorXi> mode_lattice(int n, int M) {
    std::vector<Eigen::VectorXi> out;
    Eigen::VectorXi m = Eigen::VectorXi::Constant(n, -M);
    while (true) {
        out.push_back(m);
        int j = n - 1;
        while (j >= 0 && m[j] == M) {
            m[j] = -M;
            --j;
        }
        if (j < 0)
            break;
        ++m[j];
    }
    return out;
}

Matrix d_block(int n, int r, const Eigen::VectorXi& mode) {
    check_grade(n, r);
    return kTwoPi * kI * exterior::wedge_matrix(n, r, mode_covector(n, mode));
}

Matrix delta_block(int n, int r, const Eigen::VectorXi& mode, double* route_disagreement) {
    check_grade(n, r);
    if (r == 0) {
        if (route_disagreement)
            *route_disagreement = 0.0;
        return Matrix::Zero(0, 1);
    }
    // Route 1: adjoint of d on grade r-1 coefficients in the Parseval
    // inner product (volume normalized to 1).
    Matrix adj = d_block(n, r - 1, mode).adjoint();

    // Route 2: (-1)^{nr+n+1} * d * on grade r.
    const double sign = ((n * r + n + 1) % 2 == 0) ? 1.0 : -1.0;
    Matrix via_star = sign * star_matrix(n, n - r + 1) * d_block(n, n - r, mode) * star_matrix(n, r);
    if (route_disagreement)
        *route_disagreement = (adj - via_star).cwiseAbs().maxCoeff();
    return adj;
}

namespace {

Matrix assemble_blocks(int n, int M, int rows_per_block, int cols_per_block,
                       const std::function<Matrix(const Eigen::VectorXi&)>& block) {
    const auto modes = mode_lattice(n, M);
    const Eigen::Index R = static_cast<Eigen::Index>(modes.size()) * rows_per_block;
    const Eigen::Index C = static_cast<Eigen::Index>(modes.size()) * cols_per_block;
    Matrix out = Matrix::Zero(R, C);
    for (size_t i = 0; i < modes.size(); ++i)
        out.block(static_cast<Eigen::Index>(i) * rows_per_block,
                  static_cast<Eigen::Index>(i) * cols_per_block, rows_per_block, cols_per_block) =
            block(modes[i]);
    return out;
}

} // namespace

Matrix exterior_d(int n, int M, int r) {
    check_grade(n, r);
    return assemble_blocks(n, M, exterior::binomial(n, r + 1), exterior::binomial(n, r),
                           [&](const Eigen::VectorXi& m) { return d_block(n, r, m); });
}

Matrix codifferential(int n, int M, int r, double* route_disagreement) {
    check_grade(n, r);
    double worst = 0.0;
    Matrix out = assemble_blocks(n, M, exterior::binomial(n, r - 1), exterior::binomial(n, r),
                                 [&](const Eigen::VectorXi& m) {
                                     double gap = 0.0;
                                     Matrix b = delta_block(n, r, m, &gap);
                                     worst = std::max(worst, gap);
                                     return b;
                                 });
    if (route_disagreement)
        *route_disagreement = worst;
    return out;
}

Matrix laplacian(int n, int M, int r) {
    check_grade(n, r);
    const int dim = exterior::binomial(n, r);
    return assemble_blocks(n, M, dim, dim, [&](const Eigen::VectorXi& m) {
        Matrix dr = d_block(n, r, m);
        Matrix lap = dr.adjoint() * dr;
        if (r > 0) {
            Matrix dm = d_block(n, r - 1, m);
            lap += dm * dm.adjoint();
        }
        return lap;
    });
}

FourierFormField apply_d(const FourierFormField& field) {
    FourierFormField out;
    out.n = field.n;
    out.truncation = field.truncation;
    for (const auto& [mode, form] : field.modes) {
        Eigen::VectorXcd w(field.n);
        for (int j = 0; j < field.n; ++j)
            w[j] = kTwoPi * kI * static_cast<double>(mode[static_cast<size_t>(j)]);
        exterior::Form mflat(field.n);
        for (int j = 0; j < field.n; ++j)
            if (w[j] != Complex(0.0, 0.0))
                mflat.coeff[1u << j] = w[j];
        out.modes[mode] = exterior::wedge(mflat, form);
    }
    return out;
}

int harmonic_dims(int n, int M, int r, double rank_tol) {
    check_grade(n, r);
    if (M < 1)
        throw std::invalid_argument("harmonic_dims: truncation must be at least 1");
    const int dim = exterior::binomial(n, r);
    // Blocks are independent; the global SVD scale is set by the largest
    // mode so that the relative tolerance matches a full assembly.
    const double scale = std::pow(kTwoPi, 2) * static_cast<double>(n) * M * M * 2.0;
    int kernel = 0;
    for (const auto& m : mode_lattice(n, M)) {
        Matrix dr = d_block(n, r, m);
        Matrix lap = dr.adjoint() * dr;
        if (r > 0) {
            Matrix dm = d_block(n, r - 1, m);
            lap += dm * dm.adjoint();
        }
        kernel += dim - rank_of(lap, rank_tol, scale);
    }
    return kernel;
}

Matrix dirac_t2_block(const Eigen::VectorXi& mode) {
    static const clifford::CliffordRep rep = clifford::build_clifford(2);
    Eigen::VectorXd v(2);
    v << static_cast<double>(mode[0]), static_cast<double>(mode[1]);
    return kTwoPi * kI * clifford::clifford_vector(rep, v);
}

SpectrumReport dirac_t2(int M, int threads) {
    if (M < 0)
        throw std::invalid_argument("dirac_t2: truncation must be nonnegative");
    const auto modes = mode_lattice(2, M);
    std::vector<double> raw(modes.size() * 2, 0.0);
    auto work = [&](size_t begin, size_t end) {
        for (size_t i = begin; i < end; ++i) {
            Eigen::SelfAdjointEigenSolver<Matrix> es(dirac_t2_block(modes[i]),
                                                     Eigen::EigenvaluesOnly);
            raw[2 * i] = es.eigenvalues()(0);
            raw[2 * i + 1] = es.eigenvalues()(1);
        }
    };
    if (threads <= 1) {
        work(0, modes.size());
    } else {
        std::vector<std::thread> pool;
        const size_t chunk = (modes.size() + static_cast<size_t>(threads) - 1) /
                             static_cast<size_t>(threads);
        for (int t = 0; t < threads; ++t) {
            const size_t b = static_cast<size_t>(t) * chunk;
            if (b >= modes.size())
                break;
            pool.emplace_back(work, b, std::min(modes.size(), b + chunk));
        }
        for (auto& th : pool)
            th.join();
    }
    return make_spectrum(std::move(raw), M, "dirac_t2");
}

std::pair<int, int> dirac_t2_kernel_chirality(int M, double rank_tol) {
    const clifford::CliffordRep rep = clifford::build_clifford(2);
    const clifford::ChiralityGrading grading = clifford::chirality_grading(rep);
    int plus = 0, minus = 0;
    const double scale = kTwoPi * std::sqrt(2.0) * std::max(M, 1);
    for (const auto& m : mode_lattice(2, M)) {
        Matrix block = dirac_t2_block(m);
        Eigen::JacobiSVD<Matrix> svd(block, Eigen::ComputeFullV);
        std::vector<Eigen::Index> null_cols;
        for (Eigen::Index i = 0; i < 2; ++i)
            if (svd.singularValues()(i) <= rank_tol * scale)
                null_cols.push_back(i);
        if (null_cols.empty())
            continue;
        Matrix kernel(2, static_cast<Eigen::Index>(null_cols.size()));
        for (size_t i = 0; i < null_cols.size(); ++i)
            kernel.col(static_cast<Eigen::Index>(i)) = svd.matrixV().col(null_cols[i]);
        plus += rank_of(grading.projector_plus * kernel, rank_tol, 1.0);
        minus += rank_of(grading.projector_minus * kernel, rank_tol, 1.0);
    }
    return {plus, minus};
}

SpectrumReport circle_dirac(int M) {
    if (M < 0)
        throw std::invalid_argument("circle_dirac: truncation must be nonnegative");
    std::vector<double> raw;
    raw.reserve(static_cast<size_t>(2 * M + 1));
    for (int k = -M; k <= M; ++k)
        raw.push_back(static_cast<double>(k));
    return make_spectrum(std::move(raw), M, "circle_dirac");
}

Matrix principal_symbol_limit(SymbolFamily family, const Eigen::VectorXi& mode,
                              const Eigen::Vector2d& xi, double t) {
    if (t <= 0.0)
        throw std::invalid_argument("principal_symbol_limit: t must be positive");
    if (xi.norm() == 0.0)
        throw std::invalid_argument("principal_symbol_limit: xi must be nonzero");
    Eigen::Vector2d kappa = kTwoPi * mode.cast<double>() + t * xi;
    switch (family) {
    case SymbolFamily::DiracT2: {
        static const clifford::CliffordRep rep = clifford::build_clifford(2);
        return (kI / t) * clifford::clifford_vector(rep, kappa);
    }
    case SymbolFamily::LaplacianT2:
        return (kappa.squaredNorm() / (t * t)) * Matrix::Identity(1, 1);
    }
    throw std::invalid_argument("principal_symbol_limit: unknown operator family");
}

double symbol_limit_residual(SymbolFamily family, const Eigen::VectorXi& mode,
                             const Eigen::Vector2d& xi, double t) {
    Matrix at_t = principal_symbol_limit(family, mode, xi, t);
    Matrix target;
    switch (family) {
    case SymbolFamily::DiracT2: {
        static const clifford::CliffordRep rep = clifford::build_clifford(2);
        target = kI * clifford::clifford_vector(rep, xi);
        break;
    }
    case SymbolFamily::LaplacianT2:
        target = xi.squaredNorm() * Matrix::Identity(1, 1);
        break;
    }
    return (at_t - target).norm();
}

double heat_supertrace_index(const Matrix& D, double t) {
    if (t <= 0.0)
        throw std::invalid_argument("heat_supertrace_index: t must be positive");
    Eigen::SelfAdjointEigenSolver<Matrix> up(D.adjoint() * D, Eigen::EigenvaluesOnly);
    Eigen::SelfAdjointEigenSolver<Matrix> down(D * D.adjoint(), Eigen::EigenvaluesOnly);
    double tr_up = 0.0, tr_down = 0.0;
    for (Eigen::Index i = 0; i < up.eigenvalues().size(); ++i)
        tr_up += std::exp(-t * std::max(0.0, up.eigenvalues()(i)));
    for (Eigen::Index i = 0; i < down.eigenvalues().size(); ++i)
        tr_down += std::exp(-t * std::max(0.0, down.eigenvalues()(i)));
    return tr_up - tr_down;
}

FlipReport anticommuting_flip_check(const Matrix& S, const Matrix& T, double tol) {
    if (S.rows() != S.cols() || T.rows() != T.cols() || S.rows() != T.rows())
        throw std::invalid_argument("anticommuting_flip_check: matrices must be square, same size");
    const double scale = std::max(1.0, S.norm() * T.norm());
    FlipReport rep;
    rep.anticommutator_residual = (S * T + T * S).cwiseAbs().maxCoeff();
    if (rep.anticommutator_residual > tol * scale)
        throw std::invalid_argument("anticommuting_flip_check: inputs do not anticommute");
    if ((S - S.adjoint()).cwiseAbs().maxCoeff() > tol * std::max(1.0, S.norm()))
        throw std::invalid_argument("anticommuting_flip_check: S must be Hermitian");

    Eigen::SelfAdjointEigenSolver<Matrix> es(S);
    const auto& evals = es.eigenvalues();
    const auto& evecs = es.eigenvectors();
    double worst = 0.0;
    for (Eigen::Index i = 0; i < evals.size(); ++i) {
        Eigen::VectorXcd w = T * evecs.col(i);
        const double nw = w.norm();
        if (nw <= tol)
            continue; // T may annihilate a vector; nothing to flip
        worst = std::max(worst, (S * w + evals(i) * w).norm() / nw);
    }
    rep.flip_residual = worst;
    return rep;
}

} // namespace tdo::torus
