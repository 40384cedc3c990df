#include "tdo/cohomology.hpp"

#include "tdo/exterior.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tdo::cohomology {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
const std::complex<double> kI(0.0, 1.0);

double product_residual(const Matrix& a, const Matrix& b) {
    if (a.rows() == 0 || a.cols() == 0 || b.rows() == 0 || b.cols() == 0)
        return 0.0;
    return (a * b).cwiseAbs().maxCoeff();
}

int matrix_rank(const Matrix& m, double rel_tol, bool* stable = nullptr) {
    if (m.rows() == 0 || m.cols() == 0)
        return 0;
    Eigen::JacobiSVD<Matrix> svd(m);
    const auto& s = svd.singularValues();
    if (s.size() == 0 || s(0) == 0.0)
        return 0;
    const double cutoff = rel_tol * s(0);
    int r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i) {
        if (s(i) > cutoff)
            ++r;
        if (stable && s(i) > cutoff && s(i) < 10.0 * cutoff)
            *stable = false;
    }
    return r;
}

Eigen::MatrixXd gram_of(const TwistedComplex& c, int k) {
    if (!c.inner.empty() && c.inner[static_cast<size_t>(k)].size() > 0)
        return c.inner[static_cast<size_t>(k)];
    return Eigen::MatrixXd::Identity(c.dims[static_cast<size_t>(k)],
                                     c.dims[static_cast<size_t>(k)]);
}

// Fourier coefficients of a smooth periodic function (period `period`) by
// pointwise evaluation on an oversampled grid and projection.
std::vector<std::complex<double>> periodic_coefficients(const std::function<double(double)>& f,
                                                        double period, int max_freq,
                                                        int oversample) {
    const int nos = std::max(oversample, 8 * (max_freq + 4));
    std::vector<std::complex<double>> out(static_cast<size_t>(2 * max_freq + 1));
    for (int k = -max_freq; k <= max_freq; ++k) {
        std::complex<double> acc(0.0, 0.0);
        for (int j = 0; j < nos; ++j) {
            const double t = period * j / nos;
            acc += f(t) * std::exp(-kTwoPi * kI * static_cast<double>(k) * t / period);
        }
        out[static_cast<size_t>(k + max_freq)] = acc / static_cast<double>(nos);
    }
    return out;
}

// Convolution (multiplication) matrix on modes -N..N from exponential
// coefficients indexed -F..F.
Matrix convolution_matrix(const std::vector<std::complex<double>>& coeffs, int F, int N) {
    Matrix m = Matrix::Zero(2 * N + 1, 2 * N + 1);
    for (int r = -N; r <= N; ++r)
        for (int s = -N; s <= N; ++s) {
            const int f = r - s;
            if (std::abs(f) <= F)
                m(r + N, s + N) = coeffs[static_cast<size_t>(f + F)];
        }
    return m;
}

} // namespace

ValidationReport validate_complex(const TwistedComplex& c) {
    if (c.q < 1 || static_cast<int>(c.dims.size()) != c.q + 1 ||
        static_cast<int>(c.d.size()) != c.q || static_cast<int>(c.kappa_wedge.size()) != c.q)
        throw std::invalid_argument("validate_complex: inconsistent shape");
    for (int k = 0; k < c.q; ++k) {
        if (c.d[static_cast<size_t>(k)].rows() != c.dims[static_cast<size_t>(k + 1)] ||
            c.d[static_cast<size_t>(k)].cols() != c.dims[static_cast<size_t>(k)])
            throw std::invalid_argument("validate_complex: differential shape mismatch");
        if (c.kappa_wedge[static_cast<size_t>(k)].rows() != c.dims[static_cast<size_t>(k + 1)] ||
            c.kappa_wedge[static_cast<size_t>(k)].cols() != c.dims[static_cast<size_t>(k)])
            throw std::invalid_argument("validate_complex: kappa-wedge shape mismatch");
    }
    ValidationReport rep;
    for (int k = 0; k + 1 < c.q; ++k) {
        const auto& dk = c.d[static_cast<size_t>(k)];
        const auto& dk1 = c.d[static_cast<size_t>(k + 1)];
        const auto& Kk = c.kappa_wedge[static_cast<size_t>(k)];
        const auto& Kk1 = c.kappa_wedge[static_cast<size_t>(k + 1)];
        rep.d_squared = std::max(rep.d_squared, product_residual(dk1, dk));
        rep.kappa_squared = std::max(rep.kappa_squared, product_residual(Kk1, Kk));
        Matrix anti = dk1 * Kk + Kk1 * dk;
        if (anti.size() > 0)
            rep.anticommutator = std::max(rep.anticommutator, anti.cwiseAbs().maxCoeff());
    }
    return rep;
}

void require_valid(const TwistedComplex& c, double tol) {
    ValidationReport rep = validate_complex(c);
    if (rep.d_squared > tol)
        throw std::invalid_argument("twisted complex rejected: d^2 residual " +
                                    std::to_string(rep.d_squared));
    if (rep.kappa_squared > tol)
        throw std::invalid_argument("twisted complex rejected: kappa^2 residual " +
                                    std::to_string(rep.kappa_squared));
    if (rep.anticommutator > tol)
        throw std::invalid_argument(
            "twisted complex rejected: d kappa + kappa d residual (kappa not closed) " +
            std::to_string(rep.anticommutator));
}

std::vector<Matrix> twisted_differential(const TwistedComplex& c, bool twisted) {
    std::vector<Matrix> out;
    out.reserve(static_cast<size_t>(c.q));
    for (int k = 0; k < c.q; ++k) {
        Matrix m = c.d[static_cast<size_t>(k)];
        if (twisted)
            m -= 0.5 * c.kappa_wedge[static_cast<size_t>(k)];
        out.push_back(std::move(m));
    }
    return out;
}

std::vector<Matrix> twisted_codifferential(const TwistedComplex& c, bool twisted) {
    const auto dt = twisted_differential(c, twisted);
    std::vector<Matrix> out;
    out.reserve(static_cast<size_t>(c.q));
    for (int k = 0; k < c.q; ++k) {
        // adjoint of dtilde[k]: deg k+1 -> deg k in the Gram inner products
        const Matrix gk = gram_of(c, k).cast<std::complex<double>>();
        const Matrix gk1 = gram_of(c, k + 1).cast<std::complex<double>>();
        Matrix adj = gk.llt().solve(dt[static_cast<size_t>(k)].adjoint() * gk1);
        out.push_back(std::move(adj));
    }
    return out;
}

std::vector<Matrix> twisted_laplacian(const TwistedComplex& c, bool twisted) {
    const auto dt = twisted_differential(c, twisted);
    const auto del = twisted_codifferential(c, twisted);
    std::vector<Matrix> out;
    for (int k = 0; k <= c.q; ++k) {
        Matrix lap = Matrix::Zero(c.dims[static_cast<size_t>(k)], c.dims[static_cast<size_t>(k)]);
        if (k < c.q)
            lap += del[static_cast<size_t>(k)] * dt[static_cast<size_t>(k)];
        if (k > 0)
            lap += dt[static_cast<size_t>(k - 1)] * del[static_cast<size_t>(k - 1)];
        out.push_back(std::move(lap));
    }
    return out;
}

CohomologyReport cohomology_dims(const TwistedComplex& c, bool twisted, double rank_tol) {
    require_valid(c);
    const auto dt = twisted_differential(c, twisted);
    const auto lap = twisted_laplacian(c, twisted);

    CohomologyReport rep;
    rep.twisted = twisted;
    rep.truncation = c.truncation;
    std::vector<int> ranks(static_cast<size_t>(c.q), 0);
    for (int k = 0; k < c.q; ++k)
        ranks[static_cast<size_t>(k)] = matrix_rank(dt[static_cast<size_t>(k)], rank_tol,
                                                    &rep.rank_stable);
    long long euler = 0;
    for (int k = 0; k <= c.q; ++k) {
        const int rank_out = (k < c.q) ? ranks[static_cast<size_t>(k)] : 0;
        const int rank_in = (k > 0) ? ranks[static_cast<size_t>(k - 1)] : 0;
        const int betti = c.dims[static_cast<size_t>(k)] - rank_out - rank_in;
        rep.betti.push_back(betti);
        const int harm = c.dims[static_cast<size_t>(k)] -
                         matrix_rank(lap[static_cast<size_t>(k)], rank_tol, &rep.rank_stable);
        rep.harmonic.push_back(harm);
        euler += (k % 2 == 0) ? betti : -betti;
    }
    rep.euler = euler;
    if (rep.betti != rep.harmonic)
        throw std::runtime_error(
            "cohomology_dims: rank-nullity and harmonic kernel dimensions disagree");
    return rep;
}

bool is_taut(const TwistedComplex& c, double rank_tol) {
    return cohomology_dims(c, /*twisted=*/true, rank_tol).betti.at(0) > 0;
}

TwistedComplex carriere_model(double lambda, int N) {
    if (!(lambda > 1.0))
        throw std::invalid_argument("carriere_model: lambda must exceed 1");
    if (N < 8)
        throw std::invalid_argument("carriere_model: Fourier truncation must be at least 8");
    const int n1 = 2 * N + 1;
    const double log_lambda = std::log(lambda);

    Matrix deriv = Matrix::Zero(n1, n1);
    for (int k = -N; k <= N; ++k)
        deriv(k + N, k + N) = kTwoPi * kI * static_cast<double>(k);
    const Matrix id = Matrix::Identity(n1, n1);
    const Matrix zero = Matrix::Zero(n1, n1);

    TwistedComplex c;
    c.q = 2;
    c.name = "carriere";
    c.truncation = N;
    c.dims = {n1, 2 * n1, n1};
    c.oriented = true;
    c.spectral_duality = true;

    // d0 f = f' dt ; d1 (a dt + b eta) = (b' + log(lambda) b) dt^eta,
    // from d eta = log(lambda) dt^eta.
    Matrix d0(2 * n1, n1);
    d0 << deriv, zero;
    Matrix d1(n1, 2 * n1);
    d1 << zero, deriv + log_lambda * id;
    c.d = {d0, d1};

    // kappa_b = log(lambda) dt; generalized to any coefficient function for
    // conformal shifts.
    auto kappa_builder = [n1, N](const TrigPoly& kappa) {
        const int F = std::max(1, kappa.bandwidth());
        std::vector<std::complex<double>> coeffs(static_cast<size_t>(2 * F + 1));
        for (int f = -F; f <= F; ++f)
            coeffs[static_cast<size_t>(f + F)] = kappa.fourier_coefficient(f);
        Matrix conv = convolution_matrix(coeffs, F, N);
        Matrix K0(2 * n1, n1);
        K0 << conv, Matrix::Zero(n1, n1);
        Matrix K1(n1, 2 * n1);
        K1 << Matrix::Zero(n1, n1), conv;
        return std::vector<Matrix>{K0, K1};
    };
    TrigPoly kappa = TrigPoly::zero(kTwoPi); // period 1
    kappa.c0 = log_lambda;
    c.kappa_form = kappa;
    c.kappa_wedge_builder = kappa_builder;
    c.kappa_wedge = kappa_builder(kappa);

    c.multiplication_builder = [n1, N](const std::function<double(double)>& f, int degree) {
        const int F = 2 * N;
        auto coeffs = periodic_coefficients(f, 1.0, F, 0);
        Matrix conv = convolution_matrix(coeffs, F, N);
        if (degree == 0 || degree == 2)
            return conv;
        Matrix m = Matrix::Zero(2 * n1, 2 * n1);
        m.topLeftCorner(n1, n1) = conv;
        m.bottomRightCorner(n1, n1) = conv;
        return m;
    };

    std::vector<int> freq0, freq1, freq2;
    std::vector<std::string> lab0, lab1, lab2;
    for (int k = -N; k <= N; ++k) {
        freq0.push_back(k);
        lab0.push_back("f[" + std::to_string(k) + "]");
    }
    for (int k = -N; k <= N; ++k) {
        freq1.push_back(k);
        lab1.push_back("dt[" + std::to_string(k) + "]");
    }
    for (int k = -N; k <= N; ++k) {
        freq1.push_back(k);
        lab1.push_back("eta[" + std::to_string(k) + "]");
    }
    for (int k = -N; k <= N; ++k) {
        freq2.push_back(k);
        lab2.push_back("dt^eta[" + std::to_string(k) + "]");
    }
    c.frequencies = {freq0, freq1, freq2};
    c.labels = {lab0, lab1, lab2};
    return c;
}

namespace {

// Multiplication by z in Legendre coefficients: degree <= m -> degree <= m+1.
Eigen::MatrixXd legendre_z(int m) {
    Eigen::MatrixXd Z = Eigen::MatrixXd::Zero(m + 2, m + 1);
    for (int k = 0; k <= m; ++k) {
        Z(k + 1, k) = static_cast<double>(k + 1) / (2 * k + 1);
        if (k > 0)
            Z(k - 1, k) = static_cast<double>(k) / (2 * k + 1);
    }
    return Z;
}

// Derivative in Legendre coefficients: degree <= m -> degree <= m-1.
Eigen::MatrixXd legendre_derivative(int m) {
    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(std::max(m, 0), m + 1);
    for (int j = 0; j < m; ++j)
        for (int k = j + 1; k <= m; ++k)
            if ((k - j) % 2 == 1)
                D(j, k) = static_cast<double>(2 * j + 1);
    return D;
}

// Gram of Legendre coefficients with weight w(z) expressed as a Legendre
// multiplication matrix acting first: G_w = diag-norms . W.
Eigen::MatrixXd legendre_weighted_gram(const Eigen::MatrixXd& weight_matrix, int m) {
    // entries <P_i, w P_j> = norms_i * (W)_{ij} truncated symmetrically
    Eigen::MatrixXd G = Eigen::MatrixXd::Zero(m + 1, m + 1);
    for (int i = 0; i <= m; ++i)
        for (int j = 0; j <= m; ++j) {
            const double wij = (i < weight_matrix.rows() && j < weight_matrix.cols())
                                   ? weight_matrix(i, j)
                                   : 0.0;
            G(i, j) = wij * 2.0 / (2 * i + 1);
        }
    return 0.5 * (G + G.transpose());
}

} // namespace

TwistedComplex suspension_model(int P) {
    if (P < 3)
        throw std::invalid_argument("suspension_model: polynomial degree must be at least 3");
    TwistedComplex c;
    c.q = 2;
    c.name = "suspension";
    c.truncation = P;
    c.oriented = true;
    c.spectral_duality = false;
    c.dims = {P + 1, P + (P - 1), P};

    const Eigen::MatrixXd D0 = legendre_derivative(P);     // deg<=P -> deg<=P-1
    // (1-z^2) on coefficients of degree <= P-2, landing in degree <= P
    Eigen::MatrixXd Z1 = legendre_z(P - 2);                // -> P-1
    Eigen::MatrixXd Z2 = legendre_z(P - 1);                // -> P
    Eigen::MatrixXd one_minus_z2 = -Z2 * Z1;
    for (int k = 0; k <= P - 2; ++k)
        one_minus_z2(k, k) += 1.0;
    const Eigen::MatrixXd D1c = legendre_derivative(P) * one_minus_z2; // c -> deg<=P-1

    Matrix d0 = Matrix::Zero(c.dims[1], c.dims[0]);
    d0.topLeftCorner(P, P + 1) = D0.cast<std::complex<double>>();
    Matrix d1 = Matrix::Zero(c.dims[2], c.dims[1]);
    d1.rightCols(P - 1) = D1c.cast<std::complex<double>>();
    c.d = {d0, d1};
    c.kappa_wedge = {Matrix::Zero(c.dims[1], c.dims[0]), Matrix::Zero(c.dims[2], c.dims[1])};

    // Round-metric inner products: weight (1-z^2) on dz and d-theta blocks.
    Eigen::MatrixXd w_p = Eigen::MatrixXd::Zero(P + 2, P + 1); // (1-z^2) on deg<=P... truncated use below
    // Gram for functions (degree <= P) and for dz^dtheta coefficients.
    auto diag_gram = [](int m) {
        Eigen::MatrixXd g = Eigen::MatrixXd::Zero(m + 1, m + 1);
        for (int k = 0; k <= m; ++k)
            g(k, k) = 2.0 / (2 * k + 1);
        return g;
    };
    auto weight_1mz2 = [](int m) {
        // (1-z^2) as a map deg<=m -> deg<=m+2, truncated back to deg<=m+2
        Eigen::MatrixXd Za = legendre_z(m);
        Eigen::MatrixXd Zb = legendre_z(m + 1);
        Eigen::MatrixXd W = -Zb * Za;
        for (int k = 0; k <= m; ++k)
            W(k, k) += 1.0;
        return W; // (m+3) x (m+1)
    };
    const Eigen::MatrixXd G0 = diag_gram(P);
    const Eigen::MatrixXd Ga = legendre_weighted_gram(weight_1mz2(P - 1), P - 1);
    const Eigen::MatrixXd Gc = legendre_weighted_gram(weight_1mz2(P - 2), P - 2);
    Eigen::MatrixXd G1 = Eigen::MatrixXd::Zero(c.dims[1], c.dims[1]);
    G1.topLeftCorner(P, P) = Ga;
    G1.bottomRightCorner(P - 1, P - 1) = Gc;
    const Eigen::MatrixXd G2 = diag_gram(P - 1);
    c.inner = {G0, G1, G2};

    std::vector<std::string> lab0, lab1, lab2;
    for (int k = 0; k <= P; ++k)
        lab0.push_back("P" + std::to_string(k));
    for (int k = 0; k < P; ++k)
        lab1.push_back("dz*P" + std::to_string(k));
    for (int k = 0; k <= P - 2; ++k)
        lab1.push_back("dtheta*(1-z^2)P" + std::to_string(k));
    for (int k = 0; k < P; ++k)
        lab2.push_back("dz^dtheta*P" + std::to_string(k));
    c.labels = {lab0, lab1, lab2};
    return c;
}

TwistedComplex torus_invariant_model(int q, int N) {
    if (q < 1 || q > 6)
        throw std::invalid_argument("torus_invariant_model: codimension must be in 1..6");
    if (N < 2)
        throw std::invalid_argument("torus_invariant_model: truncation must be at least 2");
    const int n1 = 2 * N + 1;
    TwistedComplex c;
    c.q = q;
    c.name = "torus_invariant";
    c.truncation = N;
    c.oriented = true;
    c.spectral_duality = true;

    Eigen::VectorXcd e1 = Eigen::VectorXcd::Zero(q);
    e1[0] = 1.0;
    for (int r = 0; r <= q; ++r)
        c.dims.push_back(n1 * exterior::binomial(q, r));
    for (int r = 0; r < q; ++r) {
        const Eigen::MatrixXcd wedge = exterior::wedge_matrix(q, r, e1);
        Matrix d = Matrix::Zero(c.dims[static_cast<size_t>(r + 1)],
                                c.dims[static_cast<size_t>(r)]);
        for (int k = -N; k <= N; ++k)
            d.block((k + N) * wedge.rows(), (k + N) * wedge.cols(), wedge.rows(), wedge.cols()) =
                kTwoPi * kI * static_cast<double>(k) * wedge;
        c.d.push_back(d);
        c.kappa_wedge.push_back(Matrix::Zero(d.rows(), d.cols()));
    }

    for (int r = 0; r <= q; ++r) {
        std::vector<int> freq;
        std::vector<std::string> lab;
        const auto basis = exterior::grade_basis(q, r);
        for (int k = -N; k <= N; ++k)
            for (uint32_t mask : basis) {
                freq.push_back(k);
                lab.push_back("I" + std::to_string(mask) + "[" + std::to_string(k) + "]");
            }
        c.frequencies.push_back(freq);
        c.labels.push_back(lab);
    }
    return c;
}

ConformalShiftResult conformal_shift(const TwistedComplex& c, const TrigPoly& h, double rho) {
    require_valid(c);
    if (!c.kappa_wedge_builder || !c.multiplication_builder || !c.kappa_form)
        throw std::invalid_argument("conformal_shift: model does not expose a Fourier structure");
    if (h.bandwidth() > c.truncation)
        throw std::invalid_argument("conformal_shift: h is not representable in the model space");

    // kappa' = kappa + dh
    const TrigPoly hp = h.derivative();
    TrigPoly kappa_new = *c.kappa_form;
    kappa_new.c0 += hp.c0;
    kappa_new.cos_coeffs.resize(std::max(kappa_new.cos_coeffs.size(), hp.cos_coeffs.size()), 0.0);
    kappa_new.sin_coeffs.resize(std::max(kappa_new.sin_coeffs.size(), hp.sin_coeffs.size()), 0.0);
    for (size_t i = 0; i < hp.cos_coeffs.size(); ++i)
        kappa_new.cos_coeffs[i] += hp.cos_coeffs[i];
    for (size_t i = 0; i < hp.sin_coeffs.size(); ++i)
        kappa_new.sin_coeffs[i] += hp.sin_coeffs[i];

    ConformalShiftResult res;
    res.shifted = c;
    res.shifted.kappa_form = kappa_new;
    res.shifted.kappa_wedge = c.kappa_wedge_builder(kappa_new);
    res.shifted.name = c.name + "+conformal_shift";

    for (int k = 0; k <= c.q; ++k)
        res.intertwiner.push_back(
            c.multiplication_builder([&h](double t) { return std::exp(0.5 * h(t)); }, k));

    const auto dt = twisted_differential(c, true);
    const auto dtp = twisted_differential(res.shifted, true);
    double worst = 0.0;
    for (int k = 0; k < c.q; ++k) {
        Matrix gap = dtp[static_cast<size_t>(k)] * res.intertwiner[static_cast<size_t>(k)] -
                     res.intertwiner[static_cast<size_t>(k + 1)] * dt[static_cast<size_t>(k)];
        // Column weights rho^|frequency| : the residual on analytic test data.
        const auto& freq = c.frequencies[static_cast<size_t>(k)];
        double wsum = 0.0;
        double acc = 0.0;
        for (int j = 0; j < gap.cols(); ++j) {
            const double w = std::pow(rho, std::abs(freq[static_cast<size_t>(j)]));
            acc += w * w * gap.col(j).squaredNorm();
            wsum += w * w;
        }
        worst = std::max(worst, std::sqrt(acc / wsum));
    }
    res.residual = worst;
    return res;
}

PoincareReport poincare_check(const TwistedComplex& c, double rank_tol) {
    if (!c.oriented)
        throw std::invalid_argument("poincare_check: model must be transversally oriented");
    CohomologyReport coh = cohomology_dims(c, /*twisted=*/true, rank_tol);
    PoincareReport rep;
    rep.betti = coh.betti;
    rep.twisted_euler = coh.euler;
    rep.dims_symmetric = true;
    for (int k = 0; k <= c.q; ++k)
        if (coh.betti[static_cast<size_t>(k)] != coh.betti[static_cast<size_t>(c.q - k)])
            rep.dims_symmetric = false;

    if (c.spectral_duality) {
        const auto lap = twisted_laplacian(c, true);
        double worst = 0.0;
        for (int k = 0; k <= c.q / 2; ++k) {
            auto nonzero_spectrum = [&](int deg) {
                const Matrix& m = lap[static_cast<size_t>(deg)];
                Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()),
                                                         Eigen::EigenvaluesOnly);
                std::vector<double> vals;
                const double top = std::max(1e-300, es.eigenvalues().cwiseAbs().maxCoeff());
                for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
                    if (es.eigenvalues()(i) > rank_tol * top)
                        vals.push_back(es.eigenvalues()(i));
                return vals;
            };
            auto a = nonzero_spectrum(k);
            auto b = nonzero_spectrum(c.q - k);
            if (a.size() != b.size()) {
                worst = std::numeric_limits<double>::infinity();
                continue;
            }
            for (size_t i = 0; i < a.size(); ++i)
                worst = std::max(worst, std::abs(a[i] - b[i]) / std::max(1.0, std::abs(a[i])));
        }
        rep.eigenvalue_mismatch = worst;
    }
    return rep;
}

} // namespace tdo::cohomology
