#include "tdo/transversal.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tdo::transversal {

namespace {

constexpr double kOrthonormalTol = 1e-8;
const std::complex<double> kI(0.0, 1.0);

Eigen::VectorXd fd_directional(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& f,
                               const Eigen::VectorXd& x, const Eigen::VectorXd& u,
                               const FdOptions& fd) {
    const double h = fd.step;
    switch (fd.scheme) {
    case FdScheme::Central2:
        return (f(x + h * u) - f(x - h * u)) / (2.0 * h);
    case FdScheme::FivePoint4:
        return (-f(x + 2.0 * h * u) + 8.0 * f(x + h * u) - 8.0 * f(x - h * u) +
                f(x - 2.0 * h * u)) /
               (12.0 * h);
    }
    throw std::invalid_argument("mean_curvature: unknown finite-difference scheme");
}

std::vector<Eigen::MatrixXd> christoffel_from_metric(
    const std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>& metric,
    const Eigen::VectorXd& x, const FdOptions& fd) {
    const int n = static_cast<int>(x.size());
    const double h = fd.step;
    // dg[l] = partial_l g
    std::vector<Eigen::MatrixXd> dg(static_cast<size_t>(n));
    for (int l = 0; l < n; ++l) {
        Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
        e[l] = 1.0;
        dg[static_cast<size_t>(l)] = (metric(x + h * e) - metric(x - h * e)) / (2.0 * h);
    }
    const Eigen::MatrixXd gi = metric(x).llt().solve(Eigen::MatrixXd::Identity(n, n));
    std::vector<Eigen::MatrixXd> gamma(static_cast<size_t>(n), Eigen::MatrixXd::Zero(n, n));
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double s = 0.0;
                for (int l = 0; l < n; ++l)
                    s += gi(k, l) * (dg[static_cast<size_t>(i)](j, l) +
                                     dg[static_cast<size_t>(j)](i, l) -
                                     dg[static_cast<size_t>(l)](i, j));
                gamma[static_cast<size_t>(k)](i, j) = 0.5 * s;
            }
    return gamma;
}

void check_orthonormal(const DistributionFrame& fr, const Eigen::VectorXd& x) {
    const Eigen::MatrixXd g = fr.metric(x);
    for (int i = 0; i < fr.ambient; ++i)
        for (int j = i; j < fr.ambient; ++j) {
            const double ip = fr.frame[static_cast<size_t>(i)](x).transpose() * g *
                              fr.frame[static_cast<size_t>(j)](x);
            const double expect = (i == j) ? 1.0 : 0.0;
            if (std::abs(ip - expect) > kOrthonormalTol)
                throw std::invalid_argument("mean_curvature: frame is not orthonormal at a sample point");
        }
}

int odd_grid(int N) { return (N % 2 == 0) ? N + 1 : N; }

} // namespace

DistributionFrame coordinate_axes_frame(int n, int q) {
    if (q < 0 || q > n)
        throw std::invalid_argument("coordinate_axes_frame: invalid rank");
    DistributionFrame fr;
    fr.ambient = n;
    fr.q = q;
    fr.name = "coordinate_axes";
    fr.metric = [n](const Eigen::VectorXd&) { return Eigen::MatrixXd::Identity(n, n); };
    for (int i = 0; i < n; ++i)
        fr.frame.push_back([n, i](const Eigen::VectorXd&) {
            Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
            e[i] = 1.0;
            return e;
        });
    return fr;
}

DistributionFrame warped_torus_frame(const TrigPoly& g, bool analytic_christoffel) {
    DistributionFrame fr;
    fr.ambient = 2;
    fr.q = 1;
    fr.name = "warped_torus";
    fr.metric = [g](const Eigen::VectorXd& x) {
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2, 2);
        m(0, 0) = std::exp(2.0 * g(x[1]));
        m(1, 1) = 1.0;
        return m;
    };
    fr.frame.push_back([g](const Eigen::VectorXd& x) {
        Eigen::VectorXd v(2);
        v << std::exp(-g(x[1])), 0.0;
        return v;
    });
    fr.frame.push_back([](const Eigen::VectorXd&) {
        Eigen::VectorXd v(2);
        v << 0.0, 1.0;
        return v;
    });
    if (analytic_christoffel) {
        const TrigPoly gp = g.derivative();
        fr.christoffel = [g, gp](const Eigen::VectorXd& x) {
            const double d = gp(x[1]);
            std::vector<Eigen::MatrixXd> gamma(2, Eigen::MatrixXd::Zero(2, 2));
            gamma[0](0, 1) = d;
            gamma[0](1, 0) = d;
            gamma[1](0, 0) = -d * std::exp(2.0 * g(x[1]));
            return gamma;
        };
    }
    return fr;
}

DistributionFrame heisenberg_frame() {
    DistributionFrame fr;
    fr.ambient = 3;
    fr.q = 2;
    fr.name = "heisenberg";
    fr.metric = [](const Eigen::VectorXd&) { return Eigen::MatrixXd::Identity(3, 3); };
    auto v1 = [](const Eigen::VectorXd& p) {
        Eigen::Vector3d v(1.0, 0.0, -p[1] / 2.0);
        return v;
    };
    auto v2 = [](const Eigen::VectorXd& p) {
        Eigen::Vector3d v(0.0, 1.0, p[0] / 2.0);
        return v;
    };
    fr.frame.push_back([v1](const Eigen::VectorXd& p) -> Eigen::VectorXd {
        return v1(p).normalized();
    });
    fr.frame.push_back([v1, v2](const Eigen::VectorXd& p) -> Eigen::VectorXd {
        const Eigen::Vector3d a = v1(p).normalized();
        Eigen::Vector3d b = v2(p);
        b -= b.dot(a) * a;
        return b.normalized();
    });
    fr.frame.push_back([](const Eigen::VectorXd& p) -> Eigen::VectorXd {
        Eigen::Vector3d nrm(p[1] / 2.0, -p[0] / 2.0, 1.0);
        return nrm.normalized();
    });
    return fr;
}

MeanCurvatureField mean_curvature(const DistributionFrame& fr, MeanCurvatureKind which,
                                  const std::vector<Eigen::VectorXd>& points,
                                  const FdOptions& fd) {
    if (fd.step <= 0.0 || fd.step > 1e-2)
        throw std::invalid_argument("mean_curvature: step must lie in (0, 1e-2]");
    if (static_cast<int>(fr.frame.size()) != fr.ambient)
        throw std::invalid_argument("mean_curvature: frame must span the ambient space");

    MeanCurvatureField out;
    out.label = (which == MeanCurvatureKind::OfL) ? "H^L" : "H^Q";
    for (const auto& x : points) {
        check_orthonormal(fr, x);
        const Eigen::MatrixXd g = fr.metric(x);
        const auto gamma = fr.christoffel ? fr.christoffel(x)
                                          : christoffel_from_metric(fr.metric, x, fd);

        const int lo = (which == MeanCurvatureKind::OfL) ? fr.q : 0;
        const int hi = (which == MeanCurvatureKind::OfL) ? fr.ambient : fr.q;
        Eigen::VectorXd sum = Eigen::VectorXd::Zero(fr.ambient);
        for (int j = lo; j < hi; ++j) {
            const auto& fj = fr.frame[static_cast<size_t>(j)];
            const Eigen::VectorXd u = fj(x);
            Eigen::VectorXd nabla = fd_directional(fj, x, u, fd);
            for (int k = 0; k < fr.ambient; ++k)
                nabla[k] += u.transpose() * gamma[static_cast<size_t>(k)] * u;
            sum += nabla;
        }
        // Project onto the complementary bundle: H^L lands in Q, H^Q in L.
        const int plo = (which == MeanCurvatureKind::OfL) ? 0 : fr.q;
        const int phi = (which == MeanCurvatureKind::OfL) ? fr.q : fr.ambient;
        Eigen::VectorXd proj = Eigen::VectorXd::Zero(fr.ambient);
        for (int i = plo; i < phi; ++i) {
            const Eigen::VectorXd fi = fr.frame[static_cast<size_t>(i)](x);
            proj += (sum.transpose() * g * fi) * fi;
        }
        const double norm = std::sqrt(std::max(1e-300, double(sum.transpose() * g * sum)));
        const Eigen::VectorXd off = sum - proj;
        out.off_bundle_residual = std::max(
            out.off_bundle_residual,
            std::sqrt(std::max(0.0, double(off.transpose() * g * off))) / std::max(1.0, norm));
        out.points.push_back(x);
        out.values.push_back(proj);
    }
    return out;
}

Eigen::MatrixXd fourier_diff_matrix(int n_points) {
    if (n_points < 3 || n_points % 2 == 0)
        throw std::invalid_argument("fourier_diff_matrix: needs an odd number of points >= 3");
    const double h = 2.0 * std::numbers::pi / n_points;
    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(n_points, n_points);
    for (int j = 0; j < n_points; ++j)
        for (int k = 0; k < n_points; ++k)
            if (j != k) {
                const int d = j - k;
                const double sgn = (d % 2 == 0) ? 1.0 : -1.0;
                D(j, k) = sgn / (2.0 * std::sin(d * h / 2.0));
            }
    return D;
}

double analytic_test_norm(const Eigen::MatrixXcd& m, double rho) {
    const int n = static_cast<int>(m.rows());
    const int K = (n - 1) / 2;
    Eigen::MatrixXcd T(n, n);
    double tnorm2 = 0.0;
    for (int c = 0; c <= 2 * K; ++c) {
        const int k = c - K;
        const double w = std::pow(rho, std::abs(k));
        for (int j = 0; j < n; ++j) {
            const double y = 2.0 * std::numbers::pi * j / n;
            T(j, c) = w / std::sqrt(static_cast<double>(n)) *
                      std::exp(kI * static_cast<double>(k) * y);
        }
        tnorm2 += w * w;
    }
    return (m * T).norm() / std::sqrt(tnorm2);
}

namespace {

struct WarpedOperators {
    Eigen::VectorXd grid;
    Eigen::MatrixXcd dl;     // i (D + diag(g')/2)
    Eigen::VectorXd g_vals;
    Eigen::VectorXd gp_vals;
    int n_points = 0;
};

WarpedOperators warped_build(const TrigPoly& g, int N) {
    if (N < 64)
        throw std::invalid_argument("warped torus: grid size must be at least 64");
    const TrigPoly gp = g.derivative();
    if (N < 4 * std::max(1, gp.bandwidth()))
        throw std::invalid_argument("warped torus: aliasing guard requires N >= 4x bandwidth of g'");
    WarpedOperators ops;
    ops.n_points = odd_grid(N);
    ops.grid.resize(ops.n_points);
    ops.g_vals.resize(ops.n_points);
    ops.gp_vals.resize(ops.n_points);
    for (int j = 0; j < ops.n_points; ++j) {
        ops.grid[j] = 2.0 * std::numbers::pi * j / ops.n_points;
        ops.g_vals[j] = g(ops.grid[j]);
        ops.gp_vals[j] = gp(ops.grid[j]);
    }
    const Eigen::MatrixXd D = fourier_diff_matrix(ops.n_points);
    ops.dl = kI * (D + 0.5 * Eigen::MatrixXd(ops.gp_vals.asDiagonal())).cast<std::complex<double>>();
    return ops;
}

} // namespace

int resolved_window(int N) {
    const int n = odd_grid(N);
    return (n - 1) / 4;
}

SpectrumReport warped_torus_dl(const TrigPoly& g, int N) {
    WarpedOperators ops = warped_build(g, N);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(ops.dl, false);
    const int window = resolved_window(N);
    std::vector<double> kept;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        const std::complex<double> lam = es.eigenvalues()(i);
        if (std::abs(lam.real()) > window + 0.5)
            continue;
        if (std::abs(lam.imag()) > 1e-9 * std::max(1.0, std::abs(lam.real())))
            throw std::runtime_error("warped_torus_dl: non-real eigenvalue inside resolved window");
        kept.push_back(lam.real());
    }
    SpectrumReport rep = make_spectrum(std::move(kept), N, "warped_torus_dl", 1e-10);
    return rep;
}

SpectrumReport warped_torus_dq(const TrigPoly& g, int x_mode, int N) {
    WarpedOperators ops = warped_build(g, N);
    std::vector<double> vals(static_cast<size_t>(ops.n_points));
    for (int j = 0; j < ops.n_points; ++j)
        vals[static_cast<size_t>(j)] = -static_cast<double>(x_mode) * std::exp(-ops.g_vals[j]);
    return make_spectrum(std::move(vals), N, "warped_torus_dq[x_mode=" + std::to_string(x_mode) + "]");
}

double dl_conjugation_residual(const TrigPoly& g, int N) {
    WarpedOperators ops = warped_build(g, N);
    const Eigen::MatrixXd D = fourier_diff_matrix(ops.n_points);
    Eigen::VectorXd eplus = ops.g_vals.array().exp().sqrt().matrix();  // e^{g/2}
    Eigen::MatrixXcd conj = eplus.cwiseInverse().asDiagonal().toDenseMatrix().cast<std::complex<double>>() *
                            (kI * D.cast<std::complex<double>>()) *
                            eplus.asDiagonal().toDenseMatrix().cast<std::complex<double>>();
    return analytic_test_norm(conj - ops.dl);
}

AdjointReport adjoint_defect(const TrigPoly& g, int N) {
    WarpedOperators ops = warped_build(g, N);
    const Eigen::MatrixXd D = fourier_diff_matrix(ops.n_points);
    const Eigen::MatrixXcd A = kI * D.cast<std::complex<double>>();
    const Eigen::VectorXd w = ops.g_vals.array().exp().matrix(); // sqrt(det g) = e^g
    const Eigen::MatrixXcd W = w.asDiagonal().toDenseMatrix().cast<std::complex<double>>();
    const Eigen::MatrixXcd Wi = w.cwiseInverse().asDiagonal().toDenseMatrix().cast<std::complex<double>>();

    // A* in the weighted inner product; the adjoint formula says this is
    // A - c(H), H the mean curvature of the complementary distribution.
    const Eigen::MatrixXcd a_star = Wi * A.adjoint() * W;
    const Eigen::MatrixXcd cH = (-kI) * ops.gp_vals.asDiagonal().toDenseMatrix().cast<std::complex<double>>();
    AdjointReport rep;
    rep.defect = analytic_test_norm(a_star - (A - cH));

    const Eigen::VectorXd s = ops.g_vals.array().exp().sqrt().matrix(); // e^{g/2}
    const Eigen::MatrixXcd S = s.asDiagonal().toDenseMatrix().cast<std::complex<double>>() * ops.dl *
                               s.cwiseInverse().asDiagonal().toDenseMatrix().cast<std::complex<double>>();
    rep.dl_hermiticity = analytic_test_norm(S - S.adjoint());
    return rep;
}

SlopeReport slope_distribution_dq(double r, int M) {
    if (M < 1)
        throw std::invalid_argument("slope_distribution_dq: truncation must be at least 1");
    const double scale = 2.0 * std::numbers::pi / std::sqrt(1.0 + r * r);
    std::vector<double> vals;
    vals.reserve(static_cast<size_t>((2 * M + 1) * (2 * M + 1)));
    for (int m = -M; m <= M; ++m)
        for (int n = -M; n <= M; ++n)
            vals.push_back(scale * (static_cast<double>(m) + r * static_cast<double>(n)));
    SlopeReport rep;
    rep.spectrum = make_spectrum(std::move(vals), M,
                                 "slope_dq[r=" + std::to_string(r) + "]", 1e-12);
    rep.min_gap = std::numeric_limits<double>::infinity();
    for (size_t i = 1; i < rep.spectrum.eigenvalues.size(); ++i)
        rep.min_gap = std::min(rep.min_gap,
                               rep.spectrum.eigenvalues[i] - rep.spectrum.eigenvalues[i - 1]);
    return rep;
}

} // namespace tdo::transversal
