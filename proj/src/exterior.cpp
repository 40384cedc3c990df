#include "tdo/exterior.hpp"

#include <Eigen/Cholesky>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace tdo::exterior {

namespace {

constexpr double kSymmetryTol = 1e-12;

void check_metric(const MetricPoint& m) {
    const auto& g = m.g;
    if (g.rows() != g.cols() || g.rows() < 1)
        throw std::invalid_argument("metric: matrix must be square and nonempty");
    if ((g - g.transpose()).cwiseAbs().maxCoeff() > kSymmetryTol * std::max(1.0, g.cwiseAbs().maxCoeff()))
        throw std::invalid_argument("metric: matrix is not symmetric");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() <= 0.0)
        throw std::invalid_argument("metric: matrix is not positive definite");
    if (m.orientation != 1 && m.orientation != -1)
        throw std::invalid_argument("metric: orientation must be +1 or -1");
}

std::vector<int> mask_indices(uint32_t mask) {
    std::vector<int> idx;
    for (int j = 0; mask != 0; ++j, mask >>= 1)
        if (mask & 1u)
            idx.push_back(j);
    return idx;
}

} // namespace

MetricPoint euclidean_metric(int n) {
    MetricPoint m;
    m.g = Eigen::MatrixXd::Identity(n, n);
    return m;
}

void Form::add(uint32_t mask, Complex value) {
    auto [it, inserted] = coeff.emplace(mask, value);
    if (!inserted)
        it->second += value;
}

void Form::prune(double eps) {
    for (auto it = coeff.begin(); it != coeff.end();)
        it = (std::abs(it->second) <= eps) ? coeff.erase(it) : std::next(it);
}

double Form::max_abs() const {
    double m = 0.0;
    for (const auto& [mask, c] : coeff)
        m = std::max(m, std::abs(c));
    return m;
}

int Form::grade() const {
    int g = -2;
    for (const auto& [mask, c] : coeff) {
        if (c == Complex(0.0, 0.0))
            continue;
        const int p = std::popcount(mask);
        if (g == -2)
            g = p;
        else if (g != p)
            return -1;
    }
    return g == -2 ? 0 : g;
}

Form Form::grade_part(int r) const {
    Form out(n);
    for (const auto& [mask, c] : coeff)
        if (std::popcount(mask) == r)
            out.coeff[mask] = c;
    return out;
}

Form Form::operator+(const Form& other) const {
    Form out = *this;
    for (const auto& [mask, c] : other.coeff)
        out.add(mask, c);
    out.prune();
    return out;
}

Form Form::operator-(const Form& other) const {
    Form out = *this;
    for (const auto& [mask, c] : other.coeff)
        out.add(mask, -c);
    out.prune();
    return out;
}

Form Form::operator*(Complex s) const {
    Form out = *this;
    for (auto& [mask, c] : out.coeff)
        c *= s;
    return out;
}

Form basis_form(int n, std::initializer_list<int> indices) {
    uint32_t mask = 0;
    int prev = 0;
    for (int i : indices) {
        if (i < 1 || i > n || i <= prev)
            throw std::invalid_argument("basis_form: indices must be strictly increasing in 1..n");
        mask |= 1u << (i - 1);
        prev = i;
    }
    Form f(n);
    f.coeff[mask] = Complex(1.0, 0.0);
    return f;
}

Form scalar_form(int n, Complex value) {
    Form f(n);
    f.coeff[0] = value;
    return f;
}

int binomial(int n, int r) {
    if (r < 0 || r > n)
        return 0;
    long long v = 1;
    for (int i = 0; i < r; ++i)
        v = v * (n - i) / (i + 1);
    return static_cast<int>(v);
}

std::vector<uint32_t> grade_basis(int n, int r) {
    std::vector<uint32_t> out;
    if (r < 0 || r > n)
        return out;
    if (r == 0)
        return {0u};
    std::vector<int> idx(static_cast<size_t>(r));
    for (int i = 0; i < r; ++i)
        idx[static_cast<size_t>(i)] = i;
    while (true) {
        uint32_t mask = 0;
        for (int i : idx)
            mask |= 1u << i;
        out.push_back(mask);
        int pos = r - 1;
        while (pos >= 0 && idx[static_cast<size_t>(pos)] == n - r + pos)
            --pos;
        if (pos < 0)
            break;
        ++idx[static_cast<size_t>(pos)];
        for (int i = pos + 1; i < r; ++i)
            idx[static_cast<size_t>(i)] = idx[static_cast<size_t>(i - 1)] + 1;
    }
    return out;
}

int merge_sign(uint32_t a, uint32_t b) {
    if ((a & b) != 0)
        return 0;
    int sign = 1;
    for (uint32_t rest = b; rest != 0;) {
        const int j = std::countr_zero(rest);
        rest &= rest - 1;
        const uint32_t above = a >> (j + 1);
        if (std::popcount(above) % 2 != 0)
            sign = -sign;
    }
    return sign;
}

Eigen::MatrixXd inverse_metric(const MetricPoint& m) {
    check_metric(m);
    Eigen::LLT<Eigen::MatrixXd> llt(m.g);
    if (llt.info() != Eigen::Success)
        throw std::invalid_argument("inverse_metric: Cholesky factorization failed");
    return llt.solve(Eigen::MatrixXd::Identity(m.dim(), m.dim()));
}

Form wedge(const Form& a, const Form& b) {
    if (a.n != b.n)
        throw std::invalid_argument("wedge: mismatched ambient dimensions");
    const int ga = a.grade();
    const int gb = b.grade();
    if (ga > 0 && gb > 0 && ga + gb > a.n)
        throw std::invalid_argument("wedge: grade overflow");
    Form out(a.n);
    for (const auto& [ma, ca] : a.coeff)
        for (const auto& [mb, cb] : b.coeff) {
            const int s = merge_sign(ma, mb);
            if (s != 0)
                out.add(ma | mb, static_cast<double>(s) * ca * cb);
        }
    out.prune();
    return out;
}

Form interior(const Eigen::VectorXd& v, const Form& a) {
    if (v.size() != a.n)
        throw std::invalid_argument("interior: vector dimension mismatch");
    Form out(a.n);
    for (const auto& [mask, c] : a.coeff) {
        int pos = 0;
        for (int j : mask_indices(mask)) {
            const double vj = v[j];
            if (vj != 0.0) {
                const double s = (pos % 2 == 0) ? 1.0 : -1.0;
                out.add(mask & ~(1u << j), s * vj * c);
            }
            ++pos;
        }
    }
    out.prune();
    return out;
}

Form flat(const MetricPoint& m, const Eigen::VectorXd& v) {
    check_metric(m);
    if (v.size() != m.dim())
        throw std::invalid_argument("flat: vector dimension mismatch");
    Eigen::VectorXd w = m.g * v;
    Form out(m.dim());
    for (int j = 0; j < m.dim(); ++j)
        if (w[j] != 0.0)
            out.coeff[1u << j] = Complex(w[j], 0.0);
    return out;
}

Eigen::VectorXd sharp(const MetricPoint& m, const Form& a) {
    if (a.n != m.dim() || (!a.coeff.empty() && a.grade() != 1))
        throw std::invalid_argument("sharp: expects a one-form of matching dimension");
    Eigen::VectorXd w = Eigen::VectorXd::Zero(m.dim());
    for (const auto& [mask, c] : a.coeff) {
        if (c.imag() != 0.0)
            throw std::invalid_argument("sharp: complex one-form has no real vector counterpart");
        w[std::countr_zero(mask)] = c.real();
    }
    Eigen::LLT<Eigen::MatrixXd> llt(m.g);
    return llt.solve(w);
}

Form volume_form(const MetricPoint& m) {
    check_metric(m);
    const int n = m.dim();
    Form out(n);
    out.coeff[(1u << n) - 1u] = Complex(m.orientation * std::sqrt(m.g.determinant()), 0.0);
    return out;
}

Complex form_inner(const MetricPoint& m, const Form& a, const Form& b) {
    if (a.n != b.n || a.n != m.dim())
        throw std::invalid_argument("form_inner: mismatched forms");
    const Eigen::MatrixXd gi = inverse_metric(m);
    Complex acc(0.0, 0.0);
    for (const auto& [ma, ca] : a.coeff) {
        const auto ia = mask_indices(ma);
        for (const auto& [mb, cb] : b.coeff) {
            if (std::popcount(ma) != std::popcount(mb))
                continue;
            const auto ib = mask_indices(mb);
            double det = 1.0;
            if (!ia.empty()) {
                Eigen::MatrixXd gram(ia.size(), ib.size());
                for (size_t p = 0; p < ia.size(); ++p)
                    for (size_t q = 0; q < ib.size(); ++q)
                        gram(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(q)) =
                            gi(ia[p], ib[q]);
                det = gram.determinant();
            }
            acc += ca * std::conj(cb) * det;
        }
    }
    return acc;
}

namespace {

Form hodge_star_homogeneous(const MetricPoint& m, const Form& a, int r) {
    const int n = a.n;
    const auto rows = grade_basis(n, r);     // test forms b
    const auto cols = grade_basis(n, n - r); // unknown coefficients of *a
    const double vol = m.orientation * std::sqrt(m.g.determinant());

    // b ^ *a = (b, a) dvol over the grade-r basis; star extends
    // complex-linearly, so the pairing here is the bilinear one.
    Eigen::MatrixXcd W = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(rows.size()),
                                                static_cast<Eigen::Index>(cols.size()));
    Eigen::VectorXcd rhs(static_cast<Eigen::Index>(rows.size()));
    for (size_t i = 0; i < rows.size(); ++i) {
        for (size_t j = 0; j < cols.size(); ++j)
            W(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                static_cast<double>(merge_sign(rows[i], cols[j]));
        Form bi(n);
        bi.coeff[rows[i]] = Complex(1.0, 0.0);
        rhs[static_cast<Eigen::Index>(i)] = form_inner(m, a, bi) * vol;
    }
    Eigen::VectorXcd sol = W.lu().solve(rhs);

    Form out(n);
    for (size_t j = 0; j < cols.size(); ++j) {
        const Complex c = sol[static_cast<Eigen::Index>(j)];
        if (c != Complex(0.0, 0.0))
            out.coeff[cols[j]] = c;
    }
    return out;
}

} // namespace

Form hodge_star(const MetricPoint& m, const Form& a) {
    check_metric(m);
    if (a.n != m.dim())
        throw std::invalid_argument("hodge_star: dimension mismatch");
    Form out(a.n);
    for (int r = 0; r <= a.n; ++r) {
        Form part = a.grade_part(r);
        if (part.coeff.empty())
            continue;
        Form starred = hodge_star_homogeneous(m, part, r);
        for (const auto& [mask, c] : starred.coeff)
            out.add(mask, c);
    }
    out.prune();
    return out;
}

Form bigstar(const MetricPoint& m, const Form& a) {
    if (m.dim() % 2 != 0)
        throw std::invalid_argument("bigstar: defined for even ambient dimension only");
    static const Complex powers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    Form out(a.n);
    for (int r = 0; r <= a.n; ++r) {
        Form part = a.grade_part(r);
        if (part.coeff.empty())
            continue;
        const int e = ((r * (r - 1) + m.dim() / 2) % 4 + 4) % 4;
        Form starred = hodge_star(m, part) * powers[e];
        for (const auto& [mask, c] : starred.coeff)
            out.add(mask, c);
    }
    out.prune();
    return out;
}

Form clifford_form_action(const MetricPoint& m, const Eigen::VectorXd& v, const Form& a) {
    return wedge(flat(m, v), a) - interior(v, a);
}

Eigen::MatrixXcd wedge_matrix(int n, int r, const Eigen::VectorXcd& w) {
    const auto dom = grade_basis(n, r);
    const auto img = grade_basis(n, r + 1);
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(img.size()),
                                                static_cast<Eigen::Index>(dom.size()));
    std::map<uint32_t, size_t> pos;
    for (size_t i = 0; i < img.size(); ++i)
        pos[img[i]] = i;
    for (size_t j = 0; j < dom.size(); ++j)
        for (int b = 0; b < n; ++b) {
            if (w[b] == Complex(0.0, 0.0))
                continue;
            const uint32_t bm = 1u << b;
            const int s = merge_sign(bm, dom[j]);
            if (s == 0)
                continue;
            M(static_cast<Eigen::Index>(pos.at(bm | dom[j])), static_cast<Eigen::Index>(j)) +=
                static_cast<double>(s) * w[b];
        }
    return M;
}

Eigen::MatrixXcd interior_matrix(int n, int r, const Eigen::VectorXd& v) {
    const auto dom = grade_basis(n, r);
    const auto img = grade_basis(n, r - 1);
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(img.size()),
                                                static_cast<Eigen::Index>(dom.size()));
    if (r <= 0)
        return M;
    std::map<uint32_t, size_t> pos;
    for (size_t i = 0; i < img.size(); ++i)
        pos[img[i]] = i;
    for (size_t j = 0; j < dom.size(); ++j) {
        Form f(n);
        f.coeff[dom[j]] = Complex(1.0, 0.0);
        Form g = interior(v, f);
        for (const auto& [mask, c] : g.coeff)
            M(static_cast<Eigen::Index>(pos.at(mask)), static_cast<Eigen::Index>(j)) += c;
    }
    return M;
}

} // namespace tdo::exterior
