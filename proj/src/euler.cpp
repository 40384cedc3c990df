#include "tdo/euler.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tdo::euler {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

long long round_integer(std::complex<double> v, double tol, const char* what) {
    const double rounded = std::round(v.real());
    if (std::abs(v.real() - rounded) > tol || std::abs(v.imag()) > tol)
        throw std::runtime_error(std::string(what) +
                                 ": result is not an integer within tolerance (contract violation)");
    return static_cast<long long>(rounded);
}

} // namespace

FiniteGroup FiniteGroup::cyclic(int n) { return product({n}); }

FiniteGroup FiniteGroup::product(const std::vector<int>& moduli) {
    if (moduli.empty())
        throw std::invalid_argument("FiniteGroup: at least one cyclic factor required");
    FiniteGroup g;
    g.moduli = moduli;
    g.order = 1;
    for (int m : moduli) {
        if (m < 1 || m > 64)
            throw std::invalid_argument("FiniteGroup: cyclic factor order must be in 1..64");
        g.order *= m;
    }
    return g;
}

FiniteGroup FiniteGroup::parse(const std::string& preset) {
    std::vector<int> moduli;
    size_t pos = 0;
    while (pos < preset.size()) {
        if (preset.compare(pos, 7, "cyclic(") != 0)
            throw std::invalid_argument("FiniteGroup: unsupported preset '" + preset + "'");
        pos += 7;
        size_t close = preset.find(')', pos);
        if (close == std::string::npos)
            throw std::invalid_argument("FiniteGroup: malformed preset '" + preset + "'");
        moduli.push_back(std::stoi(preset.substr(pos, close - pos)));
        pos = close + 1;
        if (pos < preset.size()) {
            if (preset[pos] != 'x')
                throw std::invalid_argument("FiniteGroup: malformed preset '" + preset + "'");
            ++pos;
        }
    }
    return product(moduli);
}

std::vector<int> FiniteGroup::tuple_of(int index) const {
    std::vector<int> t(moduli.size());
    for (size_t i = moduli.size(); i-- > 0;) {
        t[i] = index % moduli[i];
        index /= moduli[i];
    }
    return t;
}

int FiniteGroup::index_of(const std::vector<int>& tuple) const {
    int idx = 0;
    for (size_t i = 0; i < moduli.size(); ++i)
        idx = idx * moduli[i] + ((tuple[i] % moduli[i]) + moduli[i]) % moduli[i];
    return idx;
}

int FiniteGroup::multiply(int a, int b) const {
    auto ta = tuple_of(a);
    auto tb = tuple_of(b);
    for (size_t i = 0; i < moduli.size(); ++i)
        ta[i] = (ta[i] + tb[i]) % moduli[i];
    return index_of(ta);
}

int FiniteGroup::inverse(int a) const {
    auto t = tuple_of(a);
    for (size_t i = 0; i < moduli.size(); ++i)
        t[i] = (moduli[i] - t[i]) % moduli[i];
    return index_of(t);
}

std::vector<Character> irreducible_characters(const FiniteGroup& g) {
    std::vector<Character> out;
    out.reserve(static_cast<size_t>(g.order));
    for (int j = 0; j < g.order; ++j) {
        const auto jt = g.tuple_of(j);
        Character ch;
        if (j == 0) {
            ch.label = "1";
        } else if (g.moduli.size() == 1 && g.moduli[0] == 2) {
            ch.label = "xi";
        } else {
            ch.label = "rho";
            for (int v : jt)
                ch.label += std::to_string(v);
        }
        ch.values.resize(static_cast<size_t>(g.order));
        for (int a = 0; a < g.order; ++a) {
            const auto at = g.tuple_of(a);
            double phase = 0.0;
            for (size_t i = 0; i < g.moduli.size(); ++i)
                phase += static_cast<double>(jt[i]) * static_cast<double>(at[i]) /
                         static_cast<double>(g.moduli[i]);
            ch.values[static_cast<size_t>(a)] = std::polar(1.0, kTwoPi * phase);
        }
        out.push_back(std::move(ch));
    }
    return out;
}

const Character& find_character(const std::vector<Character>& chars, const std::string& label) {
    for (const auto& c : chars)
        if (c.label == label)
            return c;
    throw std::invalid_argument("unknown character label '" + label + "'");
}

std::complex<double> character_inner(const FiniteGroup& g, const Character& a, const Character& b) {
    std::complex<double> acc(0.0, 0.0);
    for (int i = 0; i < g.order; ++i)
        acc += a.values[static_cast<size_t>(i)] * std::conj(b.values[static_cast<size_t>(i)]);
    return acc / static_cast<double>(g.order);
}

long long integer_determinant(const Eigen::MatrixXi& m) {
    if (m.rows() != m.cols())
        throw std::invalid_argument("integer_determinant: matrix must be square");
    const int n = static_cast<int>(m.rows());
    Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic> a = m.cast<long long>();
    long long sign = 1;
    long long prev = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a(k, k) == 0) {
            int swap = -1;
            for (int i = k + 1; i < n; ++i)
                if (a(i, k) != 0) {
                    swap = i;
                    break;
                }
            if (swap < 0)
                return 0;
            a.row(k).swap(a.row(swap));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

LinearTorusAction make_torus_action(const FiniteGroup& g,
                                    const std::vector<Eigen::MatrixXi>& generators) {
    if (generators.size() != g.moduli.size())
        throw std::invalid_argument("make_torus_action: one generator matrix per cyclic factor");
    const int n = static_cast<int>(generators.front().rows());
    for (const auto& m : generators)
        if (m.rows() != n || m.cols() != n)
            throw std::invalid_argument("make_torus_action: generator matrices must share a size");

    LinearTorusAction act;
    act.group = g;
    act.matrices.resize(static_cast<size_t>(g.order));
    for (int a = 0; a < g.order; ++a) {
        const auto t = g.tuple_of(a);
        Eigen::MatrixXi m = Eigen::MatrixXi::Identity(n, n);
        for (size_t i = 0; i < generators.size(); ++i)
            for (int p = 0; p < t[i]; ++p)
                m = m * generators[i];
        act.matrices[static_cast<size_t>(a)] = m;
    }
    for (int a = 0; a < g.order; ++a) {
        const long long det = integer_determinant(act.matrices[static_cast<size_t>(a)]);
        if (det != 1 && det != -1)
            throw std::invalid_argument("make_torus_action: matrix is not invertible over Z");
        for (int b = 0; b < g.order; ++b) {
            const int ab = g.multiply(a, b);
            if (act.matrices[static_cast<size_t>(a)] * act.matrices[static_cast<size_t>(b)] !=
                act.matrices[static_cast<size_t>(ab)])
                throw std::invalid_argument("make_torus_action: matrices do not form a homomorphism");
        }
    }
    return act;
}

long long lefschetz_euler(const LinearTorusAction& action, const Character& rho,
                          double integrality_tol) {
    const FiniteGroup& g = action.group;
    if (static_cast<int>(rho.values.size()) != g.order)
        throw std::invalid_argument("lefschetz_euler: character size does not match group order");
    const int n = static_cast<int>(action.matrices.front().rows());
    const Eigen::MatrixXi id = Eigen::MatrixXi::Identity(n, n);
    std::complex<double> acc(0.0, 0.0);
    for (int a = 0; a < g.order; ++a) {
        const long long det = integer_determinant(id - action.matrices[static_cast<size_t>(a)]);
        acc += static_cast<double>(det) * std::conj(rho.values[static_cast<size_t>(a)]);
    }
    return round_integer(acc / static_cast<double>(g.order), integrality_tol, "lefschetz_euler");
}

long long sphere_euler(const FiniteGroup& g, const std::vector<Eigen::MatrixXi>& matrices,
                       int sphere_dim, const Character& rho, double integrality_tol) {
    if (static_cast<int>(matrices.size()) != g.order)
        throw std::invalid_argument("sphere_euler: one matrix per group element required");
    const double parity = (sphere_dim % 2 == 0) ? 1.0 : -1.0;
    std::complex<double> acc(0.0, 0.0);
    for (int a = 0; a < g.order; ++a) {
        const long long det = integer_determinant(matrices[static_cast<size_t>(a)]);
        if (det != 1 && det != -1)
            throw std::invalid_argument("sphere_euler: matrices must be orthogonal integer (det +-1)");
        // H^0 carries the trivial action, H^n the determinant action.
        const double virtual_char = 1.0 + parity * static_cast<double>(det);
        acc += virtual_char * std::conj(rho.values[static_cast<size_t>(a)]);
    }
    return round_integer(acc / static_cast<double>(g.order), integrality_tol, "sphere_euler");
}

long long strata_euler(const std::vector<StratumRecord>& records, const std::string& rho) {
    int principal_count = 0;
    for (const auto& r : records)
        if (r.principal)
            ++principal_count;
    if (principal_count != 1)
        throw std::invalid_argument("strata_euler: dataset must contain exactly one principal stratum");
    long long acc = 0;
    for (const auto& r : records) {
        auto it = r.chi_rho_orbit.find(rho);
        if (it == r.chi_rho_orbit.end())
            throw std::invalid_argument("strata_euler: stratum '" + r.label +
                                        "' has no entry for representation '" + rho + "'");
        acc += it->second * r.chi_rel;
    }
    return acc;
}

long long open_euler(long long chi_compactified, bool open) {
    return open ? chi_compactified - 1 : chi_compactified;
}

long long basic_gauss_bonnet(const std::vector<FoliationStratumRecord>& records) {
    if (records.empty())
        throw std::invalid_argument("basic_gauss_bonnet: at least one stratum required");
    long long acc = 0;
    for (const auto& r : records)
        acc += r.chi_quotient * r.chi_leaf_closure;
    return acc;
}

} // namespace tdo::euler
