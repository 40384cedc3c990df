#include "tdo/clifford.hpp"

#include <stdexcept>

namespace tdo::clifford {

namespace {

const Complex kI(0.0, 1.0);

// One doubling step: from generators of size k for dimension n to
// generators of size 2k for dimension n+2.
//   c_j'    = [[0, c_j], [c_j, 0]]
//   c_n+1'  = [[0,  I ], [-I,  0]]
//   c_n+2'  = [[iI, 0 ], [ 0, -iI]]
std::vector<Matrix> double_generators(const std::vector<Matrix>& gens, int k) {
    std::vector<Matrix> out;
    out.reserve(gens.size() + 2);
    const Matrix id = Matrix::Identity(k, k);
    const Matrix zero = Matrix::Zero(k, k);
    for (const Matrix& c : gens) {
        Matrix m(2 * k, 2 * k);
        m << zero, c, c, zero;
        out.push_back(std::move(m));
    }
    Matrix a(2 * k, 2 * k);
    a << zero, id, -id, zero;
    out.push_back(std::move(a));
    Matrix b(2 * k, 2 * k);
    b << kI * id, zero, zero, -kI * id;
    out.push_back(std::move(b));
    return out;
}

} // namespace

CliffordRep build_clifford(int n, int max_n) {
    if (n < 1)
        throw std::invalid_argument("build_clifford: dimension must be positive");
    if (n > max_n)
        throw std::invalid_argument("build_clifford: dimension exceeds configured maximum");

    // Odd dimensions by repeated doubling from the 1x1 seed (i); an even
    // dimension uses the first n generators of the (n+1)-dimensional set,
    // which has the same representation size.
    const int n_odd = (n % 2 == 0) ? n + 1 : n;
    std::vector<Matrix> gens{Matrix::Constant(1, 1, kI)};
    int k = 1;
    for (int m = 1; m < n_odd; m += 2) {
        gens = double_generators(gens, k);
        k *= 2;
    }
    gens.resize(static_cast<size_t>(n));

    CliffordRep rep;
    rep.n = n;
    rep.k = k;
    rep.generators = std::move(gens);
    return rep;
}

Matrix clifford_vector(const CliffordRep& rep, const Eigen::VectorXd& v) {
    if (v.size() != rep.n)
        throw std::invalid_argument("clifford_vector: vector length does not match ambient dimension");
    Matrix m = Matrix::Zero(rep.k, rep.k);
    for (int j = 0; j < rep.n; ++j)
        m += v[j] * rep.generators[static_cast<size_t>(j)];
    return m;
}

ChiralityGrading chirality_grading(const CliffordRep& rep) {
    if (rep.n % 2 != 0)
        throw std::invalid_argument("chirality_grading: requires even ambient dimension");
    Matrix prod = Matrix::Identity(rep.k, rep.k);
    for (const Matrix& c : rep.generators)
        prod = prod * c;
    // i^{n/2} c_1...c_n squares to the identity.
    Complex phase(1.0, 0.0);
    for (int j = 0; j < rep.n / 2; ++j)
        phase *= kI;
    ChiralityGrading g;
    g.gamma = phase * prod;
    const Matrix id = Matrix::Identity(rep.k, rep.k);
    g.projector_plus = 0.5 * (id + g.gamma);
    g.projector_minus = 0.5 * (id - g.gamma);
    return g;
}

double relation_residual(const CliffordRep& rep) {
    double worst = 0.0;
    const Matrix id = Matrix::Identity(rep.k, rep.k);
    for (int i = 0; i < rep.n; ++i) {
        const Matrix& ci = rep.generators[static_cast<size_t>(i)];
        worst = std::max(worst, (ci.adjoint() + ci).cwiseAbs().maxCoeff());
        for (int j = i; j < rep.n; ++j) {
            const Matrix& cj = rep.generators[static_cast<size_t>(j)];
            Matrix anti = ci * cj + cj * ci;
            if (i == j)
                anti += 2.0 * id;
            worst = std::max(worst, anti.cwiseAbs().maxCoeff());
        }
    }
    return worst;
}

} // namespace tdo::clifford
