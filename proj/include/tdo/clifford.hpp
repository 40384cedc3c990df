#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace tdo::clifford {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

// Complex Clifford representation of R^n: n generators c_1..c_n of size
// k x k with k = 2^floor(n/2), satisfying c_i c_j + c_j c_i = -2 delta_ij
// and c_i^dagger = -c_i. Entries are restricted to {0, +-1, +-i} so the
// relations hold in exact floating-point arithmetic.
struct CliffordRep {
    int n = 0;                      // ambient dimension
    int k = 0;                      // representation dimension, 2^floor(n/2)
    std::vector<Matrix> generators; // c_1..c_n

    const Matrix& generator(int j) const { return generators.at(static_cast<size_t>(j)); }
};

// Chirality element gamma = i^{n/2} c_1...c_n for even n, with gamma^2 = I,
// and the associated projectors onto the +-1 eigenspaces S+ and S-.
struct ChiralityGrading {
    Matrix gamma;
    Matrix projector_plus;
    Matrix projector_minus;
};

inline constexpr int kMaxAmbientDim = 12;

// Recursive doubling of the Pauli triple; n=3 reproduces the Pauli spin
// matrices c1=[[0,i],[i,0]], c2=[[0,1],[-1,0]], c3=[[i,0],[0,-i]] exactly.
CliffordRep build_clifford(int n, int max_n = kMaxAmbientDim);

// c(v) = sum_j v_j c_j
Matrix clifford_vector(const CliffordRep& rep, const Eigen::VectorXd& v);

ChiralityGrading chirality_grading(const CliffordRep& rep);

// Max entrywise residual over all relations c_i c_j + c_j c_i + 2 delta_ij I
// and skew-Hermiticity; zero for the shipped construction.
double relation_residual(const CliffordRep& rep);

} // namespace tdo::clifford
