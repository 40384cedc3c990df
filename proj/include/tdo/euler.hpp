#pragma once

#include <Eigen/Dense>
#include <complex>
#include <map>
#include <string>
#include <vector>

namespace tdo::euler {

// Finite abelian group presented as a product of cyclic factors. Elements
// are mixed-radix tuples, indexed 0..order-1 with the identity at 0.
struct FiniteGroup {
    std::vector<int> moduli;
    int order = 1;

    static FiniteGroup cyclic(int n);
    static FiniteGroup product(const std::vector<int>& moduli);
    // "cyclic(4)", "cyclic(2)xcyclic(2)", ...
    static FiniteGroup parse(const std::string& preset);

    std::vector<int> tuple_of(int index) const;
    int index_of(const std::vector<int>& tuple) const;
    int multiply(int a, int b) const;
    int inverse(int a) const;
};

struct Character {
    std::string label;
    std::vector<std::complex<double>> values; // per element index
};

// The |G| irreducible characters g -> e^{2 pi i <j,g>}, labeled "1" for
// the trivial one, "xi" for the sign character of cyclic(2), and
// "rho<digits>" otherwise.
std::vector<Character> irreducible_characters(const FiniteGroup& g);
const Character& find_character(const std::vector<Character>& chars, const std::string& label);
std::complex<double> character_inner(const FiniteGroup& g, const Character& a, const Character& b);

// Action of a finite abelian group on T^n by integer matrices.
struct LinearTorusAction {
    FiniteGroup group;
    std::vector<Eigen::MatrixXi> matrices; // per element index
};

// Builds the action from one integer matrix per cyclic factor and
// validates the homomorphism property and invertibility over Z.
LinearTorusAction make_torus_action(const FiniteGroup& g,
                                    const std::vector<Eigen::MatrixXi>& generators);

// Exact integer determinant (fraction-free elimination).
long long integer_determinant(const Eigen::MatrixXi& m);

// chi^rho of the induced action on torus harmonic forms:
// (1/|G|) sum_g det(I - A_g) conj(chi_rho(g)). Harmonic forms on flat
// tori have constant coefficients, so the alternating trace over the
// exterior algebra collapses to det(I - A_g).
long long lefschetz_euler(const LinearTorusAction& action, const Character& rho,
                          double integrality_tol = 1e-9);

// Same fixed-point style count on S^n for a finite subgroup of O(n+1)
// given by integer matrices: virtual character g -> 1 + (-1)^n det(A_g).
long long sphere_euler(const FiniteGroup& g, const std::vector<Eigen::MatrixXi>& matrices,
                       int sphere_dim, const Character& rho, double integrality_tol = 1e-9);

// Per-stratum data for the stratified equivariant Euler characteristic:
// chi_rel is the relative Euler characteristic of the quotient of the
// stratum closure modulo more-singular strata, chi_rho_orbit the orbit
// Euler characteristics per representation label (with orientation-line
// coefficients on singular strata).
struct StratumRecord {
    std::string label;
    bool principal = false;
    long long chi_rel = 0;
    std::map<std::string, long long> chi_rho_orbit;
};

long long strata_euler(const std::vector<StratumRecord>& records, const std::string& rho);

// Open-manifold Euler convention: chi(Y) for closed Y, chi(1-point
// compactification) - 1 for open Y.
long long open_euler(long long chi_compactified, bool open);

struct FoliationStratumRecord {
    std::string label;
    long long chi_quotient = 0;     // chi(M_j / leaf-closure foliation)
    long long chi_leaf_closure = 0; // chi(L_j, F, orientation line bundle)
};

long long basic_gauss_bonnet(const std::vector<FoliationStratumRecord>& records);

} // namespace tdo::euler
