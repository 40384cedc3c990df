#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <map>
#include <vector>

namespace tdo::exterior {

using Complex = std::complex<double>;

// Pointwise metric data: symmetric positive-definite g_ij plus an
// orientation sign for the ordered coordinate frame.
struct MetricPoint {
    Eigen::MatrixXd g;
    int orientation = +1;

    int dim() const { return static_cast<int>(g.rows()); }
};

MetricPoint euclidean_metric(int n);

// Exterior form at a point. Coefficients are keyed by the bitmask of a
// strictly increasing multi-index (bit j <-> dx_{j+1}); an absent key is a
// zero coefficient. Homogeneous forms have all keys of equal popcount;
// the Clifford action produces mixed-grade forms, which are allowed.
struct Form {
    int n = 0;
    std::map<uint32_t, Complex> coeff;

    Form() = default;
    explicit Form(int n_) : n(n_) {}

    Complex coefficient(uint32_t mask) const {
        auto it = coeff.find(mask);
        return it == coeff.end() ? Complex(0.0, 0.0) : it->second;
    }
    void add(uint32_t mask, Complex value);
    void prune(double eps = 0.0);
    double max_abs() const;

    // Common grade of all stored terms, or -1 if mixed; 0 for the zero form.
    int grade() const;
    bool homogeneous() const { return grade() >= 0; }
    Form grade_part(int r) const;

    Form operator+(const Form& other) const;
    Form operator-(const Form& other) const;
    Form operator*(Complex s) const;
};

// dx_{i1} ^ ... ^ dx_{ir} from 1-based, strictly increasing indices.
Form basis_form(int n, std::initializer_list<int> indices);
Form scalar_form(int n, Complex value);

// Strictly increasing multi-indices of length r, enumerated
// lexicographically, as bitmasks.
std::vector<uint32_t> grade_basis(int n, int r);
int binomial(int n, int r);

// Sign of merging two disjoint increasing index sets a, b into the
// increasing set a|b (0 if they intersect).
int merge_sign(uint32_t a, uint32_t b);

Eigen::MatrixXd inverse_metric(const MetricPoint& m);

Form wedge(const Form& a, const Form& b);
Form interior(const Eigen::VectorXd& v, const Form& a);
Form flat(const MetricPoint& m, const Eigen::VectorXd& v);
Eigen::VectorXd sharp(const MetricPoint& m, const Form& a);

Form volume_form(const MetricPoint& m);

// Induced inner product: Gram determinants of g^{ij} per grade, distinct
// grades orthogonal. Conjugate-linear in the second argument.
Complex form_inner(const MetricPoint& m, const Form& a, const Form& b);

// Hodge star, defined gradewise by b ^ star(a) = (b, a) dvol for all
// grade-r forms b, computed by solving that linear system over the full
// grade basis.
Form hodge_star(const MetricPoint& m, const Form& a);

// Normalized involutive variant i^{r(r-1)+n/2} * per grade (even n only).
Form bigstar(const MetricPoint& m, const Form& a);

// Clifford action on forms: c(v) a = flat(v) ^ a - interior(v, a).
Form clifford_form_action(const MetricPoint& m, const Eigen::VectorXd& v, const Form& a);

// Matrix of "wedge by the one-form w": grade r -> r+1, lexicographic bases.
Eigen::MatrixXcd wedge_matrix(int n, int r, const Eigen::VectorXcd& w);
// Matrix of the interior product with v: grade r -> r-1.
Eigen::MatrixXcd interior_matrix(int n, int r, const Eigen::VectorXd& v);

} // namespace tdo::exterior
