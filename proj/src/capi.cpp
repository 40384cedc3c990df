#include "tdo.h"

#include "tdo/acceptance.hpp"
#include "tdo/clifford.hpp"
#include "tdo/cohomology.hpp"
#include "tdo/euler.hpp"
#include "tdo/spectrum.hpp"
#include "tdo/torus.hpp"
#include "tdo/transversal.hpp"
#include "tdo/workbench.hpp"

#include <cstdlib>
#include <cstring>
#include <new>
#include <stdexcept>
#include <string>

struct tdo_clifford {
    tdo::clifford::CliffordRep rep;
};

struct tdo_spectrum {
    tdo::SpectrumReport rep;
};

struct tdo_complex {
    tdo::cohomology::TwistedComplex model;
};

namespace {

thread_local std::string g_last_error;

tdo_status fail(tdo_status code, const char* what) {
    g_last_error = what ? what : "unknown error";
    return code;
}

template <typename Fn>
tdo_status guarded(Fn&& fn) {
    try {
        fn();
        return TDO_OK;
    } catch (const std::invalid_argument& e) {
        return fail(TDO_INVALID_ARGUMENT, e.what());
    } catch (const std::runtime_error& e) {
        return fail(TDO_CONTRACT_VIOLATION, e.what());
    } catch (const std::bad_alloc&) {
        return fail(TDO_ERROR, "out of memory");
    } catch (const std::exception& e) {
        return fail(TDO_ERROR, e.what());
    }
}

void write_matrix(const Eigen::MatrixXcd& m, double* buffer) {
    size_t pos = 0;
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            buffer[pos++] = m(i, j).real();
            buffer[pos++] = m(i, j).imag();
        }
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out)
        std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

tdo::TrigPoly trig_from_arrays(double c0, const double* cos_c, int n_cos, const double* sin_c,
                               int n_sin, double omega) {
    tdo::TrigPoly p;
    p.c0 = c0;
    p.omega = omega;
    if (n_cos < 0 || n_sin < 0 || (n_cos > 0 && !cos_c) || (n_sin > 0 && !sin_c))
        throw std::invalid_argument("trig coefficients: null array with positive length");
    p.cos_coeffs.assign(cos_c, cos_c + n_cos);
    p.sin_coeffs.assign(sin_c, sin_c + n_sin);
    return p;
}

} // namespace

extern "C" {

const char* tdo_last_error(void) { return g_last_error.c_str(); }

void tdo_string_free(char* s) { std::free(s); }

/* ---- clifford ---- */

tdo_status tdo_clifford_create(int n, tdo_clifford** out) {
    if (!out)
        return fail(TDO_INVALID_ARGUMENT, "null output pointer");
    return guarded([&] { *out = new tdo_clifford{tdo::clifford::build_clifford(n)}; });
}

void tdo_clifford_destroy(tdo_clifford* rep) { delete rep; }

int tdo_clifford_ambient_dim(const tdo_clifford* rep) { return rep ? rep->rep.n : 0; }

int tdo_clifford_rep_dim(const tdo_clifford* rep) { return rep ? rep->rep.k : 0; }

tdo_status tdo_clifford_generator(const tdo_clifford* rep, int j, double* buffer) {
    if (!rep || !buffer)
        return fail(TDO_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        if (j < 1 || j > rep->rep.n)
            throw std::invalid_argument("generator index out of range");
        write_matrix(rep->rep.generator(j - 1), buffer);
    });
}

tdo_status tdo_clifford_vector_matrix(const tdo_clifford* rep, const double* v, int len,
                                      double* buffer) {
    if (!rep || !v || !buffer)
        return fail(TDO_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        Eigen::VectorXd vec = Eigen::Map<const Eigen::VectorXd>(v, len);
        write_matrix(tdo::clifford::clifford_vector(rep->rep, vec), buffer);
    });
}

tdo_status tdo_clifford_chirality(const tdo_clifford* rep, double* gamma_buffer) {
    if (!rep || !gamma_buffer)
        return fail(TDO_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        write_matrix(tdo::clifford::chirality_grading(rep->rep).gamma, gamma_buffer);
    });
}

double tdo_clifford_relation_residual(const tdo_clifford* rep) {
    return rep ? tdo::clifford::relation_residual(rep->rep) : -1.0;
}

/* ---- spectra ---- */

void tdo_spectrum_destroy(tdo_spectrum* s) { delete s; }

int tdo_spectrum_count(const tdo_spectrum* s) {
    return s ? static_cast<int>(s->rep.size()) : 0;
}

double tdo_spectrum_eigenvalue(const tdo_spectrum* s, int i) {
    return s->rep.eigenvalues.at(static_cast<size_t>(i));
}

int tdo_spectrum_multiplicity(const tdo_spectrum* s, int i) {
    return s->rep.multiplicities.at(static_cast<size_t>(i));
}

int tdo_spectrum_truncation(const tdo_spectrum* s) { return s ? s->rep.truncation : 0; }

const char* tdo_spectrum_label(const tdo_spectrum* s) {
    return s ? s->rep.operator_label.c_str() : "";
}

tdo_status tdo_circle_dirac(int M, tdo_spectrum** out) {
    if (!out)
        return fail(TDO_INVALID_ARGUMENT, "null output pointer");
    return guarded([&] { *out = new tdo_spectrum{tdo::torus::circle_dirac(M)}; });
}

tdo_status tdo_torus_dirac(int M, tdo_spectrum** out) {
    if (!out)
        return fail(TDO_INVALID_ARGUMENT, "null output pointer");
    return guarded([&] { *out = new tdo_spectrum{tdo::torus::dirac_t2(M)}; });
}

tdo_status tdo_torus_dirac_kernel(int M, int* plus_dim, int* minus_dim) {
    if (!plus_dim || !minus_dim)
        return fail(TDO_INVALID_ARGUMENT, "null output pointer");
    return guarded([&] {
        auto [p, m] = tdo::torus::dirac_t2_kernel_chirality(M);
        *plus_dim = p;
        *minus_dim = m;
    });
}

tdo_status tdo_harmonic_dim(int n, int M, int r, int* out) {
    if (!out)
        return fail(TDO_INVALID_ARGUMENT, "null output pointer");
    return guarded([&] { *out = tdo::torus::harmonic_dims(n, M, r); });
}

tdo_status tdo_heat_supertrace(int rows, int cols, const double* matrix, double t, double* out) {
    if (!matrix || !out)
        return fail(TDO_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        if (rows < 1 || cols < 1)
            throw std::invalid_argument("matrix dimensions must be positive");
        Eigen::MatrixXcd D(rows, cols);
        size_t pos = 0;
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) {
                D(i, j) = std::complex<double>(matrix[pos], matrix[pos + 1]);
                pos += 2;
            }
        *out = tdo::torus::heat_supertrace_index(D, t);
    });
}

tdo_status tdo_warped_dl(double c0, const double* g_cos, int n_cos, const double* g_sin,
                         int n_sin, int N, tdo_spectrum** out) {
    if (!out)
        return fail(TDO_INVALID_ARGUMENT, "null output pointer");
    return guarded([&] {
        *out = new tdo_spectrum{tdo::transversal::warped_torus_dl(
            trig_from_arrays(c0, g_cos, n_cos, g_sin, n_sin, 1.0), N)};
    });
}

tdo_status tdo_warped_dq(double c0, const double* g_cos, int n_cos, const double* g_sin,
                         int n_sin, int x_mode, int N, tdo_spectrum** out) {
    if (!out)
        return fail(TDO_INVALID_ARGUMENT, "null output pointer");
    return guarded([&] {
        *out = new tdo_spectrum{tdo::transversal::warped_torus_dq(
            trig_from_arrays(c0, g_cos, n_cos, g_sin, n_sin, 1.0), x_mode, N)};
    });
}

tdo_status tdo_warped_adjoint_defect(double c0, const double* g_cos, int n_cos,
                                     const double* g_sin, int n_sin, int N, double* defect,
                                     double* dl_hermiticity) {
    if (!defect || !dl_hermiticity)
        return fail(TDO_INVALID_ARGUMENT, "null output pointer");
    return guarded([&] {
        auto rep = tdo::transversal::adjoint_defect(
            trig_from_arrays(c0, g_cos, n_cos, g_sin, n_sin, 1.0), N);
        *defect = rep.defect;
        *dl_hermiticity = rep.dl_hermiticity;
    });
}

tdo_status tdo_slope_dq(double r, int M, tdo_spectrum** out, double* min_gap) {
    if (!out)
        return fail(TDO_INVALID_ARGUMENT, "null output pointer");
    return guarded([&] {
        auto rep = tdo::transversal::slope_distribution_dq(r, M);
        if (min_gap)
            *min_gap = rep.min_gap;
        *out = new tdo_spectrum{std::move(rep.spectrum)};
    });
}

/* ---- cohomology ---- */

tdo_status tdo_carriere_complex(double lambda, int N, tdo_complex** out) {
    if (!out)
        return fail(TDO_INVALID_ARGUMENT, "null output pointer");
    return guarded([&] { *out = new tdo_complex{tdo::cohomology::carriere_model(lambda, N)}; });
}

tdo_status tdo_suspension_complex(int P, tdo_complex** out) {
    if (!out)
        return fail(TDO_INVALID_ARGUMENT, "null output pointer");
    return guarded([&] { *out = new tdo_complex{tdo::cohomology::suspension_model(P)}; });
}

tdo_status tdo_torus_invariant_complex(int q, int N, tdo_complex** out) {
    if (!out)
        return fail(TDO_INVALID_ARGUMENT, "null output pointer");
    return guarded([&] { *out = new tdo_complex{tdo::cohomology::torus_invariant_model(q, N)}; });
}

void tdo_complex_destroy(tdo_complex* c) { delete c; }

int tdo_complex_codim(const tdo_complex* c) { return c ? c->model.q : 0; }

tdo_status tdo_complex_validate(const tdo_complex* c, double* max_residual) {
    if (!c || !max_residual)
        return fail(TDO_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        *max_residual = tdo::cohomology::validate_complex(c->model).max_residual();
    });
}

tdo_status tdo_complex_betti(const tdo_complex* c, int twisted, int* betti) {
    if (!c || !betti)
        return fail(TDO_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        auto rep = tdo::cohomology::cohomology_dims(c->model, twisted != 0);
        for (size_t k = 0; k < rep.betti.size(); ++k)
            betti[k] = rep.betti[k];
    });
}

tdo_status tdo_complex_taut(const tdo_complex* c, int* taut) {
    if (!c || !taut)
        return fail(TDO_INVALID_ARGUMENT, "null argument");
    return guarded([&] { *taut = tdo::cohomology::is_taut(c->model) ? 1 : 0; });
}

tdo_status tdo_complex_poincare(const tdo_complex* c, int* dims_symmetric,
                                double* eigenvalue_mismatch) {
    if (!c || !dims_symmetric || !eigenvalue_mismatch)
        return fail(TDO_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        auto rep = tdo::cohomology::poincare_check(c->model);
        *dims_symmetric = rep.dims_symmetric ? 1 : 0;
        *eigenvalue_mismatch = rep.eigenvalue_mismatch;
    });
}

tdo_status tdo_carriere_conformal_shift(double lambda, int N, const double* h_cos, int n_cos,
                                        const double* h_sin, int n_sin, int* betti_twisted,
                                        int* betti_untwisted, double* residual) {
    if (!betti_twisted || !betti_untwisted || !residual)
        return fail(TDO_INVALID_ARGUMENT, "null output pointer");
    return guarded([&] {
        const auto model = tdo::cohomology::carriere_model(lambda, N);
        const auto h = trig_from_arrays(0.0, h_cos, n_cos, h_sin, n_sin,
                                        2.0 * 3.14159265358979323846);
        auto shift = tdo::cohomology::conformal_shift(model, h);
        auto tw = tdo::cohomology::cohomology_dims(shift.shifted, true);
        auto un = tdo::cohomology::cohomology_dims(shift.shifted, false);
        for (size_t k = 0; k < tw.betti.size(); ++k) {
            betti_twisted[k] = tw.betti[k];
            betti_untwisted[k] = un.betti[k];
        }
        *residual = shift.residual;
    });
}

/* ---- euler ---- */

tdo_status tdo_lefschetz_euler_json(const char* action_json, const char* rho, long long* out) {
    if (!action_json || !rho || !out)
        return fail(TDO_INVALID_ARGUMENT, "null argument");
    return guarded([&] { *out = tdo::workbench::lefschetz_from_dataset(action_json, rho); });
}

tdo_status tdo_strata_euler_json(const char* dataset_json, const char* rho, long long* out) {
    if (!dataset_json || !rho || !out)
        return fail(TDO_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        auto records = tdo::workbench::parse_strata_dataset(dataset_json);
        *out = tdo::euler::strata_euler(records, rho);
    });
}

tdo_status tdo_gauss_bonnet_json(const char* dataset_json, long long* out) {
    if (!dataset_json || !out)
        return fail(TDO_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        auto records = tdo::workbench::parse_foliation_dataset(dataset_json);
        *out = tdo::euler::basic_gauss_bonnet(records);
    });
}

tdo_status tdo_open_euler(long long chi_compactified, int is_open, long long* out) {
    if (!out)
        return fail(TDO_INVALID_ARGUMENT, "null output pointer");
    *out = tdo::euler::open_euler(chi_compactified, is_open != 0);
    return TDO_OK;
}

/* ---- workbench ---- */

tdo_status tdo_run_config(const char* config_json, char** report) {
    if (!config_json || !report)
        return fail(TDO_INVALID_ARGUMENT, "null argument");
    tdo::workbench::RunResult res = tdo::workbench::run(config_json);
    *report = dup_string(res.report);
    if (res.status == 0)
        return TDO_OK;
    g_last_error = res.error;
    return res.status == 2 ? TDO_INVALID_ARGUMENT : TDO_CONTRACT_VIOLATION;
}

tdo_status tdo_acceptance(const char* suite, const char* data_dir, char** table) {
    if (!suite || !table)
        return fail(TDO_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        auto res = tdo::acceptance::run_suite(suite, data_dir ? data_dir : "datasets");
        *table = dup_string(res.table());
        if (!res.all_pass())
            throw std::runtime_error("acceptance criteria failed");
    });
}

} // extern "C"
