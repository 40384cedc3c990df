#include "tdo/acceptance.hpp"

#include "tdo/clifford.hpp"
#include "tdo/cohomology.hpp"
#include "tdo/euler.hpp"
#include "tdo/exterior.hpp"
#include "tdo/torus.hpp"
#include "tdo/transversal.hpp"
#include "tdo/workbench.hpp"

#include <Eigen/SVD>
#include <chrono>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace tdo::acceptance {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

template <typename Fn>
void criterion(std::vector<CriterionResult>& out, const std::string& id, const std::string& name,
               Fn&& fn) {
    CriterionResult r;
    r.id = id;
    r.name = name;
    try {
        r.pass = fn(r.detail);
    } catch (const std::exception& e) {
        r.pass = false;
        r.detail = std::string("exception: ") + e.what();
    }
    out.push_back(std::move(r));
}

// ---- clifford ----

void suite_clifford(std::vector<CriterionResult>& out) {
    criterion(out, "1", "Clifford relations n=1..8 exact, n=3 matches the Pauli matrices",
              [](std::string& detail) {
                  const auto start = std::chrono::steady_clock::now();
                  double worst = 0.0;
                  for (int n = 1; n <= 8; ++n)
                      worst = std::max(worst, clifford::relation_residual(clifford::build_clifford(n)));

                  const auto rep = clifford::build_clifford(3);
                  const std::complex<double> I(0.0, 1.0);
                  Eigen::MatrixXcd p1(2, 2), p2(2, 2), p3(2, 2);
                  p1 << 0, I, I, 0;
                  p2 << 0, 1, -1, 0;
                  p3 << I, 0, 0, -I;
                  double pauli_gap = (rep.generator(0) - p1).cwiseAbs().maxCoeff();
                  pauli_gap = std::max(pauli_gap, (rep.generator(1) - p2).cwiseAbs().maxCoeff());
                  pauli_gap = std::max(pauli_gap, (rep.generator(2) - p3).cwiseAbs().maxCoeff());
                  const double secs = std::chrono::duration<double>(
                                          std::chrono::steady_clock::now() - start)
                                          .count();
                  detail = "relation residual " + fmt(worst) + ", Pauli gap " + fmt(pauli_gap) +
                           ", " + fmt(secs) + " s (tol: exact, < 1 s)";
                  return worst == 0.0 && pauli_gap == 0.0 && secs < 1.0;
              });
}

// ---- spectra ----

void suite_spectra(std::vector<CriterionResult>& out) {
    criterion(out, "2", "T^2 Hodge theorem: harmonic dims (1,2,1) at M in {1,4,8}",
              [](std::string& detail) {
                  const int expected[3] = {1, 2, 1};
                  for (int M : {1, 4, 8})
                      for (int r = 0; r <= 2; ++r)
                          if (torus::harmonic_dims(2, M, r) != expected[r]) {
                              detail = "mismatch at M=" + std::to_string(M) +
                                       " r=" + std::to_string(r);
                              return false;
                          }
                  detail = "exact integers at every truncation";
                  return true;
              });

    criterion(out, "3", "S^1 Dirac spectrum at M=20 is exactly -20..20, multiplicity 1",
              [](std::string& detail) {
                  const auto rep = torus::circle_dirac(20);
                  if (rep.size() != 41) {
                      detail = "expected 41 distinct eigenvalues, got " + std::to_string(rep.size());
                      return false;
                  }
                  for (int i = 0; i < 41; ++i)
                      if (rep.eigenvalues[static_cast<size_t>(i)] != static_cast<double>(i - 20) ||
                          rep.multiplicities[static_cast<size_t>(i)] != 1) {
                          detail = "mismatch at index " + std::to_string(i);
                          return false;
                      }
                  detail = "exact";
                  return true;
              });

    criterion(out, "4", "T^2 Dirac: eigenvalues +-2pi|m| within 1e-9 at M=5, kernel (1,1)",
              [](std::string& detail) {
                  const int M = 5;
                  // independent oracle: enumerate the mode lattice directly
                  std::vector<double> expected;
                  for (int m1 = -M; m1 <= M; ++m1)
                      for (int m2 = -M; m2 <= M; ++m2) {
                          const double r = kTwoPi * std::sqrt(double(m1 * m1 + m2 * m2));
                          expected.push_back(r);
                          expected.push_back(-r);
                      }
                  std::sort(expected.begin(), expected.end());
                  const auto rep = torus::dirac_t2(M);
                  std::vector<double> got;
                  for (size_t i = 0; i < rep.size(); ++i)
                      got.insert(got.end(), static_cast<size_t>(rep.multiplicities[i]),
                                 rep.eigenvalues[i]);
                  if (got.size() != expected.size()) {
                      detail = "count mismatch";
                      return false;
                  }
                  double worst = 0.0;
                  for (size_t i = 0; i < got.size(); ++i)
                      worst = std::max(worst, std::abs(got[i] - expected[i]));
                  const auto kernel = torus::dirac_t2_kernel_chirality(M);
                  detail = "max eigenvalue gap " + fmt(worst) + " (tol 1e-9), kernel (" +
                           std::to_string(kernel.first) + "," + std::to_string(kernel.second) + ")";
                  return worst < 1e-9 && kernel.first == 1 && kernel.second == 1;
              });

    criterion(out, "5", "heat supertrace equals the analytic index for 20 random matrices",
              [](std::string& detail) {
                  std::mt19937 rng(7101);
                  std::normal_distribution<double> gauss(0.0, 1.0);
                  double worst = 0.0;
                  for (int trial = 0; trial < 20; ++trial) {
                      const int rows = 2 + static_cast<int>(rng() % 8);
                      const int cols = 2 + static_cast<int>(rng() % 8);
                      const int rank = static_cast<int>(rng() % static_cast<unsigned>(
                                           std::min(rows, cols) + 1));
                      Eigen::MatrixXcd A(rows, rank), B(rank, cols);
                      for (int i = 0; i < rows; ++i)
                          for (int j = 0; j < rank; ++j)
                              A(i, j) = std::complex<double>(gauss(rng), gauss(rng));
                      for (int i = 0; i < rank; ++i)
                          for (int j = 0; j < cols; ++j)
                              B(i, j) = std::complex<double>(gauss(rng), gauss(rng));
                      const Eigen::MatrixXcd D = (rank == 0)
                                                     ? Eigen::MatrixXcd::Zero(rows, cols)
                                                     : Eigen::MatrixXcd(A * B);
                      // analytic index: (cols - rank) - (rows - rank)
                      const double expected = static_cast<double>(cols - rows);
                      for (double t : {0.1, 1.0, 10.0})
                          worst = std::max(worst,
                                           std::abs(torus::heat_supertrace_index(D, t) - expected));
                  }
                  detail = "max |supertrace - index| = " + fmt(worst) + " (tol 1e-8)";
                  return worst < 1e-8;
              });

    criterion(out, "12a", "star-star and bigstar^2 sign laws over 100 random metrics/forms",
              [](std::string& detail) {
                  std::mt19937 rng(12345);
                  std::uniform_real_distribution<double> unit(-1.0, 1.0);
                  double worst_ss = 0.0, worst_bb = 0.0, worst_def = 0.0;
                  for (int trial = 0; trial < 100; ++trial) {
                      const int n = 2 + static_cast<int>(rng() % 5); // 2..6
                      Eigen::MatrixXd R(n, n);
                      for (int i = 0; i < n; ++i)
                          for (int j = 0; j < n; ++j)
                              R(i, j) = unit(rng);
                      exterior::MetricPoint m;
                      m.g = R.transpose() * R + 0.5 * Eigen::MatrixXd::Identity(n, n);
                      const int r = static_cast<int>(rng() % static_cast<unsigned>(n + 1));
                      exterior::Form a(n);
                      for (uint32_t mask : exterior::grade_basis(n, r))
                          a.coeff[mask] = std::complex<double>(unit(rng), unit(rng));
                      exterior::Form ss = exterior::hodge_star(m, exterior::hodge_star(m, a));
                      const double sign = ((r * (n - r)) % 2 == 0) ? 1.0 : -1.0;
                      worst_ss = std::max(worst_ss, (ss - a * sign).max_abs());
                      // defining property residual against a random real test form
                      exterior::Form b(n);
                      for (uint32_t mask : exterior::grade_basis(n, r))
                          b.coeff[mask] = std::complex<double>(unit(rng), 0.0);
                      exterior::Form lhs = exterior::wedge(b, exterior::hodge_star(m, a));
                      exterior::Form rhs =
                          exterior::volume_form(m) * exterior::form_inner(m, a, b);
                      worst_def = std::max(worst_def, (lhs - rhs).max_abs());
                      if (n % 2 == 0) {
                          exterior::Form bb = exterior::bigstar(m, exterior::bigstar(m, a));
                          worst_bb = std::max(worst_bb, (bb - a).max_abs());
                      }
                  }
                  detail = "|**a - sign a| " + fmt(worst_ss) + ", |bigstar^2 a - a| " + fmt(worst_bb) +
                           ", defining residual " + fmt(worst_def) + " (tol 1e-11)";
                  return worst_ss < 1e-11 && worst_bb < 1e-11 && worst_def < 1e-11;
              });

    criterion(out, "12d", "principal-symbol limit residual decays like 1/t over t in {1e2,1e3,1e4}",
              [](std::string& detail) {
                  Eigen::VectorXi mode(2);
                  mode << 1, 0;
                  Eigen::Vector2d xi(1.0, 0.0);
                  double res[3];
                  const double ts[3] = {1e2, 1e3, 1e4};
                  for (int i = 0; i < 3; ++i)
                      res[i] = torus::symbol_limit_residual(torus::SymbolFamily::DiracT2, mode, xi,
                                                            ts[i]);
                  const double r01 = res[0] / res[1];
                  const double r12 = res[1] / res[2];
                  double lap[3];
                  for (int i = 0; i < 3; ++i)
                      lap[i] = torus::symbol_limit_residual(torus::SymbolFamily::LaplacianT2, mode,
                                                            xi, ts[i]);
                  detail = "dirac residuals " + fmt(res[0]) + "/" + fmt(res[1]) + "/" + fmt(res[2]) +
                           ", ratios " + fmt(r01) + "," + fmt(r12);
                  return res[1] < 1e-2 && r01 > 5.0 && r01 < 20.0 && r12 > 5.0 && r12 < 20.0 &&
                         lap[0] > lap[1] && lap[1] > lap[2];
              });
}

// ---- transversal ----

void suite_transversal(std::vector<CriterionResult>& out) {
    TrigPoly g_sin;
    g_sin.sin_coeffs = {1.0};

    criterion(out, "6a", "warped torus D_L: every reported eigenvalue within 1e-6 of an integer",
              [&](std::string& detail) {
                  const auto rep = transversal::warped_torus_dl(g_sin, 256);
                  double worst = 0.0;
                  for (double ev : rep.eigenvalues)
                      worst = std::max(worst, std::abs(ev - std::round(ev)));
                  detail = std::to_string(rep.total_count()) + " eigenvalues, max gap to Z " +
                           fmt(worst) + " (tol 1e-6)";
                  return worst < 1e-6 && rep.total_count() >= 100;
              });

    criterion(out, "6b", "warped torus D_Q: x-mode n spectrum lies in n.[1/e, e]",
              [&](std::string& detail) {
                  const double lo = std::exp(-1.0), hi = std::exp(1.0);
                  double worst = 0.0;
                  for (int n : {1, 2, 3, -1, -2, -3}) {
                      const auto rep = transversal::warped_torus_dq(g_sin, n, 256);
                      for (double ev : rep.eigenvalues) {
                          const double a = std::abs(ev) / std::abs(n);
                          worst = std::max({worst, lo - a, a - hi});
                      }
                  }
                  detail = "max band excursion " + fmt(std::max(0.0, worst)) + " (tol 1e-9)";
                  return worst < 1e-9;
              });

    criterion(out, "6c", "warped torus mean curvatures: H^Q = -g'(y) d_y, H^L = 0",
              [&](std::string& detail) {
                  const auto frame = transversal::warped_torus_frame(g_sin);
                  std::vector<Eigen::VectorXd> pts;
                  for (double y : {0.0, 0.7, 1.9, 3.1, 4.4, 5.8}) {
                      Eigen::VectorXd p(2);
                      p << 0.3, y;
                      pts.push_back(p);
                  }
                  const auto hq = transversal::mean_curvature(frame,
                                                              transversal::MeanCurvatureKind::OfQ, pts);
                  const auto hl = transversal::mean_curvature(frame,
                                                              transversal::MeanCurvatureKind::OfL, pts);
                  double worst_q = 0.0, worst_l = 0.0;
                  for (size_t i = 0; i < pts.size(); ++i) {
                      Eigen::VectorXd expect(2);
                      expect << 0.0, -std::cos(pts[i][1]);
                      worst_q = std::max(worst_q, (hq.values[i] - expect).norm());
                      worst_l = std::max(worst_l, hl.values[i].norm());
                  }
                  detail = "H^Q gap " + fmt(worst_q) + " (tol 1e-4), |H^L| " + fmt(worst_l) +
                           " (tol 1e-6)";
                  return worst_q < 1e-4 && worst_l < 1e-6;
              });
}

// ---- cohomology ----

void suite_cohomology(std::vector<CriterionResult>& out) {
    const double lambda = (3.0 + std::sqrt(5.0)) / 2.0;

    criterion(out, "7", "Carriere model: twisted betti (0,0,0), untwisted (1,1,0), not taut",
              [&](std::string& detail) {
                  const auto model = cohomology::carriere_model(lambda, 32);
                  const auto tw = cohomology::cohomology_dims(model, true);
                  const auto un = cohomology::cohomology_dims(model, false);
                  const bool taut = cohomology::is_taut(model);
                  std::ostringstream os;
                  os << "twisted (" << tw.betti[0] << "," << tw.betti[1] << "," << tw.betti[2]
                     << "), untwisted (" << un.betti[0] << "," << un.betti[1] << "," << un.betti[2]
                     << "), taut=" << (taut ? "yes" : "no");
                  detail = os.str();
                  return tw.betti == std::vector<int>{0, 0, 0} &&
                         un.betti == std::vector<int>{1, 1, 0} && !taut;
              });

    criterion(out, "8", "conformal shift h=0.3 sin(2 pi t): betti stable, residual strictly decreasing",
              [&](std::string& detail) {
                  TrigPoly h;
                  h.omega = kTwoPi;
                  h.sin_coeffs = {0.3};
                  double residuals[3];
                  int i = 0;
                  for (int N : {16, 32, 64}) {
                      const auto model = cohomology::carriere_model(lambda, N);
                      const auto shift = cohomology::conformal_shift(model, h);
                      const auto tw = cohomology::cohomology_dims(shift.shifted, true);
                      const auto un = cohomology::cohomology_dims(shift.shifted, false);
                      if (tw.betti != std::vector<int>{0, 0, 0} ||
                          un.betti != std::vector<int>{1, 1, 0}) {
                          detail = "betti changed at N=" + std::to_string(N);
                          return false;
                      }
                      residuals[i++] = shift.residual;
                  }
                  detail = "residuals " + fmt(residuals[0]) + " > " + fmt(residuals[1]) + " > " +
                           fmt(residuals[2]);
                  return residuals[0] > residuals[1] && residuals[1] > residuals[2];
              });

    criterion(out, "12b", "dtilde^2 = 0 exactly for every built complex",
              [&](std::string& detail) {
                  double worst = 0.0;
                  std::vector<cohomology::TwistedComplex> models;
                  models.push_back(cohomology::carriere_model(lambda, 32));
                  models.push_back(cohomology::suspension_model(8));
                  for (int q : {1, 2, 3})
                      models.push_back(cohomology::torus_invariant_model(q, 8));
                  for (const auto& c : models) {
                      const auto dt = cohomology::twisted_differential(c, true);
                      for (size_t k = 0; k + 1 < dt.size(); ++k) {
                          const Eigen::MatrixXcd prod = dt[k + 1] * dt[k];
                          if (prod.size() > 0)
                              worst = std::max(worst, prod.cwiseAbs().maxCoeff());
                      }
                  }
                  detail = "max |dtilde^2| = " + fmt(worst) + " (tol: exact zero)";
                  return worst == 0.0;
              });

    criterion(out, "12c", "odd-codimension oriented models have twisted Euler characteristic 0",
              [&](std::string& detail) {
                  for (int q : {1, 3, 5}) {
                      const auto rep = cohomology::cohomology_dims(
                          cohomology::torus_invariant_model(q, 6), true);
                      if (rep.euler != 0) {
                          detail = "chi = " + std::to_string(rep.euler) + " at q=" + std::to_string(q);
                          return false;
                      }
                  }
                  detail = "chi = 0 for q in {1,3,5}";
                  return true;
              });
}

// ---- euler ----

void suite_euler(std::vector<CriterionResult>& out, const std::string& data_dir) {
    criterion(out, "9", "Z4 on T^2: Lefschetz oracle and strata dataset both give (2,-1,0,-1)",
              [&](std::string& detail) {
                  const auto group = euler::FiniteGroup::cyclic(4);
                  Eigen::MatrixXi rot(2, 2);
                  rot << 0, -1, 1, 0;
                  const auto action = euler::make_torus_action(group, {rot});
                  const auto chars = euler::irreducible_characters(group);
                  const long long expected[4] = {2, -1, 0, -1};
                  const std::string labels[4] = {"1", "rho1", "rho2", "rho3"};
                  const auto records = workbench::parse_strata_dataset(
                      workbench::read_text_file(data_dir + "/z4_torus.json"));
                  for (int j = 0; j < 4; ++j) {
                      const long long lef =
                          euler::lefschetz_euler(action, euler::find_character(chars, labels[j]));
                      const long long strat = euler::strata_euler(records, labels[j]);
                      if (lef != expected[j] || strat != expected[j]) {
                          detail = "mismatch at " + labels[j] + ": lefschetz " + std::to_string(lef) +
                                   ", strata " + std::to_string(strat);
                          return false;
                      }
                  }
                  detail = "both routes give (2,-1,0,-1) exactly";
                  return true;
              });

    criterion(out, "10", "O(n) on S^n and Z2-antipodal datasets reproduce the exercise patterns",
              [&](std::string& detail) {
                  for (int n = 2; n <= 5; ++n) {
                      const auto on_records = workbench::parse_strata_dataset(
                          workbench::read_text_file(data_dir + "/on_sphere_s" + std::to_string(n) +
                                                    ".json"));
                      const long long chi1 = euler::strata_euler(on_records, "1");
                      const long long chixi = euler::strata_euler(on_records, "xi");
                      if (chi1 != 1 || chixi != ((n % 2 == 0) ? 1 : -1)) {
                          detail = "O(n)/S^n failed at n=" + std::to_string(n);
                          return false;
                      }
                      const auto anti_records = workbench::parse_strata_dataset(
                          workbench::read_text_file(data_dir + "/z2_antipodal_s" +
                                                    std::to_string(n) + ".json"));
                      const long long a1 = euler::strata_euler(anti_records, "1");
                      const long long axi = euler::strata_euler(anti_records, "xi");
                      const long long expect = (n % 2 == 0) ? 1 : 0;
                      if (a1 != expect || axi != expect) {
                          detail = "antipodal failed at n=" + std::to_string(n);
                          return false;
                      }
                  }
                  detail = "chi^1 = 1, chi^xi = (-1)^n; antipodal 0/1 pattern, all exact";
                  return true;
              });

    criterion(out, "11", "basic Gauss-Bonnet datasets: rotation 2, Carriere 0, Klein 2, codim-3 0",
              [&](std::string& detail) {
                  const std::pair<std::string, long long> cases[] = {
                      {"rotation_suspension.json", 2},
                      {"carriere_flow.json", 0},
                      {"klein_suspension.json", 2},
                      {"codim3_suspension.json", 0},
                  };
                  std::ostringstream os;
                  for (const auto& [file, expect] : cases) {
                      const auto records = workbench::parse_foliation_dataset(
                          workbench::read_text_file(data_dir + "/" + file));
                      const long long chi = euler::basic_gauss_bonnet(records);
                      os << file << "=" << chi << " ";
                      if (chi != expect) {
                          detail = os.str() + "(expected " + std::to_string(expect) + ")";
                          return false;
                      }
                  }
                  detail = os.str() + "all exact";
                  return true;
              });
}

} // namespace

std::string SuiteResult::table() const {
    std::ostringstream os;
    for (const auto& r : results)
        os << (r.pass ? "[PASS] " : "[FAIL] ") << r.id << " " << r.name
           << (r.detail.empty() ? "" : " -- " + r.detail) << "\n";
    os << (all_pass() ? "ALL CRITERIA PASSED" : "CRITERIA FAILED") << " (suite " << suite << ", "
       << results.size() << " checks, " << fmt(seconds) << " s)\n";
    return os.str();
}

SuiteResult run_suite(const std::string& suite, const std::string& data_dir) {
    SuiteResult res;
    res.suite = suite;
    const auto start = std::chrono::steady_clock::now();
    bool known = false;
    if (suite == "clifford" || suite == "all") {
        suite_clifford(res.results);
        known = true;
    }
    if (suite == "spectra" || suite == "all") {
        suite_spectra(res.results);
        known = true;
    }
    if (suite == "transversal" || suite == "all") {
        suite_transversal(res.results);
        known = true;
    }
    if (suite == "cohomology" || suite == "all") {
        suite_cohomology(res.results);
        known = true;
    }
    if (suite == "euler" || suite == "all") {
        suite_euler(res.results, data_dir);
        known = true;
    }
    if (!known)
        throw std::invalid_argument("unknown acceptance suite '" + suite + "'");
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (suite == "all") {
        CriterionResult timing;
        timing.id = "13";
        timing.name = "full acceptance suite completes in under 60 seconds";
        timing.pass = res.seconds < 60.0;
        timing.detail = fmt(res.seconds) + " s (tol 60 s)";
        res.results.push_back(timing);
    }
    return res;
}

} // namespace tdo::acceptance
