// Prints one PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "simdeg/experiments.hpp"
#include "simdeg/factorization.hpp"
#include "simdeg/freealg.hpp"
#include "simdeg/groups.hpp"
#include "simdeg/matrix.hpp"
#include "simdeg/opspace.hpp"
#include "simdeg/sdp.hpp"
#include "simdeg/similarity.hpp"

using namespace simdeg;

namespace {

// Collects failures with enough context to reproduce them.
struct Check {
  int failures = 0;
  double worst = 0.0;  // criterion-specific headline quantity
  std::ostringstream first;

  void expect(bool ok, const std::string& what) {
    if (ok) return;
    if (failures++ == 0) first << what;
  }
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

CMatrix random_hermitian(int n, Rng& rng) {
  return hermitian_part(random_gaussian(static_cast<std::size_t>(n), static_cast<std::size_t>(n), rng));
}

double log_uniform(double lo, double hi, Rng& rng) {
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  return std::exp(u(rng));
}

// max_g ‖(S⁻¹π(g)S)*(S⁻¹π(g)S) − I‖
double unitarity_defect(const GroupRep& pi, const CMatrix& s) {
  const CMatrix sinv = s.inverse();
  double worst = 0.0;
  for (const CMatrix& p : pi.images()) {
    const CMatrix v = sinv * p * s;
    worst = std::max(worst, op_norm(v.adjoint() * v - identity(static_cast<std::size_t>(v.rows()))));
  }
  return worst;
}

double max_abs(const CMatrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

GroupFunction random_function(const GroupPtr& g, Rng& rng) {
  return {g, random_gaussian(static_cast<std::size_t>(g->order()), 1, rng).col(0)};
}

GroupAlgElement random_element(const GroupPtr& g, int k, Rng& rng) {
  std::vector<CMatrix> coeffs;
  for (int t = 0; t < g->order(); ++t)
    coeffs.push_back(random_gaussian(static_cast<std::size_t>(k), static_cast<std::size_t>(k), rng));
  return GroupAlgElement(g, std::move(coeffs));
}

// Σ_t x(t) ⊗ λ(t) written out entry by entry.
CMatrix regular_ambient(const GroupAlgElement& x) {
  const GroupPtr& g = x.group();
  const int m = g->order(), n = x.block();
  CMatrix out = CMatrix::Zero(n * m, n * m);
  for (int t = 0; t < m; ++t)
    for (int s = 0; s < m; ++s)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out(i * m + g->mul(t, s), j * m + s) += x[t](i, j);
  return out;
}

// ---------------------------------------------------------------------------

Check dixmier_bound() {
  Check c;
  Rng rng(101);
  const std::vector<std::string> specs = {"cyclic:2",    "cyclic:7",    "cyclic:24", "dihedral:3",
                                          "dihedral:6",  "dihedral:12", "sym:3",     "sym:4",
                                          "prod:cyclic:2,cyclic:2", "prod:cyclic:3,cyclic:4,cyclic:2"};
  for (int trial = 0; trial < 200; ++trial) {
    const std::string& spec = specs[static_cast<std::size_t>(trial) % specs.size()];
    const GroupPtr g = make_group(spec);
    const GroupRep rho = random_unitary_rep(g, 4, rng);
    const double cond0 = log_uniform(1.0, 10.0, rng);
    const GroupRep pi = ub_rep_twist(rho, random_with_condition(static_cast<std::size_t>(rho.dim()), cond0, rng));
    const DixmierResult d = dixmier_unitarize(pi);
    const double defect = unitarity_defect(pi, d.s.matrix());
    const double sup2 = pi.sup_norm() * pi.sup_norm();
    c.worst = std::max(c.worst, d.cond / sup2);
    c.expect(defect <= 1e-8, spec + ": unitarity defect " + fmt(defect));
    c.expect(d.cond <= sup2 * (1 + 1e-6), spec + ": cond " + fmt(d.cond) + " > |pi|^2 " + fmt(sup2));
  }
  return c;
}

Check golden_instance() {
  Check c;
  CMatrix dm = CMatrix::Zero(2, 2);
  dm(0, 0) = 1.0;
  dm(1, 1) = -1.0;
  CMatrix s = identity(2);
  s(0, 1) = 0.5;
  const GroupRep pi = ub_rep_twist(GroupRep(cyclic_group(2), {identity(2), dm}), s);

  // Invariant metrics are S*·diag(1, t)·S; the unitarizer P^{-1/2} has cond √cond(P).
  auto cond_at = [&](double t) {
    CMatrix q = CMatrix::Zero(2, 2);
    q(0, 0) = 1.0;
    q(1, 1) = t;
    return std::sqrt(condition_number(s.adjoint() * q * s));
  };
  double lo = 1e-3, hi = 1e3, best_t = 1.0, best = 1e300;
  for (int i = 0; i <= 20000; ++i) {
    const double t = std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * i / 20000.0);
    if (cond_at(t) < best) best = cond_at(t), best_t = t;
  }
  lo = best_t / 1.01, hi = best_t * 1.01;
  for (int it = 0; it < 200; ++it) {
    const double a = lo + (hi - lo) / 3, b = hi - (hi - lo) / 3;
    if (cond_at(a) < cond_at(b))
      hi = b;
    else
      lo = a;
  }
  const double oracle = cond_at(0.5 * (lo + hi));
  const double golden = std::sqrt((3.0 + std::sqrt(5.0)) / 2.0);

  const SimMinResult sm = sim_min(pi);
  const DixmierResult d = dixmier_unitarize(pi);
  const double sup2 = pi.sup_norm() * pi.sup_norm();
  c.worst = sm.value;
  c.expect(std::abs(oracle - golden) <= 1e-6, "oracle " + fmt(oracle));
  c.expect(std::abs(sm.value - golden) <= 1e-4 && std::abs(sm.value - oracle) <= 1e-4, "sim_min " + fmt(sm.value));
  c.expect(std::abs(d.cond - sm.value) <= 1e-4, "Dixmier cond " + fmt(d.cond));
  c.expect(std::abs(sup2 - golden * golden) <= 1e-4, "|pi|^2 " + fmt(sup2));
  return c;
}

Check amenable_isometry() {
  Check c;
  Rng rng(103);
  std::vector<std::string> specs;
  for (int m = 2; m <= 12; ++m) specs.push_back("cyclic:" + std::to_string(m));
  specs.push_back("prod:cyclic:2,cyclic:2");
  specs.push_back("sym:3");
  for (const std::string& spec : specs) {
    const GroupPtr g = make_group(spec);
    for (int trial = 0; trial < 50; ++trial) {
      const GroupFunction f = random_function(g, rng);
      const double b = bg_norm(f);
      const double m0 = herz_schur_norm(f);
      c.worst = std::max(c.worst, std::abs(m0 - b) / b);
      c.expect(std::abs(m0 - b) <= 1e-5 * b, spec + ": M0 " + fmt(m0) + " vs B " + fmt(b));
      if (g->is_abelian()) {
        const double l1 = bg_norm_fourier_abelian(f);
        c.expect(std::abs(b - l1) <= 1e-5 * l1 && std::abs(m0 - l1) <= 1e-5 * l1, spec + ": Fourier l1 " + fmt(l1));
      }
    }
  }
  return c;
}

Check weyl_twirl_check() {
  Check c;
  Rng rng(104);
  for (int trial = 0; trial < 20; ++trial) {
    const auto n = static_cast<std::size_t>(1 + trial % 6);
    const CMatrix x = random_gaussian(n, n, rng);
    const FactorizationCertificate cert = weyl_twirl_certificate(x);
    const Verification v = verify_certificate(cert, x);
    const double xn = op_norm(x);
    c.worst = std::max(c.worst, v.residual);
    c.expect(cert.degree() == 2, "degree " + std::to_string(cert.degree()));
    c.expect(v.residual <= 1e-10, "n=" + std::to_string(n) + ": residual " + fmt(v.residual));
    c.expect(v.bound <= xn * (1 + 1e-10), "n=" + std::to_string(n) + ": bound " + fmt(v.bound) + " vs " + fmt(xn));
  }
  return c;
}

Check amenable_certificate_check() {
  Check c;
  Rng rng(105);
  for (const char* spec : {"cyclic:2", "cyclic:3", "cyclic:5", "cyclic:8", "dihedral:3", "dihedral:4",
                           "prod:cyclic:2,cyclic:2", "prod:cyclic:2,cyclic:4", "prod:cyclic:2,cyclic:2,cyclic:2"}) {
    const GroupPtr g = make_group(spec);
    for (int trial = 0; trial < 3; ++trial) {
      GroupAlgElement x = random_element(g, 2, rng);
      x = x * Complex(0.9 / cstar_norm(x), 0.0);
      const FactorizationCertificate cert = amenable_certificate(x);
      const Verification v = verify_certificate(cert, regular_ambient(x));
      // Default coefficient φ ≡ 1, so y = x.
      const double a2 = op_norm(cert.alpha[1]);
      c.worst = std::max(c.worst, v.residual);
      c.expect(v.residual <= 1e-10, std::string(spec) + ": residual " + fmt(v.residual));
      c.expect(v.bound < 1.0, std::string(spec) + ": bound " + fmt(v.bound));
      c.expect(std::abs(a2 - cstar_norm(x)) <= 1e-10, std::string(spec) + ": |A2| " + fmt(a2));
    }
  }
  return c;
}

CbMap elementary(const CMatrix& a, const CMatrix& b) {
  return CbMap::from_function(static_cast<int>(a.cols()), static_cast<int>(a.rows()),
                              [a, b](const CMatrix& x) { return CMatrix(a * x * b); });
}

CbMap random_map(int n, Rng& rng) {
  const auto sz = static_cast<std::size_t>(n);
  const CMatrix a = random_gaussian(sz, sz, rng), b = random_gaussian(sz, sz, rng);
  const CMatrix p = random_gaussian(sz, sz, rng), q = random_gaussian(sz, sz, rng);
  return CbMap::from_function(n, n, [=](const CMatrix& x) { return CMatrix(a * x * b + p * x.transpose() * q); });
}

Check cb_oracles() {
  Check c;
  Rng rng(106);
  for (int n : {2, 3}) {
    const double id = cb_norm(CbMap::from_function(n, n, [](const CMatrix& x) { return x; }));
    c.expect(std::abs(id - 1.0) <= 1e-7, "identity " + fmt(id));
  }
  for (int trial = 0; trial < 5; ++trial) {
    const auto n = static_cast<std::size_t>(2 + trial % 2);
    const CMatrix s = random_with_condition(n, 1.0 + 2.0 * trial, rng);
    const double expect = op_norm(s) * op_norm(s.inverse());
    const double got = cb_norm(elementary(s.inverse(), s));
    c.worst = std::max(c.worst, std::abs(got - expect));
    c.expect(std::abs(got - expect) <= 1e-5, "conjugation " + fmt(got) + " vs " + fmt(expect));
  }
  for (int n = 1; n <= 4; ++n) {
    const double t = cb_norm(CbMap::from_function(n, n, [](const CMatrix& x) { return CMatrix(x.transpose()); }));
    c.expect(std::abs(t - n) <= 1e-3, "transpose n=" + std::to_string(n) + ": " + fmt(t));
  }
  for (int trial = 0; trial < 4; ++trial) {
    const CbMap phi = random_map(2, rng);
    const double cb = cb_norm(phi);
    for (int level = 1; level <= 3; ++level) {
      const double est = cb_norm_level(phi, level, 3, static_cast<std::uint64_t>(trial));
      c.expect(est <= cb + 1e-5, "level " + std::to_string(level) + " estimate " + fmt(est) + " > " + fmt(cb));
    }
  }
  for (int trial = 0; trial < 2; ++trial) {
    const CbMap phi = random_map(2, rng);
    const CbMap psi = elementary(random_gaussian(2, 2, rng), random_gaussian(2, 2, rng));
    const double a = cb_norm(phi), b = cb_norm(psi), ab = cb_norm(phi.tensor(psi));
    c.expect(std::abs(ab - a * b) <= 1e-3 * a * b, "tensor " + fmt(ab) + " vs " + fmt(a * b));
  }
  return c;
}

Check interpolation() {
  Check c;
  Rng rng(107);
  const std::vector<std::string> specs = {"cyclic:3", "cyclic:6", "dihedral:3", "dihedral:5", "sym:3",
                                          "prod:cyclic:2,cyclic:2"};
  const double thetas[] = {0.25, 0.5, 0.75};
  for (int trial = 0; trial < 100; ++trial) {
    const GroupPtr g = make_group(specs[static_cast<std::size_t>(trial) % specs.size()]);
    const GroupRep rho = random_unitary_rep(g, 3, rng);
    const GroupRep pi = ub_rep_twist(rho, random_with_condition(static_cast<std::size_t>(rho.dim()),
                                                                log_uniform(1.0, 10.0, rng), rng));
    const InterpolationResult r = interpolation_step(pi, dixmier_unitarize(pi).s, thetas[trial % 3]);
    c.worst = std::max(c.worst, r.generator_norm / r.bound);
    c.expect(r.holds(), "generator norm " + fmt(r.generator_norm) + " > c^theta " + fmt(r.bound));
  }
  return c;
}

Check tensor_power() {
  Check c;
  for (const char* spec : {"cyclic:2", "cyclic:3", "cyclic:4"}) {
    ExperimentConfig cfg;
    cfg.scenario = "tensor-power";
    cfg.group = spec;
    cfg.grid = {1, 2, 3};
    cfg.samples = 3;
    cfg.seed = 108;
    for (const ResultRecord& r : run_scenario(cfg)) {
      c.expect(r.error.empty(), std::string(spec) + ": " + r.error);
      for (const Assertion& a : r.assertions)
        if (a.hard) c.expect(a.pass, std::string(spec) + " N=" + std::to_string(r.point + 1) + ": " + a.name);
    }
  }
  return c;
}

Check hilbert_space_estimates() {
  Check c;
  Rng rng(109);
  std::uniform_int_distribution<int> pick_n(1, 6), pick_dim(1, 4);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = pick_n(rng);
    const auto p = static_cast<std::size_t>(pick_dim(rng));
    const bool column = trial % 2 == 0;
    std::vector<CMatrix> x;
    double sq = 0.0;
    for (int i = 0; i < n; ++i) {
      x.push_back(column ? random_gaussian(p, 1, rng) : random_gaussian(1, p, rng));
      sq += std::pow(op_norm(x.back()), 2);
    }
    const int level = 1 + trial % 12;
    const double est = max_l2_pairing_estimate(x, level, 2, static_cast<std::uint64_t>(trial));
    c.worst = std::max(c.worst, est - std::sqrt(sq));
    c.expect(est <= std::sqrt(sq) + 1e-8, "estimate " + fmt(est) + " > " + fmt(std::sqrt(sq)));
  }
  for (int trial = 0; trial < 30; ++trial) {
    const auto m = static_cast<std::size_t>(1 + trial % 4);
    const int n = 1 + trial % 6;
    std::vector<CMatrix> xi;
    for (int i = 0; i < n; ++i) xi.push_back(random_gaussian(m, m, rng));
    const ConstantFourCheck f = constant_four_check(xi, static_cast<std::uint64_t>(trial));
    c.expect(f.holds(), "constant 4: lhs " + fmt(f.lhs) + " upper " + fmt(f.upper));
    c.expect(f.lower <= f.upper * (1 + 1e-9), "lower " + fmt(f.lower) + " > upper " + fmt(f.upper));
  }
  return c;
}

Check coefficient_factorizations() {
  Check c;
  Rng rng(110);
  for (const char* spec : {"cyclic:5", "cyclic:12", "sym:3", "dihedral:6", "prod:cyclic:2,cyclic:6"}) {
    const GroupPtr g = make_group(spec);
    const auto order = static_cast<std::size_t>(g->order());
    const GroupRep lambda = regular_rep(g);
    for (int n = 1; n <= 4; ++n) {
      const CVector xi = random_gaussian(order, 1, rng).col(0), eta = random_gaussian(order, 1, rng).col(0);
      const CoefficientFactorization f = coefficient_factorization(g, xi, eta, n, static_cast<std::uint64_t>(n));
      const long long tuples = static_cast<long long>(std::pow(order, n));
      const std::string tag = std::string(spec) + " N=" + std::to_string(n);
      c.worst = std::max(c.worst, f.max_error);
      c.expect(f.max_error <= 1e-10, tag + ": error " + fmt(f.max_error));
      c.expect(f.max_factor_norm <= 1.0 + 1e-12, tag + ": factor sup " + fmt(f.max_factor_norm));
      c.expect(std::abs(f.k - xi.norm() * eta.norm()) <= 1e-12 * f.k, tag + ": K " + fmt(f.k));
      c.expect(f.checked >= std::min<long long>(tuples, 10000), tag + ": checked " + std::to_string(f.checked));
      // Spot-check against the coefficient computed directly from λ.
      const GroupFunction phi = coefficient_fn(lambda, xi, eta);
      std::uniform_int_distribution<int> pick(0, g->order() - 1);
      for (int s = 0; s < 50; ++s) {
        CMatrix prod = CMatrix::Identity(1, 1);
        int t = g->identity();
        for (int i = 0; i < n; ++i) {
          const int ti = pick(rng);
          t = g->mul(t, ti);
          prod = prod * f.factors[static_cast<std::size_t>(i)][static_cast<std::size_t>(ti)];
        }
        const double err = std::abs(f.k * prod(0, 0) - phi.values(t));
        c.expect(err <= 1e-10, tag + ": direct check error " + fmt(err));
      }
    }
  }
  return c;
}

Check free_algebra() {
  Check c;
  Rng rng(111);
  for (int trial = 0; trial < 100; ++trial) {
    const int k = 1 + trial % 3, degree = 1 + trial % 4;
    const FreePoly p = random_free_poly(k, degree, 8, 1, rng);
    FreePoly sum(k, 1);
    for (int j = 0; j <= p.degree(); ++j) {
      const FreePoly q = qj_project(p, j);
      c.expect(qj_project(q, j).terms() == q.terms(), "Q_j not idempotent");
      for (int i = 0; i <= p.degree(); ++i)
        if (i != j) c.expect(qj_project(q, i).terms().empty(), "Q_i Q_j != 0");
      sum = sum + q;
    }
    c.expect((sum - p).terms().empty(), "sum of Q_j != identity");

    std::uniform_real_distribution<double> u(-0.7, 0.7);
    const Complex z(u(rng), u(rng)), w(u(rng), u(rng));
    const FreePoly lhs = omega_scale(omega_scale(p, w), z), rhs = omega_scale(p, z * w);
    for (const auto& [word, coeff] : rhs.terms()) {
      const double err = max_abs(lhs.coeff(word) - coeff);
      c.expect(err <= 1e-14, "omega composition error " + fmt(err));
    }

    OaEstimateOptions o;
    o.trials = 6;
    o.seed = static_cast<std::uint64_t>(trial);
    o.sampling = trial % 2 ? LetterSampling::Mixed : LetterSampling::Unitary;
    o.ascent_restarts = 0;
    const double full = oa_norm_estimate(p, o).value;
    for (int j = 0; j <= p.degree(); ++j) {
      const double part = oa_norm_estimate(qj_project(p, j), o).value;
      if (full > 0) c.worst = std::max(c.worst, part / full);
      c.expect(part <= full + 1e-6, "Q_" + std::to_string(j) + " estimate " + fmt(part) + " > " + fmt(full));
    }
  }
  return c;
}

Check aconv_diameter() {
  Check c;
  for (int m = 2; m <= 9; ++m) {
    const GroupPtr g = cyclic_group(m);
    const FiniteAlgebra a = l1_group_algebra(g);
    const std::optional<int> diam = word_diameter(*g, {g->identity(), 1});
    c.expect(diam && *diam == m - 1, "diameter of Z_" + std::to_string(m));
    if (!diam) continue;
    const std::vector<CVector> beta = {a.vertices[static_cast<std::size_t>(g->identity())], a.vertices[1]};
    for (int d = 1; d <= m; ++d) {
      const AconvResult r = aconv_gauge(a, beta, d, 4, static_cast<std::uint64_t>(m * 16 + d));
      const std::string tag = "Z_" + std::to_string(m) + " d=" + std::to_string(d);
      c.expect(std::isfinite(r.value) == (d >= *diam), tag + ": gauge " + fmt(r.value));
      if (d == *diam) {
        c.worst = std::max(c.worst, std::abs(r.value - 1.0));
        c.expect(std::abs(r.value - 1.0) <= 1e-6, tag + ": gauge " + fmt(r.value) + " != 1");
      }
    }
  }
  return c;
}

// b = A(X0), C = Z0 + Σ y0_i A_i with X0, Z0 ≻ 0.
SdpProblem random_feasible(const std::vector<int>& dims, int m, Rng& rng) {
  SdpProblem p;
  for (int d : dims) p.add_block(d);
  std::vector<CMatrix> x0, c;
  for (int d : dims) {
    x0.push_back(random_pd(static_cast<std::size_t>(d), 10.0, rng));
    c.push_back(random_pd(static_cast<std::size_t>(d), 10.0, rng));
  }
  std::normal_distribution<double> normal;
  for (int i = 0; i < m; ++i) {
    BlockSparse a;
    double b = 0.0;
    const double y0 = normal(rng);
    for (std::size_t bl = 0; bl < dims.size(); ++bl) {
      const CMatrix h = random_hermitian(dims[bl], rng);
      a.add_dense(static_cast<int>(bl), h);
      b += (h * x0[bl]).trace().real();
      c[bl] += y0 * h;
    }
    p.add_constraint(a, b);
  }
  for (std::size_t bl = 0; bl < dims.size(); ++bl) p.objective.add_dense(static_cast<int>(bl), hermitian_part(c[bl]));
  return p;
}

Check sdp_engine() {
  Check c;
  Rng rng(113);
  for (int trial = 0; trial < 50; ++trial) {
    const std::vector<int> dims = {2 + (trial * 7) % 29, 1 + trial % 5, 1};
    const SdpProblem p = random_feasible(dims, 3 + trial % 25, rng);
    const SdpSolution s = sdp_solve(p);
    const KktResiduals r = kkt_residuals(p, s);
    const double kkt = std::max({r.primal, r.dual, r.complementarity});
    c.worst = std::max(c.worst, kkt);
    const std::string tag = "problem " + std::to_string(trial);
    c.expect(s.optimal(), tag + ": " + s.message);
    c.expect(s.gap <= 1e-7, tag + ": gap " + fmt(s.gap));
    c.expect(kkt <= 1e-6, tag + ": KKT residual " + fmt(kkt));
  }
  for (int trial = 0; trial < 100; ++trial) {
    const auto rows = static_cast<std::size_t>(1 + trial % 6), cols = static_cast<std::size_t>(1 + (trial / 6) % 6);
    const CMatrix m = random_gaussian(rows, cols, rng);
    // min t  s.t.  [[tI, M], [M*, tI]] ⪰ 0
    LmiProblem lmi;
    const int r = static_cast<int>(rows), q = static_cast<int>(cols);
    const int blk = lmi.add_block(r + q);
    const int t = lmi.add_variable(-1.0);
    for (int i = 0; i < r + q; ++i) lmi.add_term(t, blk, i, i, 1.0);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < q; ++j) lmi.add_constant(blk, i, r + j, m(i, j));
    const LmiSolution s = solve_lmi(lmi);
    const double err = std::abs(s.values(t) - op_norm(m));
    c.expect(s.optimal() && err <= 1e-7, "operator norm SDP error " + fmt(err));
  }
  return c;
}

struct Criterion {
  const char* name;
  std::function<Check()> run;
  double time_limit;  // seconds; 0 means none
  const char* headline;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"dixmier-bound", dixmier_bound, 60, "max cond/|pi|^2"},
      {"golden-ratio-instance", golden_instance, 0, "sim_min"},
      {"amenable-isometry", amenable_isometry, 120, "max |M0-B|/B"},
      {"weyl-twirl", weyl_twirl_check, 5, "max residual"},
      {"amenable-certificate", amenable_certificate_check, 30, "max residual"},
      {"cb-norm-oracles", cb_oracles, 120, "max conjugation error"},
      {"interpolation", interpolation, 0, "max ratio to c^theta"},
      {"tensor-power", tensor_power, 0, ""},
      {"hilbert-space-estimates", hilbert_space_estimates, 0, "max excess over l2 sum"},
      {"coefficient-factorization", coefficient_factorizations, 0, "max error"},
      {"free-algebra", free_algebra, 0, "max estimate ratio Q_j P / P"},
      {"aconv-gauge-diameter", aconv_diameter, 0, "max |gauge-1|"},
      {"sdp-engine", sdp_engine, 0, "max KKT residual"},
  };
  int failed = 0;
  for (const Criterion& cr : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Check c;
    try {
      c = cr.run();
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (cr.time_limit > 0) c.expect(secs <= cr.time_limit, "runtime " + fmt(secs) + "s over " + fmt(cr.time_limit) + "s");
    const bool ok = c.failures == 0;
    failed += !ok;
    std::printf("%s %-26s %7.2fs", ok ? "PASS" : "FAIL", cr.name, secs);
    if (*cr.headline) std::printf("  %s %s", cr.headline, fmt(c.worst).c_str());
    if (!ok) std::printf("  [%d failures; first: %s]", c.failures, c.first.str().c_str());
    std::printf("\n");
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
