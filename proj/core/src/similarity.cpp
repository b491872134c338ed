#include "simdeg/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "simdeg/io.hpp"
#include "simdeg/sdp.hpp"

namespace simdeg {

DixmierResult dixmier_unitarize(const GroupRep& pi) {
  const int d = pi.dim();
  CMatrix p = CMatrix::Zero(d, d);
  for (const auto& x : pi.images()) p += x.adjoint() * x;
  p /= static_cast<double>(pi.group()->order());
  const HermitianPD hp(hermitian_part(p), 1e-9);
  const HermitianPD s(hermitian_part(frac_power(hp, -0.5)), 1e-9);
  return {s, std::sqrt(hp.condition())};
}

const char* to_string(SimStatus s) { return s == SimStatus::Ok ? "ok" : "not-unitarizable"; }

namespace {

// HS-orthonormal basis of the Hermitian matrices in M_d.
std::vector<CMatrix> hermitian_basis(int d) {
  std::vector<CMatrix> out;
  const double r = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < d; ++i) {
    CMatrix e = CMatrix::Zero(d, d);
    e(i, i) = 1.0;
    out.push_back(e);
  }
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      CMatrix a = CMatrix::Zero(d, d), b = CMatrix::Zero(d, d);
      a(i, j) = a(j, i) = r;
      b(i, j) = Complex(0.0, -r);
      b(j, i) = Complex(0.0, r);
      out.push_back(a);
      out.push_back(b);
    }
  return out;
}

// Orthonormal basis of {P Hermitian : g*Pg = P for all generators}.
std::vector<CMatrix> invariant_metrics(const std::vector<CMatrix>& gens, int d) {
  const auto basis = hermitian_basis(d);
  if (gens.empty()) return basis;
  const Eigen::Index cols = static_cast<Eigen::Index>(basis.size());
  RMatrix a(static_cast<Eigen::Index>(2 * d * d * gens.size()), cols);
  for (Eigen::Index k = 0; k < cols; ++k) {
    Eigen::Index row = 0;
    for (const auto& g : gens) {
      const CMatrix r = g.adjoint() * basis[static_cast<std::size_t>(k)] * g - basis[static_cast<std::size_t>(k)];
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
          a(row++, k) = r(i, j).real();
          a(row++, k) = r(i, j).imag();
        }
    }
  }
  Eigen::JacobiSVD<RMatrix> svd(a, Eigen::ComputeFullV);
  const RVector& s = svd.singularValues();
  const double thresh = 1e-10 * std::max(1.0, s.size() ? s(0) : 0.0);
  std::vector<CMatrix> out;
  for (Eigen::Index k = 0; k < cols; ++k) {
    if (k < s.size() && s(k) > thresh) continue;
    CMatrix p = CMatrix::Zero(d, d);
    for (Eigen::Index j = 0; j < cols; ++j) p += svd.matrixV()(j, k) * basis[static_cast<std::size_t>(j)];
    out.push_back(p);
  }
  return out;
}

// Adds the block  sign·P(y) + shift·I + t_coeff·t·I  to the LMI.
void add_metric_block(LmiProblem& lmi, const std::vector<int>& yvars, const std::vector<CMatrix>& metrics, int d,
                      double sign, double shift, int tvar, double t_coeff) {
  const int blk = lmi.add_block(d);
  if (shift != 0.0)
    for (int i = 0; i < d; ++i) lmi.add_constant(blk, i, i, shift);
  for (std::size_t j = 0; j < metrics.size(); ++j) lmi.add_term_dense(yvars[j], blk, sign * metrics[j]);
  if (tvar >= 0)
    for (int i = 0; i < d; ++i) lmi.add_term(tvar, blk, i, i, t_coeff);
}

CMatrix metric_from(const std::vector<CMatrix>& metrics, const RVector& y, int d) {
  CMatrix p = CMatrix::Zero(d, d);
  for (std::size_t j = 0; j < metrics.size(); ++j) p += y(static_cast<Eigen::Index>(j)) * metrics[j];
  return hermitian_part(p);
}

struct MarginSolve {
  double t = 0.0;
  CMatrix p;
};

// max t s.t. P − (1 + t)I ⪰ 0, γI − P − tI ⪰ 0.
MarginSolve margin(const std::vector<CMatrix>& metrics, int d, double gamma) {
  LmiProblem lmi;
  std::vector<int> y;
  for (std::size_t j = 0; j < metrics.size(); ++j) y.push_back(lmi.add_variable(0.0));
  const int t = lmi.add_variable(1.0);
  add_metric_block(lmi, y, metrics, d, 1.0, -1.0, t, -1.0);
  add_metric_block(lmi, y, metrics, d, -1.0, gamma, t, -1.0);
  const LmiSolution s = solve_lmi(lmi);
  require_optimal(s.sdp, "sim_min feasibility");
  return {s.values(t), metric_from(metrics, s.values, d)};
}

}  // namespace

SimMinResult sim_min(const std::vector<CMatrix>& generators, double tol) {
  if (generators.empty()) throw std::invalid_argument("sim_min: no generators");
  const int d = static_cast<int>(generators[0].rows());
  for (const auto& g : generators)
    if (g.rows() != d || g.cols() != d || !all_finite(g))
      throw std::invalid_argument("sim_min: generators must be finite square matrices of a common size");
  if (!(tol > 0.0)) throw std::invalid_argument("sim_min: tol must be positive");

  SimMinResult r;
  const auto metrics = invariant_metrics(generators, d);
  r.invariant_dim = static_cast<int>(metrics.size());
  const double nan = std::numeric_limits<double>::quiet_NaN();
  if (metrics.empty()) {
    r.status = SimStatus::NotUnitarizable;
    r.value = r.bisection_value = r.direct_value = nan;
    return r;
  }

  // Largest λmin(P) over invariant P ⪯ I; zero iff no invariant metric is definite.
  LmiProblem probe;
  std::vector<int> y;
  for (std::size_t j = 0; j < metrics.size(); ++j) y.push_back(probe.add_variable(0.0));
  const int t = probe.add_variable(1.0);
  add_metric_block(probe, y, metrics, d, 1.0, 0.0, t, -1.0);
  add_metric_block(probe, y, metrics, d, -1.0, 1.0, -1, 0.0);
  const LmiSolution ps = solve_lmi(probe);
  require_optimal(ps.sdp, "sim_min definiteness probe");
  const double lam = ps.values(t);
  if (lam <= 1e-7) {
    r.status = SimStatus::NotUnitarizable;
    r.value = r.bisection_value = r.direct_value = nan;
    return r;
  }

  auto feasible = [&](double gamma) { return margin(metrics, d, gamma).t >= -1e-9 * std::max(1.0, gamma); };
  const double hi = (1.0 / lam) * (1.0 + 1e-6) + tol;
  const double gamma = quasiconvex_bisect(feasible, 1.0, hi, tol);
  r.bisection_value = std::sqrt(gamma);

  const MarginSolve m = margin(metrics, d, gamma);
  const HermitianPD p(m.p, 1e-9);
  r.witness = frac_power(p, -0.5);
  r.value = std::sqrt(p.condition());

  LmiProblem direct;
  std::vector<int> yd;
  for (std::size_t j = 0; j < metrics.size(); ++j) yd.push_back(direct.add_variable(0.0));
  const int g = direct.add_variable(-1.0);
  add_metric_block(direct, yd, metrics, d, 1.0, -1.0, -1, 0.0);
  add_metric_block(direct, yd, metrics, d, -1.0, 0.0, g, 1.0);
  const LmiSolution ds = solve_lmi(direct);
  require_optimal(ds.sdp, "sim_min direct");
  r.direct_value = std::sqrt(std::max(1.0, ds.values(g)));
  return r;
}

SimMinResult sim_min(const GroupRep& pi, double tol) {
  std::vector<CMatrix> gens;
  for (int s : pi.group()->generators()) gens.push_back(pi(s));
  if (gens.empty()) gens.push_back(pi(pi.group()->identity()));
  SimMinResult r = sim_min(gens, tol);
  if (r.status != SimStatus::Ok)
    throw std::logic_error("sim_min: a representation of a finite group must be unitarizable");
  const DixmierResult dx = dixmier_unitarize(pi);
  if (dx.cond < r.value) {
    r.value = dx.cond;
    r.witness = dx.s.matrix();
  }
  return r;
}

SimilarityReport similarity_report(const GroupRep& pi, double tol) {
  SimilarityReport rep;
  rep.group = pi.group()->name();
  rep.dim = pi.dim();
  rep.pi_sup = pi.sup_norm();
  rep.dixmier_cond = dixmier_unitarize(pi).cond;
  const SimMinResult s = sim_min(pi, tol);
  rep.sim_min = s.value;
  rep.witness = s.witness;
  return rep;
}

nlohmann::json to_json(const SimilarityReport& r) {
  return {{"group", r.group},         {"dim", r.dim},         {"pi_sup", r.pi_sup},
          {"dixmier_cond", r.dixmier_cond}, {"sim_min", r.sim_min}, {"witness", matrix_to_json(r.witness)}};
}

// ---------------------------------------------------------------------------

namespace {

void cross_check(HomCbResult& r, const char* who) {
  r.discrepancy = std::abs(r.cb_route - r.paulsen_route);
  if (r.discrepancy > 1e-3 * std::max(1.0, r.paulsen_route)) {
    std::ostringstream msg;
    msg << who << ": cb route " << r.cb_route << " and similarity route " << r.paulsen_route << " disagree";
    throw SolverError(msg.str(), SdpStatus::NumericalFailure);
  }
}

}  // namespace

HomCbResult hom_cb_norm_idempotents(const std::vector<CMatrix>& images, double tol) {
  if (images.empty()) throw std::invalid_argument("hom_cb_norm: no images");
  const Eigen::Index k = images[0].rows();
  double scale = 1.0;
  for (const auto& e : images) {
    if (e.rows() != k || e.cols() != k) throw std::invalid_argument("hom_cb_norm: images must share a square size");
    scale = std::max(scale, op_norm(e) * op_norm(e));
  }
  CMatrix sum = CMatrix::Zero(k, k);
  for (std::size_t i = 0; i < images.size(); ++i) {
    sum += images[i];
    for (std::size_t j = 0; j < images.size(); ++j) {
      const CMatrix expect = i == j ? images[i] : CMatrix::Zero(k, k);
      if ((images[i] * images[j] - expect).cwiseAbs().maxCoeff() > 1e-8 * scale)
        throw std::invalid_argument("hom_cb_norm: u(e_i)u(e_j) ≠ δ_ij u(e_i); u is not multiplicative");
    }
  }
  if ((sum - CMatrix::Identity(k, k)).cwiseAbs().maxCoeff() > 1e-8 * scale)
    throw std::invalid_argument("hom_cb_norm: Σ u(e_i) ≠ I; u is not unital");

  HomCbResult r;
  r.cb_route = cb_norm_commutative(images, tol);
  std::vector<CMatrix> involutions;
  for (const auto& e : images) involutions.push_back(CMatrix::Identity(k, k) - 2.0 * e);
  const SimMinResult s = sim_min(involutions, 1e-6);
  if (s.status != SimStatus::Ok) throw SolverError("hom_cb_norm: bounded homomorphism reported non-similar", SdpStatus::NumericalFailure);
  r.paulsen_route = s.value;
  r.cross_checked = true;
  cross_check(r, "hom_cb_norm");
  r.value = r.cb_route;
  return r;
}

CbMap rep_as_map(const GroupRep& pi) {
  const GroupRep lam = regular_rep(pi.group());
  return CbMap::from_generators(lam.images(), pi.images());
}

HomCbResult hom_cb_norm(const GroupRep& pi, double tol) {
  const FiniteGroup& g = *pi.group();
  if (g.is_abelian()) {
    const CMatrix chars = abelian_characters(g);
    std::vector<CMatrix> idem;
    for (int c = 0; c < g.order(); ++c) {
      CMatrix e = CMatrix::Zero(pi.dim(), pi.dim());
      for (int t = 0; t < g.order(); ++t) e += std::conj(chars(c, t)) * pi(t);
      e /= static_cast<double>(g.order());
      if (e.cwiseAbs().maxCoeff() > 1e-10) idem.push_back(e);
    }
    return hom_cb_norm_idempotents(idem, tol);
  }
  HomCbResult r;
  r.paulsen_route = sim_min(pi).value;
  if (g.order() * pi.dim() <= 24) {
    r.cb_route = cb_norm(rep_as_map(pi), tol);
    r.cross_checked = true;
    cross_check(r, "hom_cb_norm");
    r.value = r.cb_route;
  } else {
    r.value = r.paulsen_route;
  }
  return r;
}

// ---------------------------------------------------------------------------

InterpolationResult interpolation_step(const std::vector<CMatrix>& generators, const HermitianPD& s, double theta) {
  if (!(theta >= 0.0 && theta <= 1.0)) throw std::invalid_argument("interpolation_step: θ must lie in [0, 1]");
  const CMatrix sinv = frac_power(s, -1.0);
  const CMatrix left = frac_power(s, theta - 1.0), right = frac_power(s, 1.0 - theta);
  InterpolationResult r;
  for (const auto& u : generators) {
    if (u.rows() != static_cast<Eigen::Index>(s.dim()) || u.cols() != static_cast<Eigen::Index>(s.dim()))
      throw std::invalid_argument("interpolation_step: size mismatch between u and S");
    const double us = op_norm(sinv * u * s.matrix());
    if (us > 1.0 + 1e-10) {
      std::ostringstream msg;
      msg << "interpolation_step: S⁻¹u(g)S has norm " << us << " > 1";
      throw std::invalid_argument(msg.str());
    }
    r.c = std::max(r.c, op_norm(u));
    r.images.push_back(left * u * right);
    r.generator_norm = std::max(r.generator_norm, op_norm(r.images.back()));
  }
  r.bound = std::pow(r.c, theta);
  return r;
}

InterpolationResult interpolation_step(const GroupRep& pi, const HermitianPD& s, double theta) {
  std::vector<CMatrix> gens;
  for (int g : pi.group()->generators()) gens.push_back(pi(g));
  if (gens.empty()) gens.push_back(pi(pi.group()->identity()));
  InterpolationResult r = interpolation_step(gens, s, theta);
  const CMatrix left = frac_power(s, theta - 1.0), right = frac_power(s, 1.0 - theta);
  r.images.clear();
  for (const auto& x : pi.images()) r.images.push_back(left * x * right);
  return r;
}

DerivationReport derivation_gadget(const CbMap& pi, const HermitianPD& s, int restarts, std::uint64_t seed) {
  if (static_cast<int>(s.dim()) != pi.target_dim()) throw std::invalid_argument("derivation_gadget: S has the wrong size");
  require_multiplicative(pi);
  const CMatrix l = matrix_log(s);
  const CMatrix sinv = frac_power(s, -1.0);
  DerivationReport r;
  std::vector<CMatrix> conj;
  for (const auto& y : pi.outputs()) {
    r.images.push_back(l * y - y * l);
    conj.push_back(sinv * y * s.matrix());
  }
  const double lnorm = op_norm(l);
  if (lnorm == 0.0) {
    r.log_conj_cb = std::log(cb_norm(pi));
    return r;
  }
  const CbMap delta = CbMap::from_generators(pi.inputs(), r.images);
  r.norm_lower = map_norm_estimate(delta, restarts, seed);
  r.norm_upper = 2.0 * lnorm * cb_norm(pi);
  r.cb_norm = cb_norm(delta);
  r.log_conj_cb = std::log(cb_norm(CbMap::from_generators(pi.inputs(), conj)));
  return r;
}

// ---------------------------------------------------------------------------

std::vector<PhiSweepRow> phi_sweep(const GroupPtr& g, const std::vector<double>& cond_grid, int samples,
                                   std::uint64_t seed, int max_dim) {
  if (samples < 0) throw std::invalid_argument("phi_sweep: samples must be >= 0");
  std::vector<double> grid = cond_grid;
  for (double c : grid)
    if (!(c >= 1.0) || !std::isfinite(c)) throw std::invalid_argument("phi_sweep: condition numbers must be finite and >= 1");
  std::vector<PhiSweepRow> rows;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    PhiSweepRow row;
    row.cond = grid[i];
    row.samples = samples;
    Rng rng(derive_seed(seed, i));
    std::uniform_real_distribution<double> unif(0.0, std::log(grid[i]));
    for (int k = 0; k < samples; ++k) {
      const GroupRep rho = random_unitary_rep(g, max_dim, rng);
      const double c = std::exp(unif(rng));
      const GroupRep pi = ub_rep_twist(rho, random_with_condition(static_cast<std::size_t>(rho.dim()), c, rng));
      const double sup = pi.sup_norm();
      const double sim = sim_min(pi).value;
      row.max_sim = std::max(row.max_sim, sim);
      row.max_pi_sup = std::max(row.max_pi_sup, sup);
      row.max_dixmier = std::max(row.max_dixmier, dixmier_unitarize(pi).cond);
      if (sim > sup * sup * (1.0 + 1e-8)) row.bound_holds = false;
    }
    rows.push_back(row);
  }
  // Envelope over nested families: max over all grid points with cond ≤ this one.
  for (auto& r : rows) {
    r.envelope = 0.0;
    for (const auto& o : rows)
      if (o.cond <= r.cond) r.envelope = std::max(r.envelope, o.max_sim);
  }
  return rows;
}

}  // namespace simdeg
