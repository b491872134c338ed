#include "simdeg/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace simdeg {

// ---------------------------------------------------------------------------
// BlockSparse / SdpProblem
// ---------------------------------------------------------------------------

void BlockSparse::add(int block, int row, int col, Complex value) {
  if (value == Complex(0.0, 0.0)) return;
  if (row > col) {
    std::swap(row, col);
    value = std::conj(value);
  }
  if (row == col) {
    if (std::abs(value.imag()) > 1e-12 * std::max(1.0, std::abs(value)))
      throw std::invalid_argument("BlockSparse::add: diagonal entry must be real");
    value = Complex(value.real(), 0.0);
  }
  entries_.push_back({block, row, col, value});
}

void BlockSparse::add_dense(int block, const CMatrix& h, double herm_tol) {
  if (h.rows() != h.cols()) throw std::invalid_argument("BlockSparse::add_dense: block must be square");
  const double scale = std::max(1.0, h.size() ? h.cwiseAbs().maxCoeff() : 0.0);
  if (hermitian_defect(h) > herm_tol * scale)
    throw std::invalid_argument("BlockSparse::add_dense: coefficient block is not Hermitian");
  for (Eigen::Index c = 0; c < h.cols(); ++c)
    for (Eigen::Index r = 0; r <= c; ++r) {
      Complex v = r == c ? Complex(h(r, c).real(), 0.0) : 0.5 * (h(r, c) + std::conj(h(c, r)));
      if (std::abs(v) > 0.0) entries_.push_back({block, static_cast<int>(r), static_cast<int>(c), v});
    }
}

CMatrix BlockSparse::dense_block(int block, int dim) const {
  CMatrix out = CMatrix::Zero(dim, dim);
  for (const Entry& e : entries_) {
    if (e.block != block) continue;
    out(e.row, e.col) += e.value;
    if (e.row != e.col) out(e.col, e.row) += std::conj(e.value);
  }
  return out;
}

int SdpProblem::add_block(int dim) {
  if (dim <= 0) throw std::invalid_argument("SdpProblem::add_block: dimension must be positive");
  block_dims.push_back(dim);
  return static_cast<int>(block_dims.size()) - 1;
}

int SdpProblem::add_constraint(BlockSparse a, double b) {
  constraints.push_back(std::move(a));
  rhs.push_back(b);
  return static_cast<int>(constraints.size()) - 1;
}

namespace {

void check_entries(const BlockSparse& a, const std::vector<int>& dims, const char* what) {
  for (const auto& e : a.entries()) {
    if (e.block < 0 || e.block >= static_cast<int>(dims.size())) {
      std::ostringstream msg;
      msg << "SdpProblem: " << what << " references block " << e.block << " of " << dims.size();
      throw std::invalid_argument(msg.str());
    }
    const int d = dims[static_cast<std::size_t>(e.block)];
    if (e.row < 0 || e.col < 0 || e.row >= d || e.col >= d) {
      std::ostringstream msg;
      msg << "SdpProblem: " << what << " entry (" << e.row << "," << e.col << ") outside block " << e.block
          << " of dimension " << d;
      throw std::invalid_argument(msg.str());
    }
    if (!std::isfinite(e.value.real()) || !std::isfinite(e.value.imag()))
      throw std::invalid_argument(std::string("SdpProblem: non-finite coefficient in ") + what);
  }
}

}  // namespace

void SdpProblem::validate() const {
  if (block_dims.empty()) throw std::invalid_argument("SdpProblem: no blocks");
  for (int d : block_dims)
    if (d <= 0) throw std::invalid_argument("SdpProblem: non-positive block dimension");
  if (constraints.size() != rhs.size()) throw std::invalid_argument("SdpProblem: constraint/rhs count mismatch");
  check_entries(objective, block_dims, "objective");
  for (const auto& a : constraints) check_entries(a, block_dims, "constraint");
  for (double b : rhs)
    if (!std::isfinite(b)) throw std::invalid_argument("SdpProblem: non-finite right-hand side");
}

const char* to_string(SdpStatus s) {
  switch (s) {
    case SdpStatus::Optimal: return "optimal";
    case SdpStatus::Infeasible: return "infeasible";
    case SdpStatus::NumericalFailure: return "numerical-failure";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// Solver internals
// ---------------------------------------------------------------------------

namespace {

using Blocks = std::vector<CMatrix>;
using Entry = BlockSparse::Entry;

struct BlockPart {
  int block;
  std::vector<Entry> entries;
};

struct Compiled {
  std::vector<int> dims;
  int m = 0;
  std::vector<std::vector<BlockPart>> parts;           // constraint -> its per-block entries
  std::vector<std::vector<std::pair<int, int>>> users;  // block -> (constraint, part index), sorted
  Blocks c;
  RVector b;
  double norm_b = 0.0;
  double norm_c = 0.0;
  std::size_t total_dim = 0;
};

Compiled compile(const SdpProblem& p) {
  Compiled k;
  k.dims = p.block_dims;
  k.m = p.num_constraints();
  k.parts.resize(static_cast<std::size_t>(k.m));
  k.users.resize(k.dims.size());
  for (int i = 0; i < k.m; ++i) {
    std::vector<std::vector<Entry>> per_block(k.dims.size());
    for (const auto& e : p.constraints[static_cast<std::size_t>(i)].entries())
      per_block[static_cast<std::size_t>(e.block)].push_back(e);
    for (std::size_t bl = 0; bl < k.dims.size(); ++bl) {
      if (per_block[bl].empty()) continue;
      k.users[bl].emplace_back(i, static_cast<int>(k.parts[static_cast<std::size_t>(i)].size()));
      k.parts[static_cast<std::size_t>(i)].push_back({static_cast<int>(bl), std::move(per_block[bl])});
    }
  }
  k.c.resize(k.dims.size());
  for (std::size_t bl = 0; bl < k.dims.size(); ++bl) {
    k.c[bl] = p.objective.dense_block(static_cast<int>(bl), k.dims[bl]);
    k.total_dim += static_cast<std::size_t>(k.dims[bl]);
  }
  k.b = RVector(k.m);
  for (int i = 0; i < k.m; ++i) k.b(i) = p.rhs[static_cast<std::size_t>(i)];
  k.norm_b = k.b.norm();
  double cc = 0.0;
  for (const auto& blk : k.c) cc += blk.squaredNorm();
  k.norm_c = std::sqrt(cc);
  return k;
}

// Re tr(A Y) for one block part and a general (not necessarily Hermitian) Y.
double contract(const std::vector<Entry>& entries, const CMatrix& y) {
  double s = 0.0;
  for (const Entry& e : entries) {
    if (e.row == e.col)
      s += e.value.real() * y(e.row, e.row).real() - e.value.imag() * y(e.row, e.row).imag();
    else
      s += (e.value * y(e.col, e.row) + std::conj(e.value) * y(e.row, e.col)).real();
  }
  return s;
}

double apply_constraint(const Compiled& k, int i, const Blocks& y) {
  double s = 0.0;
  for (const BlockPart& part : k.parts[static_cast<std::size_t>(i)])
    s += contract(part.entries, y[static_cast<std::size_t>(part.block)]);
  return s;
}

RVector apply_all(const Compiled& k, const Blocks& y) {
  RVector out(k.m);
  for (int i = 0; i < k.m; ++i) out(i) = apply_constraint(k, i, y);
  return out;
}

// Σ_i y_i A_i as dense blocks.
Blocks adjoint(const Compiled& k, const RVector& y) {
  Blocks out(k.dims.size());
  for (std::size_t bl = 0; bl < k.dims.size(); ++bl) out[bl] = CMatrix::Zero(k.dims[bl], k.dims[bl]);
  for (int i = 0; i < k.m; ++i) {
    const double yi = y(i);
    if (yi == 0.0) continue;
    for (const BlockPart& part : k.parts[static_cast<std::size_t>(i)]) {
      CMatrix& z = out[static_cast<std::size_t>(part.block)];
      for (const Entry& e : part.entries) {
        z(e.row, e.col) += yi * e.value;
        if (e.row != e.col) z(e.col, e.row) += yi * std::conj(e.value);
      }
    }
  }
  return out;
}

CMatrix dense_part(const std::vector<Entry>& entries, int dim) {
  CMatrix a = CMatrix::Zero(dim, dim);
  for (const Entry& e : entries) {
    a(e.row, e.col) += e.value;
    if (e.row != e.col) a(e.col, e.row) += std::conj(e.value);
  }
  return a;
}

double inner(const Blocks& a, const Blocks& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i].array() * b[i].conjugate().array()).sum().real();
  return s;
}

double frob(const Blocks& a) {
  double s = 0.0;
  for (const auto& x : a) s += x.squaredNorm();
  return std::sqrt(s);
}

void symmetrize(Blocks& a) {
  for (auto& x : a) x = hermitian_part(x);
}

// Largest α with X + α dX ⪰ 0 (infinity when dX ⪰ 0).
double max_step(const Blocks& x, const Blocks& dx) {
  double alpha = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < x.size(); ++i) {
    Eigen::LLT<CMatrix> llt(x[i]);
    if (llt.info() != Eigen::Success) return 0.0;
    const CMatrix t = llt.matrixL().solve(dx[i]);
    const CMatrix w = llt.matrixL().solve(t.adjoint()).adjoint();
    Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(w), Eigen::EigenvaluesOnly);
    const double lmin = es.eigenvalues()(0);
    if (lmin < 0.0) alpha = std::min(alpha, -1.0 / lmin);
  }
  return alpha;
}

RMatrix schur(const Compiled& k, const Blocks& x, const Blocks& zinv) {
  RMatrix mat = RMatrix::Zero(k.m, k.m);
  for (int i = 0; i < k.m; ++i) {
    for (const BlockPart& part : k.parts[static_cast<std::size_t>(i)]) {
      const auto bl = static_cast<std::size_t>(part.block);
      const int dim = k.dims[bl];
      const CMatrix& xb = x[bl];
      const CMatrix& zb = zinv[bl];
      CMatrix g;
      if (static_cast<int>(part.entries.size()) > dim) {
        g = xb * dense_part(part.entries, dim) * zb;
      } else {
        g = CMatrix::Zero(dim, dim);
        for (const Entry& e : part.entries) {
          g.noalias() += e.value * xb.col(e.row) * zb.row(e.col);
          if (e.row != e.col) g.noalias() += std::conj(e.value) * xb.col(e.col) * zb.row(e.row);
        }
      }
      const auto& us = k.users[bl];
      auto it = std::lower_bound(us.begin(), us.end(), std::make_pair(i, 0));
      for (; it != us.end(); ++it) {
        const int j = it->first;
        const auto& ej = k.parts[static_cast<std::size_t>(j)][static_cast<std::size_t>(it->second)].entries;
        mat(i, j) += contract(ej, g);
      }
    }
  }
  for (int i = 0; i < k.m; ++i)
    for (int j = i + 1; j < k.m; ++j) mat(j, i) = mat(i, j);
  return mat;
}

struct SchurFactor {
  Eigen::LLT<RMatrix> llt;
  bool ok = false;
};

SchurFactor factor_schur(RMatrix mat) {
  SchurFactor f;
  if (mat.rows() == 0) {
    f.ok = true;
    return f;
  }
  const double scale = std::max(1.0, mat.diagonal().cwiseAbs().maxCoeff());
  double reg = 0.0;
  for (int attempt = 0; attempt < 8; ++attempt) {
    RMatrix m2 = mat;
    if (reg > 0.0) m2.diagonal().array() += reg;
    f.llt.compute(m2);
    if (f.llt.info() == Eigen::Success) {
      f.ok = true;
      return f;
    }
    reg = reg == 0.0 ? 1e-14 * scale : reg * 100.0;
  }
  return f;
}

struct Direction {
  Blocks dx;
  RVector dy;
  Blocks dz;
};

Direction direction(const Compiled& k, const SchurFactor& f, const Blocks& x, const Blocks& zinv, const RVector& rp,
                    const Blocks& rd, const Blocks& x_rd_zinv, const Blocks& rc) {
  RVector rhs = rp - apply_all(k, rc) + apply_all(k, x_rd_zinv);
  Direction d;
  d.dy = k.m ? RVector(f.llt.solve(rhs)) : RVector(0);
  const Blocks aty = adjoint(k, d.dy);
  d.dz.resize(k.dims.size());
  d.dx.resize(k.dims.size());
  for (std::size_t bl = 0; bl < k.dims.size(); ++bl) {
    d.dz[bl] = rd[bl] - aty[bl];
    d.dx[bl] = rc[bl] - hermitian_part(x[bl] * d.dz[bl] * zinv[bl]);
  }
  return d;
}

double lambda_max(const Blocks& a) {
  double v = -std::numeric_limits<double>::infinity();
  for (const auto& x : a) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(x), Eigen::EigenvaluesOnly);
    v = std::max(v, es.eigenvalues().maxCoeff());
  }
  return v;
}

}  // namespace

SdpSolution sdp_solve(const SdpProblem& problem, double tol) {
  SdpOptions o;
  o.tol = tol;
  o.feas_tol = std::min(o.feas_tol, tol);
  return sdp_solve(problem, o);
}

SdpSolution sdp_solve(const SdpProblem& problem, const SdpOptions& options) {
  problem.validate();
  const Compiled k = compile(problem);
  const std::size_t nb = k.dims.size();

  // Starting point scaled to the data.
  Blocks x(nb), z(nb);
  for (std::size_t bl = 0; bl < nb; ++bl) {
    const double n = static_cast<double>(k.dims[bl]);
    double xi = std::max(10.0, std::sqrt(n));
    double eta = std::max({10.0, std::sqrt(n), k.c[bl].norm()});
    for (int i = 0; i < k.m; ++i)
      for (const BlockPart& part : k.parts[static_cast<std::size_t>(i)]) {
        if (part.block != static_cast<int>(bl)) continue;
        const double an = dense_part(part.entries, k.dims[bl]).norm();
        xi = std::max(xi, std::sqrt(n) * (1.0 + std::abs(k.b(i))) / (1.0 + an));
        eta = std::max(eta, an);
      }
    x[bl] = xi * identity(static_cast<std::size_t>(k.dims[bl]));
    z[bl] = eta * identity(static_cast<std::size_t>(k.dims[bl]));
  }
  RVector y = RVector::Zero(k.m);

  SdpSolution sol;
  const double ntot = static_cast<double>(k.total_dim);
  int stalled = 0;

  for (int iter = 0;; ++iter) {
    const RVector rp = k.b - apply_all(k, x);
    const Blocks aty = adjoint(k, y);
    Blocks rd(nb);
    for (std::size_t bl = 0; bl < nb; ++bl) rd[bl] = k.c[bl] - z[bl] - aty[bl];
    const double pobj = inner(k.c, x);
    const double dobj = k.b.dot(y);
    const double xz = inner(x, z);
    const double mu = xz / ntot;
    const double relgap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj) + std::abs(dobj));
    const double pinf = rp.norm() / (1.0 + k.norm_b);
    const double dinf = frob(rd) / (1.0 + k.norm_c);

    sol.primal = x;
    sol.slack = z;
    sol.dual = y;
    sol.primal_objective = pobj;
    sol.dual_objective = dobj;
    sol.gap = relgap;
    sol.primal_infeasibility = pinf;
    sol.dual_infeasibility = dinf;
    sol.iterations = iter;

    const double comp = xz / (1.0 + std::abs(pobj) + std::abs(dobj));
    if (relgap <= options.tol && comp <= options.tol && pinf <= options.feas_tol && dinf <= options.feas_tol) {
      sol.status = SdpStatus::Optimal;
      sol.message = "converged";
      return sol;
    }

    // Divergence along a Farkas ray.
    const double big = 1e8;
    if (dobj > big * (1.0 + k.norm_c)) {
      // Primal infeasible: A*(ŷ) ⪯ 0 with b'ŷ = 1.
      Blocks ray = adjoint(k, y / dobj);
      if (lambda_max(ray) <= 1e-6) {
        sol.status = SdpStatus::Infeasible;
        sol.message = "primal infeasible (dual ray found)";
        return sol;
      }
    }
    if (-pobj > big * (1.0 + k.norm_b)) {
      // Dual infeasible: A(X̂) = 0, X̂ ⪰ 0, <C, X̂> = −1.
      Blocks xr = x;
      for (auto& blk : xr) blk /= -pobj;
      if (apply_all(k, xr).norm() <= 1e-6) {
        sol.status = SdpStatus::Infeasible;
        sol.message = "dual infeasible (primal ray found)";
        return sol;
      }
    }
    if (iter >= options.max_iterations) {
      sol.status = SdpStatus::NumericalFailure;
      std::ostringstream msg;
      msg << "iteration cap reached (gap " << relgap << ", pinf " << pinf << ", dinf " << dinf << ")";
      sol.message = msg.str();
      return sol;
    }

    Blocks zinv(nb);
    for (std::size_t bl = 0; bl < nb; ++bl) {
      Eigen::LLT<CMatrix> llt(z[bl]);
      if (llt.info() != Eigen::Success) {
        sol.status = SdpStatus::NumericalFailure;
        sol.message = "dual slack lost definiteness";
        return sol;
      }
      zinv[bl] = llt.solve(identity(static_cast<std::size_t>(k.dims[bl])));
      zinv[bl] = hermitian_part(zinv[bl]);
    }

    const SchurFactor f = factor_schur(schur(k, x, zinv));
    if (!f.ok) {
      sol.status = SdpStatus::NumericalFailure;
      sol.message = "Schur complement factorization failed";
      return sol;
    }

    Blocks x_rd_zinv(nb);
    for (std::size_t bl = 0; bl < nb; ++bl) x_rd_zinv[bl] = x[bl] * rd[bl] * zinv[bl];

    // Predictor.
    Blocks rc(nb);
    for (std::size_t bl = 0; bl < nb; ++bl) rc[bl] = -x[bl];
    const Direction pred = direction(k, f, x, zinv, rp, rd, x_rd_zinv, rc);
    const double ap = std::min(1.0, max_step(x, pred.dx));
    const double ad = std::min(1.0, max_step(z, pred.dz));
    Blocks xa(nb), za(nb);
    for (std::size_t bl = 0; bl < nb; ++bl) {
      xa[bl] = x[bl] + ap * pred.dx[bl];
      za[bl] = z[bl] + ad * pred.dz[bl];
    }
    const double mu_aff = inner(xa, za) / ntot;
    double sigma = mu > 0.0 ? std::pow(std::max(mu_aff, 0.0) / mu, 3.0) : 0.0;
    sigma = std::clamp(sigma, 0.0, 1.0);

    // Corrector.
    for (std::size_t bl = 0; bl < nb; ++bl)
      rc[bl] = sigma * mu * zinv[bl] - x[bl] - hermitian_part(pred.dx[bl] * pred.dz[bl] * zinv[bl]);
    const Direction corr = direction(k, f, x, zinv, rp, rd, x_rd_zinv, rc);

    const double step_frac = 0.9 + 0.09 * std::min(ap, ad);
    const double alpha_p = std::min(1.0, step_frac * max_step(x, corr.dx));
    const double alpha_d = std::min(1.0, step_frac * max_step(z, corr.dz));
    if (alpha_p < 1e-10 && alpha_d < 1e-10) {
      if (++stalled >= 3) {
        sol.status = SdpStatus::NumericalFailure;
        sol.message = "step lengths stalled";
        return sol;
      }
    } else {
      stalled = 0;
    }
    for (std::size_t bl = 0; bl < nb; ++bl) {
      x[bl] += alpha_p * corr.dx[bl];
      z[bl] += alpha_d * corr.dz[bl];
    }
    y += alpha_d * corr.dy;
    symmetrize(x);
    symmetrize(z);
  }
}

void require_optimal(const SdpSolution& s, const char* who) {
  if (s.optimal()) return;
  throw SolverError(std::string(who) + ": " + to_string(s.status) + " (" + s.message + ")", s.status);
}

KktResiduals kkt_residuals(const SdpProblem& problem, const SdpSolution& s) {
  const Compiled k = compile(problem);
  KktResiduals r;
  if (s.primal.size() != k.dims.size() || s.slack.size() != k.dims.size()) return r;
  r.primal = (k.b - apply_all(k, s.primal)).norm() / (1.0 + k.norm_b);
  const Blocks aty = adjoint(k, s.dual);
  Blocks rd(k.dims.size());
  for (std::size_t bl = 0; bl < rd.size(); ++bl) rd[bl] = k.c[bl] - s.slack[bl] - aty[bl];
  r.dual = frob(rd) / (1.0 + k.norm_c);
  const double p = inner(k.c, s.primal);
  const double d = k.b.dot(s.dual);
  r.complementarity = inner(s.primal, s.slack) / (1.0 + std::abs(p) + std::abs(d));
  r.min_primal_eig = std::numeric_limits<double>::infinity();
  r.min_slack_eig = std::numeric_limits<double>::infinity();
  for (std::size_t bl = 0; bl < rd.size(); ++bl) {
    r.min_primal_eig = std::min(r.min_primal_eig, hermitian_eigenvalues(s.primal[bl], 1e-8)(0));
    r.min_slack_eig = std::min(r.min_slack_eig, hermitian_eigenvalues(s.slack[bl], 1e-8)(0));
  }
  return r;
}

// ---------------------------------------------------------------------------
// JSON debug dump
// ---------------------------------------------------------------------------

namespace {

nlohmann::json entries_to_json(const BlockSparse& a) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& e : a.entries())
    arr.push_back({{"block", e.block}, {"row", e.row}, {"col", e.col}, {"re", e.value.real()}, {"im", e.value.imag()}});
  return arr;
}

BlockSparse entries_from_json(const nlohmann::json& arr) {
  BlockSparse a;
  for (const auto& e : arr)
    a.add(e.at("block").get<int>(), e.at("row").get<int>(), e.at("col").get<int>(),
          Complex(e.at("re").get<double>(), e.at("im").get<double>()));
  return a;
}

}  // namespace

nlohmann::json sdp_to_json(const SdpProblem& p) {
  nlohmann::json j;
  j["block_dims"] = p.block_dims;
  j["objective"] = entries_to_json(p.objective);
  j["constraints"] = nlohmann::json::array();
  for (std::size_t i = 0; i < p.constraints.size(); ++i)
    j["constraints"].push_back({{"rhs", p.rhs[i]}, {"entries", entries_to_json(p.constraints[i])}});
  return j;
}

SdpProblem sdp_from_json(const nlohmann::json& j) {
  SdpProblem p;
  p.block_dims = j.at("block_dims").get<std::vector<int>>();
  p.objective = entries_from_json(j.at("objective"));
  for (const auto& c : j.at("constraints")) p.add_constraint(entries_from_json(c.at("entries")), c.at("rhs").get<double>());
  p.validate();
  return p;
}

// ---------------------------------------------------------------------------
// LMI front end
// ---------------------------------------------------------------------------

int LmiProblem::add_block(int dim) {
  if (dim <= 0) throw std::invalid_argument("LmiProblem::add_block: dimension must be positive");
  dims_.push_back(dim);
  return static_cast<int>(dims_.size()) - 1;
}

int LmiProblem::add_variable(double objective_coeff) {
  objective_.push_back(objective_coeff);
  terms_.emplace_back();
  return static_cast<int>(objective_.size()) - 1;
}

void LmiProblem::set_objective(int var, double coeff) { objective_.at(static_cast<std::size_t>(var)) = coeff; }

void LmiProblem::add_constant(int block, int row, int col, Complex v) { constant_.add(block, row, col, v); }

void LmiProblem::add_constant_dense(int block, const CMatrix& h) { constant_.add_dense(block, h); }

void LmiProblem::add_term(int var, int block, int row, int col, Complex v) {
  terms_.at(static_cast<std::size_t>(var)).add(block, row, col, v);
}

void LmiProblem::add_term_dense(int var, int block, const CMatrix& h) {
  terms_.at(static_cast<std::size_t>(var)).add_dense(block, h);
}

SdpProblem LmiProblem::compile() const {
  // F_0 + Σ y F ⪰ 0  <=>  C − Σ y A ⪰ 0 with C = F_0, A = −F.
  SdpProblem p;
  p.block_dims = dims_;
  p.objective = constant_;
  for (std::size_t v = 0; v < terms_.size(); ++v) {
    BlockSparse a;
    for (const auto& e : terms_[v].entries()) a.add(e.block, e.row, e.col, -e.value);
    p.add_constraint(std::move(a), objective_[v]);
  }
  return p;
}

LmiSolution solve_lmi(const LmiProblem& lmi, const SdpOptions& options) {
  LmiSolution out;
  out.sdp = sdp_solve(lmi.compile(), options);
  out.values = out.sdp.dual;
  out.objective = out.sdp.dual_objective;
  return out;
}

// ---------------------------------------------------------------------------

double quasiconvex_bisect(const std::function<bool(double)>& feasible, double lo, double hi, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("quasiconvex_bisect: tolerance must be positive");
  if (!(lo <= hi)) throw std::invalid_argument("quasiconvex_bisect: empty bracket");
  if (!feasible(hi)) throw std::invalid_argument("quasiconvex_bisect: upper end of the bracket is infeasible");
  if (feasible(lo)) return lo;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (feasible(mid))
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

}  // namespace simdeg
