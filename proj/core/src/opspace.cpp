#include "simdeg/opspace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "simdeg/ascent.hpp"
#include "simdeg/sdp.hpp"

namespace simdeg {

namespace {

CVector vec(const CMatrix& m) { return Eigen::Map<const CVector>(m.data(), m.size()); }

CMatrix unvec(const CVector& v, Eigen::Index rows) {
  return Eigen::Map<const CMatrix>(v.data(), rows, v.size() / rows);
}

void require_square(const CMatrix& m, Eigen::Index dim, const char* who) {
  if (m.rows() != dim || m.cols() != dim) {
    std::ostringstream msg;
    msg << who << ": expected " << dim << "x" << dim << ", got " << m.rows() << "x" << m.cols();
    throw std::invalid_argument(msg.str());
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// CbMap
// ---------------------------------------------------------------------------

CbMap CbMap::from_generators(const std::vector<CMatrix>& inputs, const std::vector<CMatrix>& outputs, double tol) {
  if (inputs.empty()) throw std::invalid_argument("CbMap: no generators");
  if (inputs.size() != outputs.size()) throw std::invalid_argument("CbMap: input/output count mismatch");
  const Eigen::Index n = inputs[0].rows();
  const Eigen::Index k = outputs[0].rows();
  for (const auto& x : inputs) require_square(x, n, "CbMap input");
  for (const auto& y : outputs) require_square(y, k, "CbMap output");

  const auto g = static_cast<Eigen::Index>(inputs.size());
  CMatrix in(n * n, g), out(k * k, g);
  for (Eigen::Index j = 0; j < g; ++j) {
    in.col(j) = vec(inputs[static_cast<std::size_t>(j)]);
    out.col(j) = vec(outputs[static_cast<std::size_t>(j)]);
  }
  Eigen::BDCSVD<CMatrix> svd(in, Eigen::ComputeFullU | Eigen::ComputeThinV);
  const RVector& s = svd.singularValues();
  Eigen::Index rank = 0;
  while (rank < s.size() && s(rank) > tol * std::max(s(0), 1e-300)) ++rank;
  if (rank == 0) throw std::invalid_argument("CbMap: generators span the zero subspace");

  const CMatrix ur = svd.matrixU().leftCols(rank);
  const CMatrix vr = svd.matrixV().leftCols(rank);
  RVector sinv = s.head(rank).cwiseInverse();
  const CMatrix lin = out * vr * sinv.cast<Complex>().asDiagonal();  // image of each column of ur
  const double defect = (lin * ur.adjoint() * in - out).norm();
  if (defect > 1e-8 * std::max(1.0, out.norm()))
    throw std::invalid_argument("CbMap: outputs are not a linear function of the inputs");

  CbMap m;
  m.n_ = static_cast<int>(n);
  m.k_ = static_cast<int>(k);
  m.inputs_ = inputs;
  m.outputs_ = outputs;
  m.choi_ = CMatrix::Zero(n * k, n * k);
  for (Eigen::Index i = 0; i < rank; ++i) {
    m.basis_.push_back(unvec(ur.col(i), n));
    m.images_.push_back(unvec(lin.col(i), k));
    m.choi_ += kron(m.basis_.back().conjugate(), m.images_.back());
  }
  for (Eigen::Index i = rank; i < n * n; ++i) m.complement_.push_back(unvec(svd.matrixU().col(i), n));
  return m;
}

CbMap CbMap::from_function(int n, int k, const std::function<CMatrix(const CMatrix&)>& f) {
  if (n <= 0 || k <= 0) throw std::invalid_argument("CbMap: dimensions must be positive");
  std::vector<CMatrix> in, out;
  for (int b = 0; b < n; ++b)
    for (int a = 0; a < n; ++a) {
      in.push_back(matrix_unit(static_cast<std::size_t>(n), static_cast<std::size_t>(n), static_cast<std::size_t>(a),
                               static_cast<std::size_t>(b)));
      out.push_back(f(in.back()));
      require_square(out.back(), k, "CbMap::from_function image");
    }
  return from_generators(in, out);
}

CbMap CbMap::from_choi(int n, int k, const CMatrix& choi) {
  require_square(choi, static_cast<Eigen::Index>(n) * k, "CbMap::from_choi");
  return from_function(n, k, [&](const CMatrix& x) {
    CMatrix y = CMatrix::Zero(k, k);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (x(a, b) != Complex(0.0, 0.0)) y += x(a, b) * choi.block(a * k, b * k, k, k);
    return y;
  });
}

CMatrix CbMap::apply(const CMatrix& x) const {
  require_square(x, n_, "CbMap::apply");
  CMatrix y = CMatrix::Zero(k_, k_);
  CMatrix residual = x;
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    const Complex c = (basis_[i].adjoint() * x).trace();
    residual -= c * basis_[i];
    y += c * images_[i];
  }
  if (residual.norm() > 1e-8 * std::max(1.0, x.norm()))
    throw std::invalid_argument("CbMap::apply: argument lies outside the domain");
  return y;
}

CbMap CbMap::tensor(const CbMap& other) const {
  std::vector<CMatrix> in, out;
  for (std::size_t i = 0; i < basis_.size(); ++i)
    for (std::size_t j = 0; j < other.basis_.size(); ++j) {
      in.push_back(kron(basis_[i], other.basis_[j]));
      out.push_back(kron(images_[i], other.images_[j]));
    }
  return from_generators(in, out);
}

// ---------------------------------------------------------------------------

CMatrix MinTensorElement::evaluate() const {
  if (terms.empty()) return CMatrix(0, 0);
  const Eigen::Index r = terms[0].first.rows() * terms[0].second.rows();
  const Eigen::Index c = terms[0].first.cols() * terms[0].second.cols();
  CMatrix acc = CMatrix::Zero(r, c);
  for (const auto& [a, b] : terms) {
    if (a.rows() * b.rows() != r || a.cols() * b.cols() != c ||
        a.rows() != terms[0].first.rows() || a.cols() != terms[0].first.cols())
      throw std::invalid_argument("MinTensorElement: inconsistent shapes");
    acc += kron(a, b);
  }
  return acc;
}

double min_tensor_norm(const MinTensorElement& x) { return op_norm(x.evaluate()); }

// ---------------------------------------------------------------------------
// cb norms
// ---------------------------------------------------------------------------

namespace {

// Adds a free Hermitian d×d matrix variable Y at offset `off` of `block`, and
// its image under `trace_map` (entry (i, j) of Y contributes to (p, q) of the
// trace block with weight −1 when trace_map returns true) to `trace_block`.
void add_hermitian_variable(LmiProblem& lmi, int block, int off, int d, int trace_block,
                            const std::function<bool(int, int, int&, int&)>& trace_map) {
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) {
      int p = 0, q = 0;
      const bool traced = trace_map(i, j, p, q);
      if (i == j) {
        const int v = lmi.add_variable();
        lmi.add_term(v, block, off + i, off + i, 1.0);
        if (traced) lmi.add_term(v, trace_block, p, q, -1.0);
        continue;
      }
      const int re = lmi.add_variable();
      lmi.add_term(re, block, off + i, off + j, 1.0);
      const int im = lmi.add_variable();
      lmi.add_term(im, block, off + i, off + j, Complex(0.0, 1.0));
      if (traced) {
        if (p == q) {
          // (i, j) and (j, i) land on the same diagonal slot: only the real part survives.
          lmi.add_term(re, trace_block, p, p, -2.0);
        } else {
          lmi.add_term(re, trace_block, p, q, -1.0);
          lmi.add_term(im, trace_block, p, q, Complex(0.0, -1.0));
        }
      }
    }
}

double solve_cb_lmi(const LmiProblem& lmi, double tol, const char* who) {
  SdpOptions o;
  o.tol = tol;
  o.feas_tol = std::min(tol, 1e-9);
  o.max_iterations = 200;
  const LmiSolution s = solve_lmi(lmi, o);
  require_optimal(s.sdp, who);
  return -s.objective;
}

}  // namespace

double cb_norm(const CbMap& phi, double tol) {
  const int n = phi.source_dim();
  const int k = phi.target_dim();
  const int d = n * k;
  LmiProblem lmi;
  const int big = lmi.add_block(2 * d);
  const int t0 = lmi.add_block(k);
  const int t1 = lmi.add_block(k);
  const int s0 = lmi.add_variable(-0.5);
  const int s1 = lmi.add_variable(-0.5);
  for (int p = 0; p < k; ++p) {
    lmi.add_term(s0, t0, p, p, 1.0);
    lmi.add_term(s1, t1, p, p, 1.0);
  }
  // Tr over the source factor: (a, p), (b, q) contributes δ_ab E_pq.
  auto source_trace = [k](int i, int j, int& p, int& q) {
    p = i % k;
    q = j % k;
    return i / k == j / k;
  };
  add_hermitian_variable(lmi, big, 0, d, t0, source_trace);
  add_hermitian_variable(lmi, big, d, d, t1, source_trace);

  const CMatrix& j0 = phi.choi();
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      if (j0(i, j) != Complex(0.0, 0.0)) lmi.add_constant(big, i, d + j, j0(i, j));

  // Free images of the complement basis: J += conj(B) ⊗ Φ(B).
  for (const CMatrix& b : phi.complement_basis())
    for (int p = 0; p < k; ++p)
      for (int q = 0; q < k; ++q) {
        const int re = lmi.add_variable();
        const int im = lmi.add_variable();
        for (int a = 0; a < n; ++a)
          for (int c = 0; c < n; ++c) {
            const Complex w = std::conj(b(a, c));
            if (std::abs(w) < 1e-15) continue;
            lmi.add_term(re, big, a * k + p, d + c * k + q, w);
            lmi.add_term(im, big, a * k + p, d + c * k + q, Complex(0.0, 1.0) * w);
          }
      }
  return solve_cb_lmi(lmi, tol, "cb_norm");
}

double cb_norm_commutative(const std::vector<CMatrix>& images, double tol) {
  if (images.empty()) throw std::invalid_argument("cb_norm_commutative: no images");
  const int k = static_cast<int>(images[0].rows());
  for (const auto& u : images) require_square(u, k, "cb_norm_commutative");
  LmiProblem lmi;
  const int t0 = lmi.add_block(k);
  const int t1 = lmi.add_block(k);
  const int s0 = lmi.add_variable(-0.5);
  const int s1 = lmi.add_variable(-0.5);
  for (int p = 0; p < k; ++p) {
    lmi.add_term(s0, t0, p, p, 1.0);
    lmi.add_term(s1, t1, p, p, 1.0);
  }
  auto whole = [](int i, int j, int& p, int& q) {
    p = i;
    q = j;
    return true;
  };
  for (const CMatrix& u : images) {
    const int blk = lmi.add_block(2 * k);
    add_hermitian_variable(lmi, blk, 0, k, t0, whole);
    add_hermitian_variable(lmi, blk, k, k, t1, whole);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        if (u(i, j) != Complex(0.0, 0.0)) lmi.add_constant(blk, i, k + j, u(i, j));
  }
  return solve_cb_lmi(lmi, tol, "cb_norm_commutative");
}

// ---------------------------------------------------------------------------
// Level estimators
// ---------------------------------------------------------------------------

namespace {

CMatrix amplify(const MatrixTuple& c, const std::vector<CMatrix>& w) {
  CMatrix acc = kron(c[0], w[0]);
  for (std::size_t i = 1; i < c.size(); ++i) acc += kron(c[i], w[i]);
  return acc;
}

// ∂/∂C_i of ‖Σ C_i ⊗ W_i‖ given the top singular dyad g of the sum.
CMatrix amplified_gradient(const CMatrix& g, const CMatrix& w, Eigen::Index m) {
  const Eigen::Index k = w.rows();
  CMatrix out = CMatrix::Zero(m, m);
  for (Eigen::Index a = 0; a < m; ++a)
    for (Eigen::Index b = 0; b < m; ++b) out(a, b) = (g.block(a * k, b * k, k, k).array() * w.conjugate().array()).sum();
  return out;
}

double ratio_ascent(const std::vector<CMatrix>& num, const std::vector<CMatrix>& den, int level, int restarts,
                    std::uint64_t seed) {
  if (level < 1) throw std::invalid_argument("level must be >= 1");
  AscentProblem p;
  p.blocks.assign(num.size(), AscentBlock{level, level, BallNorm::Frobenius});
  p.objective = [&](const MatrixTuple& c) {
    const double d = op_norm(amplify(c, den));
    return d > 1e-300 ? op_norm(amplify(c, num)) / d : 0.0;
  };
  p.gradient = [&](const MatrixTuple& c) {
    const CMatrix an = amplify(c, num);
    const CMatrix ad = amplify(c, den);
    const double n = op_norm(an);
    const double d = op_norm(ad);
    const CMatrix gn = op_norm_gradient(an);
    const CMatrix gd = op_norm_gradient(ad);
    MatrixTuple g;
    for (std::size_t i = 0; i < c.size(); ++i)
      g.push_back((amplified_gradient(gn, num[i], level) * d - n * amplified_gradient(gd, den[i], level)) / (d * d));
    return g;
  };
  AscentOptions o;
  o.restarts = restarts;
  o.seed = seed;
  return ascent_lower_bound(p, o).value;
}

}  // namespace

double cb_norm_level(const CbMap& phi, int level, int restarts, std::uint64_t seed) {
  return ratio_ascent(phi.basis_images(), phi.domain_basis(), level, restarts, seed);
}

double map_norm_estimate(const CbMap& phi, int restarts, std::uint64_t seed) {
  double best = ratio_ascent(phi.basis_images(), phi.domain_basis(), 1, restarts, seed);
  for (std::size_t i = 0; i < phi.inputs().size(); ++i) {
    const double d = op_norm(phi.inputs()[i]);
    if (d > 0.0) best = std::max(best, op_norm(phi.outputs()[i]) / d);
  }
  return best;
}

// ---------------------------------------------------------------------------
// γ₂
// ---------------------------------------------------------------------------

Gamma2Result gamma2_rowcol(const CMatrix& m, double tol) {
  const int r = static_cast<int>(m.rows());
  const int c = static_cast<int>(m.cols());
  if (r == 0 || c == 0) return {};
  SdpProblem p;
  const int x = p.add_block(r + c);
  std::vector<int> slack;
  for (int i = 0; i < r + c; ++i) slack.push_back(p.add_block(1));
  const int gamma = p.add_block(1);
  p.objective.add(gamma, 0, 0, 1.0);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) {
      BlockSparse re, im;
      re.add(x, i, r + j, 0.5);
      im.add(x, i, r + j, Complex(0.0, 0.5));
      p.add_constraint(re, m(i, j).real());
      p.add_constraint(im, m(i, j).imag());
    }
  for (int i = 0; i < r + c; ++i) {
    BlockSparse a;
    a.add(x, i, i, 1.0);
    a.add(slack[static_cast<std::size_t>(i)], 0, 0, 1.0);
    a.add(gamma, 0, 0, -1.0);
    p.add_constraint(a, 0.0);
  }
  SdpOptions o;
  o.tol = tol;
  o.feas_tol = std::min(tol, 1e-9);
  const SdpSolution s = sdp_solve(p, o);
  require_optimal(s, "gamma2_rowcol_norm");

  Gamma2Result out;
  out.value = s.primal_objective;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(s.primal[static_cast<std::size_t>(x)]));
  RVector root = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const CMatrix rt = es.eigenvectors() * root.cast<Complex>().asDiagonal();
  out.left = rt.topRows(r);
  out.right = rt.bottomRows(c);
  return out;
}

double gamma2_rowcol_norm(const CMatrix& m, double tol) { return gamma2_rowcol(m, tol).value; }

double hnorm_upper_certificate(const std::vector<std::pair<CMatrix, CMatrix>>& pairs) {
  if (pairs.empty()) return 0.0;
  CMatrix aa = CMatrix::Zero(pairs[0].first.rows(), pairs[0].first.rows());
  CMatrix bb = CMatrix::Zero(pairs[0].second.cols(), pairs[0].second.cols());
  for (const auto& [a, b] : pairs) {
    if (a.rows() != aa.rows() || b.cols() != bb.cols() || a.cols() != b.rows())
      throw std::invalid_argument("hnorm_upper_certificate: shapes do not chain");
    aa += a * a.adjoint();
    bb += b.adjoint() * b;
  }
  return std::sqrt(op_norm(aa)) * std::sqrt(op_norm(bb));
}

// ---------------------------------------------------------------------------
// max(ℓ₂) pairings
// ---------------------------------------------------------------------------

namespace {

struct KappaParts {
  double value;
  int which;  // 0 row, 1 column, 2 Hilbert-Schmidt
  CVector vec;
};

KappaParts kappa(const std::vector<CMatrix>& t) {
  const Eigen::Index r = t[0].rows();
  CMatrix row = CMatrix::Zero(r, r), col = CMatrix::Zero(t[0].cols(), t[0].cols());
  const auto n = static_cast<Eigen::Index>(t.size());
  CMatrix gram(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    row += t[static_cast<std::size_t>(i)] * t[static_cast<std::size_t>(i)].adjoint();
    col += t[static_cast<std::size_t>(i)].adjoint() * t[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < n; ++j)
      gram(i, j) = (t[static_cast<std::size_t>(i)].adjoint() * t[static_cast<std::size_t>(j)]).trace();
  }
  KappaParts best{std::numeric_limits<double>::infinity(), 0, CVector()};
  const CMatrix* mats[3] = {&row, &col, &gram};
  for (int w = 0; w < 3; ++w) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(*mats[w]));
    const Eigen::Index top = es.eigenvalues().size() - 1;
    const double v = std::sqrt(std::max(es.eigenvalues()(top), 0.0));
    if (v < best.value) best = {v, w, es.eigenvectors().col(top)};
  }
  return best;
}

}  // namespace

double l2_contraction_upper(const std::vector<CMatrix>& t) {
  if (t.empty()) return 0.0;
  return kappa(t).value;
}

PairingEstimate max_l2_pairing(const std::vector<CMatrix>& x, int level, int restarts, std::uint64_t seed) {
  if (level < 1) throw std::invalid_argument("max_l2_pairing: level must be >= 1");
  if (x.empty()) return {};
  for (const auto& xi : x)
    if (xi.rows() != x[0].rows() || xi.cols() != x[0].cols())
      throw std::invalid_argument("max_l2_pairing: inconsistent shapes");
  AscentProblem p;
  p.blocks.assign(x.size(), AscentBlock{level, level, BallNorm::Frobenius});
  p.objective = [&](const MatrixTuple& t) {
    const double k = kappa(t).value;
    return k > 1e-300 ? op_norm(amplify(x, t)) / k : 0.0;
  };
  p.gradient = [&](const MatrixTuple& t) {
    const CMatrix a = amplify(x, t);
    const double n = op_norm(a);
    const CMatrix ga = op_norm_gradient(a);
    const KappaParts kp = kappa(t);
    const auto r = static_cast<Eigen::Index>(level);
    const Eigen::Index p_rows = x[0].rows(), p_cols = x[0].cols();
    CMatrix sum_ct = CMatrix::Zero(r, r);
    if (kp.which == 2)
      for (std::size_t j = 0; j < t.size(); ++j) sum_ct += kp.vec(static_cast<Eigen::Index>(j)) * t[j];
    MatrixTuple g;
    for (std::size_t i = 0; i < t.size(); ++i) {
      // ∂‖Σ x_i ⊗ T_i‖/∂T_i: contract the dyad against x_i over the outer index.
      CMatrix gn = CMatrix::Zero(r, r);
      for (Eigen::Index a1 = 0; a1 < p_rows; ++a1)
        for (Eigen::Index b1 = 0; b1 < p_cols; ++b1) gn += std::conj(x[i](a1, b1)) * ga.block(a1 * r, b1 * r, r, r);
      CMatrix gk;
      if (kp.which == 0)
        gk = kp.vec * kp.vec.adjoint() * t[i] / kp.value;
      else if (kp.which == 1)
        gk = t[i] * kp.vec * kp.vec.adjoint() / kp.value;
      else
        gk = std::conj(kp.vec(static_cast<Eigen::Index>(i))) * sum_ct / kp.value;
      g.push_back((gn * kp.value - n * gk) / (kp.value * kp.value));
    }
    return g;
  };
  AscentOptions o;
  o.restarts = restarts;
  o.seed = seed;
  const AscentResult res = ascent_lower_bound(p, o);
  PairingEstimate out;
  out.value = res.value;
  const double k = kappa(res.point).value;
  for (const auto& t : res.point) out.witness.push_back(t / k);
  return out;
}

double max_l2_pairing_estimate(const std::vector<CMatrix>& x, int level, int restarts, std::uint64_t seed) {
  return max_l2_pairing(x, level, restarts, seed).value;
}

// ---------------------------------------------------------------------------
// Homomorphism checks
// ---------------------------------------------------------------------------

void require_multiplicative(const CbMap& u, double tol) {
  const auto& in = u.inputs();
  const auto& out = u.outputs();
  for (std::size_t i = 0; i < in.size(); ++i)
    for (std::size_t j = 0; j < in.size(); ++j) {
      CMatrix prod;
      try {
        prod = u.apply(in[i] * in[j]);
      } catch (const std::invalid_argument&) {
        throw std::invalid_argument("map is not multiplicative: domain is not closed under products");
      }
      const double scale = std::max(1.0, op_norm(out[i]) * op_norm(out[j]));
      if ((prod - out[i] * out[j]).cwiseAbs().maxCoeff() > tol * scale) {
        std::ostringstream msg;
        msg << "map is not multiplicative on generators " << i << ", " << j;
        throw std::invalid_argument(msg.str());
      }
    }
}

RowInequality row_inequality_check(const CbMap& u, const std::vector<CMatrix>& x, std::optional<double> u_norm,
                                   std::uint64_t seed) {
  require_multiplicative(u);
  RowInequality r;
  r.u_norm = u_norm ? *u_norm : map_norm_estimate(u, 8, seed);
  if (x.empty()) return r;
  CMatrix lhs = CMatrix::Zero(u.target_dim(), u.target_dim());
  CMatrix rhs = CMatrix::Zero(u.source_dim(), u.source_dim());
  for (const auto& xi : x) {
    const CMatrix ux = u.apply(xi);
    lhs += ux.adjoint() * ux;
    rhs += xi.adjoint() * xi;
  }
  r.lhs = std::sqrt(op_norm(lhs));
  r.rhs = r.u_norm * r.u_norm * std::sqrt(op_norm(rhs));
  return r;
}

// ---------------------------------------------------------------------------
// Functionals into max(ℓ₂)
// ---------------------------------------------------------------------------

double max_l2_functional_upper(const std::vector<CMatrix>& xi, int random_rotations, std::uint64_t seed) {
  if (xi.empty()) return 0.0;
  const auto n = static_cast<Eigen::Index>(xi.size());
  const Eigen::Index len = xi[0].size();
  CMatrix stack(len, n);
  for (Eigen::Index i = 0; i < n; ++i) stack.col(i) = vec(xi[static_cast<std::size_t>(i)]);
  auto evaluate = [&](const CMatrix& v) {
    const CMatrix rotated = stack * v;
    double s = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) s += trace_norm(unvec(rotated.col(k), xi[0].rows()));
    return s;
  };
  double best = evaluate(identity(static_cast<std::size_t>(n)));
  Eigen::JacobiSVD<CMatrix> svd(stack, Eigen::ComputeFullV);
  best = std::min(best, evaluate(svd.matrixV()));
  Rng rng(seed);
  for (int r = 0; r < random_rotations; ++r) best = std::min(best, evaluate(haar_unitary(static_cast<std::size_t>(n), rng)));
  return best;
}

double max_l2_functional_lower(const std::vector<CMatrix>& xi, int restarts, std::uint64_t seed) {
  if (xi.empty()) return 0.0;
  const int m = static_cast<int>(xi[0].rows());
  AscentProblem p;
  p.blocks = {AscentBlock{m, m, BallNorm::Operator}};
  auto values = [&](const CMatrix& a) {
    CVector z(static_cast<Eigen::Index>(xi.size()));
    for (std::size_t i = 0; i < xi.size(); ++i) z(static_cast<Eigen::Index>(i)) = (xi[i] * a).trace();
    return z;
  };
  p.objective = [&](const MatrixTuple& a) { return values(a[0]).norm(); };
  p.gradient = [&](const MatrixTuple& a) {
    const CVector z = values(a[0]);
    const double f = z.norm();
    CMatrix g = CMatrix::Zero(m, m);
    if (f > 0.0)
      for (std::size_t i = 0; i < xi.size(); ++i) g += z(static_cast<Eigen::Index>(i)) * xi[i].adjoint() / f;
    return MatrixTuple{g};
  };
  AscentOptions o;
  o.restarts = restarts;
  o.seed = seed;
  return ascent_lower_bound(p, o).value;
}

ConstantFourCheck constant_four_check(const std::vector<CMatrix>& xi, std::uint64_t seed) {
  ConstantFourCheck c;
  double s = 0.0;
  for (const auto& x : xi) s += std::pow(trace_norm(x), 2);
  c.lhs = std::sqrt(s);
  c.upper = max_l2_functional_upper(xi, 8, seed);
  c.lower = max_l2_functional_lower(xi, 4, seed);
  return c;
}

}  // namespace simdeg
