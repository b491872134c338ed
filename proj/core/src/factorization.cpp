#include "simdeg/factorization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "simdeg/io.hpp"
#include "simdeg/sdp.hpp"

namespace simdeg {

void check_shapes(const FactorizationCertificate& c) {
  const int d = c.degree();
  if (c.n < 1 || c.block < 1) throw std::invalid_argument("certificate: n and block must be positive");
  if (static_cast<int>(c.alpha.size()) != d + 1)
    throw std::invalid_argument("certificate: expected degree + 1 scalar factors");
  if (c.alpha.front().rows() != c.n || c.alpha.back().cols() != c.n)
    throw std::invalid_argument("certificate: outer scalar factors do not match the target size");
  for (int i = 0; i < d; ++i) {
    const auto& diag = c.diagonals[static_cast<std::size_t>(i)];
    const auto len = static_cast<Eigen::Index>(diag.size());
    if (c.alpha[static_cast<std::size_t>(i)].cols() != len || c.alpha[static_cast<std::size_t>(i + 1)].rows() != len) {
      std::ostringstream msg;
      msg << "certificate: diagonal " << i + 1 << " has " << len << " entries but the adjacent scalar factors are "
          << c.alpha[static_cast<std::size_t>(i)].rows() << "x" << c.alpha[static_cast<std::size_t>(i)].cols() << " and "
          << c.alpha[static_cast<std::size_t>(i + 1)].rows() << "x" << c.alpha[static_cast<std::size_t>(i + 1)].cols();
      throw std::invalid_argument(msg.str());
    }
    for (const auto& e : diag)
      if (e.rows() != c.block || e.cols() != c.block) throw std::invalid_argument("certificate: diagonal entry has the wrong size");
  }
  if (d == 0 && c.alpha[0].cols() != c.n) throw std::invalid_argument("certificate: degenerate factor must be n×n");
}

namespace {

// M ← M · (α ⊗ I_m), with M viewed as column blocks of width m.
CMatrix times_scalar(const CMatrix& m, const CMatrix& alpha, int block) {
  CMatrix out = CMatrix::Zero(m.rows(), alpha.cols() * block);
  for (Eigen::Index l = 0; l < alpha.cols(); ++l)
    for (Eigen::Index j = 0; j < alpha.rows(); ++j) {
      const Complex a = alpha(j, l);
      if (a == Complex(0.0, 0.0)) continue;
      out.middleCols(l * block, block).noalias() += a * m.middleCols(j * block, block);
    }
  return out;
}

// M ← M · diag(entries).
void times_diagonal(CMatrix& m, const std::vector<CMatrix>& entries, int block) {
  for (std::size_t j = 0; j < entries.size(); ++j) {
    const Eigen::Index c0 = static_cast<Eigen::Index>(j) * block;
    m.middleCols(c0, block) = (m.middleCols(c0, block) * entries[j]).eval();
  }
}

}  // namespace

CMatrix evaluate(const FactorizationCertificate& c) {
  check_shapes(c);
  CMatrix m = kron(c.alpha[0], identity(static_cast<std::size_t>(c.block)));
  for (int i = 0; i < c.degree(); ++i) {
    times_diagonal(m, c.diagonals[static_cast<std::size_t>(i)], c.block);
    m = times_scalar(m, c.alpha[static_cast<std::size_t>(i + 1)], c.block);
  }
  return m;
}

double certificate_bound(const FactorizationCertificate& c) {
  double b = 1.0;
  for (const auto& a : c.alpha) b *= op_norm(a);
  for (const auto& d : c.diagonals) {
    double mx = 0.0;
    for (const auto& e : d) mx = std::max(mx, op_norm(e));
    b *= mx;
  }
  return b;
}

Verification verify_certificate(const FactorizationCertificate& c, const CMatrix& target) {
  const Eigen::Index size = static_cast<Eigen::Index>(c.n) * c.block;
  if (target.rows() != size || target.cols() != size) throw std::invalid_argument("verify_certificate: target has the wrong size");
  return {op_norm(evaluate(c) - target), certificate_bound(c)};
}

Verification verify_certificate(const FactorizationCertificate& c, const GroupAlgElement& x) {
  if (x.block() != c.n || x.group()->order() != c.block)
    throw std::invalid_argument("verify_certificate: target does not match the certificate shape");
  return verify_certificate(c, x.represent(regular_rep(x.group())));
}

FactorizationCertificate amenable_certificate(const GroupAlgElement& x, const std::optional<CVector>& xi_in,
                                              const std::optional<CVector>& eta_in) {
  const GroupPtr& g = x.group();
  const int order = g->order();
  const int n = x.block();
  const double xnorm = cstar_norm(x);
  if (xnorm >= 1.0) {
    std::ostringstream msg;
    msg << "amenable_certificate: cstar_norm(x) = " << xnorm << " must be < 1; rescale first";
    throw std::invalid_argument(msg.str());
  }
  const CVector flat = CVector::Constant(order, 1.0 / std::sqrt(static_cast<double>(order)));
  const CVector xi = xi_in.value_or(flat), eta = eta_in.value_or(flat);
  if (xi.size() != order || eta.size() != order) throw std::invalid_argument("amenable_certificate: ξ, η must have length |G|");
  if (xi.norm() * eta.norm() > 1.0 + 1e-12) throw std::invalid_argument("amenable_certificate: need ‖ξ‖‖η‖ ≤ 1");

  const GroupRep lam = regular_rep(g);
  const GroupFunction phi = coefficient_fn(lam, xi, eta);
  std::vector<CMatrix> y(static_cast<std::size_t>(order));
  for (int t = 0; t < order; ++t) {
    const CMatrix& xt = x[t];
    if (xt.isZero(0.0)) {
      y[static_cast<std::size_t>(t)] = CMatrix::Zero(n, n);
      continue;
    }
    if (std::abs(phi.values(t)) < 1e-12)
      throw std::invalid_argument("amenable_certificate: the coefficient of ξ, η vanishes on the support of x");
    y[static_cast<std::size_t>(t)] = xt / phi.values(t);
  }

  const int big = order * n;
  FactorizationCertificate c;
  c.n = n;
  c.block = order;
  c.algebra = g->name();
  CMatrix a1 = CMatrix::Zero(n, big), a2(big, big), a3 = CMatrix::Zero(big, n);
  std::vector<CMatrix> d1, d2;
  std::vector<int> t1, t2;
  for (int s = 0; s < order; ++s)
    for (int k = 0; k < n; ++k) {
      a1(k, s * n + k) = std::conj(eta(s));
      a3(s * n + k, k) = xi(s);
      d1.push_back(lam(s));
      t1.push_back(s);
      d2.push_back(lam(g->inv(s)));
      t2.push_back(g->inv(s));
    }
  for (int s = 0; s < order; ++s)
    for (int th = 0; th < order; ++th) {
      const CMatrix& blk = y[static_cast<std::size_t>(g->mul(s, g->inv(th)))];
      a2.block(s * n, th * n, n, n) = blk;
    }
  c.alpha = {a1, a2, a3};
  c.diagonals = {d1, d2};
  c.tags = {t1, t2};
  c.claimed_bound = certificate_bound(c);
  return c;
}

FactorizationCertificate weyl_twirl_certificate(const CMatrix& x) {
  if (x.rows() != x.cols() || x.rows() == 0) throw std::invalid_argument("weyl_twirl_certificate: x must be square");
  const auto m = static_cast<std::size_t>(x.rows());
  const auto ws = weyl_design(m);
  const auto n2 = static_cast<Eigen::Index>(ws.size());
  FactorizationCertificate c;
  c.n = 1;
  c.block = static_cast<int>(m);
  c.algebra = "M" + std::to_string(m);
  const double w = 1.0 / static_cast<double>(m);
  c.alpha = {CMatrix::Constant(1, n2, w), CMatrix::Identity(n2, n2), CMatrix::Constant(n2, 1, w)};
  std::vector<CMatrix> d1, d2;
  for (const auto& u : ws) {
    d1.push_back(x * u);
    d2.push_back(u.adjoint());
  }
  c.diagonals = {d1, d2};
  c.tags = {std::vector<int>(ws.size(), -1), std::vector<int>(ws.size(), -1)};
  c.claimed_bound = certificate_bound(c);
  return c;
}

nlohmann::json to_json(const FactorizationCertificate& c) {
  nlohmann::json alpha = nlohmann::json::array(), diags = nlohmann::json::array();
  for (const auto& a : c.alpha) alpha.push_back(matrix_to_json(a));
  for (std::size_t i = 0; i < c.diagonals.size(); ++i) {
    nlohmann::json entries = nlohmann::json::array();
    for (std::size_t j = 0; j < c.diagonals[i].size(); ++j) {
      const int tag = i < c.tags.size() && j < c.tags[i].size() ? c.tags[i][j] : -1;
      if (tag >= 0)
        entries.push_back({{"element", tag}});
      else
        entries.push_back({{"matrix", matrix_to_json(c.diagonals[i][j])}});
    }
    diags.push_back(entries);
  }
  return {{"degree", c.degree()},           {"n", c.n},        {"block", c.block}, {"algebra", c.algebra},
          {"claimed_bound", c.claimed_bound}, {"alpha", alpha}, {"diagonals", diags}};
}

// ---------------------------------------------------------------------------
// bp_gauge
// ---------------------------------------------------------------------------

namespace {

double residual_of(const FactorizationCertificate& c, const CMatrix& x) { return op_norm(evaluate(c) - x); }

// Words of length `len` over the letters, merged by product and expanded so
// that x = Σ C_w ⊗ w. Returns nullopt when x is not in their span.
std::optional<FactorizationCertificate> cold_start(const CMatrix& x, int n, const std::vector<CMatrix>& letters, int len,
                                                   int max_words, double res_tol) {
  const Eigen::Index m = letters[0].rows();
  const std::size_t count = static_cast<std::size_t>(std::pow(static_cast<double>(letters.size()), len));
  if (count > 4096) return std::nullopt;

  struct Word {
    std::vector<int> letters;
    CMatrix product;
  };
  std::vector<Word> words;
  std::vector<int> idx(static_cast<std::size_t>(len), 0);
  for (std::size_t w = 0; w < count; ++w) {
    CMatrix p = letters[static_cast<std::size_t>(idx[0])];
    for (int i = 1; i < len; ++i) p = p * letters[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])];
    const bool dup = std::any_of(words.begin(), words.end(),
                                 [&](const Word& o) { return (o.product - p).cwiseAbs().maxCoeff() <= 1e-12 * (1 + p.norm()); });
    if (!dup) words.push_back({idx, p});
    for (int i = len - 1; i >= 0; --i) {
      if (++idx[static_cast<std::size_t>(i)] < static_cast<int>(letters.size())) break;
      idx[static_cast<std::size_t>(i)] = 0;
    }
  }

  auto solve = [&](const std::vector<std::size_t>& keep, std::vector<CMatrix>& coeffs) {
    CMatrix basis(m * m, static_cast<Eigen::Index>(keep.size()));
    for (std::size_t k = 0; k < keep.size(); ++k)
      basis.col(static_cast<Eigen::Index>(k)) = words[keep[k]].product.reshaped();
    CMatrix rhs(m * m, n * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) rhs.col(i * n + j) = x.block(i * m, j * m, m, m).reshaped();
    const CMatrix sol = basis.completeOrthogonalDecomposition().solve(rhs);
    coeffs.assign(keep.size(), CMatrix::Zero(n, n));
    for (std::size_t k = 0; k < keep.size(); ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) coeffs[k](i, j) = sol(static_cast<Eigen::Index>(k), i * n + j);
    return (basis * sol - rhs).norm();
  };

  std::vector<std::size_t> keep(words.size());
  std::iota(keep.begin(), keep.end(), 0);
  std::vector<CMatrix> coeffs;
  if (solve(keep, coeffs) > res_tol) return std::nullopt;
  std::vector<std::size_t> order(keep.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return coeffs[a].norm() > coeffs[b].norm(); });
  std::vector<std::size_t> nonzero;
  for (std::size_t k : order)
    if (coeffs[k].norm() > 1e-13) nonzero.push_back(keep[k]);
  if (nonzero.empty()) nonzero.push_back(keep[order[0]]);
  if (static_cast<int>(nonzero.size()) > max_words) {
    std::vector<std::size_t> pruned(nonzero.begin(), nonzero.begin() + max_words);
    std::vector<CMatrix> pc;
    if (solve(pruned, pc) <= res_tol) nonzero = pruned;
    else if (static_cast<int>(nonzero.size()) > 4 * max_words) return std::nullopt;
  }
  if (solve(nonzero, coeffs) > res_tol) return std::nullopt;

  const auto k = static_cast<Eigen::Index>(nonzero.size());
  FactorizationCertificate c;
  c.n = n;
  c.block = static_cast<int>(m);
  c.algebra = "letters";
  CMatrix a0(n, n * k), ad(n * k, n);
  for (Eigen::Index w = 0; w < k; ++w) {
    a0.middleCols(w * n, n) = coeffs[static_cast<std::size_t>(w)];
    ad.middleRows(w * n, n) = CMatrix::Identity(n, n);
  }
  c.alpha.push_back(a0);
  for (int i = 0; i < len; ++i) {
    std::vector<CMatrix> diag;
    for (Eigen::Index w = 0; w < k; ++w)
      for (int a = 0; a < n; ++a)
        diag.push_back(letters[static_cast<std::size_t>(words[nonzero[static_cast<std::size_t>(w)]].letters[static_cast<std::size_t>(i)])]);
    c.diagonals.push_back(diag);
    c.tags.push_back(std::vector<int>(diag.size(), -1));
    c.alpha.push_back(i + 1 < len ? CMatrix(CMatrix::Identity(n * k, n * k)) : ad);
  }
  c.claimed_bound = certificate_bound(c);
  return c;
}

FactorizationCertificate pad_to(FactorizationCertificate c, int degree, const CMatrix& unit) {
  while (c.degree() < degree) {
    c.diagonals.push_back(std::vector<CMatrix>(static_cast<std::size_t>(c.n), unit));
    c.tags.push_back(std::vector<int>(static_cast<std::size_t>(c.n), -1));
    c.alpha.push_back(CMatrix::Identity(c.n, c.n));
  }
  c.claimed_bound = certificate_bound(c);
  return c;
}

// Minimizes ‖α_j‖ with the other factors fixed; returns false when nothing improved.
bool improve_factor(FactorizationCertificate& c, int j, const CMatrix& x, double res_tol, double tol) {
  const int m = c.block;
  const int d = c.degree();
  const Eigen::Index nm = static_cast<Eigen::Index>(c.n) * m;
  // left = α₀D₁⋯α_{j−1}D_j, right = D_{j+1}α_{j+1}⋯α_d.
  CMatrix left = CMatrix::Identity(nm, nm);
  if (j > 0) {
    left = kron(c.alpha[0], identity(static_cast<std::size_t>(m)));
    for (int i = 0; i < j; ++i) {
      times_diagonal(left, c.diagonals[static_cast<std::size_t>(i)], m);
      if (i + 1 < j) left = times_scalar(left, c.alpha[static_cast<std::size_t>(i + 1)], m);
    }
  }
  CMatrix right;
  if (j < d) {
    const auto rows = static_cast<Eigen::Index>(c.diagonals[static_cast<std::size_t>(j)].size());
    CMatrix r = CMatrix::Identity(rows * m, rows * m);
    for (int i = j; i < d; ++i) {
      times_diagonal(r, c.diagonals[static_cast<std::size_t>(i)], m);
      r = times_scalar(r, c.alpha[static_cast<std::size_t>(i + 1)], m);
    }
    right = r;
  } else {
    right = CMatrix::Identity(nm, nm);
  }
  CMatrix& a = c.alpha[static_cast<std::size_t>(j)];
  const Eigen::Index p = a.rows(), q = a.cols();
  if (p * q > 1600) return false;
  // Column (u, v) of the linear map α ↦ left (α ⊗ I) right.
  CMatrix lin(nm * nm, p * q);
  for (Eigen::Index u = 0; u < p; ++u)
    for (Eigen::Index v = 0; v < q; ++v)
      lin.col(u * q + v) = (left.middleCols(u * m, m) * right.middleRows(v * m, m)).reshaped();
  Eigen::BDCSVD<CMatrix> svd(lin, Eigen::ComputeFullV);
  const RVector& s = svd.singularValues();
  Eigen::Index rank = 0;
  while (rank < s.size() && s(rank) > 1e-10 * std::max(1.0, s(0))) ++rank;
  const Eigen::Index nullity = std::min<Eigen::Index>(p * q - rank, 150);
  if (nullity <= 0) return false;

  LmiProblem lmi;
  const int blk = lmi.add_block(static_cast<int>(p + q));
  const int t = lmi.add_variable(-1.0);
  for (Eigen::Index i = 0; i < p + q; ++i) lmi.add_term(t, blk, static_cast<int>(i), static_cast<int>(i), 1.0);
  for (Eigen::Index u = 0; u < p; ++u)
    for (Eigen::Index v = 0; v < q; ++v)
      lmi.add_constant(blk, static_cast<int>(u), static_cast<int>(p + v), a(u, v));
  std::vector<CMatrix> dirs;
  for (Eigen::Index k = 0; k < nullity; ++k) {
    const CVector col = svd.matrixV().col(rank + k);
    CMatrix dir(p, q);
    for (Eigen::Index u = 0; u < p; ++u)
      for (Eigen::Index v = 0; v < q; ++v) dir(u, v) = col(u * q + v);
    const int re = lmi.add_variable(0.0), im = lmi.add_variable(0.0);
    for (Eigen::Index u = 0; u < p; ++u)
      for (Eigen::Index v = 0; v < q; ++v) {
        if (dir(u, v) == Complex(0.0, 0.0)) continue;
        lmi.add_term(re, blk, static_cast<int>(u), static_cast<int>(p + v), dir(u, v));
        lmi.add_term(im, blk, static_cast<int>(u), static_cast<int>(p + v), Complex(0.0, 1.0) * dir(u, v));
      }
    dirs.push_back(dir);
  }
  SdpOptions o;
  o.tol = tol;
  o.feas_tol = std::min(tol, 1e-9);
  LmiSolution sol;
  try {
    sol = solve_lmi(lmi, o);
  } catch (const std::exception&) {
    return false;
  }
  if (!sol.optimal()) return false;
  CMatrix cand = a;
  for (std::size_t k = 0; k < dirs.size(); ++k)
    cand += Complex(sol.values(static_cast<Eigen::Index>(2 * k + 1)), sol.values(static_cast<Eigen::Index>(2 * k + 2))) * dirs[k];
  if (op_norm(cand) >= op_norm(a) * (1.0 - 1e-12)) return false;
  const CMatrix old = a;
  a = cand;
  if (residual_of(c, x) > res_tol) {
    a = old;
    return false;
  }
  return true;
}

void refine(FactorizationCertificate& c, const CMatrix& x, int iterations, Rng& rng, double res_tol, double tol) {
  std::vector<int> order(static_cast<std::size_t>(c.degree() + 1));
  std::iota(order.begin(), order.end(), 0);
  for (int it = 0; it < iterations; ++it) {
    std::shuffle(order.begin(), order.end(), rng);
    bool any = false;
    for (int j : order) any = improve_factor(c, j, x, res_tol, tol) || any;
    if (!any) break;
  }
  c.claimed_bound = certificate_bound(c);
}

}  // namespace

BpGaugeResult bp_gauge(const CMatrix& x, int n, const std::vector<CMatrix>& letters, int d, const BpGaugeOptions& options,
                       const std::optional<FactorizationCertificate>& warm) {
  if (d < 1) throw std::invalid_argument("bp_gauge: d must be >= 1");
  if (letters.empty()) throw std::invalid_argument("bp_gauge: no letters");
  const Eigen::Index m = letters[0].rows();
  for (const auto& e : letters)
    if (e.rows() != m || e.cols() != m) throw std::invalid_argument("bp_gauge: letters must share a square size");
  if (x.rows() != n * m || x.cols() != n * m) throw std::invalid_argument("bp_gauge: x has the wrong size");
  const CMatrix unit = CMatrix::Identity(m, m);
  if (std::none_of(letters.begin(), letters.end(), [&](const CMatrix& e) { return (e - unit).norm() <= 1e-12; }))
    throw std::invalid_argument("bp_gauge: the unit must be one of the letters");

  const double res_tol = 1e-9 * (1.0 + op_norm(x));
  std::optional<FactorizationCertificate> best;
  auto consider = [&](const FactorizationCertificate& c) {
    if (residual_of(c, x) > res_tol) return;
    if (!best || certificate_bound(c) < certificate_bound(*best)) best = c;
  };
  for (int len = 1; len <= d; ++len) {
    Rng rng(derive_seed(options.seed, static_cast<std::uint64_t>(len)));
    if (best) {
      FactorizationCertificate padded = pad_to(*best, len, unit);
      best = padded;
      refine(padded, x, options.iterations, rng, res_tol, options.tol);
      consider(padded);
    }
    if (auto cold = cold_start(x, n, letters, len, options.max_words, res_tol)) {
      refine(*cold, x, options.iterations, rng, res_tol, options.tol);
      consider(*cold);
    }
    if (warm && warm->degree() == len) {
      if (warm->n != n || warm->block != m) throw std::invalid_argument("bp_gauge: warm certificate has the wrong shape");
      FactorizationCertificate w = *warm;
      consider(w);
      refine(w, x, options.iterations, rng, res_tol, options.tol);
      consider(w);
    }
  }
  if (!best) return {std::numeric_limits<double>::infinity(), {}, std::numeric_limits<double>::infinity()};
  best->claimed_bound = certificate_bound(*best);
  return {best->claimed_bound, *best, residual_of(*best, x)};
}

// ---------------------------------------------------------------------------
// aconv
// ---------------------------------------------------------------------------

FiniteAlgebra l1_group_algebra(const GroupPtr& g) {
  FiniteAlgebra a;
  a.dim = g->order();
  a.name = "l1(" + g->name() + ")";
  a.mul = [g](const CVector& x, const CVector& y) {
    CVector z = CVector::Zero(g->order());
    for (int s = 0; s < g->order(); ++s) {
      if (x(s) == Complex(0.0, 0.0)) continue;
      for (int t = 0; t < g->order(); ++t) z(g->mul(s, t)) += x(s) * y(t);
    }
    return z;
  };
  a.norm = [](const CVector& x) { return x.cwiseAbs().sum(); };
  for (int s = 0; s < g->order(); ++s) {
    CVector e = CVector::Zero(g->order());
    e(s) = 1.0;
    a.vertices.push_back(e);
  }
  return a;
}

double aconv_direction_gauge(const std::vector<CVector>& words, const CVector& x, double tol) {
  if (words.empty()) return std::numeric_limits<double>::infinity();
  const Eigen::Index dim = x.size();
  CMatrix w(dim, static_cast<Eigen::Index>(words.size()));
  for (std::size_t k = 0; k < words.size(); ++k) w.col(static_cast<Eigen::Index>(k)) = words[k];
  const auto cod = w.completeOrthogonalDecomposition();
  if ((w * cod.solve(x) - x).norm() > 1e-9 * (1.0 + x.norm())) return std::numeric_limits<double>::infinity();

  // Independent coordinate constraints only: rotate by the left singular basis.
  Eigen::BDCSVD<CMatrix> svd(w, Eigen::ComputeThinU);
  Eigen::Index rank = 0;
  while (rank < svd.singularValues().size() && svd.singularValues()(rank) > 1e-10 * std::max(1.0, svd.singularValues()(0))) ++rank;
  const CMatrix u = svd.matrixU().leftCols(rank);
  const CMatrix wr = u.adjoint() * w;
  const CVector xr = u.adjoint() * x;

  SdpProblem p;
  std::vector<int> blocks;
  for (std::size_t k = 0; k < words.size(); ++k) {
    blocks.push_back(p.add_block(2));
    p.objective.add(blocks.back(), 0, 0, 0.5);
    p.objective.add(blocks.back(), 1, 1, 0.5);
  }
  for (Eigen::Index r = 0; r < rank; ++r) {
    BlockSparse re, im;
    for (std::size_t k = 0; k < words.size(); ++k) {
      const Complex a = wr(r, static_cast<Eigen::Index>(k));
      if (std::abs(a) < 1e-15) continue;
      // ⟨A, X⟩ = 2 Re(conj(A₀₁)·c); these give Re(a c) and Im(a c).
      re.add(blocks[k], 0, 1, std::conj(a) / 2.0);
      im.add(blocks[k], 0, 1, Complex(0.0, 1.0) * std::conj(a) / 2.0);
    }
    p.add_constraint(re, xr(r).real());
    p.add_constraint(im, xr(r).imag());
  }
  SdpOptions o;
  o.tol = tol;
  o.feas_tol = std::min(tol, 1e-9);
  const SdpSolution s = sdp_solve(p, o);
  require_optimal(s, "aconv_direction_gauge");
  return s.primal_objective;
}

AconvResult aconv_gauge(const FiniteAlgebra& a, const std::vector<CVector>& beta, int d, int directions, std::uint64_t seed) {
  if (d < 1) throw std::invalid_argument("aconv_gauge: d must be >= 1");
  for (const auto& b : beta)
    if (b.size() != a.dim) throw std::invalid_argument("aconv_gauge: β element has the wrong dimension");
  AconvResult r;
  std::vector<CVector> products;
  auto add_unique = [&](std::vector<CVector>& into, const CVector& v) {
    for (const auto& o : into)
      if ((o - v).cwiseAbs().maxCoeff() <= 1e-12 * (1.0 + v.cwiseAbs().maxCoeff())) return false;
    into.push_back(v);
    return true;
  };
  std::vector<CVector> level = {};
  for (const auto& b : beta) add_unique(level, b);
  for (const auto& v : level) add_unique(products, v);
  for (int k = 2; k <= d; ++k) {
    std::vector<CVector> next;
    for (const auto& p : level)
      for (const auto& b : beta) {
        add_unique(next, a.mul(p, b));
        if (next.size() > 10000) throw std::invalid_argument("aconv_gauge: more than 10⁴ distinct products");
      }
    level = next;
    for (const auto& v : level) add_unique(products, v);
  }
  r.product_count = static_cast<int>(products.size());
  CMatrix w(a.dim, static_cast<Eigen::Index>(products.size()));
  for (std::size_t k = 0; k < products.size(); ++k) w.col(static_cast<Eigen::Index>(k)) = products[k];
  Eigen::Index rank = 0;
  if (!products.empty()) {
    Eigen::BDCSVD<CMatrix> svd(w);
    while (rank < svd.singularValues().size() && svd.singularValues()(rank) > 1e-10 * std::max(1.0, svd.singularValues()(0))) ++rank;
  }
  r.spans = rank == a.dim;
  if (!r.spans) {
    r.value = std::numeric_limits<double>::infinity();
    return r;
  }

  auto score = [&](const CVector& x) {
    const double nx = a.norm(x);
    const double g = aconv_direction_gauge(products, x / nx);
    r.per_direction.push_back(g);
    return g;
  };
  for (const auto& v : a.vertices) r.value = std::max(r.value, score(v));
  r.exact = !a.vertices.empty();
  Rng rng(derive_seed(seed, 0));
  CVector best_dir;
  double best_random = -1.0;
  for (int k = 0; k < directions; ++k) {
    const CVector x = random_gaussian(static_cast<std::size_t>(a.dim), 1, rng).col(0);
    const double g = score(x);
    if (g > best_random) {
      best_random = g;
      best_dir = x / a.norm(x);
    }
    r.value = std::max(r.value, g);
  }
  // Local refinement: shrinking random perturbations around the best random direction.
  double step = 0.3;
  for (int k = 0; k < 3 * std::min(directions, 10); ++k, step *= 0.8) {
    const CVector x = best_dir + step * random_gaussian(static_cast<std::size_t>(a.dim), 1, rng).col(0);
    const double g = score(x);
    if (g > best_random) {
      best_random = g;
      best_dir = x / a.norm(x);
    }
    r.value = std::max(r.value, g);
  }
  return r;
}

// ---------------------------------------------------------------------------

CoefficientFactorization coefficient_factorization(const GroupPtr& g, const CVector& xi, const CVector& eta, int n_factors,
                                                   std::uint64_t seed) {
  const int order = g->order();
  if (n_factors < 1) throw std::invalid_argument("coefficient_factorization: N must be >= 1");
  if (xi.size() != order || eta.size() != order) throw std::invalid_argument("coefficient_factorization: ξ, η must have length |G|");
  if (xi.norm() == 0.0 || eta.norm() == 0.0) throw std::invalid_argument("coefficient_factorization: ξ, η must be nonzero");
  const GroupRep lam = regular_rep(g);
  const GroupFunction f = coefficient_fn(lam, xi, eta);
  const CVector xu = xi / xi.norm(), eu = eta / eta.norm();

  CoefficientFactorization out;
  out.k = xi.norm() * eta.norm();
  out.factors.assign(static_cast<std::size_t>(n_factors), std::vector<CMatrix>(static_cast<std::size_t>(order)));
  for (int t = 0; t < order; ++t) {
    if (n_factors == 1) {
      out.factors[0][static_cast<std::size_t>(t)] = eu.adjoint() * lam(t) * xu;
      continue;
    }
    out.factors[0][static_cast<std::size_t>(t)] = eu.adjoint() * lam(t);
    for (int i = 1; i + 1 < n_factors; ++i) out.factors[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)] = lam(t);
    out.factors[static_cast<std::size_t>(n_factors - 1)][static_cast<std::size_t>(t)] = lam(t) * xu;
  }
  for (const auto& fi : out.factors)
    for (const auto& m : fi) out.max_factor_norm = std::max(out.max_factor_norm, op_norm(m));

  auto check = [&](const std::vector<int>& tuple) {
    int prod = g->identity();
    CMatrix acc = out.factors[0][static_cast<std::size_t>(tuple[0])];
    prod = tuple[0];
    for (int i = 1; i < n_factors; ++i) {
      acc = acc * out.factors[static_cast<std::size_t>(i)][static_cast<std::size_t>(tuple[static_cast<std::size_t>(i)])];
      prod = g->mul(prod, tuple[static_cast<std::size_t>(i)]);
    }
    out.max_error = std::max(out.max_error, std::abs(out.k * acc(0, 0) - f.values(prod)));
    ++out.checked;
  };
  const double total = std::pow(static_cast<double>(order), n_factors);
  std::vector<int> tuple(static_cast<std::size_t>(n_factors), 0);
  if (total <= 1e5) {
    out.exhaustive = true;
    for (long long k = 0; k < static_cast<long long>(total); ++k) {
      check(tuple);
      for (int i = n_factors - 1; i >= 0; --i) {
        if (++tuple[static_cast<std::size_t>(i)] < order) break;
        tuple[static_cast<std::size_t>(i)] = 0;
      }
    }
  } else {
    Rng rng(derive_seed(seed, 0));
    std::uniform_int_distribution<int> pick(0, order - 1);
    for (int k = 0; k < 10000; ++k) {
      for (auto& t : tuple) t = pick(rng);
      check(tuple);
    }
  }
  return out;
}

}  // namespace simdeg
