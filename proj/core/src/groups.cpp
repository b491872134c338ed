#include "simdeg/groups.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <deque>
#include <functional>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "simdeg/opspace.hpp"
#include "simdeg/sdp.hpp"

namespace simdeg {

// ---------------------------------------------------------------------------
// FiniteGroup
// ---------------------------------------------------------------------------

namespace {

std::vector<int> reachable(const FiniteGroup& g, const std::vector<int>& gamma, std::vector<int>* dist_out) {
  std::vector<int> dist(static_cast<std::size_t>(g.order()), -1);
  std::deque<int> queue;
  dist[static_cast<std::size_t>(g.identity())] = 0;
  queue.push_back(g.identity());
  while (!queue.empty()) {
    const int x = queue.front();
    queue.pop_front();
    for (int s : gamma) {
      const int y = g.mul(x, s);
      if (dist[static_cast<std::size_t>(y)] < 0) {
        dist[static_cast<std::size_t>(y)] = dist[static_cast<std::size_t>(x)] + 1;
        queue.push_back(y);
      }
    }
  }
  if (dist_out) *dist_out = dist;
  return dist;
}

}  // namespace

FiniteGroup::FiniteGroup(std::vector<std::vector<int>> table, std::vector<int> generators, std::string name)
    : table_(std::move(table)), gens_(std::move(generators)), name_(std::move(name)) {
  const int n = static_cast<int>(table_.size());
  if (n == 0) throw std::invalid_argument("FiniteGroup: empty table");
  for (const auto& row : table_) {
    if (static_cast<int>(row.size()) != n) throw std::invalid_argument("FiniteGroup: table is not square");
    for (int v : row)
      if (v < 0 || v >= n) throw std::invalid_argument("FiniteGroup: table entry out of range");
  }
  e_ = -1;
  for (int a = 0; a < n && e_ < 0; ++a) {
    bool ok = true;
    for (int b = 0; b < n && ok; ++b) ok = mul(a, b) == b && mul(b, a) == b;
    if (ok) e_ = a;
  }
  if (e_ < 0) throw std::invalid_argument("FiniteGroup: no identity element");
  inv_.assign(static_cast<std::size_t>(n), -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (mul(a, b) == e_) {
        if (mul(b, a) != e_) throw std::invalid_argument("FiniteGroup: one-sided inverse");
        inv_[static_cast<std::size_t>(a)] = b;
        break;
      }
  for (int a = 0; a < n; ++a)
    if (inv_[static_cast<std::size_t>(a)] < 0) throw std::invalid_argument("FiniteGroup: element without inverse");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (mul(mul(a, b), c) != mul(a, mul(b, c))) throw std::invalid_argument("FiniteGroup: table is not associative");
  for (int s : gens_)
    if (s < 0 || s >= n) throw std::invalid_argument("FiniteGroup: generator out of range");
  const auto dist = reachable(*this, gens_, nullptr);
  if (std::any_of(dist.begin(), dist.end(), [](int d) { return d < 0; }))
    throw std::invalid_argument("FiniteGroup: generators do not generate");
}

bool FiniteGroup::is_abelian() const {
  for (int a = 0; a < order(); ++a)
    for (int b = a + 1; b < order(); ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

int FiniteGroup::element_order(int g) const {
  int k = 1;
  for (int x = g; x != e_; x = mul(x, g)) ++k;
  return k;
}

GroupPtr cyclic_group(int m) {
  if (m < 1) throw std::invalid_argument("cyclic group order must be >= 1");
  std::vector<std::vector<int>> t(static_cast<std::size_t>(m), std::vector<int>(static_cast<std::size_t>(m)));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) t[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = (a + b) % m;
  std::vector<int> gens;
  if (m > 1) gens.push_back(1);
  return std::make_shared<const FiniteGroup>(std::move(t), gens, "cyclic:" + std::to_string(m));
}

GroupPtr dihedral_group(int m) {
  if (m < 1) throw std::invalid_argument("dihedral parameter must be >= 1");
  const int n = 2 * m;
  std::vector<std::vector<int>> t(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      const int a = x % m, b = x / m, c = y % m, d = y / m;
      const int rot = ((a + (b ? -c : c)) % m + m) % m;
      t[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = rot + m * ((b + d) % 2);
    }
  std::vector<int> gens;
  if (m > 1) gens.push_back(1);
  gens.push_back(m);
  return std::make_shared<const FiniteGroup>(std::move(t), gens, "dihedral:" + std::to_string(m));
}

GroupPtr symmetric_group(int k) {
  if (k < 1) throw std::invalid_argument("symmetric group degree must be >= 1");
  std::vector<std::vector<int>> perms;
  std::vector<int> p(static_cast<std::size_t>(k));
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  auto index_of = [&](const std::vector<int>& q) {
    return static_cast<int>(std::lower_bound(perms.begin(), perms.end(), q) - perms.begin());
  };
  const std::size_t n = perms.size();
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  std::vector<int> comp(static_cast<std::size_t>(k));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      for (int i = 0; i < k; ++i) comp[static_cast<std::size_t>(i)] = perms[a][static_cast<std::size_t>(perms[b][static_cast<std::size_t>(i)])];
      t[a][b] = index_of(comp);
    }
  std::vector<int> gens;
  if (k > 1) {
    std::vector<int> swap(static_cast<std::size_t>(k)), cycle(static_cast<std::size_t>(k));
    std::iota(swap.begin(), swap.end(), 0);
    std::swap(swap[0], swap[1]);
    for (int i = 0; i < k; ++i) cycle[static_cast<std::size_t>(i)] = (i + 1) % k;
    gens.push_back(index_of(swap));
    if (k > 2) gens.push_back(index_of(cycle));
  }
  return std::make_shared<const FiniteGroup>(std::move(t), gens, "sym:" + std::to_string(k));
}

GroupPtr direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  const int na = a.order(), nb = b.order();
  const int n = na * nb;
  std::vector<std::vector<int>> t(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      t[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb);
  std::vector<int> gens;
  for (int g : a.generators()) gens.push_back(g * nb + b.identity());
  for (int g : b.generators()) gens.push_back(a.identity() * nb + g);
  std::string name = a.name();
  if (name.rfind("prod:", 0) != 0) name = "prod:" + name;
  return std::make_shared<const FiniteGroup>(std::move(t), gens, name + "," + b.name());
}

namespace {

int parse_int(const std::string& s, const std::string& spec) {
  int v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw std::invalid_argument("group spec '" + spec + "': expected an integer, got '" + s + "'");
  return v;
}

long long factorial_capped(int k) {
  long long f = 1;
  for (int i = 2; i <= k; ++i) {
    f *= i;
    if (f > 1'000'000) return f;
  }
  return f;
}

struct Atom {
  std::string kind;
  int arg;
  long long order;
};

Atom parse_atom(const std::string& s, const std::string& spec) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("group spec '" + spec + "': missing ':' in '" + s + "'");
  Atom a{s.substr(0, colon), parse_int(s.substr(colon + 1), spec), 0};
  if (a.arg < 1) throw std::invalid_argument("group spec '" + spec + "': parameter must be >= 1");
  if (a.kind == "cyclic")
    a.order = a.arg;
  else if (a.kind == "dihedral")
    a.order = 2LL * a.arg;
  else if (a.kind == "sym")
    a.order = factorial_capped(a.arg);
  else
    throw std::invalid_argument("group spec '" + spec + "': unknown family '" + a.kind + "'");
  return a;
}

GroupPtr build_atom(const Atom& a) {
  if (a.kind == "cyclic") return cyclic_group(a.arg);
  if (a.kind == "dihedral") return dihedral_group(a.arg);
  return symmetric_group(a.arg);
}

}  // namespace

GroupPtr make_group(const std::string& spec, int order_cap) {
  std::vector<Atom> atoms;
  if (spec.rfind("prod:", 0) == 0) {
    std::stringstream ss(spec.substr(5));
    std::string part;
    while (std::getline(ss, part, ',')) atoms.push_back(parse_atom(part, spec));
    if (atoms.empty()) throw std::invalid_argument("group spec '" + spec + "': empty product");
  } else {
    atoms.push_back(parse_atom(spec, spec));
  }
  long long order = 1;
  for (const Atom& a : atoms) {
    order *= a.order;
    if (order > order_cap) {
      std::ostringstream msg;
      msg << "group spec '" << spec << "': order exceeds the cap of " << order_cap;
      throw std::invalid_argument(msg.str());
    }
  }
  GroupPtr g = build_atom(atoms[0]);
  for (std::size_t i = 1; i < atoms.size(); ++i) g = direct_product(*g, *build_atom(atoms[i]));
  if (atoms.size() == 1 && spec.rfind("prod:", 0) == 0)
    g = std::make_shared<const FiniteGroup>(g->table(), g->generators(), spec);
  return g;
}

std::optional<int> word_diameter(const FiniteGroup& g, const std::vector<int>& gamma) {
  for (int s : gamma)
    if (s < 0 || s >= g.order()) throw std::invalid_argument("word_diameter: generator out of range");
  std::vector<int> dist;
  reachable(g, gamma, &dist);
  int d = 0;
  for (int v : dist) {
    if (v < 0) return std::nullopt;
    d = std::max(d, v);
  }
  return d;
}

// ---------------------------------------------------------------------------
// Representations
// ---------------------------------------------------------------------------

GroupRep::GroupRep(GroupPtr group, std::vector<CMatrix> images, double tol)
    : group_(std::move(group)), images_(std::move(images)) {
  if (!group_) throw std::invalid_argument("GroupRep: null group");
  if (static_cast<int>(images_.size()) != group_->order())
    throw std::invalid_argument("GroupRep: image count does not match the group order");
  const Eigen::Index m = images_[0].rows();
  for (const auto& x : images_)
    if (x.rows() != m || x.cols() != m || !all_finite(x))
      throw std::invalid_argument("GroupRep: images must be finite square matrices of a common size");
  const double scale = std::max(1.0, std::pow(sup_norm(), 2));
  const CMatrix id = CMatrix::Identity(m, m);
  if ((images_[static_cast<std::size_t>(group_->identity())] - id).cwiseAbs().maxCoeff() > tol * scale)
    throw std::invalid_argument("GroupRep: π(e) is not the identity");
  for (int s = 0; s < group_->order(); ++s)
    for (int t = 0; t < group_->order(); ++t) {
      const double err = (images_[static_cast<std::size_t>(group_->mul(s, t))] -
                          images_[static_cast<std::size_t>(s)] * images_[static_cast<std::size_t>(t)])
                             .cwiseAbs()
                             .maxCoeff();
      if (err > tol * scale) {
        std::ostringstream msg;
        msg << "GroupRep: π(st) ≠ π(s)π(t) for s=" << s << ", t=" << t << " (error " << err << ")";
        throw std::invalid_argument(msg.str());
      }
    }
}

double GroupRep::sup_norm() const {
  double s = 0.0;
  for (const auto& x : images_) s = std::max(s, op_norm(x));
  return s;
}

bool GroupRep::is_unitary(double tol) const {
  for (const auto& x : images_)
    if ((x.adjoint() * x - CMatrix::Identity(x.rows(), x.cols())).cwiseAbs().maxCoeff() > tol) return false;
  return true;
}

GroupRep GroupRep::conjugate(const CMatrix& u) const {
  std::vector<CMatrix> out;
  out.reserve(images_.size());
  for (const auto& x : images_) out.push_back(u.adjoint() * x * u);
  return GroupRep(group_, std::move(out));
}

GroupRep GroupRep::direct_sum(const GroupRep& other) const {
  if (other.group_ != group_ && other.group_->table() != group_->table())
    throw std::invalid_argument("GroupRep::direct_sum: different groups");
  std::vector<CMatrix> out;
  for (std::size_t i = 0; i < images_.size(); ++i) out.push_back(simdeg::direct_sum(images_[i], other.images_[i]));
  return GroupRep(group_, std::move(out));
}

GroupRep regular_rep(const GroupPtr& g) {
  const int n = g->order();
  std::vector<CMatrix> images;
  for (int x = 0; x < n; ++x) {
    CMatrix p = CMatrix::Zero(n, n);
    for (int s = 0; s < n; ++s) p(g->mul(x, s), s) = 1.0;
    images.push_back(std::move(p));
  }
  return GroupRep(g, std::move(images));
}

GroupRep ub_rep_twist(const GroupRep& rho, const CMatrix& s) {
  if (!rho.is_unitary(1e-10)) throw std::invalid_argument("ub_rep_twist: base representation is not unitary");
  if (s.rows() != rho.dim() || s.cols() != rho.dim()) throw std::invalid_argument("ub_rep_twist: S has the wrong size");
  const double c = condition_number(s);
  if (!std::isfinite(c) || c > 1e12) throw std::invalid_argument("ub_rep_twist: S is singular");
  const CMatrix si = s.inverse();
  std::vector<CMatrix> out;
  for (const auto& x : rho.images()) out.push_back(si * x * s);
  return GroupRep(rho.group(), std::move(out));
}

GroupRep tensor_rep(const GroupRep& a, const GroupRep& b, const GroupPtr& product) {
  const int na = a.group()->order(), nb = b.group()->order();
  if (product->order() != na * nb) throw std::invalid_argument("tensor_rep: product group has the wrong order");
  std::vector<CMatrix> out(static_cast<std::size_t>(na * nb));
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < nb; ++j) out[static_cast<std::size_t>(i * nb + j)] = kron(a(i), b(j));
  return GroupRep(product, std::move(out));
}

std::vector<GroupRep> regular_components(const GroupPtr& g, std::uint64_t seed) {
  const int n = g->order();
  Rng rng(derive_seed(seed, 0x1e6u));
  std::normal_distribution<double> gauss;
  // H = Σ c_t R(t) with R(t)δ_s = δ_{st⁻¹} and c_{t⁻¹} = conj(c_t).
  std::vector<Complex> c(static_cast<std::size_t>(n));
  for (int t = 0; t < n; ++t) {
    const int ti = g->inv(t);
    if (ti < t) continue;
    c[static_cast<std::size_t>(t)] = ti == t ? Complex(gauss(rng), 0.0) : Complex(gauss(rng), gauss(rng));
    c[static_cast<std::size_t>(ti)] = std::conj(c[static_cast<std::size_t>(t)]);
  }
  CMatrix h = CMatrix::Zero(n, n);
  for (int t = 0; t < n; ++t)
    for (int s = 0; s < n; ++s) h(g->mul(s, g->inv(t)), s) += c[static_cast<std::size_t>(t)];
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(hermitian_part(h));
  const RVector& ev = eig.eigenvalues();
  const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  const GroupRep lam = regular_rep(g);
  std::vector<GroupRep> out;
  for (Eigen::Index i = 0; i < n;) {
    Eigen::Index j = i + 1;
    while (j < n && ev(j) - ev(j - 1) <= 1e-8 * scale) ++j;
    const CMatrix q = eig.eigenvectors().middleCols(i, j - i);
    std::vector<CMatrix> images;
    for (int t = 0; t < n; ++t) images.push_back(q.adjoint() * lam(t) * q);
    out.emplace_back(g, std::move(images));
    i = j;
  }
  return out;
}

GroupRep random_unitary_rep(const GroupPtr& g, int max_dim, Rng& rng) {
  if (max_dim < 1) throw std::invalid_argument("random_unitary_rep: max_dim must be >= 1");
  const auto parts = regular_components(g, rng());
  std::vector<CMatrix> images(static_cast<std::size_t>(g->order()));
  int dim = 0;
  for (int attempt = 0; attempt < 4 * static_cast<int>(parts.size()); ++attempt) {
    std::uniform_int_distribution<std::size_t> pick(0, parts.size() - 1);
    const GroupRep& p = parts[pick(rng)];
    if (dim + p.dim() > max_dim) continue;
    for (int t = 0; t < g->order(); ++t)
      images[static_cast<std::size_t>(t)] =
          dim == 0 ? p(t) : simdeg::direct_sum(images[static_cast<std::size_t>(t)], p(t));
    dim += p.dim();
    if (dim == max_dim) break;
  }
  if (dim == 0) {
    // Nothing fits: fall back to the smallest component.
    const auto smallest = std::min_element(parts.begin(), parts.end(),
                                           [](const GroupRep& a, const GroupRep& b) { return a.dim() < b.dim(); });
    images = smallest->images();
    dim = smallest->dim();
  }
  const CMatrix u = haar_unitary(static_cast<std::size_t>(dim), rng);
  for (auto& x : images) x = u.adjoint() * x * u;
  return GroupRep(g, std::move(images));
}

// ---------------------------------------------------------------------------
// Group algebra
// ---------------------------------------------------------------------------

GroupAlgElement::GroupAlgElement(GroupPtr group, int k) : group_(std::move(group)), k_(k) {
  if (!group_ || k < 1) throw std::invalid_argument("GroupAlgElement: invalid group or block size");
  coeffs_.assign(static_cast<std::size_t>(group_->order()), CMatrix::Zero(k, k));
}

GroupAlgElement::GroupAlgElement(GroupPtr group, std::vector<CMatrix> coeffs)
    : group_(std::move(group)), coeffs_(std::move(coeffs)) {
  if (!group_ || static_cast<int>(coeffs_.size()) != group_->order())
    throw std::invalid_argument("GroupAlgElement: coefficient count does not match the group order");
  k_ = static_cast<int>(coeffs_[0].rows());
  for (const auto& c : coeffs_)
    if (c.rows() != k_ || c.cols() != k_) throw std::invalid_argument("GroupAlgElement: inconsistent block size");
}

GroupAlgElement GroupAlgElement::delta(const GroupPtr& group, int g, int k) {
  GroupAlgElement x(group, k);
  x[g] = CMatrix::Identity(k, k);
  return x;
}

GroupAlgElement GroupAlgElement::operator+(const GroupAlgElement& o) const {
  GroupAlgElement r = *this;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] += o.coeffs_[i];
  return r;
}

GroupAlgElement GroupAlgElement::operator-(const GroupAlgElement& o) const { return *this + o * Complex(-1.0, 0.0); }

GroupAlgElement GroupAlgElement::operator*(Complex c) const {
  GroupAlgElement r = *this;
  for (auto& x : r.coeffs_) x *= c;
  return r;
}

GroupAlgElement GroupAlgElement::operator*(const GroupAlgElement& o) const {
  if (o.k_ != k_ || o.group_->order() != group_->order())
    throw std::invalid_argument("GroupAlgElement: incompatible operands");
  GroupAlgElement r(group_, k_);
  for (int s = 0; s < group_->order(); ++s) {
    if (coeffs_[static_cast<std::size_t>(s)].isZero(0.0)) continue;
    for (int u = 0; u < group_->order(); ++u)
      r[group_->mul(s, u)] += coeffs_[static_cast<std::size_t>(s)] * o.coeffs_[static_cast<std::size_t>(u)];
  }
  return r;
}

CMatrix GroupAlgElement::represent(const GroupRep& pi) const {
  if (pi.group()->order() != group_->order()) throw std::invalid_argument("represent: group mismatch");
  CMatrix acc = CMatrix::Zero(k_ * pi.dim(), k_ * pi.dim());
  for (int t = 0; t < group_->order(); ++t)
    if (!coeffs_[static_cast<std::size_t>(t)].isZero(0.0)) acc += kron(coeffs_[static_cast<std::size_t>(t)], pi(t));
  return acc;
}

double cstar_norm(const GroupAlgElement& x) { return op_norm(x.represent(regular_rep(x.group()))); }

// ---------------------------------------------------------------------------
// B(G), M₀(G)
// ---------------------------------------------------------------------------

double bg_norm(const GroupFunction& f, double tol) {
  const FiniteGroup& g = *f.group;
  const int n = g.order();
  if (f.values.size() != n) throw std::invalid_argument("bg_norm: function length does not match the group order");
  LmiProblem lmi;
  const int blk = lmi.add_block(2 * n);
  for (int i = 0; i < 2 * n; ++i) lmi.add_constant(blk, i, i, 1.0);
  for (int t = 0; t < n; ++t) {
    const int re = lmi.add_variable(f.values(t).real());
    const int im = lmi.add_variable(-f.values(t).imag());
    for (int s = 0; s < n; ++s) {
      // λ(t) has a 1 at (ts, s).
      lmi.add_term(re, blk, g.mul(t, s), n + s, 1.0);
      lmi.add_term(im, blk, g.mul(t, s), n + s, Complex(0.0, 1.0));
    }
  }
  SdpOptions o;
  o.tol = tol;
  o.feas_tol = std::min(tol, 1e-9);
  const LmiSolution s = solve_lmi(lmi, o);
  require_optimal(s.sdp, "bg_norm");
  return s.objective;
}

CMatrix abelian_characters(const FiniteGroup& g) {
  if (!g.is_abelian()) throw std::invalid_argument("abelian_characters: group is not abelian");
  const int n = g.order();
  const auto& gens = g.generators();
  std::vector<int> orders;
  for (int s : gens) orders.push_back(g.element_order(s));
  CMatrix chars(n, n);
  int found = 0;
  std::vector<int> pick(gens.size(), 0);
  while (true) {
    CVector chi = CVector::Zero(n);
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    chi(g.identity()) = 1.0;
    seen[static_cast<std::size_t>(g.identity())] = true;
    std::deque<int> queue{g.identity()};
    bool ok = true;
    while (!queue.empty() && ok) {
      const int x = queue.front();
      queue.pop_front();
      for (std::size_t i = 0; i < gens.size() && ok; ++i) {
        const Complex root = std::polar(1.0, 2.0 * std::numbers::pi * pick[i] / orders[i]);
        const int y = g.mul(x, gens[i]);
        const Complex v = chi(x) * root;
        if (!seen[static_cast<std::size_t>(y)]) {
          seen[static_cast<std::size_t>(y)] = true;
          chi(y) = v;
          queue.push_back(y);
        } else if (std::abs(chi(y) - v) > 1e-9) {
          ok = false;
        }
      }
    }
    for (int a = 0; a < n && ok; ++a)
      for (int b = 0; b < n && ok; ++b) ok = std::abs(chi(g.mul(a, b)) - chi(a) * chi(b)) < 1e-9;
    if (ok) {
      if (found == n) throw std::logic_error("abelian_characters: more characters than elements");
      chars.row(found++) = chi.transpose();
    }
    std::size_t i = 0;
    while (i < pick.size() && ++pick[i] == orders[i]) pick[i++] = 0;
    if (i == pick.size()) break;
  }
  if (found != n) throw std::logic_error("abelian_characters: character count does not match the order");
  return chars;
}

double bg_norm_fourier_abelian(const GroupFunction& f) {
  const CMatrix chars = abelian_characters(*f.group);
  const CVector c = chars.conjugate() * f.values / static_cast<double>(f.group->order());
  return c.cwiseAbs().sum();
}

CMatrix herz_schur_matrix(const GroupFunction& phi) {
  const FiniteGroup& g = *phi.group;
  const int n = g.order();
  if (phi.values.size() != n) throw std::invalid_argument("herz_schur_matrix: function length mismatch");
  CMatrix m(n, n);
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) m(s, t) = phi.values(g.mul(g.inv(s), t));
  return m;
}

double herz_schur_norm(const GroupFunction& phi, double tol) {
  return gamma2_rowcol_norm(herz_schur_matrix(phi), tol);
}

GroupFunction coefficient_fn(const GroupRep& pi, const CVector& xi, const CVector& eta) {
  if (xi.size() != pi.dim() || eta.size() != pi.dim()) throw std::invalid_argument("coefficient_fn: dimension mismatch");
  GroupFunction f{pi.group(), CVector(pi.group()->order())};
  for (int t = 0; t < pi.group()->order(); ++t) f.values(t) = eta.dot(pi(t) * xi);
  return f;
}

}  // namespace simdeg
