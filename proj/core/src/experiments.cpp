#include "simdeg/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "simdeg/ascent.hpp"
#include "simdeg/factorization.hpp"
#include "simdeg/groups.hpp"
#include "simdeg/matrix.hpp"
#include "simdeg/opspace.hpp"
#include "simdeg/similarity.hpp"

namespace simdeg {

namespace {

struct GridRule {
  double lo;
  double hi;
  bool integer;
};

struct Ctx {
  const ExperimentConfig& cfg;
  GroupPtr group;
  double value;
  std::uint64_t seed;
  Rng rng;
  ResultRecord& rec;

  void le(const std::string& name, double lhs, double rhs, bool hard = true) {
    Assertion a;
    a.name = name;
    a.lhs = lhs;
    a.rhs = rhs;
    a.pass = lhs <= rhs;
    a.margin = rhs - lhs;
    a.hard = hard;
    rec.assertions.push_back(a);
  }
  void measure(const std::string& name, double v) { rec.measurements[name] = v; }
  int ivalue() const { return static_cast<int>(std::lround(value)); }
};

struct Scenario {
  ScenarioInfo info;
  GridRule rule;
  std::function<void(Ctx&)> run;
};

double log_uniform(double lo, double hi, Rng& rng) {
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  return std::exp(u(rng));
}

// Spectral idempotents P_χ = |G|⁻¹ Σ_t conj χ(t) π(t) of a representation of an abelian group.
std::vector<CMatrix> spectral_idempotents(const GroupRep& pi) {
  const CMatrix chars = abelian_characters(*pi.group());
  const int n = pi.group()->order();
  std::vector<CMatrix> out;
  for (int c = 0; c < n; ++c) {
    CMatrix p = CMatrix::Zero(pi.dim(), pi.dim());
    for (int t = 0; t < n; ++t) p += std::conj(chars(c, t)) * pi(t);
    out.push_back(p / static_cast<double>(n));
  }
  return out;
}

// ‖u‖ for u: ℓ∞^m → M_k from below, with ℓ∞^m as the diagonal of M_m.
double commutative_norm_lower(const std::vector<CMatrix>& images, std::uint64_t seed) {
  const auto m = images.size();
  std::vector<CMatrix> inputs;
  for (std::size_t i = 0; i < m; ++i) inputs.push_back(matrix_unit(m, m, i, i));
  return map_norm_estimate(CbMap::from_generators(inputs, images), 4, seed);
}

double unitarity_defect(const GroupRep& pi, const CMatrix& s) {
  const CMatrix si = s.inverse();
  double worst = 0.0;
  for (const auto& x : pi.images()) {
    const CMatrix v = si * x * s;
    worst = std::max(worst, op_norm(v.adjoint() * v - identity(static_cast<std::size_t>(v.rows()))));
  }
  return worst;
}

void dixmier_sweep(Ctx& c) {
  const GroupRep rho = random_unitary_rep(c.group, c.cfg.max_dim, c.rng);
  const CMatrix s0 = random_with_condition(static_cast<std::size_t>(rho.dim()), c.value, c.rng);
  const GroupRep pi = ub_rep_twist(rho, s0);
  const DixmierResult d = dixmier_unitarize(pi);
  const double sup = pi.sup_norm();
  c.measure("dim", rho.dim());
  c.measure("pi_sup", sup);
  c.measure("dixmier_cond", d.cond);
  c.le("unitarity defect of S^-1 pi S <= 1e-8", unitarity_defect(pi, d.s.matrix()), 1e-8);
  c.le("cond(S) <= |pi|^2 (1+1e-6)", d.cond, sup * sup * (1 + 1e-6));
}

void bozejko_equality(Ctx& c) {
  const int n = c.group->order();
  GroupFunction phi{c.group, c.value * random_gaussian(static_cast<std::size_t>(n), 1, c.rng).col(0)};
  const double m0 = herz_schur_norm(phi), b = bg_norm(phi);
  c.measure("m0_norm", m0);
  c.measure("b_norm", b);
  c.le("|M0 - B| <= 1e-5 B", std::abs(m0 - b), 1e-5 * b);
  if (c.group->is_abelian()) {
    const double f = bg_norm_fourier_abelian(phi);
    c.measure("fourier_l1", f);
    c.le("|B - Fourier l1| <= 1e-5 max(1, l1)", std::abs(b - f), 1e-5 * std::max(1.0, f));
    c.le("|M0 - Fourier l1| <= 1e-5 max(1, l1)", std::abs(m0 - f), 1e-5 * std::max(1.0, f));
  }
}

void twirl_certificate(Ctx& c) {
  const auto n = static_cast<std::size_t>(c.ivalue());
  const CMatrix x = random_gaussian(n, n, c.rng);
  const FactorizationCertificate cert = weyl_twirl_certificate(x);
  const Verification v = verify_certificate(cert, x);
  const double xn = op_norm(x);
  c.measure("x_norm", xn);
  c.measure("residual", v.residual);
  c.measure("bound", v.bound);
  c.le("residual <= 1e-10", v.residual, 1e-10);
  c.le("bound <= |x| (1+1e-10)", v.bound, xn * (1 + 1e-10));
}

void amenable_certificate_scenario(Ctx& c) {
  const int n = c.ivalue();
  GroupAlgElement x(c.group, n);
  for (int t = 0; t < c.group->order(); ++t)
    x[t] = random_gaussian(static_cast<std::size_t>(n), static_cast<std::size_t>(n), c.rng);
  x = x * Complex(0.9 / cstar_norm(x), 0.0);
  const FactorizationCertificate cert = amenable_certificate(x);
  const Verification v = verify_certificate(cert, x);
  // Default ξ = η = |G|^{-1/2}𝟙 makes the coefficient ≡ 1, so y = x.
  const double ynorm = cstar_norm(x);
  const double a2 = op_norm(cert.alpha[1]);
  c.measure("residual", v.residual);
  c.measure("bound", v.bound);
  c.measure("a2_norm", a2);
  c.measure("y_cstar", ynorm);
  c.le("residual <= 1e-10", v.residual, 1e-10);
  c.le("bound < 1", v.bound, std::nextafter(1.0, 0.0));
  c.le("| |A2| - cstar(y) | <= 1e-10", std::abs(a2 - ynorm), 1e-10);
}

void tensor_power(Ctx& c) {
  const int big_n = c.ivalue();
  const GroupPtr& g = c.group;
  const int m = g->order();
  const GroupRep rho = random_unitary_rep(g, std::min(c.cfg.max_dim, 2), c.rng);
  const int k = rho.dim();
  const CMatrix s0 = random_with_condition(static_cast<std::size_t>(k), log_uniform(1.0, 3.0, c.rng), c.rng);
  const GroupRep u = ub_rep_twist(rho, s0);
  const double u_cb = hom_cb_norm(u).value;
  const std::vector<CMatrix> p = spectral_idempotents(u);
  const double c_lower = commutative_norm_lower(p, c.seed);

  GroupPtr prod = g;
  GroupRep pi = u;
  for (int i = 1; i < big_n; ++i) {
    prod = direct_product(*prod, *g);
    pi = tensor_rep(pi, u, prod);
  }
  const double pi_cb = hom_cb_norm(pi).value;

  // ‖π|E‖ from below. x_i has Fourier values a_i ∈ ℂ^m; ‖x‖ is the max over
  // character tuples of |Σ_i a_i(χ_i)|.
  const auto kk = static_cast<std::size_t>(k);
  auto embed = [&](const CMatrix& block, int pos) {
    CMatrix out = CMatrix::Identity(1, 1);
    for (int i = 0; i < big_n; ++i) out = kron(out, i == pos ? block : identity(kk));
    return out;
  };
  AscentProblem prob;
  prob.blocks.assign(static_cast<std::size_t>(big_n), AscentBlock{m, 1, BallNorm::Frobenius});
  prob.objective = [&](const MatrixTuple& a) {
    double xnorm = 0.0;
    std::vector<int> idx(static_cast<std::size_t>(big_n), 0);
    const long long tuples = static_cast<long long>(std::pow(m, big_n));
    for (long long t = 0; t < tuples; ++t) {
      Complex s = 0.0;
      for (int i = 0; i < big_n; ++i) s += a[static_cast<std::size_t>(i)](idx[static_cast<std::size_t>(i)], 0);
      xnorm = std::max(xnorm, std::abs(s));
      for (int i = big_n - 1; i >= 0; --i) {
        if (++idx[static_cast<std::size_t>(i)] < m) break;
        idx[static_cast<std::size_t>(i)] = 0;
      }
    }
    if (xnorm < 1e-9) return 0.0;
    CMatrix px = CMatrix::Zero(pi.dim(), pi.dim());
    for (int i = 0; i < big_n; ++i) {
      CMatrix ux = CMatrix::Zero(k, k);
      for (int j = 0; j < m; ++j) ux += a[static_cast<std::size_t>(i)](j, 0) * p[static_cast<std::size_t>(j)];
      px += embed(ux, i);
    }
    return op_norm(px) / xnorm;
  };
  AscentOptions ao;
  ao.restarts = 3;
  ao.seed = c.seed;
  const double pi_e = ascent_lower_bound(prob, ao).value;

  c.measure("base_dim", k);
  c.measure("u_norm_lower", c_lower);
  c.measure("u_cb", u_cb);
  c.measure("pi_cb", pi_cb);
  c.measure("pi_E_lower", pi_e);
  c.le("|pi|_E| <= (1 + 2 N |u|_cb)(1+1e-6)", pi_e, (1.0 + 2.0 * big_n * u_cb) * (1 + 1e-6));
  const double target = std::pow(u_cb, big_n);
  c.le("| |pi|_cb - |u|_cb^N | <= 1e-3 |u|_cb^N", std::abs(pi_cb - target), 1e-3 * target);
}

void triangular_ae(Ctx& c) {
  const int p = c.ivalue();
  const int n = c.cfg.max_dim;
  const auto nn = static_cast<std::size_t>(n);
  const CMatrix s = random_with_condition(2 * nn, 2.0, c.rng);
  const CMatrix si = s.inverse();
  std::vector<CMatrix> inputs = {identity(2 * nn)}, outputs = {identity(2 * nn)};
  for (int j = 0; j < p; ++j) {
    CMatrix a = CMatrix::Zero(2 * n, 2 * n), b = CMatrix::Zero(2 * n, 2 * n);
    a.topRightCorner(n, n) = random_gaussian(nn, nn, c.rng);
    b.topRightCorner(n, n) = random_gaussian(nn, nn, c.rng) / std::sqrt(static_cast<double>(n));
    inputs.push_back(a);
    outputs.push_back(si * b * s);
  }
  const CbMap u = CbMap::from_generators(inputs, outputs);
  require_multiplicative(u);
  const double cb = cb_norm(u);
  const double norm_lower = map_norm_estimate(u, 4, c.seed);
  c.measure("dim_A", p + 1);
  c.measure("u_cb", cb);
  c.measure("u_norm_lower", norm_lower);
  c.measure("ratio", cb / norm_lower);
  c.le("|u| estimate <= |u|_cb (1+1e-6)", norm_lower, cb * (1 + 1e-6) + 1e-9);
  c.le("|u|_cb <= dim(A_E) |u| estimate", cb, (p + 1) * norm_lower, false);
}

void nuclear_upper(Ctx& c) {
  if (!c.group->is_abelian()) throw std::invalid_argument("nuclear-upper needs an abelian group");
  const GroupRep rho = random_unitary_rep(c.group, c.cfg.max_dim, c.rng);
  const CMatrix s0 = random_with_condition(static_cast<std::size_t>(rho.dim()), c.value, c.rng);
  const std::vector<CMatrix> e = spectral_idempotents(ub_rep_twist(rho, s0));
  const HomCbResult cb = hom_cb_norm_idempotents(e);
  const double norm = commutative_norm_lower(e, c.seed);
  c.measure("u_cb", cb.value);
  c.measure("u_norm_lower", norm);
  c.measure("cb_over_norm_sq", cb.value / (norm * norm));
  c.measure("route_discrepancy", cb.discrepancy);
  c.le("|u| estimate <= |u|_cb (1+1e-6)", norm, cb.value * (1 + 1e-6) + 1e-9);
  c.le("|u|_cb <= |u|^2 (1+1e-6)", cb.value, norm * norm * (1 + 1e-6), false);
}

void bp_gauge_scenario(Ctx& c) {
  const int d = c.ivalue();
  const auto n = static_cast<std::size_t>(c.cfg.max_dim);
  const CMatrix x = random_gaussian(n, n, c.rng);
  const std::vector<CMatrix> letters = weyl_design(n);
  BpGaugeOptions o;
  o.seed = c.seed;
  const FactorizationCertificate weyl = weyl_twirl_certificate(x);
  auto warm_for = [&](int len) { return len >= 2 ? std::optional<FactorizationCertificate>(weyl) : std::nullopt; };
  const BpGaugeResult r = bp_gauge(x, 1, letters, d, o, warm_for(d));
  const double xn = op_norm(x);
  c.measure("x_norm", xn);
  c.measure("gauge", r.value);
  c.measure("residual", r.residual);
  c.le("certificate residual <= 1e-8 (1 + |x|)", verify_certificate(r.certificate, x).residual, 1e-8 * (1 + xn));
  c.le("|x| <= gauge + 1e-8", xn, r.value + 1e-8);
  if (d >= 2) c.le("gauge <= Weyl bound |x| (1+1e-8)", r.value, xn * (1 + 1e-8));
  if (d > 1) {
    const double prev = bp_gauge(x, 1, letters, d - 1, o, warm_for(d - 1)).value;
    c.measure("gauge_prev", prev);
    c.le("gauge(d) <= gauge(d-1) + 1e-9", r.value, prev + 1e-9);
  }
}

void aconv_gauge_scenario(Ctx& c) {
  const int d = c.ivalue();
  const FiniteAlgebra a = l1_group_algebra(c.group);
  std::vector<int> gamma = {c.group->identity()};
  for (int s : c.group->generators()) gamma.push_back(s);
  std::vector<CVector> beta;
  for (int s : gamma) beta.push_back(a.vertices[static_cast<std::size_t>(s)]);
  const int diam = *word_diameter(*c.group, gamma);
  const AconvResult r = aconv_gauge(a, beta, d, 4, c.seed);
  const bool finite = std::isfinite(r.value);
  c.measure("diameter", diam);
  c.measure("gauge", r.value);
  c.measure("products", r.product_count);
  c.le("[gauge finite] == [d >= diameter]", finite == (d >= diam) ? 0.0 : 1.0, 0.0);
  if (finite) c.le("|gauge - 1| <= 1e-6", std::abs(r.value - 1.0), 1e-6);
}

void row_inequality(Ctx& c) {
  const int n = c.cfg.max_dim;
  const auto nn = static_cast<std::size_t>(n);
  const CMatrix s = random_with_condition(nn, c.value, c.rng);
  const CMatrix si = s.inverse();
  const CbMap u = CbMap::from_function(n, n, [&](const CMatrix& x) { return CMatrix(si * x * s); });
  std::vector<CMatrix> xs;
  for (int i = 0; i < 3; ++i) xs.push_back(random_gaussian(nn, nn, c.rng));
  const RowInequality r = row_inequality_check(u, xs, std::nullopt, c.seed);
  c.measure("lhs", r.lhs);
  c.measure("rhs", r.rhs);
  c.measure("u_norm_lower", r.u_norm);
  c.le("|sum u(x_i)* u(x_i)|^1/2 <= |u|^2 |sum x_i* x_i|^1/2 (1+1e-8)", r.lhs, r.rhs * (1 + 1e-8));
}

const std::vector<Scenario>& registry() {
  static const std::vector<Scenario> r = {
      {{"dixmier-sweep", "cond(S0)", {1, 2, 4}, "cyclic:2"}, {1, 1e6, false}, dixmier_sweep},
      {{"bozejko-equality", "scale of phi", {1}, "cyclic:4"}, {1e-6, 1e6, false}, bozejko_equality},
      {{"twirl-certificate", "matrix size n", {3}, ""}, {1, 8, true}, twirl_certificate},
      {{"amenable-certificate", "block size n", {2}, "cyclic:3"}, {1, 3, true}, amenable_certificate_scenario},
      {{"tensor-power", "tensor power N", {1, 2}, "cyclic:2"}, {1, 3, true}, tensor_power},
      {{"triangular-AE", "dim E", {1, 2}, ""}, {1, 4, true}, triangular_ae},
      {{"nuclear-upper", "cond(S0)", {1, 2, 4}, "cyclic:3"}, {1, 1e6, false}, nuclear_upper},
      {{"bp-gauge", "length d", {1, 2, 3}, ""}, {1, 3, true}, bp_gauge_scenario},
      {{"aconv-gauge", "length d", {1, 2, 3, 4}, "cyclic:4"}, {1, 12, true}, aconv_gauge_scenario},
      {{"row-inequality", "cond(S)", {1, 2, 4}, ""}, {1, 1e6, false}, row_inequality},
  };
  return r;
}

const Scenario& find_scenario(const std::string& id) {
  for (const auto& s : registry())
    if (s.info.id == id) return s;
  std::ostringstream msg;
  msg << "unknown scenario '" << id << "'; known:";
  for (const auto& s : registry()) msg << ' ' << s.info.id;
  throw std::invalid_argument(msg.str());
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(const std::string& key, const std::string& v) {
  std::istringstream in(v);
  T out{};
  in >> out;
  if (!in || !(in >> std::ws).eof()) throw std::invalid_argument("config: bad value '" + v + "' for " + key);
  return out;
}

}  // namespace

const std::vector<ScenarioInfo>& scenarios() {
  static const std::vector<ScenarioInfo> out = [] {
    std::vector<ScenarioInfo> v;
    for (const auto& s : registry()) v.push_back(s.info);
    return v;
  }();
  return out;
}

void ExperimentConfig::validate() const {
  const Scenario& s = find_scenario(scenario);
  if (grid.empty()) throw std::invalid_argument("config: grid must be nonempty");
  if (grid.size() > 64) throw std::invalid_argument("config: at most 64 grid points");
  for (double v : grid) {
    if (!std::isfinite(v) || v < s.rule.lo || v > s.rule.hi || (s.rule.integer && v != std::round(v))) {
      std::ostringstream msg;
      msg << "config: grid value " << v << " outside the range of " << s.info.grid_meaning << " [" << s.rule.lo << ", "
          << s.rule.hi << "]" << (s.rule.integer ? " (integers)" : "");
      throw std::invalid_argument(msg.str());
    }
  }
  if (samples < 1 || samples > 10000) throw std::invalid_argument("config: samples must be in [1, 10000]");
  if (max_dim < 1 || max_dim > 6) throw std::invalid_argument("config: max_dim must be in [1, 6]");
  if (jobs < 1 || jobs > 256) throw std::invalid_argument("config: jobs must be in [1, 256]");
  if (format != "csv" && format != "json") throw std::invalid_argument("config: format must be csv or json");
  const std::string spec = group.empty() ? s.info.default_group : group;
  if (!spec.empty()) {
    const GroupPtr g = make_group(spec, 24);
    if (scenario == "tensor-power" && (!g->is_abelian() || g->order() > 6))
      throw std::invalid_argument("config: tensor-power needs an abelian base group of order <= 6");
  }
}

void set_config_value(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "scenario") {
    cfg.scenario = value;
  } else if (key == "group") {
    cfg.group = value;
  } else if (key == "grid") {
    cfg.grid.clear();
    std::istringstream in(value);
    std::string item;
    while (std::getline(in, item, ',')) {
      item = trim(item);
      if (!item.empty()) cfg.grid.push_back(parse_number<double>(key, item));
    }
  } else if (key == "samples") {
    cfg.samples = parse_number<int>(key, value);
  } else if (key == "seed") {
    cfg.seed = parse_number<std::uint64_t>(key, value);
  } else if (key == "max_dim") {
    cfg.max_dim = parse_number<int>(key, value);
  } else if (key == "out") {
    cfg.out = value;
  } else if (key == "format") {
    cfg.format = value;
  } else if (key == "jobs") {
    cfg.jobs = parse_number<int>(key, value);
  } else {
    throw std::invalid_argument("config: unknown key '" + key + "'");
  }
}

ExperimentConfig parse_config_text(const std::string& text, ExperimentConfig cfg) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && (value.front() == '"' || value.front() == '\'') && value.back() == value.front())
      value = value.substr(1, value.size() - 2);
    set_config_value(cfg, key, value);
  }
  return cfg;
}

ExperimentConfig load_config_file(const std::string& path, ExperimentConfig base) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str(), std::move(base));
}

bool ResultRecord::hard_pass() const {
  if (!error.empty()) return false;
  return std::all_of(assertions.begin(), assertions.end(), [](const Assertion& a) { return a.pass || !a.hard; });
}

bool ResultRecord::same_result(const ResultRecord& o) const {
  auto same_double = [](double a, double b) { return a == b || (std::isnan(a) && std::isnan(b)); };
  if (scenario != o.scenario || point != o.point || sample != o.sample || inputs != o.inputs || error != o.error) return false;
  if (measurements.size() != o.measurements.size() || assertions.size() != o.assertions.size()) return false;
  for (const auto& [k, v] : measurements) {
    auto it = o.measurements.find(k);
    if (it == o.measurements.end() || !same_double(v, it->second)) return false;
  }
  for (std::size_t i = 0; i < assertions.size(); ++i) {
    const Assertion &a = assertions[i], &b = o.assertions[i];
    if (a.name != b.name || a.pass != b.pass || a.hard != b.hard || !same_double(a.lhs, b.lhs) || !same_double(a.rhs, b.rhs) ||
        !same_double(a.margin, b.margin))
      return false;
  }
  return true;
}

std::vector<ResultRecord> run_scenario(const ExperimentConfig& cfg) {
  cfg.validate();
  const Scenario& scen = find_scenario(cfg.scenario);
  const std::string spec = cfg.group.empty() ? scen.info.default_group : cfg.group;
  const int points = static_cast<int>(cfg.grid.size());
  std::vector<std::vector<ResultRecord>> per_point(static_cast<std::size_t>(points));

  auto run_point = [&](int i) {
    const std::uint64_t point_seed = cfg.seed ^ static_cast<std::uint64_t>(i);
    const GroupPtr g = spec.empty() ? nullptr : make_group(spec, 24);
    auto& out = per_point[static_cast<std::size_t>(i)];
    for (int s = 0; s < cfg.samples; ++s) {
      ResultRecord rec;
      rec.scenario = cfg.scenario;
      rec.point = i;
      rec.sample = s;
      const std::uint64_t sample_seed = derive_seed(point_seed, static_cast<std::uint64_t>(s));
      rec.inputs = {{"grid_value", cfg.grid[static_cast<std::size_t>(i)]},
                    {"grid_meaning", scen.info.grid_meaning},
                    {"group", spec},
                    {"max_dim", cfg.max_dim},
                    {"seed", sample_seed}};
      const auto start = std::chrono::steady_clock::now();
      try {
        Ctx ctx{cfg, g, cfg.grid[static_cast<std::size_t>(i)], sample_seed, Rng(sample_seed), rec};
        scen.run(ctx);
      } catch (const std::exception& e) {
        rec.error = e.what();
      }
      rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      out.push_back(std::move(rec));
    }
  };

  const int workers = std::min(cfg.jobs, points);
  if (workers <= 1) {
    for (int i = 0; i < points; ++i) run_point(i);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (int i = next++; i < points; i = next++) run_point(i);
      });
    for (auto& t : pool) t.join();
  }
  std::vector<ResultRecord> records;
  for (auto& v : per_point)
    for (auto& r : v) records.push_back(std::move(r));
  return records;
}

bool all_hard_pass(const std::vector<ResultRecord>& records) {
  return std::all_of(records.begin(), records.end(), [](const ResultRecord& r) { return r.hard_pass(); });
}

// ---------------------------------------------------------------------------

namespace {

nlohmann::json real_to_json(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double real_from_json(const nlohmann::json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw std::invalid_argument("records_from_json: expected a real, got " + j.dump());
}

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

nlohmann::json to_json(const std::vector<ResultRecord>& records) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : records) {
    nlohmann::json m = nlohmann::json::object(), a = nlohmann::json::array();
    for (const auto& [k, v] : r.measurements) m[k] = real_to_json(v);
    for (const auto& x : r.assertions)
      a.push_back({{"name", x.name},
                   {"lhs", real_to_json(x.lhs)},
                   {"rhs", real_to_json(x.rhs)},
                   {"pass", x.pass},
                   {"margin", real_to_json(x.margin)},
                   {"hard", x.hard}});
    nlohmann::json rec = {{"scenario", r.scenario}, {"point", r.point},      {"sample", r.sample},
                          {"inputs", r.inputs},     {"measurements", m},     {"assertions", a},
                          {"seconds", r.seconds}};
    if (!r.error.empty()) rec["error"] = r.error;
    out.push_back(rec);
  }
  return out;
}

std::vector<ResultRecord> records_from_json(const nlohmann::json& j) {
  std::vector<ResultRecord> out;
  try {
    for (const auto& rec : j) {
      ResultRecord r;
      r.scenario = rec.at("scenario").get<std::string>();
      r.point = rec.at("point").get<int>();
      r.sample = rec.at("sample").get<int>();
      r.inputs = rec.at("inputs");
      for (const auto& [k, v] : rec.at("measurements").items()) r.measurements[k] = real_from_json(v);
      for (const auto& x : rec.at("assertions"))
        r.assertions.push_back({x.at("name").get<std::string>(), real_from_json(x.at("lhs")), real_from_json(x.at("rhs")),
                                x.at("pass").get<bool>(), real_from_json(x.at("margin")), x.value("hard", true)});
      r.seconds = rec.at("seconds").get<double>();
      r.error = rec.value("error", std::string());
      out.push_back(std::move(r));
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("records_from_json: ") + e.what());
  }
  return out;
}

std::string to_csv(const std::vector<ResultRecord>& records) {
  std::set<std::string> in_keys, m_keys, a_names;
  for (const auto& r : records) {
    for (const auto& [k, v] : r.inputs.items()) in_keys.insert(k);
    for (const auto& [k, v] : r.measurements) m_keys.insert(k);
    for (const auto& a : r.assertions) a_names.insert(a.name);
  }
  std::vector<std::string> header = {"scenario", "point", "sample", "seconds", "error"};
  for (const auto& k : in_keys) header.push_back("in." + k);
  for (const auto& k : m_keys) header.push_back("m." + k);
  static const char* parts[] = {"lhs", "rhs", "pass", "margin", "hard"};
  for (const auto& n : a_names)
    for (const char* p : parts) header.push_back("a." + n + "." + p);

  std::ostringstream out;
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << csv_field(header[i]);
  out << "\n";
  for (const auto& r : records) {
    std::vector<std::string> row = {r.scenario, std::to_string(r.point), std::to_string(r.sample), format_real(r.seconds), r.error};
    for (const auto& k : in_keys) {
      if (!r.inputs.contains(k)) {
        row.emplace_back();
      } else {
        const auto& v = r.inputs.at(k);
        row.push_back(v.is_string() ? v.get<std::string>() : v.dump());
      }
    }
    for (const auto& k : m_keys) {
      auto it = r.measurements.find(k);
      row.push_back(it == r.measurements.end() ? std::string() : format_real(it->second));
    }
    for (const auto& n : a_names) {
      auto it = std::find_if(r.assertions.begin(), r.assertions.end(), [&](const Assertion& a) { return a.name == n; });
      if (it == r.assertions.end()) {
        for (int p = 0; p < 5; ++p) row.emplace_back();
      } else {
        row.push_back(format_real(it->lhs));
        row.push_back(format_real(it->rhs));
        row.push_back(it->pass ? "1" : "0");
        row.push_back(format_real(it->margin));
        row.push_back(it->hard ? "1" : "0");
      }
    }
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_field(row[i]);
    out << "\n";
  }
  return out.str();
}

void write_report(const std::vector<ResultRecord>& records, const std::string& path, const std::string& format) {
  std::string body;
  if (format == "csv")
    body = to_csv(records);
  else if (format == "json")
    body = to_json(records).dump(2) + "\n";
  else
    throw std::invalid_argument("write_report: format must be csv or json");
  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("write_report: cannot open " + tmp.string());
    f << body;
    f.flush();
    if (!f) throw std::runtime_error("write_report: write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::runtime_error("write_report: cannot move report into " + target.string() + ": " + ec.message());
  }
}

}  // namespace simdeg
