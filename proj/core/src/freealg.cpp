#include "simdeg/freealg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "simdeg/ascent.hpp"
#include "simdeg/io.hpp"

namespace simdeg {

FreePoly::FreePoly(int k, int m, int degree_cap) : k_(k), m_(m), cap_(degree_cap) {
  if (k < 1 || m < 1) throw std::invalid_argument("FreePoly: need k >= 1 letters and m >= 1");
  if (degree_cap < 0) throw std::invalid_argument("FreePoly: negative degree cap");
}

FreePoly FreePoly::unit(int k, int m) {
  FreePoly p(k, m);
  p.add({}, CMatrix::Identity(m, m));
  return p;
}

FreePoly FreePoly::letter(int k, int i, int m) {
  FreePoly p(k, m);
  p.add({i}, CMatrix::Identity(m, m));
  return p;
}

void FreePoly::check_word(const FreeWord& w) const {
  if (static_cast<int>(w.size()) > cap_) {
    std::ostringstream msg;
    msg << "FreePoly: word length " << w.size() << " exceeds the degree cap " << cap_;
    throw std::invalid_argument(msg.str());
  }
  for (int i : w)
    if (i < 0 || i >= k_) {
      std::ostringstream msg;
      msg << "FreePoly: letter " << i << " out of range for k = " << k_;
      throw std::invalid_argument(msg.str());
    }
}

void FreePoly::check_compatible(const FreePoly& o) const {
  if (o.k_ != k_ || o.m_ != m_) throw std::invalid_argument("FreePoly: alphabet or coefficient size mismatch");
}

int FreePoly::degree() const {
  int d = -1;
  for (const auto& [w, c] : terms_) d = std::max(d, static_cast<int>(w.size()));
  return d;
}

bool FreePoly::is_homogeneous() const {
  const int d = degree();
  return std::all_of(terms_.begin(), terms_.end(), [d](const auto& t) { return static_cast<int>(t.first.size()) == d; });
}

void FreePoly::add(const FreeWord& w, const CMatrix& coeff) {
  check_word(w);
  if (coeff.rows() != m_ || coeff.cols() != m_) throw std::invalid_argument("FreePoly: coefficient has the wrong size");
  auto it = terms_.find(w);
  if (it == terms_.end()) {
    if (coeff.isZero(0.0)) return;
    if (terms_.size() >= kFreeSupportCap) throw std::invalid_argument("FreePoly: support exceeds 10^4 words");
    terms_.emplace(w, coeff);
    return;
  }
  it->second += coeff;
  if (it->second.isZero(0.0)) terms_.erase(it);
}

void FreePoly::add(const FreeWord& w, Complex coeff) { add(w, CMatrix(coeff * CMatrix::Identity(m_, m_))); }

CMatrix FreePoly::coeff(const FreeWord& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? CMatrix(CMatrix::Zero(m_, m_)) : it->second;
}

FreePoly FreePoly::operator+(const FreePoly& o) const {
  check_compatible(o);
  FreePoly r = *this;
  r.cap_ = std::max(cap_, o.cap_);
  for (const auto& [w, c] : o.terms_) r.add(w, c);
  return r;
}

FreePoly FreePoly::operator-(const FreePoly& o) const { return *this + o * Complex(-1.0, 0.0); }

FreePoly FreePoly::operator*(Complex s) const {
  FreePoly r(k_, m_, cap_);
  for (const auto& [w, c] : terms_) r.add(w, CMatrix(s * c));
  return r;
}

FreePoly FreePoly::operator*(const FreePoly& o) const {
  check_compatible(o);
  FreePoly r(k_, m_, std::max(cap_, o.cap_));
  for (const auto& [a, ca] : terms_)
    for (const auto& [b, cb] : o.terms_) {
      FreeWord w = a;
      w.insert(w.end(), b.begin(), b.end());
      r.add(w, CMatrix(ca * cb));
    }
  return r;
}

FreePoly random_free_poly(int k, int degree, int terms, int m, Rng& rng) {
  FreePoly p(k, m, std::max(degree, kFreeDegreeCap));
  std::uniform_int_distribution<int> len(0, degree), letter(0, k - 1);
  for (int t = 0; t < terms; ++t) {
    FreeWord w(static_cast<std::size_t>(len(rng)));
    for (int& i : w) i = letter(rng);
    p.add(w, random_gaussian(static_cast<std::size_t>(m), static_cast<std::size_t>(m), rng));
  }
  return p;
}

FreePoly qj_project(const FreePoly& p, int j) {
  FreePoly r(p.letters(), p.coeff_dim(), p.degree_cap());
  for (const auto& [w, c] : p.terms())
    if (static_cast<int>(w.size()) == j) r.add(w, c);
  return r;
}

FreePoly omega_scale(const FreePoly& p, Complex z) {
  if (std::abs(z) > 1.0 + 1e-15) throw std::invalid_argument("omega_scale: |z| must be <= 1");
  FreePoly r(p.letters(), p.coeff_dim(), p.degree_cap());
  for (const auto& [w, c] : p.terms()) r.add(w, CMatrix(std::pow(z, static_cast<int>(w.size())) * c));
  return r;
}

CMatrix eval_letters(const FreePoly& p, const std::vector<CMatrix>& images) {
  if (static_cast<int>(images.size()) != p.letters()) throw std::invalid_argument("eval_letters: need one image per letter");
  const Eigen::Index r = images[0].rows();
  for (const auto& v : images)
    if (v.rows() != r || v.cols() != r) throw std::invalid_argument("eval_letters: images must be square of a common size");
  const Eigen::Index m = p.coeff_dim();
  CMatrix out = CMatrix::Zero(m * r, m * r);
  for (const auto& [w, c] : p.terms()) {
    CMatrix prod = CMatrix::Identity(r, r);
    for (int i : w) prod = prod * images[static_cast<std::size_t>(i)];
    out += kron(c, prod);
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<CMatrix> sample_letters(int k, int r, bool unitary, Rng& rng) {
  std::vector<CMatrix> v;
  for (int i = 0; i < k; ++i) {
    if (unitary) {
      v.push_back(haar_unitary(static_cast<std::size_t>(r), rng));
    } else {
      const CMatrix g = random_gaussian(static_cast<std::size_t>(r), static_cast<std::size_t>(r), rng);
      v.push_back(g / op_norm(g));
    }
  }
  return v;
}

}  // namespace

OaEstimate oa_norm_estimate(const FreePoly& p, const OaEstimateOptions& o) {
  if (o.level < 1) throw std::invalid_argument("oa_norm_estimate: level must be >= 1");
  if (o.trials < 0 || o.ascent_restarts < 0) throw std::invalid_argument("oa_norm_estimate: negative counts");
  OaEstimate est;
  if (p.terms().empty()) return est;
  const int k = p.letters();
  const bool homogeneous = p.is_homogeneous();
  const int rotations = std::max(p.degree(), 0) + 1;
  for (int t = 0; t < o.trials; ++t) {
    Rng rng(derive_seed(o.seed, static_cast<std::uint64_t>(t)));
    bool unitary = true;
    if (o.sampling == LetterSampling::Mixed || (o.sampling == LetterSampling::Auto && !homogeneous)) unitary = t % 2 == 0;
    const std::vector<CMatrix> v = sample_letters(k, o.level, unitary, rng);
    for (int l = 0; l < rotations; ++l) {
      const Complex w = std::polar(1.0, 2.0 * std::numbers::pi * l / rotations);
      std::vector<CMatrix> rotated;
      for (const auto& x : v) rotated.push_back(w * x);
      const double val = op_norm(eval_letters(p, rotated));
      if (val > est.sampled) {
        est.sampled = val;
        if (val > est.value) {
          est.value = val;
          est.witness = rotated;
        }
      }
    }
  }
  if (o.ascent_restarts > 0) {
    AscentProblem prob;
    prob.blocks.assign(static_cast<std::size_t>(k), AscentBlock{o.level, o.level, BallNorm::Operator});
    prob.objective = [&p](const MatrixTuple& x) { return op_norm(eval_letters(p, x)); };
    AscentOptions ao;
    ao.restarts = o.ascent_restarts;
    ao.seed = derive_seed(o.seed, 0xa5c3u);
    const AscentResult a = ascent_lower_bound(prob, ao);
    est.ascent = a.value;
    if (a.value > est.value) {
      est.value = a.value;
      est.witness = a.point;
    }
  }
  return est;
}

double oa_norm_estimate(const FreePoly& p, int level, int trials, std::uint64_t seed) {
  OaEstimateOptions o;
  o.level = level;
  o.trials = trials;
  o.seed = seed;
  return oa_norm_estimate(p, o).value;
}

namespace {

struct Term {
  const FreeWord* word;
  const CMatrix* coeff;
};

// Bounds on the part of a homogeneous P whose words are pre·(middle of
// length len)·suf, memoized on (pre, suf).
class SplitBound {
 public:
  SplitBound(int k, int degree) : k_(k), degree_(degree) {}

  double bound(const std::vector<Term>& terms, const FreeWord& pre, const FreeWord& suf) {
    if (terms.empty()) return 0.0;
    const auto key = std::make_pair(pre, suf);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    const int len = degree_ - static_cast<int>(pre.size() + suf.size());
    double l1 = 0.0;
    for (const auto& t : terms) l1 += op_norm(*t.coeff);
    double best = l1;
    if (len >= 1) {
      const double rk = std::sqrt(static_cast<double>(k_));
      double first = 0.0, last = 0.0;
      for (int i = 0; i < k_; ++i) {
        FreeWord p2 = pre;
        p2.push_back(i);
        const double b = bound(filter(terms, pre.size(), i), p2, suf);
        first += b * b;
        FreeWord s2 = {i};
        s2.insert(s2.end(), suf.begin(), suf.end());
        const double c = bound(filter(terms, static_cast<std::size_t>(degree_) - suf.size() - 1, i), pre, s2);
        last += c * c;
      }
      best = std::min({best, rk * std::sqrt(first), rk * std::sqrt(last)});
    }
    if (len == 2) {
      const Eigen::Index m = terms[0].coeff->rows();
      CMatrix block = CMatrix::Zero(k_ * m, k_ * m);
      for (const auto& t : terms) {
        const int i = (*t.word)[pre.size()], j = (*t.word)[pre.size() + 1];
        block.block(i * m, j * m, m, m) = *t.coeff;
      }
      best = std::min(best, k_ * op_norm(block));
    } else if (len > 2) {
      double mid = 0.0;
      for (int i = 0; i < k_; ++i) {
        const auto ti = filter(terms, pre.size(), i);
        FreeWord p2 = pre;
        p2.push_back(i);
        for (int j = 0; j < k_; ++j) {
          FreeWord s2 = {j};
          s2.insert(s2.end(), suf.begin(), suf.end());
          const double b = bound(filter(ti, static_cast<std::size_t>(degree_) - suf.size() - 1, j), p2, s2);
          mid += b * b;
        }
      }
      best = std::min(best, k_ * std::sqrt(mid));
    }
    memo_.emplace(key, best);
    return best;
  }

 private:
  static std::vector<Term> filter(const std::vector<Term>& terms, std::size_t pos, int letter) {
    std::vector<Term> out;
    for (const auto& t : terms)
      if ((*t.word)[pos] == letter) out.push_back(t);
    return out;
  }

  int k_;
  int degree_;
  std::map<std::pair<FreeWord, FreeWord>, double> memo_;
};

}  // namespace

double oa_norm_upper(const FreePoly& p) {
  double total = 0.0;
  for (int j = 0; j <= p.degree(); ++j) {
    std::vector<Term> terms;
    for (const auto& [w, c] : p.terms())
      if (static_cast<int>(w.size()) == j) terms.push_back({&w, &c});
    SplitBound sb(p.letters(), j);
    total += sb.bound(terms, {}, {});
  }
  return total;
}

GroupAlgElement pi_z_eval(const FreePoly& p, const GroupPtr& g, const std::vector<int>& assignment, Complex z) {
  if (std::abs(z) > 1.0 + 1e-15) throw std::invalid_argument("pi_z_eval: |z| must be <= 1");
  if (static_cast<int>(assignment.size()) != p.letters()) throw std::invalid_argument("pi_z_eval: need one group element per letter");
  for (int a : assignment)
    if (a < 0 || a >= g->order()) throw std::invalid_argument("pi_z_eval: group element out of range");
  GroupAlgElement out(g, p.coeff_dim());
  for (const auto& [w, c] : p.terms()) {
    int t = g->identity();
    for (int i : w) t = g->mul(t, assignment[static_cast<std::size_t>(i)]);
    out[t] += std::pow(z, static_cast<int>(w.size())) * c;
  }
  return out;
}

nlohmann::json to_json(const FreePoly& p) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [w, c] : p.terms()) {
    nlohmann::json word = nlohmann::json::array();
    for (int i : w) word.push_back(i + 1);
    terms.push_back({{"word", word}, {"coeff", matrix_to_json(c)}});
  }
  return {{"letters", p.letters()}, {"coeff_dim", p.coeff_dim()}, {"terms", terms}};
}

FreePoly free_poly_from_json(const nlohmann::json& j) {
  try {
    FreePoly p(j.at("letters").get<int>(), j.at("coeff_dim").get<int>());
    for (const auto& t : j.at("terms")) {
      FreeWord w;
      for (const auto& i : t.at("word")) w.push_back(i.get<int>() - 1);
      p.add(w, matrix_from_json(t.at("coeff")));
    }
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("free_poly_from_json: ") + e.what());
  }
}

}  // namespace simdeg
