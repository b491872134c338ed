#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "simdeg/groups.hpp"
#include "simdeg/matrix.hpp"

namespace simdeg {

/// Letter indices, 0-based (JSON uses 1-based). Empty is the unit.
using FreeWord = std::vector<int>;

inline constexpr int kFreeDegreeCap = 6;
inline constexpr std::size_t kFreeSupportCap = 10000;

/// Truncated element Σ_w c_w ⊗ e_w of the free unital algebra on k letters,
/// with m×m coefficients.
class FreePoly {
 public:
  FreePoly(int k, int m = 1, int degree_cap = kFreeDegreeCap);

  static FreePoly unit(int k, int m = 1);
  static FreePoly letter(int k, int i, int m = 1);

  int letters() const { return k_; }
  int coeff_dim() const { return m_; }
  int degree_cap() const { return cap_; }
  /// Max word length over nonzero terms; −1 for zero.
  int degree() const;
  bool is_homogeneous() const;
  const std::map<FreeWord, CMatrix>& terms() const { return terms_; }

  /// c_w += coeff. Zero coefficients are dropped.
  void add(const FreeWord& w, const CMatrix& coeff);
  void add(const FreeWord& w, Complex coeff);
  CMatrix coeff(const FreeWord& w) const;

  FreePoly operator+(const FreePoly& o) const;
  FreePoly operator-(const FreePoly& o) const;
  FreePoly operator*(Complex s) const;
  /// Concatenation product with coefficients multiplied as matrices.
  FreePoly operator*(const FreePoly& o) const;

 private:
  void check_word(const FreeWord& w) const;
  void check_compatible(const FreePoly& o) const;

  int k_;
  int m_;
  int cap_;
  std::map<FreeWord, CMatrix> terms_;
};

FreePoly random_free_poly(int k, int degree, int terms, int m, Rng& rng);

/// Degree-j homogeneous part.
FreePoly qj_project(const FreePoly& p, int j);
/// Multiplies each length-j coefficient by z^j; rejects |z| > 1.
FreePoly omega_scale(const FreePoly& p, Complex z);

/// Σ_w c_w ⊗ v_{w₁}⋯v_{w_N}, an (m·r)×(m·r) matrix.
CMatrix eval_letters(const FreePoly& p, const std::vector<CMatrix>& images);

enum class LetterSampling { Auto, Unitary, Mixed };

struct OaEstimateOptions {
  int level = 2;
  int trials = 32;
  std::uint64_t seed = 0;
  /// Auto samples unitaries only for homogeneous P and mixes in random
  /// contractions otherwise.
  LetterSampling sampling = LetterSampling::Auto;
  /// Gradient-ascent runs from their own seed stream; 0 disables.
  int ascent_restarts = 2;
};

struct OaEstimate {
  double value = 0.0;
  double sampled = 0.0;
  double ascent = 0.0;
  std::vector<CMatrix> witness;
};

/// Lower bound on ‖P‖ in OA(max ℓ₁ᵏ): the max of ‖eval_letters(P, v)‖ over
/// contractions v ∈ M_r. Each sampled tuple is also evaluated at its rotations
/// ω^l v by the (deg+1)-th roots of unity, so for a shared sample stream
/// the estimate of Q_j(P) never exceeds that of P. Trial t draws from
/// derive_seed(seed, t), so the value is nondecreasing in trials.
OaEstimate oa_norm_estimate(const FreePoly& p, const OaEstimateOptions& options);
double oa_norm_estimate(const FreePoly& p, int level, int trials, std::uint64_t seed = 0);

/// Upper bound on ‖P‖ in OA(max ℓ₁ᵏ), valid at every matrix level. Each
/// homogeneous part gets the least of its coefficient ℓ₁ sum and the
/// Haagerup-type splits P = Σ e_i R_i, P = Σ L_j e_j and P = Σ e_i M_ij e_j,
/// using ‖[v₁ ⋯ v_k]‖ ≤ √k for contractions. The parts are summed.
double oa_norm_upper(const FreePoly& p);

/// π_z: e_w ↦ z^{|w|} δ_{g_{w₁}⋯g_{w_N}}, extended linearly; rejects |z| > 1.
GroupAlgElement pi_z_eval(const FreePoly& p, const GroupPtr& g, const std::vector<int>& assignment, Complex z);

nlohmann::json to_json(const FreePoly& p);
FreePoly free_poly_from_json(const nlohmann::json& j);

}  // namespace simdeg
