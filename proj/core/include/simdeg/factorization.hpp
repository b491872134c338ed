#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "simdeg/groups.hpp"
#include "simdeg/matrix.hpp"

namespace simdeg {

/// x = α₀ D₁ α₁ D₂ ⋯ D_d α_d in M_n(A), with A acting on ℂ^m.
///
/// Scalars α_i act as α_i ⊗ I_m and each D_i is diagonal with entries in A,
/// stored as m×m matrices (for C*(G): λ(s) in the regular representation,
/// tagged with s). ‖D_i‖ is the largest entry norm.
struct FactorizationCertificate {
  int n = 1;
  int block = 1;
  std::string algebra;
  std::vector<CMatrix> alpha;
  std::vector<std::vector<CMatrix>> diagonals;
  /// Group element index of each diagonal entry, or −1 when untagged.
  std::vector<std::vector<int>> tags;
  double claimed_bound = 0.0;

  int degree() const { return static_cast<int>(diagonals.size()); }
};

/// Throws std::invalid_argument unless the shapes chain.
void check_shapes(const FactorizationCertificate& c);
/// The product in the ambient representation, an (n·m)×(n·m) matrix.
CMatrix evaluate(const FactorizationCertificate& c);
/// Π‖α_i‖ · Π max_j ‖D_i(j)‖.
double certificate_bound(const FactorizationCertificate& c);

struct Verification {
  double residual = 0.0;
  double bound = 0.0;
};

/// Residual ‖product − x‖ with x given in the ambient representation.
Verification verify_certificate(const FactorizationCertificate& c, const CMatrix& target);
/// x ∈ M_n(ℂ[G]) via the regular representation, so the residual is a C*(G) norm.
Verification verify_certificate(const FactorizationCertificate& c, const GroupAlgElement& x);

/// Degree-2 certificate for x ∈ M_n(ℂ[G]) through the coefficient
/// φ(t) = ⟨λ(t)ξ, η⟩: x = φ·y with y(t) = x(t)/φ(t). Defaults to
/// ξ = η = |G|^{-1/2}𝟙, where φ ≡ 1 and y = x. Rejects cstar_norm(x) ≥ 1 and
/// φ vanishing on the support of x.
FactorizationCertificate amenable_certificate(const GroupAlgElement& x, const std::optional<CVector>& xi = std::nullopt,
                                              const std::optional<CVector>& eta = std::nullopt);

/// Degree-2 certificate for x ∈ M_m over A = M_m (target size n = 1) from the
/// Weyl design; the bound is ‖x‖.
FactorizationCertificate weyl_twirl_certificate(const CMatrix& x);

nlohmann::json to_json(const FactorizationCertificate& c);

// ---------------------------------------------------------------------------

struct BpGaugeOptions {
  int iterations = 6;
  std::uint64_t seed = 0;
  /// Cold starts use words of length d over the letters; sizes beyond this
  /// are pruned to the largest coefficients.
  int max_words = 24;
  double tol = 1e-8;
};

struct BpGaugeResult {
  double value = 0.0;
  FactorizationCertificate certificate;
  double residual = 0.0;
};

/// Upper estimate of inf Π‖α_i‖Π‖D_i‖ over factorizations of length ≤ d.
///
/// Letters are ambient m×m matrices and must include the identity. Cold
/// starts expand x over words of each length ≤ d; an optional warm
/// certificate of degree ≤ d is padded with unit diagonals. Each candidate is
/// improved by alternating steps that minimize one ‖α_i‖ by SDP with the rest
/// fixed. The result is the best verified candidate.
BpGaugeResult bp_gauge(const CMatrix& x, int n, const std::vector<CMatrix>& letters, int d,
                       const BpGaugeOptions& options = {},
                       const std::optional<FactorizationCertificate>& warm = std::nullopt);

// ---------------------------------------------------------------------------

/// Finite-dimensional unital algebra in coordinates.
struct FiniteAlgebra {
  int dim = 0;
  std::string name;
  std::function<CVector(const CVector&, const CVector&)> mul;
  std::function<double(const CVector&)> norm;
  /// Extreme points of the unit ball up to phase, when known.
  std::vector<CVector> vertices;
};

/// ℓ₁(G): convolution, ℓ₁ norm, vertices δ_g.
FiniteAlgebra l1_group_algebra(const GroupPtr& g);

struct AconvResult {
  /// max over evaluated directions; +∞ when the products do not span A.
  double value = 0.0;
  bool spans = false;
  /// True when the directions included all the vertices.
  bool exact = false;
  int product_count = 0;
  std::vector<double> per_direction;
};

/// Lower estimate of the least K' with B_A ⊂ K'·aconv(β ∪ β² ∪ ⋯ ∪ β^d).
/// Each direction x is scored by min Σ|c_w| over x = Σ c_w w (an SDP with
/// 2×2 blocks); directions are the vertices (if any), `directions` random unit
/// vectors and a short local refinement around the best one.
AconvResult aconv_gauge(const FiniteAlgebra& a, const std::vector<CVector>& beta, int d, int directions,
                        std::uint64_t seed = 0);

/// min Σ|c_w| with x = Σ c_w w, or +∞ when x is outside the span.
double aconv_direction_gauge(const std::vector<CVector>& words, const CVector& x, double tol = 1e-9);

// ---------------------------------------------------------------------------

struct CoefficientFactorization {
  double k = 0.0;
  /// factors[i][t] = F_{i+1}(t): a row (i = 0), square, or column (i = N−1)
  /// matrix; a 1×1 scalar when N = 1.
  std::vector<std::vector<CMatrix>> factors;
  double max_error = 0.0;
  double max_factor_norm = 0.0;
  bool exhaustive = false;
  long long checked = 0;
};

/// f(t) = ⟨λ(t)ξ, η⟩ = K·F₁(t₁)⋯F_N(t_N) for t = t₁⋯t_N, with unit ξ, η and
/// K = ‖ξ‖‖η‖. Checks every tuple when |G|^N ≤ 10⁵, else 10⁴ seeded samples.
CoefficientFactorization coefficient_factorization(const GroupPtr& g, const CVector& xi, const CVector& eta, int n_factors,
                                                   std::uint64_t seed = 0);

}  // namespace simdeg
