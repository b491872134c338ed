#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "simdeg/matrix.hpp"

namespace simdeg {

/// Linear map Φ from a subspace V ⊂ M_n into M_k.
///
/// The Choi matrix uses the source-first convention J = Σ_ab E_ab ⊗ Φ(E_ab),
/// so index (a, p) of J sits at a·k + p. When V is a proper subspace the
/// stored Choi matrix is that of the extension vanishing on V^⊥, and the
/// cb norm is computed over all extensions.
class CbMap {
 public:
  /// Full domain M_n.
  static CbMap from_choi(int n, int k, const CMatrix& choi);
  static CbMap from_function(int n, int k, const std::function<CMatrix(const CMatrix&)>& f);
  /// Domain = span of the inputs; outputs must depend linearly on the inputs.
  static CbMap from_generators(const std::vector<CMatrix>& inputs, const std::vector<CMatrix>& outputs,
                               double tol = 1e-10);

  int source_dim() const { return n_; }
  int target_dim() const { return k_; }
  int domain_dim() const { return static_cast<int>(basis_.size()); }
  bool full_domain() const { return domain_dim() == n_ * n_; }

  const CMatrix& choi() const { return choi_; }
  /// HS-orthonormal bases of V and of V^⊥.
  const std::vector<CMatrix>& domain_basis() const { return basis_; }
  const std::vector<CMatrix>& complement_basis() const { return complement_; }
  /// Images of domain_basis().
  const std::vector<CMatrix>& basis_images() const { return images_; }
  /// Generator pairs as given (matrix units for full-domain constructors).
  const std::vector<CMatrix>& inputs() const { return inputs_; }
  const std::vector<CMatrix>& outputs() const { return outputs_; }

  /// Φ(x); throws std::invalid_argument when x is outside the domain.
  CMatrix apply(const CMatrix& x) const;

  /// Φ ⊗ Ψ on V ⊗ W.
  CbMap tensor(const CbMap& other) const;

 private:
  int n_ = 0;
  int k_ = 0;
  CMatrix choi_;
  std::vector<CMatrix> basis_;
  std::vector<CMatrix> images_;
  std::vector<CMatrix> complement_;
  std::vector<CMatrix> inputs_;
  std::vector<CMatrix> outputs_;
};

/// Σ A_i ⊗ B_i.
struct MinTensorElement {
  std::vector<std::pair<CMatrix, CMatrix>> terms;
  CMatrix evaluate() const;
};

double min_tensor_norm(const MinTensorElement& x);

/// ‖Φ‖_cb by the Choi-matrix SDP
///   minimize (s0 + s1)/2  s.t.  [[Y0, J], [J*, Y1]] ⪰ 0,  Tr_src Y0 ⪯ s0·I,  Tr_src Y1 ⪯ s1·I,
/// whose value is min ‖Tr Y0‖^{1/2}‖Tr Y1‖^{1/2}. For proper subspaces J ranges
/// over the Choi matrices of all extensions. Throws SolverError on failure.
double cb_norm(const CbMap& phi, double tol = 1e-8);

/// ‖u‖_cb for u: ℓ∞^m → M_k given by the images u(e_i):
///   min ‖Σ a_i a_i*‖^{1/2}‖Σ b_i* b_i‖^{1/2} over u(e_i) = a_i b_i.
double cb_norm_commutative(const std::vector<CMatrix>& images, double tol = 1e-8);

/// Lower bound on ‖Φ‖_m = sup ‖(id ⊗ Φ)(x)‖ / ‖x‖ over x ∈ M_m(V), by ascent.
double cb_norm_level(const CbMap& phi, int level, int restarts, std::uint64_t seed = 0);

/// Lower bound on ‖Φ‖ (level 1).
double map_norm_estimate(const CbMap& phi, int restarts, std::uint64_t seed = 0);

struct Gamma2Result {
  double value = 0.0;
  /// Witness rows: M ≈ left · right*, with row norms² ≤ value.
  CMatrix left;
  CMatrix right;
};

/// inf max_s‖x(s)‖·max_t‖y(t)‖ over factorizations M(s,t) = ⟨y(t), x(s)⟩, via
///   min γ  s.t.  [[P, M], [M*, Q]] ⪰ 0,  diag(P) ≤ γ,  diag(Q) ≤ γ.
Gamma2Result gamma2_rowcol(const CMatrix& m, double tol = 1e-9);
double gamma2_rowcol_norm(const CMatrix& m, double tol = 1e-9);

/// ‖Σ a_i a_i*‖^{1/2}·‖Σ b_i* b_i‖^{1/2}.
double hnorm_upper_certificate(const std::vector<std::pair<CMatrix, CMatrix>>& pairs);

/// Upper bound on sup_{‖t‖₂ ≤ 1} ‖Σ t_i T_i‖: min of the row norm, the column
/// norm and √λmax of the Hilbert-Schmidt Gram matrix.
double l2_contraction_upper(const std::vector<CMatrix>& t);

struct PairingEstimate {
  double value = 0.0;
  std::vector<CMatrix> witness;  ///< normalized tuple T_i
};

/// Lower bound on ‖Σ x_i ⊗ e_i‖ in X ⊗_min max(ℓ₂ⁿ): ascent over T_i ∈ M_r
/// of ‖Σ x_i ⊗ T_i‖ / l2_contraction_upper(T).
PairingEstimate max_l2_pairing(const std::vector<CMatrix>& x, int level, int restarts, std::uint64_t seed = 0);
double max_l2_pairing_estimate(const std::vector<CMatrix>& x, int level, int restarts, std::uint64_t seed = 0);

struct RowInequality {
  double lhs = 0.0;     ///< ‖Σ u(x_i)* u(x_i)‖^{1/2}
  double rhs = 0.0;     ///< ‖u‖²·‖Σ x_i* x_i‖^{1/2}
  double u_norm = 0.0;  ///< ‖u‖ used on the right
  bool holds(double rel = 1e-8) const { return lhs <= rhs * (1.0 + rel); }
};

/// Checks multiplicativity of u on products of its generator inputs (1e-8,
/// relative) and evaluates both sides. Without a supplied ‖u‖ an ascent
/// estimate is used; it is a lower bound, so the check only gets stricter.
RowInequality row_inequality_check(const CbMap& u, const std::vector<CMatrix>& x,
                                   std::optional<double> u_norm = std::nullopt, std::uint64_t seed = 0);

/// Throws std::invalid_argument unless u(ab) = u(a)u(b) on generator pairs.
void require_multiplicative(const CbMap& u, double tol = 1e-8);

// Functionals ξ on M_m act by a ↦ tr(ξ a); their norm is the trace norm of ξ.

/// Certified upper bound on ‖Σ ξ_i ⊗ e_i‖ in A* ⊗_min max(ℓ₂ⁿ): minimum over
/// unitaries V (identity, SVD-aligned, `random_rotations` Haar) of Σ_k ‖Σ_i V_ik ξ_i‖₁.
double max_l2_functional_upper(const std::vector<CMatrix>& xi, int random_rotations = 8, std::uint64_t seed = 0);

/// Lower bound on the same quantity: sup_{‖a‖ ≤ 1} (Σ |tr(ξ_i a)|²)^{1/2} by ascent.
double max_l2_functional_lower(const std::vector<CMatrix>& xi, int restarts = 4, std::uint64_t seed = 0);

struct ConstantFourCheck {
  double lhs = 0.0;    ///< (Σ ‖ξ_i‖²)^{1/2}
  double upper = 0.0;  ///< certified upper bound on the min-norm
  double lower = 0.0;  ///< estimated lower bound on the min-norm
  bool holds() const { return lhs <= 4.0 * upper * (1.0 + 1e-12); }
};

ConstantFourCheck constant_four_check(const std::vector<CMatrix>& xi, std::uint64_t seed = 0);

}  // namespace simdeg
