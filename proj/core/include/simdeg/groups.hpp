#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "simdeg/matrix.hpp"

namespace simdeg {

/// Finite group given by its Cayley table, with a distinguished generator list Γ.
class FiniteGroup {
 public:
  /// Validates the table (closure, identity, inverses, associativity) and
  /// that Γ ∪ {e} generates.
  FiniteGroup(std::vector<std::vector<int>> table, std::vector<int> generators, std::string name = {});

  int order() const { return static_cast<int>(table_.size()); }
  int mul(int a, int b) const { return table_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; }
  int inv(int a) const { return inv_[static_cast<std::size_t>(a)]; }
  int identity() const { return e_; }
  const std::vector<int>& generators() const { return gens_; }
  const std::vector<std::vector<int>>& table() const { return table_; }
  const std::string& name() const { return name_; }
  bool is_abelian() const;
  int element_order(int g) const;

 private:
  std::vector<std::vector<int>> table_;
  std::vector<int> inv_;
  std::vector<int> gens_;
  int e_ = 0;
  std::string name_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

constexpr int kDefaultOrderCap = 64;

GroupPtr cyclic_group(int m);
/// Order 2m; r^a s^b has index a + m·b and (r^a s^b)(r^c s^d) = r^{a + (−1)^b c} s^{b+d}.
GroupPtr dihedral_group(int m);
/// Permutations of {0..k−1} in lexicographic order, composed as (στ)(i) = σ(τ(i)).
GroupPtr symmetric_group(int k);
/// (a, b) has index a·|B| + b; generators (γ, e) then (e, γ').
GroupPtr direct_product(const FiniteGroup& a, const FiniteGroup& b);

/// Parses `cyclic:8`, `dihedral:4`, `sym:3`, `prod:cyclic:2,cyclic:2` (flat list).
/// Throws std::invalid_argument on malformed specs or orders above the cap.
GroupPtr make_group(const std::string& spec, int order_cap = kDefaultOrderCap);

/// Max over g of the least ℓ with g ∈ Γ^ℓ ∪ {e}, using positive words only;
/// nullopt when Γ does not generate.
std::optional<int> word_diameter(const FiniteGroup& g, const std::vector<int>& gamma);

// ---------------------------------------------------------------------------

/// Representation g ↦ π(g) by invertible matrices.
class GroupRep {
 public:
  /// Validates π(e) = I and π(st) = π(s)π(t) within tol·max‖π‖².
  GroupRep(GroupPtr group, std::vector<CMatrix> images, double tol = 1e-8);

  const GroupPtr& group() const { return group_; }
  int dim() const { return static_cast<int>(images_[0].rows()); }
  const CMatrix& operator()(int g) const { return images_[static_cast<std::size_t>(g)]; }
  const std::vector<CMatrix>& images() const { return images_; }
  /// |π| = max_g ‖π(g)‖.
  double sup_norm() const;
  bool is_unitary(double tol = 1e-10) const;

  /// U* π U.
  GroupRep conjugate(const CMatrix& u) const;
  GroupRep direct_sum(const GroupRep& other) const;

 private:
  GroupPtr group_;
  std::vector<CMatrix> images_;
};

/// λ(g)δ_s = δ_{gs}.
GroupRep regular_rep(const GroupPtr& g);

/// π(g) = S⁻¹ρ(g)S; ρ must be unitary (1e-10) and S invertible.
GroupRep ub_rep_twist(const GroupRep& rho, const CMatrix& s);

/// π ⊗ ρ on the product group (index a·|B| + b as in direct_product).
GroupRep tensor_rep(const GroupRep& a, const GroupRep& b, const GroupPtr& product);

/// Splits λ into irreducible pieces: the eigenspaces of a random Hermitian
/// element of the right-regular algebra (the commutant of λ) are λ-invariant
/// and, generically, irreducible. Each irrep π appears d_π times.
std::vector<GroupRep> regular_components(const GroupPtr& g, std::uint64_t seed = 0);

/// U*(π₁ ⊕ … ⊕ π_r)U with πᵢ drawn from regular_components and U Haar; the
/// total dimension stays ≤ max_dim when some component fits.
GroupRep random_unitary_rep(const GroupPtr& g, int max_dim, Rng& rng);

// ---------------------------------------------------------------------------

/// Scalar function on G.
struct GroupFunction {
  GroupPtr group;
  CVector values;

  double sup_norm() const { return values.size() ? values.cwiseAbs().maxCoeff() : 0.0; }
};

/// x = Σ_t x(t) ⊗ δ_t ∈ M_k(ℂ[G]).
class GroupAlgElement {
 public:
  GroupAlgElement(GroupPtr group, int k);
  GroupAlgElement(GroupPtr group, std::vector<CMatrix> coeffs);

  static GroupAlgElement delta(const GroupPtr& group, int g, int k = 1);

  const GroupPtr& group() const { return group_; }
  int block() const { return k_; }
  const CMatrix& operator[](int t) const { return coeffs_[static_cast<std::size_t>(t)]; }
  CMatrix& operator[](int t) { return coeffs_[static_cast<std::size_t>(t)]; }
  const std::vector<CMatrix>& coeffs() const { return coeffs_; }

  GroupAlgElement operator+(const GroupAlgElement& o) const;
  GroupAlgElement operator-(const GroupAlgElement& o) const;
  GroupAlgElement operator*(Complex c) const;
  /// Convolution (xy)(t) = Σ_s x(s) y(s⁻¹t).
  GroupAlgElement operator*(const GroupAlgElement& o) const;

  /// Σ_t x(t) ⊗ π(t).
  CMatrix represent(const GroupRep& pi) const;

 private:
  GroupPtr group_;
  int k_ = 1;
  std::vector<CMatrix> coeffs_;
};

/// ‖Σ x(t) ⊗ λ(t)‖. Finite groups are amenable, so the regular representation
/// carries the full C*(G) norm.
double cstar_norm(const GroupAlgElement& x);

/// ‖f‖_{B(G)} = sup |Σ_t f(t)a(t)| over ‖Σ a(t)λ(t)‖ ≤ 1 (no conjugation in the
/// pairing), as an LMI. Throws SolverError on failure.
double bg_norm(const GroupFunction& f, double tol = 1e-9);

/// Characters of an abelian group as rows (χ, t) ↦ χ(t); throws for
/// non-abelian input.
CMatrix abelian_characters(const FiniteGroup& g);

/// Σ_χ |c_χ| with c_χ = |G|⁻¹ Σ_t f(t)·conj(χ(t)); abelian groups only.
double bg_norm_fourier_abelian(const GroupFunction& f);

/// γ₂ norm of M(s, t) = φ(s⁻¹t).
double herz_schur_norm(const GroupFunction& phi, double tol = 1e-9);
CMatrix herz_schur_matrix(const GroupFunction& phi);

/// φ(t) = ⟨π(t)ξ, η⟩ = η* π(t) ξ.
GroupFunction coefficient_fn(const GroupRep& pi, const CVector& xi, const CVector& eta);

}  // namespace simdeg
