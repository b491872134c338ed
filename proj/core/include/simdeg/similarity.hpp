#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "simdeg/groups.hpp"
#include "simdeg/matrix.hpp"
#include "simdeg/opspace.hpp"

namespace simdeg {

// Conventions: a similarity S unitarizes π when S⁻¹π(g)S is unitary for all g.
// For an invariant metric P (π(g)*Pπ(g) = P) that S is P^{-1/2}.

struct DixmierResult {
  HermitianPD s;
  double cond = 1.0;
};

/// S = P^{-1/2} with P = |G|⁻¹ Σ π(g)*π(g); cond(S) ≤ |π|².
DixmierResult dixmier_unitarize(const GroupRep& pi);

enum class SimStatus { Ok, NotUnitarizable };
const char* to_string(SimStatus s);

struct SimMinResult {
  SimStatus status = SimStatus::Ok;
  /// cond(witness), an achieved value within tol of the infimum; NaN when
  /// not unitarizable.
  double value = 0.0;
  /// √(least γ found by bisection), before taking the achieved witness.
  double bisection_value = 0.0;
  /// Value of the one-shot SDP min γ s.t. I ⪯ P ⪯ γI over invariant P.
  double direct_value = 0.0;
  CMatrix witness;
  /// Real dimension of the space of Hermitian invariant metrics.
  int invariant_dim = 0;
};

/// Minimal cond(S) over S with S⁻¹ g S unitary for every given generator.
/// Bisects γ over feasibility of {I ⪯ P ⪯ γI, g*Pg = P}, with tol on γ.
SimMinResult sim_min(const std::vector<CMatrix>& generators, double tol = 1e-6);
/// Uses the images of the group generators; the Dixmier witness is kept when
/// it is better.
SimMinResult sim_min(const GroupRep& pi, double tol = 1e-6);

struct SimilarityReport {
  std::string group;
  int dim = 0;
  double pi_sup = 0.0;
  double dixmier_cond = 0.0;
  double sim_min = 0.0;
  CMatrix witness;
};

SimilarityReport similarity_report(const GroupRep& pi, double tol = 1e-6);
nlohmann::json to_json(const SimilarityReport& r);

// ---------------------------------------------------------------------------

struct HomCbResult {
  double value = 0.0;
  double cb_route = 0.0;       ///< cb-norm SDP
  double paulsen_route = 0.0;  ///< minimal similarity
  bool cross_checked = false;
  double discrepancy = 0.0;
};

/// Unital homomorphism u: ℓ∞^m → M_k given by u(e_i). The cb route is
/// cb_norm_commutative; the similarity route is sim_min over the involutions
/// I − 2u(e_i). Disagreement above 1e-3 throws SolverError.
HomCbResult hom_cb_norm_idempotents(const std::vector<CMatrix>& images, double tol = 1e-8);

/// ‖π‖_cb on C*(G). Abelian groups go through the spectral idempotents;
/// otherwise the cb route uses the Choi SDP on C*_λ(G) ⊂ M_|G| when
/// |G|·dim ≤ 24 and is skipped beyond that.
HomCbResult hom_cb_norm(const GroupRep& pi, double tol = 1e-8);

/// λ(t) ↦ π(t) as a map on C*_λ(G) ⊂ M_|G|.
CbMap rep_as_map(const GroupRep& pi);

// ---------------------------------------------------------------------------

struct InterpolationResult {
  std::vector<CMatrix> images;  ///< v(g) = S^{θ−1} u(g) S^{1−θ}
  double c = 0.0;               ///< sup ‖u(g)‖ over the generators
  double generator_norm = 0.0;  ///< sup ‖v(g)‖ over the generators
  double bound = 0.0;           ///< c^θ
  bool holds() const { return generator_norm <= bound * (1.0 + 1e-8); }
};

/// θ = 0 gives u_S = S⁻¹uS, θ = 1 gives u. Requires ‖S⁻¹u(g)S‖ ≤ 1 + 1e-10
/// on the generators and θ ∈ [0, 1].
InterpolationResult interpolation_step(const std::vector<CMatrix>& generators, const HermitianPD& s, double theta);
/// Generators are the images of the group generators; images cover all of G.
InterpolationResult interpolation_step(const GroupRep& pi, const HermitianPD& s, double theta);

struct DerivationReport {
  std::vector<CMatrix> images;  ///< δ on the generator inputs of π
  double norm_lower = 0.0;      ///< ascent estimate of ‖δ‖
  double norm_upper = 0.0;      ///< 2‖Log S‖·‖π‖_cb
  double cb_norm = 0.0;         ///< ‖δ‖_cb
  double log_conj_cb = 0.0;     ///< log ‖S⁻¹π(·)S‖_cb
  bool chain_holds(double tol = 1e-4) const { return log_conj_cb <= cb_norm + tol; }
};

/// δ(x) = Log(S)π(x) − π(x)Log(S) for a *-homomorphism π.
DerivationReport derivation_gadget(const CbMap& pi, const HermitianPD& s, int restarts = 4, std::uint64_t seed = 0);

// ---------------------------------------------------------------------------

struct PhiSweepRow {
  double cond = 1.0;
  int samples = 0;
  double max_sim = 0.0;
  /// Running max over grid points ≤ cond; the sampled families are nested.
  double envelope = 0.0;
  double max_pi_sup = 0.0;
  double max_dixmier = 0.0;
  /// Every sample satisfied Sim ≤ |π|²(1 + 1e-8).
  bool bound_holds = true;
};

/// For each c: twists S₀⁻¹ρS₀ of random unitary ρ (dim ≤ max_dim) with
/// cond(S₀) log-uniform in [1, c]. Point i uses derive_seed(seed, i).
std::vector<PhiSweepRow> phi_sweep(const GroupPtr& g, const std::vector<double>& cond_grid, int samples,
                                   std::uint64_t seed, int max_dim = 3);

}  // namespace simdeg
