#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "simdeg/matrix.hpp"

namespace simdeg {

/// Sparse Hermitian block-diagonal coefficient matrix.
///
/// Entries live on the upper triangle: (block, row, col, v) with row <= col
/// stands for v at (row, col) and conj(v) at (col, row). Repeated positions
/// accumulate. Diagonal entries must be real.
class BlockSparse {
 public:
  struct Entry {
    int block;
    int row;
    int col;
    Complex value;
  };

  /// Adds v at (row, col) and conj(v) at (col, row); either triangle is accepted.
  void add(int block, int row, int col, Complex value);

  /// Adds a dense Hermitian block (rejects Hermitian defect above herm_tol).
  void add_dense(int block, const CMatrix& h, double herm_tol = 1e-12);

  const std::vector<Entry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

  /// Dense form of one block.
  CMatrix dense_block(int block, int dim) const;

 private:
  std::vector<Entry> entries_;
};

/// Standard-form complex semidefinite program
///
///   minimize  <C, X>   subject to  <A_i, X> = b_i,   X ⪰ 0 (block diagonal),
///
/// with <A, X> = Re tr(A X). Its dual is
///
///   maximize  b'y      subject to  C − Σ y_i A_i = Z ⪰ 0.
///
/// Hermitian blocks are handled natively in complex arithmetic (no real
/// embedding).
struct SdpProblem {
  std::vector<int> block_dims;
  BlockSparse objective;
  std::vector<BlockSparse> constraints;
  std::vector<double> rhs;

  int add_block(int dim);
  int add_constraint(BlockSparse a, double b);
  int num_constraints() const { return static_cast<int>(constraints.size()); }

  /// Throws std::invalid_argument on inconsistent block structure.
  void validate() const;
};

enum class SdpStatus { Optimal, Infeasible, NumericalFailure };

const char* to_string(SdpStatus s);

struct SdpOptions {
  /// Target relative duality gap |p − d| / (1 + |p| + |d|).
  double tol = 1e-9;
  /// Target relative primal and dual residuals.
  double feas_tol = 1e-9;
  int max_iterations = 150;
};

struct SdpSolution {
  SdpStatus status = SdpStatus::NumericalFailure;
  std::vector<CMatrix> primal;  ///< X blocks
  std::vector<CMatrix> slack;   ///< Z blocks
  RVector dual;                 ///< y
  double primal_objective = 0.0;
  double dual_objective = 0.0;
  /// Relative duality gap |p − d| / (1 + |p| + |d|).
  double gap = 0.0;
  double primal_infeasibility = 0.0;
  double dual_infeasibility = 0.0;
  int iterations = 0;
  std::string message;

  bool optimal() const { return status == SdpStatus::Optimal; }
};

/// Raised by norm computations when the underlying solve does not reach optimality.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, SdpStatus status) : std::runtime_error(what), status_(status) {}
  SdpStatus status() const { return status_; }

 private:
  SdpStatus status_;
};

/// Throws SolverError naming `who` unless the solution is optimal.
void require_optimal(const SdpSolution& s, const char* who);

/// Primal-dual interior point with the HKM search direction and Mehrotra
/// predictor-corrector steps, from an infeasible starting point.
///
/// Infeasibility is declared only when the iterates diverge along an
/// approximate Farkas ray; any other breakdown (iteration cap, stalled
/// steps, loss of definiteness) returns NumericalFailure.
SdpSolution sdp_solve(const SdpProblem& problem, const SdpOptions& options = {});
SdpSolution sdp_solve(const SdpProblem& problem, double tol);

struct KktResiduals {
  double primal = 0.0;           ///< ‖b − A(X)‖ / (1 + ‖b‖)
  double dual = 0.0;             ///< ‖C − Z − A*(y)‖_F / (1 + ‖C‖_F)
  double complementarity = 0.0;  ///< <X, Z> / (1 + |p| + |d|)
  double min_primal_eig = 0.0;
  double min_slack_eig = 0.0;
};

/// Residuals recomputed from the problem data, independent of the solver's bookkeeping.
KktResiduals kkt_residuals(const SdpProblem& problem, const SdpSolution& solution);

/// Debug dump, schema:
///   {"block_dims":[int], "objective":[entry], "constraints":[{"rhs":real,"entries":[entry]}]}
///   entry = {"block":int, "row":int, "col":int, "re":real, "im":real}
nlohmann::json sdp_to_json(const SdpProblem& problem);
SdpProblem sdp_from_json(const nlohmann::json& j);

/// Front end for problems in linear-matrix-inequality form:
///
///   maximize  Σ c_k y_k   subject to  F_0 + Σ y_k F_k ⪰ 0   (block diagonal),
///
/// with free real variables y. Compiles to the dual side of SdpProblem.
class LmiProblem {
 public:
  int add_block(int dim);
  /// New free real variable with objective coefficient c (maximized).
  int add_variable(double objective_coeff = 0.0);
  void set_objective(int var, double coeff);

  /// F_0(row, col) += v (and the Hermitian mirror).
  void add_constant(int block, int row, int col, Complex v);
  void add_constant_dense(int block, const CMatrix& h);
  /// F_var(row, col) += v (and the Hermitian mirror).
  void add_term(int var, int block, int row, int col, Complex v);
  void add_term_dense(int var, int block, const CMatrix& h);

  int num_variables() const { return static_cast<int>(objective_.size()); }
  const std::vector<int>& block_dims() const { return dims_; }

  SdpProblem compile() const;

 private:
  std::vector<int> dims_;
  std::vector<double> objective_;
  BlockSparse constant_;
  std::vector<BlockSparse> terms_;
};

struct LmiSolution {
  SdpSolution sdp;
  RVector values;  ///< optimal y
  double objective = 0.0;
  bool optimal() const { return sdp.optimal(); }
};

LmiSolution solve_lmi(const LmiProblem& lmi, const SdpOptions& options = {});

/// Bisection for the least γ with feasible(γ) true, assuming monotonicity.
/// Returns a γ with feasible(γ) true and bracket width <= tol at exit. Throws
/// std::invalid_argument if feasible(hi) is false.
double quasiconvex_bisect(const std::function<bool(double)>& feasible, double lo, double hi, double tol);

}  // namespace simdeg
