#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "simdeg/matrix.hpp"

namespace simdeg {

enum class BallNorm { Frobenius, Operator };

struct AscentBlock {
  int rows = 1;
  int cols = 1;
  BallNorm ball = BallNorm::Operator;
};

using MatrixTuple = std::vector<CMatrix>;

/// Maximization of a real function over a product of matrix unit balls.
///
/// The gradient, when supplied, follows the convention df = Σ Re tr(G_b* dX_b),
/// i.e. G = ∂f/∂Re X + i ∂f/∂Im X. Without it, central finite differences
/// are used.
struct AscentProblem {
  std::vector<AscentBlock> blocks;
  std::function<double(const MatrixTuple&)> objective;
  std::function<MatrixTuple(const MatrixTuple&)> gradient;
  /// Starting point of the first run; a random feasible point otherwise.
  std::optional<MatrixTuple> initial;
  /// Random starting points for later runs; uniform in the balls otherwise.
  std::function<MatrixTuple(Rng&)> sampler;
};

struct AscentOptions {
  int restarts = 4;
  std::uint64_t seed = 0;
  int max_iterations = 300;
  double rel_tol = 1e-12;
  double fd_step = 1e-7;
};

struct AscentResult {
  double value = 0.0;
  MatrixTuple point;
  int evaluations = 0;
};

/// Projected gradient ascent with Armijo backtracking and random restarts.
///
/// Every returned value is f at a feasible point, so it is a lower bound for
/// sup f. restarts = 0 evaluates the starting point only. Run r draws from
/// derive_seed(seed, r) and the result is the running maximum, so the value
/// is nondecreasing in restarts for a fixed seed.
AscentResult ascent_lower_bound(const AscentProblem& problem, const AscentOptions& options = {});

/// Euclidean projection of each block onto its ball.
MatrixTuple project_to_balls(const std::vector<AscentBlock>& blocks, MatrixTuple x);

/// Gradient of X ↦ ‖X‖ at X (top singular pair), in the convention above.
CMatrix op_norm_gradient(const CMatrix& x);

}  // namespace simdeg
