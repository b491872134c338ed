#include <gtest/gtest.h>

#include <cmath>

#include <nlohmann/json.hpp>

#include "simdeg/sdp.hpp"

using namespace simdeg;

namespace {

CMatrix random_hermitian(int n, Rng& rng) {
  return hermitian_part(random_gaussian(static_cast<std::size_t>(n), static_cast<std::size_t>(n), rng));
}

// b = A(X0), C = Z0 + Σ y0 A_i with X0, Z0 ≻ 0: strictly feasible on both sides.
SdpProblem random_feasible(const std::vector<int>& dims, int m, Rng& rng) {
  SdpProblem p;
  for (int d : dims) p.add_block(d);
  std::vector<CMatrix> x0, z0;
  for (int d : dims) {
    x0.push_back(random_pd(static_cast<std::size_t>(d), 10.0, rng));
    z0.push_back(random_pd(static_cast<std::size_t>(d), 10.0, rng));
  }
  std::normal_distribution<double> normal;
  std::vector<CMatrix> c = z0;
  for (int i = 0; i < m; ++i) {
    BlockSparse a;
    double b = 0.0;
    const double y0 = normal(rng);
    for (std::size_t bl = 0; bl < dims.size(); ++bl) {
      const CMatrix h = random_hermitian(dims[bl], rng);
      a.add_dense(static_cast<int>(bl), h);
      b += (h * x0[bl]).trace().real();
      c[bl] += y0 * h;
    }
    p.add_constraint(a, b);
  }
  for (std::size_t bl = 0; bl < dims.size(); ++bl) p.objective.add_dense(static_cast<int>(bl), hermitian_part(c[bl]));
  return p;
}

double op_norm_sdp(const CMatrix& m) {
  // min t  s.t.  [[tI, M], [M*, tI]] ⪰ 0
  LmiProblem lmi;
  const int r = static_cast<int>(m.rows());
  const int c = static_cast<int>(m.cols());
  const int blk = lmi.add_block(r + c);
  const int t = lmi.add_variable(-1.0);
  for (int i = 0; i < r + c; ++i) lmi.add_term(t, blk, i, i, 1.0);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) lmi.add_constant(blk, i, r + j, m(i, j));
  const LmiSolution s = solve_lmi(lmi);
  EXPECT_TRUE(s.optimal()) << s.sdp.message;
  return s.values(t);
}

}  // namespace

TEST(Sdp, ForcedTraceValue) {
  SdpProblem p;
  p.add_block(3);
  for (int i = 0; i < 3; ++i) p.objective.add(0, i, i, 1.0);
  BlockSparse a;
  a.add(0, 0, 0, 1.0);
  p.add_constraint(a, 1.0);
  const SdpSolution s = sdp_solve(p);
  ASSERT_TRUE(s.optimal()) << s.message;
  EXPECT_NEAR(s.primal_objective, 1.0, 1e-8);
  EXPECT_NEAR(s.dual_objective, 1.0, 1e-8);
}

TEST(Sdp, InfeasibleTraceToy) {
  SdpProblem p;
  p.add_block(2);
  BlockSparse a;
  a.add(0, 0, 0, 1.0);
  a.add(0, 1, 1, 1.0);
  p.add_constraint(a, -1.0);
  const SdpSolution s = sdp_solve(p);
  EXPECT_EQ(s.status, SdpStatus::Infeasible) << s.message;
}

TEST(Sdp, OperatorNormMatchesSvd) {
  Rng rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const CMatrix m = random_gaussian(3 + trial % 3, 2 + trial % 4, rng);
    EXPECT_NEAR(op_norm_sdp(m), op_norm(m), 1e-7);
  }
}

TEST(Sdp, RandomStrictlyFeasible) {
  Rng rng(11);
  for (int trial = 0; trial < 8; ++trial) {
    const std::vector<int> dims = {5 + trial, 3, 1};
    const SdpProblem p = random_feasible(dims, 4 + 3 * trial, rng);
    const SdpSolution s = sdp_solve(p);
    ASSERT_TRUE(s.optimal()) << s.message;
    EXPECT_LE(s.gap, 1e-7);
    EXPECT_GE(s.primal_objective, s.dual_objective - 1e-9 * (1.0 + std::abs(s.primal_objective)));
    const KktResiduals r = kkt_residuals(p, s);
    EXPECT_LE(r.primal, 1e-6);
    EXPECT_LE(r.dual, 1e-6);
    EXPECT_LE(r.complementarity, 1e-6);
    EXPECT_GE(r.min_primal_eig, -1e-9);
  }
}

TEST(Sdp, SparseCoefficientsConverge) {
  Rng rng(3);
  SdpProblem p = random_feasible({6}, 5, rng);
  // Thinned coefficients fall below the dense threshold and take the sparse Schur path.
  SdpProblem q;
  q.block_dims = p.block_dims;
  q.objective = p.objective;
  for (int i = 0; i < p.num_constraints(); ++i) {
    BlockSparse a;
    for (const auto& e : p.constraints[static_cast<std::size_t>(i)].entries())
      if (std::abs(e.value) > 0.3 || e.row == e.col) a.add(e.block, e.row, e.col, e.value);
    q.add_constraint(a, p.rhs[static_cast<std::size_t>(i)]);
  }
  const SdpSolution sparse = sdp_solve(q);
  ASSERT_TRUE(sparse.optimal()) << sparse.message;
  const KktResiduals r = kkt_residuals(q, sparse);
  EXPECT_LE(r.primal, 1e-6);
  EXPECT_LE(r.dual, 1e-6);
}

TEST(Sdp, JsonRoundTrip) {
  Rng rng(5);
  const SdpProblem p = random_feasible({3, 2}, 3, rng);
  const SdpProblem q = sdp_from_json(sdp_to_json(p));
  EXPECT_EQ(q.block_dims, p.block_dims);
  ASSERT_EQ(q.num_constraints(), p.num_constraints());
  EXPECT_NEAR(sdp_solve(q).primal_objective, sdp_solve(p).primal_objective, 1e-12);
}

TEST(Sdp, RejectsInconsistentBlocks) {
  SdpProblem p;
  p.add_block(2);
  BlockSparse a;
  a.add(0, 0, 3, 1.0);
  p.add_constraint(a, 1.0);
  EXPECT_THROW(sdp_solve(p), std::invalid_argument);
  BlockSparse h;
  CMatrix nonherm = CMatrix::Zero(2, 2);
  nonherm(0, 1) = 1.0;
  EXPECT_THROW(h.add_dense(0, nonherm), std::invalid_argument);
}

TEST(Bisect, Threshold) {
  const double g = quasiconvex_bisect([](double x) { return x >= 2.0; }, 0.0, 10.0, 1e-6);
  EXPECT_GE(g, 2.0);
  EXPECT_LE(g - 2.0, 1e-6);
}

TEST(Bisect, ConstantTrueReturnsLo) {
  EXPECT_EQ(quasiconvex_bisect([](double) { return true; }, 0.5, 3.0, 1e-6), 0.5);
}

TEST(Bisect, InfeasibleUpperEndThrows) {
  EXPECT_THROW(quasiconvex_bisect([](double) { return false; }, 0.0, 1.0, 1e-3), std::invalid_argument);
}

TEST(Bisect, BracketWidthHonored) {
  int calls = 0;
  const double tol = 1e-4;
  const double g = quasiconvex_bisect(
      [&](double x) {
        ++calls;
        return x >= std::sqrt(2.0);
      },
      1.0, 2.0, tol);
  EXPECT_GE(g, std::sqrt(2.0));
  EXPECT_LE(g - std::sqrt(2.0), tol);
  EXPECT_LE(calls, 20);
}

TEST(Sdp, LargerRandomInstances) {
  Rng rng(2024);
  for (int trial = 0; trial < 6; ++trial) {
    const std::vector<int> dims = {30, 12, 1};
    const SdpProblem p = random_feasible(dims, 60, rng);
    const SdpSolution s = sdp_solve(p);
    ASSERT_TRUE(s.optimal()) << s.message;
    EXPECT_LE(s.gap, 1e-7);
    const KktResiduals r = kkt_residuals(p, s);
    EXPECT_LE(std::max({r.primal, r.dual, r.complementarity}), 1e-6);
  }
}
