#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "simdeg/groups.hpp"
#include "simdeg/opspace.hpp"

using namespace simdeg;

namespace {

GroupFunction random_function(const GroupPtr& g, Rng& rng) {
  return {g, random_gaussian(static_cast<std::size_t>(g->order()), 1, rng).col(0)};
}

// Sign representation of ℤ₂ as diag(1, −1) on the generator.
GroupRep sign_rep_z2() {
  auto g = cyclic_group(2);
  CMatrix d = CMatrix::Zero(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = -1.0;
  return GroupRep(g, {identity(2), d});
}

}  // namespace

TEST(FiniteGroup, CyclicTable) {
  auto g = cyclic_group(5);
  EXPECT_EQ(g->order(), 5);
  EXPECT_EQ(g->identity(), 0);
  EXPECT_EQ(g->mul(3, 4), 2);
  EXPECT_EQ(g->inv(2), 3);
  EXPECT_TRUE(g->is_abelian());
  EXPECT_EQ(g->element_order(1), 5);
  EXPECT_EQ(cyclic_group(1)->order(), 1);
}

TEST(FiniteGroup, DihedralAndSymmetric) {
  auto d = dihedral_group(4);
  EXPECT_EQ(d->order(), 8);
  EXPECT_FALSE(d->is_abelian());
  const int r = 1, s = 4;
  // s r s = r⁻¹
  EXPECT_EQ(d->mul(d->mul(s, r), s), d->inv(r));
  EXPECT_EQ(d->element_order(r), 4);
  EXPECT_EQ(d->element_order(s), 2);

  auto s3 = symmetric_group(3);
  EXPECT_EQ(s3->order(), 6);
  EXPECT_FALSE(s3->is_abelian());
  EXPECT_EQ(s3->identity(), 0);
  EXPECT_EQ(symmetric_group(4)->order(), 24);
}

TEST(FiniteGroup, RejectsBadTables) {
  // Not associative: a Latin square that is not a group table.
  std::vector<std::vector<int>> t = {{0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
  EXPECT_THROW(FiniteGroup(t, {1, 2}), std::invalid_argument);
  EXPECT_THROW(FiniteGroup({{0, 1}, {1, 2}}, {1}), std::invalid_argument);
  // ℤ₄ is not generated by 2.
  EXPECT_THROW(FiniteGroup(cyclic_group(4)->table(), {2}), std::invalid_argument);
}

TEST(FiniteGroup, SpecParsing) {
  EXPECT_EQ(make_group("cyclic:8")->order(), 8);
  EXPECT_EQ(make_group("dihedral:4")->order(), 8);
  EXPECT_EQ(make_group("sym:3")->order(), 6);
  auto p = make_group("prod:cyclic:2,cyclic:3,cyclic:2");
  EXPECT_EQ(p->order(), 12);
  EXPECT_TRUE(p->is_abelian());
  EXPECT_THROW(make_group("cyclic:65"), std::invalid_argument);
  EXPECT_THROW(make_group("sym:5"), std::invalid_argument);
  EXPECT_THROW(make_group("prod:cyclic:8,cyclic:9"), std::invalid_argument);
  EXPECT_THROW(make_group("torus:3"), std::invalid_argument);
  EXPECT_THROW(make_group("cyclic:x"), std::invalid_argument);
  EXPECT_THROW(make_group("cyclic:0"), std::invalid_argument);
  EXPECT_THROW(make_group("cyclic"), std::invalid_argument);
  EXPECT_EQ(make_group("cyclic:100", 128)->order(), 100);
}

TEST(WordDiameter, Examples) {
  auto z5 = cyclic_group(5);
  EXPECT_EQ(word_diameter(*z5, {1, 4}), 2);
  EXPECT_EQ(word_diameter(*z5, {1}), 4);
  for (int n = 1; n <= 5; ++n) {
    std::string spec = "prod:cyclic:2";
    for (int i = 1; i < n; ++i) spec += ",cyclic:2";
    auto g = make_group(spec);
    EXPECT_EQ(word_diameter(*g, g->generators()), n) << spec;
  }
  EXPECT_EQ(word_diameter(*cyclic_group(6), {2}), std::nullopt);
  EXPECT_EQ(word_diameter(*cyclic_group(1), {}), 0);
}

TEST(GroupRep, Validation) {
  auto z2 = cyclic_group(2);
  EXPECT_THROW(GroupRep(z2, {identity(2), 2.0 * identity(2)}), std::invalid_argument);
  EXPECT_THROW(GroupRep(z2, {identity(2)}), std::invalid_argument);
  const GroupRep lam = regular_rep(make_group("sym:3"));
  EXPECT_TRUE(lam.is_unitary());
  EXPECT_NEAR(lam.sup_norm(), 1.0, 1e-12);
}

TEST(GroupRep, GoldenTwist) {
  CMatrix s = identity(2);
  s(0, 1) = 0.5;
  const GroupRep pi = ub_rep_twist(sign_rep_z2(), s);
  CMatrix expect(2, 2);
  expect << 1.0, 1.0, 0.0, -1.0;
  EXPECT_LE((pi(1) - expect).norm(), 1e-14);
  EXPECT_NEAR(pi.sup_norm(), (1.0 + std::sqrt(5.0)) / 2.0, 1e-12);
  EXPECT_NEAR(pi.sup_norm() * pi.sup_norm(), (3.0 + std::sqrt(5.0)) / 2.0, 1e-12);
  EXPECT_FALSE(pi.is_unitary());
  EXPECT_THROW(ub_rep_twist(pi, identity(2)), std::invalid_argument);
  EXPECT_THROW(ub_rep_twist(sign_rep_z2(), CMatrix::Zero(2, 2)), std::invalid_argument);
}

TEST(GroupRep, TensorAndSum) {
  auto z2 = cyclic_group(2);
  auto k4 = make_group("prod:cyclic:2,cyclic:2");
  const GroupRep a = sign_rep_z2();
  const GroupRep t = tensor_rep(a, a, k4);
  EXPECT_EQ(t.dim(), 4);
  EXPECT_LE((t(3) - kron(a(1), a(1))).norm(), 1e-14);
  const GroupRep d = a.direct_sum(regular_rep(z2));
  EXPECT_EQ(d.dim(), 4);
  Rng rng(3);
  const CMatrix u = haar_unitary(4, rng);
  EXPECT_TRUE(d.conjugate(u).is_unitary(1e-9));
}

TEST(GroupAlgebra, ConvolutionIsMultiplicative) {
  auto g = make_group("dihedral:3");
  Rng rng(4);
  GroupAlgElement x(g, 2), y(g, 2);
  for (int t = 0; t < g->order(); ++t) {
    x[t] = random_gaussian(2, 2, rng);
    y[t] = random_gaussian(2, 2, rng);
  }
  const GroupRep lam = regular_rep(g);
  EXPECT_LE(((x * y).represent(lam) - x.represent(lam) * y.represent(lam)).norm(), 1e-10);
  const auto d = GroupAlgElement::delta(g, 1) * GroupAlgElement::delta(g, 3);
  EXPECT_EQ(d[g->mul(1, 3)](0, 0), Complex(1.0, 0.0));
  EXPECT_LE(((x - x)[2]).norm(), 0.0);
}

TEST(GroupAlgebra, CstarNorm) {
  auto z2 = cyclic_group(2);
  auto x = GroupAlgElement::delta(z2, 0) + GroupAlgElement::delta(z2, 1);
  EXPECT_NEAR(cstar_norm(x), 2.0, 1e-12);

  // ℤ_m: ‖Σ c_t λ(t)‖ = max over characters of |Σ c_t ω^{jt}|.
  const int m = 7;
  auto zm = cyclic_group(m);
  Rng rng(5);
  GroupAlgElement c(zm, 1);
  for (int t = 0; t < m; ++t) c[t] = random_gaussian(1, 1, rng);
  double best = 0.0;
  for (int j = 0; j < m; ++j) {
    Complex s = 0.0;
    for (int t = 0; t < m; ++t) s += c[t](0, 0) * std::polar(1.0, 2.0 * std::numbers::pi * j * t / m);
    best = std::max(best, std::abs(s));
  }
  EXPECT_NEAR(cstar_norm(c), best, 1e-10);
}

TEST(Characters, Orthogonality) {
  for (const char* spec : {"cyclic:1", "cyclic:6", "prod:cyclic:2,cyclic:4", "dihedral:2"}) {
    auto g = make_group(spec);
    const CMatrix x = abelian_characters(*g);
    const int n = g->order();
    EXPECT_LE((x * x.adjoint() - n * identity(n)).norm(), 1e-9) << spec;
  }
  EXPECT_THROW(abelian_characters(*make_group("sym:3")), std::invalid_argument);
}

TEST(BG, Examples) {
  auto z4 = cyclic_group(4);
  // Constant 1, a character and δ_e all have norm 1.
  EXPECT_NEAR(bg_norm({z4, CVector::Ones(4)}), 1.0, 1e-7);
  CVector chi(4);
  for (int t = 0; t < 4; ++t) chi(t) = std::polar(1.0, std::numbers::pi * t / 2.0);
  EXPECT_NEAR(bg_norm({z4, chi}), 1.0, 1e-7);
  CVector delta = CVector::Zero(4);
  delta(0) = 1.0;
  EXPECT_NEAR(bg_norm({z4, delta}), 1.0, 1e-7);
  // 1 + χ has Fourier mass 2.
  EXPECT_NEAR(bg_norm({z4, CVector(CVector::Ones(4) + chi)}), 2.0, 1e-7);
}

TEST(BG, TripleAgreementAbelian) {
  Rng rng(6);
  for (const char* spec : {"cyclic:5", "cyclic:8", "prod:cyclic:2,cyclic:2,cyclic:2", "prod:cyclic:3,cyclic:2"}) {
    auto g = make_group(spec);
    for (int trial = 0; trial < 3; ++trial) {
      const GroupFunction f = random_function(g, rng);
      const double fourier = bg_norm_fourier_abelian(f);
      EXPECT_NEAR(bg_norm(f), fourier, 1e-6 * fourier) << spec;
      EXPECT_NEAR(herz_schur_norm(f), fourier, 1e-6 * fourier) << spec;
    }
  }
}

TEST(BG, PositiveDefiniteFunctions) {
  // φ(t) = ⟨π(t)ξ, ξ⟩ for unitary π has B(G) norm φ(e) = ‖ξ‖².
  Rng rng(7);
  for (const char* spec : {"sym:3", "dihedral:4"}) {
    auto g = make_group(spec);
    const GroupRep lam = regular_rep(g);
    const CVector xi = random_gaussian(static_cast<std::size_t>(g->order()), 1, rng).col(0);
    const GroupFunction phi = coefficient_fn(lam, xi, xi);
    EXPECT_NEAR(bg_norm(phi), xi.squaredNorm(), 1e-6 * xi.squaredNorm()) << spec;
    EXPECT_NEAR(herz_schur_norm(phi), xi.squaredNorm(), 1e-6 * xi.squaredNorm()) << spec;
  }
}

TEST(BG, BozejkoFendlerNonAbelian) {
  Rng rng(8);
  for (const char* spec : {"sym:3", "dihedral:4", "dihedral:5"}) {
    auto g = make_group(spec);
    for (int trial = 0; trial < 2; ++trial) {
      const GroupFunction f = random_function(g, rng);
      const double b = bg_norm(f);
      const double h = herz_schur_norm(f);
      EXPECT_NEAR(b, h, 1e-6 * b) << spec;
      EXPECT_LE(f.sup_norm(), h * (1 + 1e-9)) << spec;
    }
  }
}

TEST(CoefficientFn, Values) {
  CMatrix s = identity(2);
  s(0, 1) = 0.5;
  const GroupRep pi = ub_rep_twist(sign_rep_z2(), s);
  CVector xi(2), eta(2);
  xi << 1.0, 2.0;
  eta << Complex(0.0, 1.0), 3.0;
  const GroupFunction f = coefficient_fn(pi, xi, eta);
  // η*π(g)ξ with π(g)ξ = (3, −2).
  EXPECT_NEAR(std::abs(f.values(0) - (Complex(0.0, -1.0) + 6.0)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(f.values(1) - (Complex(0.0, -3.0) - 6.0)), 0.0, 1e-14);
  // Twisted coefficients stay within |π|²‖ξ‖‖η‖ in B(G).
  const double bound = std::pow(pi.sup_norm(), 2) * xi.norm() * eta.norm();
  EXPECT_LE(bg_norm(f), bound);
  EXPECT_THROW(coefficient_fn(pi, CVector::Ones(3), eta), std::invalid_argument);
}

TEST(GroupRep, RegularComponentsAreIrreducible) {
  for (const char* spec : {"cyclic:6", "sym:3", "dihedral:4", "sym:4", "prod:sym:3,cyclic:2"}) {
    auto g = make_group(spec);
    const auto parts = regular_components(g, 3);
    int total = 0;
    for (const auto& p : parts) {
      EXPECT_TRUE(p.is_unitary(1e-9)) << spec;
      // ⟨χ, χ⟩ = 1 characterizes irreducibility.
      double inner = 0.0;
      for (int t = 0; t < g->order(); ++t) inner += std::norm(p(t).trace());
      EXPECT_NEAR(inner / g->order(), 1.0, 1e-8) << spec;
      total += p.dim();
    }
    EXPECT_EQ(total, g->order()) << spec;
  }
  std::vector<int> dims;
  for (const auto& p : regular_components(make_group("sym:3"))) dims.push_back(p.dim());
  std::sort(dims.begin(), dims.end());
  EXPECT_EQ(dims, (std::vector<int>{1, 1, 2, 2}));
}

TEST(GroupRep, RandomUnitaryRep) {
  Rng rng(9);
  auto g = make_group("dihedral:5");
  for (int trial = 0; trial < 5; ++trial) {
    const GroupRep r = random_unitary_rep(g, 3, rng);
    EXPECT_LE(r.dim(), 3);
    EXPECT_TRUE(r.is_unitary(1e-9));
  }
}
