#include "simdeg/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace simdeg {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double op_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  // Gram matrix on the smaller side; the top eigenvalue keeps full relative accuracy.
  const CMatrix gram = m.rows() <= m.cols() ? CMatrix(m * m.adjoint()) : CMatrix(m.adjoint() * m);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(gram, Eigen::EigenvaluesOnly);
  const double top = es.eigenvalues().maxCoeff();
  return std::sqrt(std::max(top, 0.0));
}

double trace_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::BDCSVD<CMatrix> svd(m);
  return svd.singularValues().sum();
}

double condition_number(const CMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("condition_number: matrix must be square");
  Eigen::BDCSVD<CMatrix> svd(m);
  const auto& s = svd.singularValues();
  const double smin = s(s.size() - 1);
  if (smin <= 0.0) return std::numeric_limits<double>::infinity();
  return s(0) / smin;
}

bool all_finite(const CMatrix& m) {
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const Complex v = m.data()[i];
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  }
  return true;
}

double hermitian_defect(const CMatrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

CMatrix hermitian_part(const CMatrix& m) { return 0.5 * (m + m.adjoint()); }

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CMatrix direct_sum(const CMatrix& a, const CMatrix& b) {
  CMatrix out = CMatrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

CMatrix identity(std::size_t n) {
  return CMatrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
}

CMatrix matrix_unit(std::size_t rows, std::size_t cols, std::size_t i, std::size_t j) {
  CMatrix e = CMatrix::Zero(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = 1.0;
  return e;
}

CMatrix random_gaussian(std::size_t rows, std::size_t cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  CMatrix g(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index j = 0; j < g.cols(); ++j)
    for (Eigen::Index i = 0; i < g.rows(); ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  return g;
}

CMatrix random_pd(std::size_t n, double cond, Rng& rng) {
  const CMatrix u = haar_unitary(n, rng);
  std::uniform_real_distribution<double> unif(0.0, std::log(cond));
  RVector ev(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < ev.size(); ++i) ev(i) = std::exp(unif(rng));
  return u * ev.cast<Complex>().asDiagonal() * u.adjoint();
}

CMatrix random_with_condition(std::size_t n, double cond, Rng& rng) {
  if (cond < 1.0) throw std::invalid_argument("random_with_condition: cond must be >= 1");
  const CMatrix u = haar_unitary(n, rng);
  const CMatrix v = haar_unitary(n, rng);
  RVector s(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    const double frac = n == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(n - 1);
    s(i) = std::pow(cond, frac);
  }
  return u * s.cast<Complex>().asDiagonal() * v.adjoint();
}

namespace {

CMatrix symmetrized_or_throw(const CMatrix& m, double asym_tol, const char* who) {
  if (m.rows() != m.cols()) {
    std::ostringstream msg;
    msg << who << ": matrix is " << m.rows() << "x" << m.cols() << ", expected square";
    throw std::invalid_argument(msg.str());
  }
  if (!all_finite(m)) throw std::invalid_argument(std::string(who) + ": non-finite entries");
  const double scale = std::max(1.0, m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff());
  const double defect = hermitian_defect(m);
  if (defect > asym_tol * scale) {
    std::ostringstream msg;
    msg << who << ": matrix is not Hermitian (defect " << defect << ")";
    throw std::invalid_argument(msg.str());
  }
  return hermitian_part(m);
}

}  // namespace

HermitianPD::HermitianPD(const CMatrix& m, double asym_tol)
    : matrix_(symmetrized_or_throw(m, asym_tol, "HermitianPD")) {
  if (matrix_.size() == 0) throw std::invalid_argument("HermitianPD: empty matrix");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(matrix_);
  eigenvalues_ = es.eigenvalues();
  eigenvectors_ = es.eigenvectors();
  if (!(eigenvalues_(0) > 0.0)) {
    std::ostringstream msg;
    msg << "HermitianPD: matrix is not positive definite (smallest eigenvalue " << eigenvalues_(0) << ")";
    throw std::invalid_argument(msg.str());
  }
}

CMatrix frac_power(const HermitianPD& p, double t) {
  return p.apply([t](double x) { return std::pow(x, t); });
}

CMatrix matrix_log(const HermitianPD& p) {
  return p.apply([](double x) { return std::log(x); });
}

CMatrix hermitian_exp(const CMatrix& h) {
  const CMatrix sym = symmetrized_or_throw(h, 1e-12, "hermitian_exp");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(sym);
  const RVector ev = es.eigenvalues().array().exp();
  return es.eigenvectors() * ev.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
}

RVector hermitian_eigenvalues(const CMatrix& h, double asym_tol) {
  const CMatrix sym = symmetrized_or_throw(h, asym_tol, "hermitian_eigenvalues");
  if (sym.size() == 0) return RVector();
  Eigen::SelfAdjointEigenSolver<CMatrix> es(sym, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

CMatrix haar_unitary(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  return haar_unitary(n, rng);
}

CMatrix haar_unitary(std::size_t n, Rng& rng) {
  if (n == 0) throw std::invalid_argument("haar_unitary: dimension must be >= 1");
  const CMatrix g = random_gaussian(n, n, rng);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ() * identity(n);
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < q.cols(); ++k) {
    const Complex d = r(k, k);
    const double a = std::abs(d);
    const Complex phase = a > 0.0 ? d / a : Complex(1.0, 0.0);
    q.col(k) *= phase;
  }
  return q;
}

std::vector<CMatrix> weyl_design(std::size_t n) {
  if (n == 0) throw std::invalid_argument("weyl_design: dimension must be >= 1");
  const auto dim = static_cast<Eigen::Index>(n);
  CMatrix shift = CMatrix::Zero(dim, dim);
  CMatrix clock = CMatrix::Zero(dim, dim);
  for (Eigen::Index m = 0; m < dim; ++m) {
    shift((m + 1) % dim, m) = 1.0;
    clock(m, m) = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(n));
  }
  std::vector<CMatrix> out;
  out.reserve(n * n);
  CMatrix xj = identity(n);
  for (std::size_t j = 0; j < n; ++j) {
    CMatrix zk = identity(n);
    for (std::size_t k = 0; k < n; ++k) {
      out.push_back(xj * zk);
      zk = zk * clock;
    }
    xj = xj * shift;
  }
  return out;
}

CMatrix weyl_twirl(const CMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("weyl_twirl: matrix must be square");
  const auto n = static_cast<std::size_t>(a.rows());
  CMatrix acc = CMatrix::Zero(a.rows(), a.cols());
  for (const CMatrix& w : weyl_design(n)) acc += w * a * w.adjoint();
  return acc / static_cast<double>(n * n);
}

CMatrix polar_unitary(const CMatrix& m) {
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

CMatrix clip_to_contraction(const CMatrix& m) {
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  RVector s = svd.singularValues();
  if (s.size() == 0 || s(0) <= 1.0) return m;
  for (Eigen::Index i = 0; i < s.size(); ++i) s(i) = std::min(s(i), 1.0);
  return svd.matrixU() * s.cast<Complex>().asDiagonal() * svd.matrixV().adjoint();
}

}  // namespace simdeg
