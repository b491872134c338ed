#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace simdeg {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

/// Seeded generator used everywhere randomness is needed. Always passed
/// explicitly; there is no global generator.
using Rng = std::mt19937_64;

/// splitmix64 finalizer; derives independent child seeds from (seed, index).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

// ---------------------------------------------------------------------------
// Basic numerics
// ---------------------------------------------------------------------------

/// Largest singular value.
double op_norm(const CMatrix& m);

/// Sum of singular values.
double trace_norm(const CMatrix& m);

/// Spectral condition number ‖M‖‖M⁻¹‖; infinity for singular input.
double condition_number(const CMatrix& m);

bool all_finite(const CMatrix& m);

/// Largest entry modulus of M − M*.
double hermitian_defect(const CMatrix& m);

CMatrix hermitian_part(const CMatrix& m);

CMatrix kron(const CMatrix& a, const CMatrix& b);

/// Block-diagonal direct sum.
CMatrix direct_sum(const CMatrix& a, const CMatrix& b);

CMatrix identity(std::size_t n);

/// Matrix unit E_ij of size rows x cols.
CMatrix matrix_unit(std::size_t rows, std::size_t cols, std::size_t i, std::size_t j);

/// Entrywise i.i.d. standard complex Gaussian (real and imaginary parts N(0, 1/2)).
CMatrix random_gaussian(std::size_t rows, std::size_t cols, Rng& rng);

/// Random Hermitian positive definite matrix with eigenvalues log-uniform in [1, cond].
CMatrix random_pd(std::size_t n, double cond, Rng& rng);

/// Random invertible matrix U diag(σ) V* with σ log-spaced over [1, cond], so its
/// condition number is exactly cond.
CMatrix random_with_condition(std::size_t n, double cond, Rng& rng);

// ---------------------------------------------------------------------------
// Hermitian functional calculus
// ---------------------------------------------------------------------------

/// Hermitian positive definite matrix with a cached spectral decomposition.
///
/// Construction symmetrizes the input when its Hermitian defect is at most
/// `asym_tol`·max(1, max|m_ij|) and throws std::invalid_argument otherwise.
/// A non-positive smallest eigenvalue is also rejected, and the message
/// reports that eigenvalue.
class HermitianPD {
 public:
  explicit HermitianPD(const CMatrix& m, double asym_tol = 1e-12);

  const CMatrix& matrix() const { return matrix_; }
  /// Ascending.
  const RVector& eigenvalues() const { return eigenvalues_; }
  const CMatrix& eigenvectors() const { return eigenvectors_; }
  std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }

  double min_eigenvalue() const { return eigenvalues_(0); }
  double max_eigenvalue() const { return eigenvalues_(eigenvalues_.size() - 1); }
  double condition() const { return max_eigenvalue() / min_eigenvalue(); }

  template <typename F>
  CMatrix apply(F&& f) const {
    RVector mapped(eigenvalues_.size());
    for (Eigen::Index i = 0; i < eigenvalues_.size(); ++i) mapped(i) = f(eigenvalues_(i));
    return eigenvectors_ * mapped.asDiagonal() * eigenvectors_.adjoint();
  }

 private:
  CMatrix matrix_;
  RVector eigenvalues_;
  CMatrix eigenvectors_;
};

/// P^t by spectral calculus.
CMatrix frac_power(const HermitianPD& p, double t);

/// Hermitian logarithm of a positive definite matrix.
CMatrix matrix_log(const HermitianPD& p);

/// exp(H) for Hermitian H (symmetrized with the same rule as HermitianPD).
CMatrix hermitian_exp(const CMatrix& h);

/// Eigenvalues (ascending) of a Hermitian matrix; rejects non-Hermitian input.
RVector hermitian_eigenvalues(const CMatrix& h, double asym_tol = 1e-12);

// ---------------------------------------------------------------------------
// Unitaries
// ---------------------------------------------------------------------------

/// Haar-distributed unitary: QR of a complex Gaussian matrix with the
/// phases of diag(R) moved into Q. Deterministic per seed.
CMatrix haar_unitary(std::size_t n, std::uint64_t seed);
CMatrix haar_unitary(std::size_t n, Rng& rng);

/// The n² Weyl (generalized Pauli) unitaries X^j Z^k, ordered with j major.
/// X is the cyclic shift X e_m = e_{m+1 mod n}; Z = diag(ω^m), ω = e^{2πi/n}.
std::vector<CMatrix> weyl_design(std::size_t n);

/// (1/n²) Σ W a W* over the Weyl design.
CMatrix weyl_twirl(const CMatrix& a);

/// Closest unitary in Frobenius norm (polar factor).
CMatrix polar_unitary(const CMatrix& m);

/// Orthogonal projection onto the operator-norm unit ball: singular values
/// clipped at 1.
CMatrix clip_to_contraction(const CMatrix& m);

}  // namespace simdeg
