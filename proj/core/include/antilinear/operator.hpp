#pragma once

// Anti-linear operators on C^d.
//
// An anti-linear operator is stored as a complex d x d matrix M and acts by
// phi -> M * conj(phi). With this representation the Wigner adjoint is the
// plain transpose, the product of two anti-linear operators is the linear
// operator M2 * conj(M1), and the canonical Hermitian form is
// Tr(M2 * conj(M1)).

#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace antilinear {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Default tolerance for the structural predicates.
inline constexpr double kDefaultTol = 1e-10;

/// Raised for shape and argument errors (mismatched dimensions, bad tolerances).
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Ordinary complex-linear operator phi -> A * phi.
class LinearOp {
 public:
  LinearOp(int dim, Matrix mat);

  static LinearOp identity(int dim);

  int dim() const { return dim_; }
  const Matrix& mat() const { return mat_; }

  Vector apply(const Vector& phi) const;
  Complex trace() const { return mat_.trace(); }

 private:
  int dim_;
  Matrix mat_;
};

/// Anti-linear operator phi -> M * conj(phi).
class AntiLinearOp {
 public:
  AntiLinearOp(int dim, Matrix mat);

  int dim() const { return dim_; }
  const Matrix& mat() const { return mat_; }

  Vector apply(const Vector& phi) const;

  friend AntiLinearOp operator+(const AntiLinearOp& a, const AntiLinearOp& b);
  friend AntiLinearOp operator-(const AntiLinearOp& a, const AntiLinearOp& b);

 private:
  int dim_;
  Matrix mat_;
};

AntiLinearOp make_op(int dim, Matrix mat);

/// Zero operator on C^dim.
AntiLinearOp zero_op(int dim);

/// Componentwise complex conjugation K on C^dim (matrix = identity).
AntiLinearOp standard_conjugation(int dim);

Vector apply(const AntiLinearOp& op, const Vector& phi);

/// Scalar product, conjugate-linear in the first argument.
Complex inner(const Vector& x, const Vector& y);

/// Wigner adjoint: <phi1, op^dag phi2> = <phi2, op phi1>. Matrix is M^T.
AntiLinearOp adjoint(const AntiLinearOp& op);

/// c * op. The adjoint commutes with this (the adjoint map is complex linear).
AntiLinearOp scale(Complex c, const AntiLinearOp& op);

/// theta2 o theta1, a linear operator with matrix M2 * conj(M1).
LinearOp compose_aa(const AntiLinearOp& theta2, const AntiLinearOp& theta1);
/// theta o A, matrix M * conj(A).
AntiLinearOp compose_al(const AntiLinearOp& theta, const LinearOp& a);
/// A o theta, matrix A * M.
AntiLinearOp compose_la(const LinearOp& a, const AntiLinearOp& theta);

AntiLinearOp hermitian_part(const AntiLinearOp& op);
AntiLinearOp skew_part(const AntiLinearOp& op);

/// (|phi'><phi''|)_c : phi -> <phi, phi''> phi'. Entries M_jk = phi'_j phi''_k.
AntiLinearOp rank_one_c(const Vector& phi_prime, const Vector& phi_dblprime);

/// Canonical Hermitian form (theta1, theta2) = Tr(theta2 theta1).
Complex canonical_form(const AntiLinearOp& theta1, const AntiLinearOp& theta2);

/// Same as canonical_form on raw matrices, without constructing operators.
Complex canonical_form(const Matrix& m1, const Matrix& m2);

bool is_hermitian(const AntiLinearOp& op, double tol = kDefaultTol);
bool is_skew(const AntiLinearOp& op, double tol = kDefaultTol);
bool is_antiunitary(const AntiLinearOp& op, double tol = kDefaultTol);
bool is_conjugation(const AntiLinearOp& op, double tol = kDefaultTol);
bool is_skew_conjugation(const AntiLinearOp& op, double tol = kDefaultTol);

// Frobenius residuals behind the predicates.
double hermitian_residual(const Matrix& m);     // ||M - M^T||
double skew_residual(const Matrix& m);          // ||M + M^T||
double antiunitary_residual(const Matrix& m);   // ||M M^dag - I||

struct NumericalRangeEstimate {
  std::vector<Complex> samples;  // <phi, op phi>
  std::vector<Vector> vectors;   // the sampled unit vectors, same order
  double radius_estimate = 0.0;
};

/// Samples <phi, op phi> over n seeded Gaussian-then-normalized unit vectors.
NumericalRangeEstimate numerical_range_samples(const AntiLinearOp& op, int n,
                                               std::uint64_t seed);

/// Largest deviation |<e^{it}phi, op e^{it}phi> - e^{-2it}<phi, op phi>| over
/// the sampled vectors and t = k*pi/8, k = 0..15.
double phase_covariance_residual(const AntiLinearOp& op,
                                 const NumericalRangeEstimate& estimate);

/// Seeded complex Gaussian vector / matrix, entries with unit variance.
Vector random_vector(int dim, std::mt19937_64& rng);
Matrix random_matrix(int dim, std::mt19937_64& rng);

}  // namespace antilinear
