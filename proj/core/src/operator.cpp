#include "antilinear/operator.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace antilinear {

namespace {

void check_square(int dim, const Matrix& mat, const char* what) {
  if (dim < 1) {
    throw DimensionError(std::string(what) + ": dimension must be positive");
  }
  if (mat.rows() != dim || mat.cols() != dim) {
    throw DimensionError(std::string(what) + ": expected " + std::to_string(dim) + "x" +
                         std::to_string(dim) + " matrix, got " +
                         std::to_string(mat.rows()) + "x" + std::to_string(mat.cols()));
  }
  if (!mat.allFinite()) {
    throw DimensionError(std::string(what) + ": matrix has non-finite entries");
  }
}

void check_same_dim(int a, int b, const char* what) {
  if (a != b) {
    throw DimensionError(std::string(what) + ": dimension mismatch (" + std::to_string(a) +
                         " vs " + std::to_string(b) + ")");
  }
}

void check_tol(double tol) {
  if (!(tol > 0.0)) throw DimensionError("tolerance must be positive");
}

}  // namespace

LinearOp::LinearOp(int dim, Matrix mat) : dim_(dim), mat_(std::move(mat)) {
  check_square(dim_, mat_, "LinearOp");
}

LinearOp LinearOp::identity(int dim) { return LinearOp(dim, Matrix::Identity(dim, dim)); }

Vector LinearOp::apply(const Vector& phi) const {
  check_same_dim(dim_, static_cast<int>(phi.size()), "LinearOp::apply");
  return mat_ * phi;
}

AntiLinearOp::AntiLinearOp(int dim, Matrix mat) : dim_(dim), mat_(std::move(mat)) {
  check_square(dim_, mat_, "AntiLinearOp");
}

Vector AntiLinearOp::apply(const Vector& phi) const {
  check_same_dim(dim_, static_cast<int>(phi.size()), "apply");
  return mat_ * phi.conjugate();
}

AntiLinearOp operator+(const AntiLinearOp& a, const AntiLinearOp& b) {
  check_same_dim(a.dim_, b.dim_, "operator+");
  return AntiLinearOp(a.dim_, a.mat_ + b.mat_);
}

AntiLinearOp operator-(const AntiLinearOp& a, const AntiLinearOp& b) {
  check_same_dim(a.dim_, b.dim_, "operator-");
  return AntiLinearOp(a.dim_, a.mat_ - b.mat_);
}

AntiLinearOp make_op(int dim, Matrix mat) { return AntiLinearOp(dim, std::move(mat)); }

AntiLinearOp zero_op(int dim) { return AntiLinearOp(dim, Matrix::Zero(dim, dim)); }

AntiLinearOp standard_conjugation(int dim) {
  return AntiLinearOp(dim, Matrix::Identity(dim, dim));
}

Vector apply(const AntiLinearOp& op, const Vector& phi) { return op.apply(phi); }

Complex inner(const Vector& x, const Vector& y) {
  check_same_dim(static_cast<int>(x.size()), static_cast<int>(y.size()), "inner");
  // Eigen's dot() conjugates its first argument.
  return x.dot(y);
}

AntiLinearOp adjoint(const AntiLinearOp& op) {
  return AntiLinearOp(op.dim(), op.mat().transpose());
}

AntiLinearOp scale(Complex c, const AntiLinearOp& op) {
  return AntiLinearOp(op.dim(), c * op.mat());
}

LinearOp compose_aa(const AntiLinearOp& theta2, const AntiLinearOp& theta1) {
  check_same_dim(theta2.dim(), theta1.dim(), "compose_aa");
  return LinearOp(theta1.dim(), theta2.mat() * theta1.mat().conjugate());
}

AntiLinearOp compose_al(const AntiLinearOp& theta, const LinearOp& a) {
  check_same_dim(theta.dim(), a.dim(), "compose_al");
  return AntiLinearOp(theta.dim(), theta.mat() * a.mat().conjugate());
}

AntiLinearOp compose_la(const LinearOp& a, const AntiLinearOp& theta) {
  check_same_dim(theta.dim(), a.dim(), "compose_la");
  return AntiLinearOp(theta.dim(), a.mat() * theta.mat());
}

AntiLinearOp hermitian_part(const AntiLinearOp& op) {
  return AntiLinearOp(op.dim(), 0.5 * (op.mat() + op.mat().transpose()));
}

AntiLinearOp skew_part(const AntiLinearOp& op) {
  return AntiLinearOp(op.dim(), 0.5 * (op.mat() - op.mat().transpose()));
}

AntiLinearOp rank_one_c(const Vector& phi_prime, const Vector& phi_dblprime) {
  check_same_dim(static_cast<int>(phi_prime.size()), static_cast<int>(phi_dblprime.size()),
                 "rank_one_c");
  return AntiLinearOp(static_cast<int>(phi_prime.size()),
                      phi_prime * phi_dblprime.transpose());
}

Complex canonical_form(const Matrix& m1, const Matrix& m2) {
  if (m1.rows() != m2.rows() || m1.cols() != m2.cols()) {
    throw DimensionError("canonical_form: dimension mismatch");
  }
  // Tr(M2 conj(M1)) = sum_jk M2_jk conj(M1_kj), no full product needed.
  return (m2.array() * m1.transpose().conjugate().array()).sum();
}

Complex canonical_form(const AntiLinearOp& theta1, const AntiLinearOp& theta2) {
  check_same_dim(theta1.dim(), theta2.dim(), "canonical_form");
  return canonical_form(theta1.mat(), theta2.mat());
}

double hermitian_residual(const Matrix& m) { return (m - m.transpose()).norm(); }

double skew_residual(const Matrix& m) { return (m + m.transpose()).norm(); }

double antiunitary_residual(const Matrix& m) {
  return (m * m.adjoint() - Matrix::Identity(m.rows(), m.cols())).norm();
}

bool is_hermitian(const AntiLinearOp& op, double tol) {
  check_tol(tol);
  return hermitian_residual(op.mat()) <= tol;
}

bool is_skew(const AntiLinearOp& op, double tol) {
  check_tol(tol);
  return skew_residual(op.mat()) <= tol;
}

bool is_antiunitary(const AntiLinearOp& op, double tol) {
  check_tol(tol);
  return antiunitary_residual(op.mat()) <= tol;
}

bool is_conjugation(const AntiLinearOp& op, double tol) {
  return is_hermitian(op, tol) && is_antiunitary(op, tol);
}

bool is_skew_conjugation(const AntiLinearOp& op, double tol) {
  return is_skew(op, tol) && is_antiunitary(op, tol);
}

Vector random_vector(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  Vector v(dim);
  for (int j = 0; j < dim; ++j) {
    const double re = normal(rng);
    const double im = normal(rng);
    v(j) = Complex(re, im);
  }
  return v;
}

Matrix random_matrix(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  Matrix m(dim, dim);
  // Column-major fill order so results do not depend on Eigen internals.
  for (int k = 0; k < dim; ++k) {
    for (int j = 0; j < dim; ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      m(j, k) = Complex(re, im);
    }
  }
  return m;
}

NumericalRangeEstimate numerical_range_samples(const AntiLinearOp& op, int n,
                                               std::uint64_t seed) {
  if (n < 1) throw DimensionError("numerical_range_samples: n must be at least 1");
  std::mt19937_64 rng(seed);
  NumericalRangeEstimate est;
  est.samples.reserve(n);
  est.vectors.reserve(n);
  for (int s = 0; s < n; ++s) {
    Vector phi = random_vector(op.dim(), rng);
    phi.normalize();
    const Complex value = inner(phi, op.apply(phi));
    est.radius_estimate = std::max(est.radius_estimate, std::abs(value));
    est.samples.push_back(value);
    est.vectors.push_back(std::move(phi));
  }
  return est;
}

double phase_covariance_residual(const AntiLinearOp& op,
                                 const NumericalRangeEstimate& estimate) {
  double worst = 0.0;
  for (std::size_t s = 0; s < estimate.vectors.size(); ++s) {
    const Vector& phi = estimate.vectors[s];
    for (int k = 0; k < 16; ++k) {
      const double t = k * std::numbers::pi / 8.0;
      const Complex phase = std::polar(1.0, t);
      const Vector rotated = phase * phi;
      const Complex value = inner(rotated, op.apply(rotated));
      const Complex expected = std::polar(1.0, -2.0 * t) * estimate.samples[s];
      worst = std::max(worst, std::abs(value - expected));
    }
  }
  return worst;
}

}  // namespace antilinear
