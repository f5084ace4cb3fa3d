#include "antilinear/unitary.hpp"

#include <cmath>

namespace antilinear {

Matrix haar_unitary(int dim, std::mt19937_64& rng) {
  const Matrix z = random_matrix(dim, rng);
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ();
  const Matrix& r = qr.matrixQR();
  for (int j = 0; j < dim; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

Matrix symplectic_form(int dim) {
  if (dim % 2 != 0) throw DimensionError("symplectic_form: dimension must be even");
  Matrix j = Matrix::Zero(dim, dim);
  for (int b = 0; b < dim; b += 2) {
    j(b, b + 1) = 1.0;
    j(b + 1, b) = -1.0;
  }
  return j;
}

Matrix exp_i_hermitian(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const Matrix& q = es.eigenvectors();
  Vector phases(h.rows());
  for (Eigen::Index j = 0; j < h.rows(); ++j) phases(j) = std::polar(1.0, es.eigenvalues()(j));
  return q * phases.asDiagonal() * q.adjoint();
}

Matrix exp_i_hermitian_pullback(const Matrix& h, const Matrix& grad_e) {
  const Eigen::Index n = h.rows();
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const Matrix& q = es.eigenvectors();
  const Eigen::VectorXd& lam = es.eigenvalues();

  // Divided differences of exp(i x): i e^{i mu} sinc(delta / 2).
  Matrix phi(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = 0; k < n; ++k) {
      const double mu = 0.5 * (lam(j) + lam(k));
      const double half = 0.5 * (lam(j) - lam(k));
      const double sinc = std::abs(half) < 1e-8 ? 1.0 - half * half / 6.0 : std::sin(half) / half;
      phi(j, k) = Complex(0.0, 1.0) * std::polar(sinc, mu);
    }
  }
  const Matrix inner = phi.conjugate().cwiseProduct(q.adjoint() * grad_e * q);
  const Matrix full = q * inner * q.adjoint();
  return 0.5 * (full + full.adjoint());
}

Matrix hermitian_from_params(const double* params, int dim) {
  Matrix h(dim, dim);
  int p = 0;
  for (int j = 0; j < dim; ++j) h(j, j) = params[p++];
  for (int j = 0; j < dim; ++j) {
    for (int k = j + 1; k < dim; ++k) {
      const Complex z(params[p], params[p + 1]);
      p += 2;
      h(j, k) = z;
      h(k, j) = std::conj(z);
    }
  }
  return h;
}

void params_gradient(const Matrix& grad_h, double* out) {
  const auto dim = static_cast<int>(grad_h.rows());
  int p = 0;
  for (int j = 0; j < dim; ++j) out[p++] = grad_h(j, j).real();
  for (int j = 0; j < dim; ++j) {
    for (int k = j + 1; k < dim; ++k) {
      out[p++] = 2.0 * grad_h(j, k).real();
      out[p++] = 2.0 * grad_h(j, k).imag();
    }
  }
}

}  // namespace antilinear
