#include "antilinear/takagi.hpp"

#include <algorithm>
#include <limits>

namespace antilinear {

TakagiResult takagi(const Matrix& m, double tol) {
  if (!(tol > 0.0)) throw DimensionError("takagi: tolerance must be positive");
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw DimensionError("takagi: matrix must be square and nonempty");
  }
  if (hermitian_residual(m) > tol) {
    throw DimensionError("takagi: matrix is not symmetric");
  }
  const Eigen::Index n = m.rows();
  const Matrix sym = 0.5 * (m + m.transpose());
  const Eigen::MatrixXd b = sym.real();
  const Eigen::MatrixXd c = sym.imag();

  Eigen::MatrixXd embed(2 * n, 2 * n);
  embed << b, -c, -c, -b;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(embed);
  const Eigen::VectorXd& vals = es.eigenvalues();  // ascending
  const Eigen::MatrixXd& vecs = es.eigenvectors();

  const double top = std::max(vals(2 * n - 1), 0.0);
  const double cutoff = top * static_cast<double>(n) * 64.0 *
                        std::numeric_limits<double>::epsilon();

  Matrix w = Matrix::Zero(n, n);
  Eigen::VectorXd sigma = Eigen::VectorXd::Zero(n);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 2 * n - 1; i >= n && vals(i) > cutoff; --i, ++rank) {
    const Eigen::VectorXd x = vecs.col(i).head(n);
    const Eigen::VectorXd y = vecs.col(i).tail(n);
    Vector col(n);
    col.real() = x;
    col.imag() = y;
    w.col(rank) = col.normalized();
    sigma(rank) = vals(i);
  }

  if (rank < n) {
    // Orthonormal complement of the range columns: the null space of m.
    Eigen::HouseholderQR<Matrix> qr(w.leftCols(rank));
    const Matrix q = qr.householderQ();
    w.rightCols(n - rank) = q.rightCols(n - rank);
  }
  return {w.conjugate(), sigma};
}

}  // namespace antilinear
