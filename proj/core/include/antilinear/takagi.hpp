#pragma once

#include <Eigen/Dense>

#include "antilinear/operator.hpp"

namespace antilinear {

struct TakagiResult {
  Matrix u;                 // unitary
  Eigen::VectorXd sigma;    // nonnegative, descending
};

/// Takagi factorization m = u * diag(sigma) * u^T of a complex symmetric
/// matrix. Throws DimensionError when ||m - m^T||_F > tol.
///
/// Solves the real symmetric 2d x 2d problem
///   [[B, -C], [-C, -B]] [x; y] = s [x; y],   m = B + iC,
/// whose positive eigenpairs give columns w = x + iy of conj(u) with
/// m w = s conj(w). Columns for zero singular values span the null space of
/// m and are completed by QR, which handles repeated and zero values alike.
TakagiResult takagi(const Matrix& m, double tol = kDefaultTol);

}  // namespace antilinear
