#pragma once

// Unitary-matrix helpers used by the search: Haar sampling, exp(iH) for
// Hermitian H, and the pullback of a gradient through exp(iH).

#include <random>

#include <Eigen/Dense>

#include "antilinear/operator.hpp"

namespace antilinear {

/// Haar-distributed unitary: QR of a complex Gaussian matrix with the phases
/// of R's diagonal moved into Q.
Matrix haar_unitary(int dim, std::mt19937_64& rng);

/// Block-diagonal copies of [[0,1],[-1,0]]. dim must be even.
Matrix symplectic_form(int dim);

/// exp(iH) for Hermitian H, through the eigendecomposition of H.
Matrix exp_i_hermitian(const Matrix& h);

/// Given the gradient of a real function f with respect to E = exp(iH)
/// (in the sense df = Re Tr(G^H dE)), returns the Hermitian gradient with
/// respect to H. Uses the divided-difference form of the Frechet derivative.
Matrix exp_i_hermitian_pullback(const Matrix& h, const Matrix& grad_e);

/// Number of real parameters of a Hermitian dim x dim matrix (dim^2).
inline int hermitian_param_count(int dim) { return dim * dim; }

/// Real parameters: the diagonal, then (Re, Im) of H(j, k) for j < k in
/// row-major order.
Matrix hermitian_from_params(const double* params, int dim);

/// Writes df/dparams for a Hermitian gradient G (df = Re Tr(G^H dH)).
void params_gradient(const Matrix& grad_h, double* out);

}  // namespace antilinear
