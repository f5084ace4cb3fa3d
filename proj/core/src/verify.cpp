#include "antilinear/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace antilinear {

Certificate verify_set(const OrthoSet& set, double tol) {
  std::vector<Matrix> mats;
  mats.reserve(set.ops.size());
  for (const auto& op : set.ops) {
    if (op.dim() != set.dim) throw DimensionError("verify_set: operator of wrong dimension");
    mats.push_back(op.mat());
  }
  return verify_set(set.dim, set.kind, mats, tol);
}

Certificate verify_set(int dim, SetKind kind, const std::vector<Matrix>& mats, double tol) {
  if (mats.empty()) throw DimensionError("verify_set: empty set");
  if (!(tol > 0.0)) throw DimensionError("verify_set: tolerance must be positive");

  Certificate cert;
  cert.dim = dim;
  cert.kind = kind;
  cert.k = static_cast<int>(mats.size());
  cert.tol = tol;

  std::vector<AntiLinearOp> ops;
  ops.reserve(mats.size());
  for (const auto& m : mats) {
    ops.emplace_back(dim, m);
    const double parity = kind == SetKind::conjugation ? hermitian_residual(m) : skew_residual(m);
    cert.max_structure_residual =
        std::max({cert.max_structure_residual, parity, antiunitary_residual(m)});
  }

  cert.gram = gram(ops);
  cert.max_offdiag_gram = cert.gram.max_offdiag();
  const double expected = kind == SetKind::conjugation ? dim : -dim;
  for (int a = 0; a < cert.k; ++a) {
    cert.max_diag_deviation =
        std::max(cert.max_diag_deviation, std::abs(cert.gram(a, a) - expected));
  }

  cert.passed = cert.max_structure_residual <= tol && cert.max_offdiag_gram <= tol &&
                cert.max_diag_deviation <= tol;

  if (kind == SetKind::skew && dim % 2 == 1) {
    // M^T = -M with d odd gives det(M) = det(M^T) = -det(M), so det(M) = 0.
    double worst_det = 0.0;
    for (const auto& m : mats) worst_det = std::max(worst_det, std::abs(m.determinant()));
    std::ostringstream note;
    note << "determinant obstruction: an antisymmetric matrix of odd order " << dim
         << " is singular, so no skew conjugation exists in this dimension (max |det| = "
         << worst_det << ")";
    cert.notes.push_back(note.str());
    cert.passed = false;
  }
  if (static_cast<long long>(cert.k) > max_set_bound(dim, kind)) {
    cert.notes.push_back("set size " + std::to_string(cert.k) + " exceeds the bound " +
                         std::to_string(max_set_bound(dim, kind)));
  }
  return cert;
}

}  // namespace antilinear
