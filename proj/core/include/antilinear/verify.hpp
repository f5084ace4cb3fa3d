#pragma once

// Certificates for claimed orthogonal sets of (skew) conjugations.

#include <string>
#include <vector>

#include "antilinear/construct.hpp"
#include "antilinear/structure.hpp"

namespace antilinear {

struct Certificate {
  int dim = 0;
  SetKind kind = SetKind::conjugation;
  int k = 0;
  /// Worst of ||M -+ M^T||_F and ||M M^dag - I||_F over the set.
  double max_structure_residual = 0.0;
  double max_offdiag_gram = 0.0;
  /// Worst |G(a, a) - (+-d)|.
  double max_diag_deviation = 0.0;
  GramMatrix gram;
  bool passed = false;
  double tol = 0.0;
  std::vector<std::string> notes;
};

Certificate verify_set(const OrthoSet& set, double tol = kDefaultTol);

/// Raw-matrix form. All matrices must be dim x dim.
Certificate verify_set(int dim, SetKind kind, const std::vector<Matrix>& mats,
                       double tol = kDefaultTol);

}  // namespace antilinear
