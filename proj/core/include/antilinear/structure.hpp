#pragma once

// Orthonormal bases of the Hermitian and skew-Hermitian anti-linear operator
// spaces, and Gram matrices under the canonical form.

#include <utility>
#include <vector>

#include "antilinear/operator.hpp"

namespace antilinear {

enum class Parity { plus, minus };

struct OperatorBasis {
  int dim = 0;
  Parity parity = Parity::plus;
  std::vector<AntiLinearOp> ops;
};

/// Pairwise canonical-form table, G(a, b) = (op_a, op_b). Hermitian.
struct GramMatrix {
  Matrix entries;

  int size() const { return static_cast<int>(entries.rows()); }
  Complex operator()(int a, int b) const { return entries(a, b); }
  /// Largest |G(a, b)| with a != b.
  double max_offdiag() const;
};

/// Hermitian basis over the standard basis: the d diagonal rank-one operators,
/// then (1/sqrt2)(|j><k|_c + |k><j|_c) for k < j in lexicographic (j, k) order.
OperatorBasis basis_plus(int d);

/// Skew basis: (1/sqrt2)(|j><k|_c - |k><j|_c), k < j, same ordering.
OperatorBasis basis_minus(int d);

GramMatrix gram(const std::vector<AntiLinearOp>& ops);

struct SpaceDims {
  long long n_plus;
  long long n_minus;
};

/// (d(d+1)/2, d(d-1)/2).
SpaceDims space_dims(long long d);
/// n_plus - n_minus, always d.
long long signature(long long d);

/// Expansion of op over both bases using the indefinite metric:
/// op = sum_j (b_j, op) b_j over plus  -  sum_j (b_j, op) b_j over minus.
AntiLinearOp expand_in_bases(const AntiLinearOp& op, const OperatorBasis& plus,
                             const OperatorBasis& minus);

}  // namespace antilinear
