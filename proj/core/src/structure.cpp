#include "antilinear/structure.hpp"

#include <cmath>

namespace antilinear {

namespace {

Vector unit(int d, int j) {
  Vector e = Vector::Zero(d);
  e(j) = 1.0;
  return e;
}

void check_positive(int d, const char* what) {
  if (d < 1) throw DimensionError(std::string(what) + ": d must be at least 1");
}

}  // namespace

double GramMatrix::max_offdiag() const {
  double worst = 0.0;
  for (int a = 0; a < size(); ++a) {
    for (int b = 0; b < size(); ++b) {
      if (a != b) worst = std::max(worst, std::abs(entries(a, b)));
    }
  }
  return worst;
}

OperatorBasis basis_plus(int d) {
  check_positive(d, "basis_plus");
  OperatorBasis basis{d, Parity::plus, {}};
  basis.ops.reserve(static_cast<std::size_t>(d) * (d + 1) / 2);
  for (int j = 0; j < d; ++j) basis.ops.push_back(rank_one_c(unit(d, j), unit(d, j)));
  const double s = 1.0 / std::sqrt(2.0);
  for (int j = 0; j < d; ++j) {
    for (int k = 0; k < j; ++k) {
      basis.ops.push_back(
          scale(s, rank_one_c(unit(d, j), unit(d, k)) + rank_one_c(unit(d, k), unit(d, j))));
    }
  }
  return basis;
}

OperatorBasis basis_minus(int d) {
  check_positive(d, "basis_minus");
  OperatorBasis basis{d, Parity::minus, {}};
  basis.ops.reserve(static_cast<std::size_t>(d) * (d - 1) / 2);
  const double s = 1.0 / std::sqrt(2.0);
  for (int j = 0; j < d; ++j) {
    for (int k = 0; k < j; ++k) {
      basis.ops.push_back(
          scale(s, rank_one_c(unit(d, j), unit(d, k)) - rank_one_c(unit(d, k), unit(d, j))));
    }
  }
  return basis;
}

GramMatrix gram(const std::vector<AntiLinearOp>& ops) {
  if (ops.empty()) throw DimensionError("gram: empty operator list");
  const int d = ops.front().dim();
  for (const auto& op : ops) {
    if (op.dim() != d) throw DimensionError("gram: operators of mixed dimension");
  }
  const auto k = static_cast<Eigen::Index>(ops.size());
  GramMatrix g{Matrix(k, k)};
  for (Eigen::Index a = 0; a < k; ++a) {
    g.entries(a, a) = canonical_form(ops[a], ops[a]);
    for (Eigen::Index b = a + 1; b < k; ++b) {
      g.entries(a, b) = canonical_form(ops[a], ops[b]);
      g.entries(b, a) = canonical_form(ops[b], ops[a]);
    }
  }
  return g;
}

SpaceDims space_dims(long long d) {
  if (d < 1) throw DimensionError("space_dims: d must be at least 1");
  return {d * (d + 1) / 2, d * (d - 1) / 2};
}

long long signature(long long d) {
  const auto dims = space_dims(d);
  return dims.n_plus - dims.n_minus;
}

AntiLinearOp expand_in_bases(const AntiLinearOp& op, const OperatorBasis& plus,
                             const OperatorBasis& minus) {
  Matrix acc = Matrix::Zero(op.dim(), op.dim());
  for (const auto& b : plus.ops) acc += canonical_form(b, op) * b.mat();
  for (const auto& b : minus.ops) acc -= canonical_form(b, op) * b.mat();
  return AntiLinearOp(op.dim(), std::move(acc));
}

}  // namespace antilinear
