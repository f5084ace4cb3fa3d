#include "antilinear/construct.hpp"

#include <cmath>
#include <numbers>

#include <unsupported/Eigen/KroneckerProduct>

namespace antilinear {

namespace {

constexpr Complex kI{0.0, 1.0};

Matrix mat2(Complex a, Complex b, Complex c, Complex d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

void check_kind(const OrthoSet& set, SetKind expected, const char* name) {
  if (set.kind != expected) {
    throw DimensionError(std::string("combine_sets: ") + name + " must have kind " +
                         std::string(to_string(expected)));
  }
}

std::vector<AntiLinearOp> products(const OrthoSet& left, const OrthoSet& right) {
  std::vector<AntiLinearOp> out;
  out.reserve(left.size() * right.size());
  for (const auto& a : left.ops) {
    for (const auto& b : right.ops) out.push_back(tensor(a, b));
  }
  return out;
}

}  // namespace

std::string_view to_string(SetKind kind) {
  return kind == SetKind::conjugation ? "conjugation" : "skew";
}

SetKind parse_set_kind(std::string_view text) {
  if (text == "conjugation" || text == "conj") return SetKind::conjugation;
  if (text == "skew") return SetKind::skew;
  throw DimensionError("unknown set kind '" + std::string(text) + "'");
}

long long max_set_bound(long long d, SetKind kind) {
  if (d < 1) throw DimensionError("max_set_bound: d must be at least 1");
  return kind == SetKind::conjugation ? d * (d + 1) / 2 : d * (d - 1) / 2;
}

bool bound_achieved(const OrthoSet& set) {
  return static_cast<long long>(set.size()) == max_set_bound(set.dim, set.kind);
}

bool is_power_of_two(long long d) { return d >= 1 && (d & (d - 1)) == 0; }

AntiLinearOp tau0() { return AntiLinearOp(2, mat2(0.0, -1.0, 1.0, 0.0)); }
AntiLinearOp tau1() { return AntiLinearOp(2, mat2(-1.0, 0.0, 0.0, 1.0)); }
AntiLinearOp tau2() { return AntiLinearOp(2, mat2(kI, 0.0, 0.0, kI)); }
AntiLinearOp tau3() { return AntiLinearOp(2, mat2(0.0, 1.0, 1.0, 0.0)); }

LinearOp sigma1() { return LinearOp(2, mat2(0.0, 1.0, 1.0, 0.0)); }
LinearOp sigma2() { return LinearOp(2, mat2(0.0, -kI, kI, 0.0)); }
LinearOp sigma3() { return LinearOp(2, mat2(1.0, 0.0, 0.0, -1.0)); }

SetPair tau_set() {
  return {OrthoSet{2, SetKind::conjugation, {tau1(), tau2(), tau3()}, "tau2"},
          OrthoSet{2, SetKind::skew, {tau0()}, "tau2"}};
}

AntiLinearOp tensor(const AntiLinearOp& theta1, const AntiLinearOp& theta2) {
  return AntiLinearOp(theta1.dim() * theta2.dim(),
                      Eigen::kroneckerProduct(theta1.mat(), theta2.mat()).eval());
}

SetPair combine_sets(const OrthoSet& c1, const OrthoSet& s1, const OrthoSet& c2,
                     const OrthoSet& s2) {
  check_kind(c1, SetKind::conjugation, "c1");
  check_kind(s1, SetKind::skew, "s1");
  check_kind(c2, SetKind::conjugation, "c2");
  check_kind(s2, SetKind::skew, "s2");
  if (c1.dim != s1.dim || c2.dim != s2.dim) {
    throw DimensionError("combine_sets: paired sets must share a dimension");
  }
  const int d = c1.dim * c2.dim;
  const std::string meta =
      "tensor(" + std::to_string(c1.dim) + "," + std::to_string(c2.dim) + ")";

  SetPair out{OrthoSet{d, SetKind::conjugation, products(c1, c2), meta},
              OrthoSet{d, SetKind::skew, products(c1, s2), meta}};
  for (auto& op : products(s1, s2)) out.conj.ops.push_back(std::move(op));
  for (auto& op : products(s1, c2)) out.skew.ops.push_back(std::move(op));
  return out;
}

SetPair max_sets(int d) {
  if (!is_power_of_two(d)) {
    throw DimensionError("max_sets: d = " + std::to_string(d) +
                         " is not a power of two; use the numerical search for other "
                         "dimensions");
  }
  SetPair acc{OrthoSet{1, SetKind::conjugation, {standard_conjugation(1)}, "trivial(1)"},
              OrthoSet{1, SetKind::skew, {}, "trivial(1)"}};
  if (d == 1) return acc;
  acc = tau_set();
  const SetPair base = tau_set();
  while (acc.conj.dim < d) {
    acc = combine_sets(acc.conj, acc.skew, base.conj, base.skew);
  }
  acc.conj.meta = acc.skew.meta = "power2(" + std::to_string(d) + ")";
  return acc;
}

OrthoSet fourier_set(int d) {
  if (d < 1) throw DimensionError("fourier_set: d must be at least 1");
  OrthoSet set{d, SetKind::conjugation, {}, "fourier(" + std::to_string(d) + ")"};
  set.ops.reserve(d);
  for (int k = 0; k < d; ++k) {
    Matrix m = Matrix::Zero(d, d);
    for (int j = 0; j < d; ++j) {
      // Reduce the exponent first so the phases stay exact for small d.
      const long long e = (static_cast<long long>(j) * k) % d;
      m(j, j) = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(e) / d);
    }
    set.ops.emplace_back(d, std::move(m));
  }
  return set;
}

}  // namespace antilinear
