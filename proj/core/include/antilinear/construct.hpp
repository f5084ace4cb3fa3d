#pragma once

// Explicit orthogonal sets of conjugations and skew conjugations.

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "antilinear/operator.hpp"

namespace antilinear {

enum class SetKind { conjugation, skew };

std::string_view to_string(SetKind kind);
/// Accepts "conjugation"/"conj" and "skew".
SetKind parse_set_kind(std::string_view text);

/// A collection of anti-linear operators claimed to be mutually orthogonal
/// (skew) conjugations. The claim is checked by verify_set, not here.
struct OrthoSet {
  int dim = 0;
  SetKind kind = SetKind::conjugation;
  std::vector<AntiLinearOp> ops;
  std::string meta;

  std::size_t size() const { return ops.size(); }
};

struct SetPair {
  OrthoSet conj;
  OrthoSet skew;
};

/// Upper bound on the size of an orthogonal set: d(d+1)/2 or d(d-1)/2.
long long max_set_bound(long long d, SetKind kind);

/// True when the set reaches max_set_bound for its dimension.
bool bound_achieved(const OrthoSet& set);

bool is_power_of_two(long long d);

// The d = 2 operators, in the standard basis.
AntiLinearOp tau0();  // [[0,-1],[1,0]], skew conjugation
AntiLinearOp tau1();  // diag(-1, 1)
AntiLinearOp tau2();  // i * I
AntiLinearOp tau3();  // [[0,1],[1,0]]

// Pauli matrices as linear operators.
LinearOp sigma1();
LinearOp sigma2();
LinearOp sigma3();

/// ({tau1, tau2, tau3}, {tau0}).
SetPair tau_set();

/// Kronecker product, left factor is the slow index.
AntiLinearOp tensor(const AntiLinearOp& theta1, const AntiLinearOp& theta2);

/// Products of two orthogonal set pairs: conj = c1 x c2 + s1 x s2,
/// skew = c1 x s2 + s1 x c2.
SetPair combine_sets(const OrthoSet& c1, const OrthoSet& s1, const OrthoSet& c2,
                     const OrthoSet& s2);

/// Sets of size d(d+1)/2 and d(d-1)/2 for d a power of two, built as the
/// left fold 2 x 2 x ... x 2 of tau_set().
SetPair max_sets(int d);

/// The d conjugations with matrices diag(w^{jk}), w = exp(2 pi i / d).
OrthoSet fourier_set(int d);

}  // namespace antilinear
