#pragma once

// Numerical search for large orthogonal sets of (skew) conjugations.
//
// Each candidate is parameterized as M = V S V^T with V unitary and S = I
// (conjugations) or S = J, the block form of [[0,1],[-1,0]] (skew
// conjugations), so every iterate is exactly a symmetric or antisymmetric
// unitary. V = B exp(iH) with B a base point and H Hermitian; after every
// accepted step the base point absorbs exp(iH) and H restarts at zero.
//
// The objective is the pairwise orthogonality loss
//   L = sum_{a<b} |(M_a, M_b)|^2 / d^2.

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "antilinear/construct.hpp"
#include "antilinear/operator.hpp"
#include "antilinear/verify.hpp"

namespace antilinear {

/// Raised when a request exceeds d(d+1)/2 or d(d-1)/2, or asks for skew
/// conjugations in odd dimension.
class BoundError : public DimensionError {
 public:
  using DimensionError::DimensionError;
};

enum class Strategy { joint, greedy };

std::string_view to_string(Strategy strategy);
Strategy parse_strategy(std::string_view text);

struct SearchConfig {
  int dim = 2;
  SetKind kind = SetKind::conjugation;
  int target_k = 2;
  int restarts = 8;
  int max_iters = 2000;
  double step_size = 0.5;  // initial trial step of the line search
  double tol_loss = 1e-12;
  std::uint64_t seed = 0;
  Strategy strategy = Strategy::joint;
  /// Worker threads for restarts. Results do not depend on this.
  int threads = 1;
  /// Compare the analytic gradient with central finite differences at the
  /// start point of every restart.
  bool check_gradient = false;
  /// Greedy only: operators accepted before growth starts.
  std::optional<OrthoSet> warm_start;
  /// Greedy only: fresh candidates tried per growth step.
  int candidate_attempts = 4;
};

/// Throws BoundError / DimensionError when the configuration is invalid.
void validate(const SearchConfig& config);

/// Builds a validated configuration.
SearchConfig make_search_config(int dim, SetKind kind, int target_k);

struct SearchReport {
  SearchConfig config;
  double best_loss = 0.0;
  std::optional<OrthoSet> achieved;
  long long iterations_used = 0;
  std::vector<double> per_restart_losses;
  int best_restart = -1;
  double wall_time_s = 0.0;
  /// Worst relative finite-difference gradient error (when requested).
  std::optional<double> gradient_check_error;
  /// explore_dimension: the shared budget ran out before this k was searched.
  bool budget_exhausted = false;
  /// explore_dimension: the first k-1 operators of the achieved set verify.
  std::optional<bool> prefix_verified;
};

/// Pairwise orthogonality loss on operator matrices, sum |(a,b)|^2 / d^2.
double orthogonality_loss(const std::vector<AntiLinearOp>& set);
double orthogonality_loss(const std::vector<Matrix>& mats);

/// Symmetric (conjugation) or antisymmetric (skew) unitary V S V^T with V Haar.
AntiLinearOp random_structured_unitary(int dim, SetKind kind, std::mt19937_64& rng);

/// Loss over pairs that involve at least one variable operator, as a function
/// of the stacked Hermitian parameters of the variable operators.
class OrthogonalityObjective {
 public:
  OrthogonalityObjective(int dim, SetKind kind, std::vector<Matrix> fixed = {});

  int dim() const { return dim_; }
  int params_per_op() const { return dim_ * dim_; }

  /// M = B exp(iH) S (B exp(iH))^T for each base point.
  std::vector<Matrix> matrices(const std::vector<Matrix>& bases,
                               const Eigen::VectorXd& params) const;

  double value(const std::vector<Matrix>& bases, const Eigen::VectorXd& params) const;

  /// Value and gradient with respect to params.
  double value_and_gradient(const std::vector<Matrix>& bases, const Eigen::VectorXd& params,
                            Eigen::VectorXd& gradient) const;

 private:
  double loss_and_matrix_gradients(const std::vector<Matrix>& mats,
                                   std::vector<Matrix>* grads) const;

  int dim_;
  Matrix form_;  // S
  std::vector<Matrix> fixed_;
};

/// Relative L2 error between the analytic gradient and central differences.
double gradient_check(const OrthogonalityObjective& objective,
                      const std::vector<Matrix>& bases, const Eigen::VectorXd& params,
                      double step = 1e-6);

struct DescentResult {
  double loss = 0.0;
  int iterations = 0;
};

/// Riemannian gradient descent with backtracking line search. Updates bases
/// in place.
DescentResult minimize_orthogonality(const OrthogonalityObjective& objective,
                                     std::vector<Matrix>& bases, int max_iters,
                                     double step_size, double stop_loss);

SearchReport search_max_set(const SearchConfig& config);

namespace detail {
/// search_max_set without the bound gate. Test use only.
SearchReport search_unchecked(const SearchConfig& config);
/// Per-restart seed derived from the master seed.
std::uint64_t restart_seed(std::uint64_t master, std::uint64_t index);
}  // namespace detail

struct ExploreBudget {
  int restarts = 8;
  int max_iters = 2000;
  double tol_loss = 1e-12;
  std::uint64_t seed = 0;
  Strategy strategy = Strategy::joint;
  int threads = 1;
  /// Shared limits across the whole sweep; non-positive means unlimited.
  long long max_total_iters = 0;
  double max_wall_seconds = 0.0;
};

/// search_max_set for each k in [k_min, k_max], ascending. When the shared
/// budget is used up the remaining reports are flagged, not searched.
std::vector<SearchReport> explore_dimension(int dim, SetKind kind, int k_min, int k_max,
                                            const ExploreBudget& budget);

}  // namespace antilinear
