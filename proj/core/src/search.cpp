#include "antilinear/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <thread>

#include "antilinear/unitary.hpp"

namespace antilinear {

namespace {

// Loss floor for the inner descent. Far below any success threshold so that
// achieved sets also pass certification.
constexpr double kStopLoss = 1e-26;

struct RestartResult {
  double loss = std::numeric_limits<double>::infinity();
  std::vector<Matrix> mats;
  long long iterations = 0;
  std::optional<double> gradient_error;
};

Matrix structure_form(int dim, SetKind kind) {
  return kind == SetKind::conjugation ? Matrix::Identity(dim, dim) : symplectic_form(dim);
}

std::vector<Matrix> haar_bases(int count, int dim, std::mt19937_64& rng) {
  std::vector<Matrix> bases;
  bases.reserve(count);
  for (int a = 0; a < count; ++a) bases.push_back(haar_unitary(dim, rng));
  return bases;
}

RestartResult run_joint(const SearchConfig& config, std::mt19937_64& rng) {
  const OrthogonalityObjective objective(config.dim, config.kind);
  std::vector<Matrix> bases = haar_bases(config.target_k, config.dim, rng);

  RestartResult result;
  if (config.check_gradient) {
    const Eigen::VectorXd origin =
        Eigen::VectorXd::Zero(static_cast<Eigen::Index>(bases.size()) * objective.params_per_op());
    result.gradient_error = gradient_check(objective, bases, origin);
  }
  const DescentResult descent = minimize_orthogonality(objective, bases, config.max_iters,
                                                       config.step_size, kStopLoss);
  result.iterations = descent.iterations;
  result.mats = objective.matrices(
      bases, Eigen::VectorXd::Zero(static_cast<Eigen::Index>(bases.size()) *
                                   objective.params_per_op()));
  result.loss = orthogonality_loss(result.mats);
  return result;
}

RestartResult run_greedy(const SearchConfig& config, std::mt19937_64& rng) {
  RestartResult result;
  if (config.warm_start) {
    for (const auto& op : config.warm_start->ops) {
      if (static_cast<int>(result.mats.size()) == config.target_k) break;
      result.mats.push_back(op.mat());
    }
  }
  const double accept = config.tol_loss / (static_cast<double>(config.target_k) * config.target_k);
  double worst_gradient_error = 0.0;

  while (static_cast<int>(result.mats.size()) < config.target_k) {
    const OrthogonalityObjective objective(config.dim, config.kind, result.mats);
    const Eigen::VectorXd origin = Eigen::VectorXd::Zero(objective.params_per_op());
    Matrix best;
    double best_contribution = std::numeric_limits<double>::infinity();
    for (int attempt = 0; attempt < config.candidate_attempts; ++attempt) {
      std::vector<Matrix> bases{haar_unitary(config.dim, rng)};
      if (config.check_gradient && !result.mats.empty()) {
        worst_gradient_error =
            std::max(worst_gradient_error, gradient_check(objective, bases, origin));
      }
      const DescentResult descent = minimize_orthogonality(objective, bases, config.max_iters,
                                                           config.step_size, kStopLoss);
      result.iterations += descent.iterations;
      if (descent.loss < best_contribution) {
        best_contribution = descent.loss;
        best = objective.matrices(bases, origin).front();
      }
      if (best_contribution <= accept) break;
    }
    // A rejected candidate still fills the slot so the reported loss covers a
    // set of the requested size.
    result.mats.push_back(std::move(best));
  }
  if (config.check_gradient) result.gradient_error = worst_gradient_error;
  result.loss = result.mats.size() >= 2 ? orthogonality_loss(result.mats) : 0.0;
  return result;
}

RestartResult run_restart(const SearchConfig& config, int index) {
  std::mt19937_64 rng(detail::restart_seed(config.seed, static_cast<std::uint64_t>(index)));
  return config.strategy == Strategy::joint ? run_joint(config, rng) : run_greedy(config, rng);
}

}  // namespace

std::string_view to_string(Strategy strategy) {
  return strategy == Strategy::joint ? "joint" : "greedy";
}

Strategy parse_strategy(std::string_view text) {
  if (text == "joint") return Strategy::joint;
  if (text == "greedy") return Strategy::greedy;
  throw DimensionError("unknown strategy '" + std::string(text) + "'");
}

void validate(const SearchConfig& config) {
  if (config.dim < 1) throw DimensionError("search: dim must be at least 1");
  if (config.kind == SetKind::skew && config.dim % 2 == 1) {
    throw BoundError("search: skew conjugations exist in even dimension only (dim = " +
                     std::to_string(config.dim) + ")");
  }
  if (config.target_k < 2) throw DimensionError("search: target_k must be at least 2");
  const long long bound = max_set_bound(config.dim, config.kind);
  if (config.target_k > bound) {
    throw BoundError("search: target_k = " + std::to_string(config.target_k) +
                     " exceeds the bound d(d" +
                     (config.kind == SetKind::conjugation ? "+" : "-") +
                     "1)/2 = " + std::to_string(bound) + " for d = " +
                     std::to_string(config.dim));
  }
  if (config.restarts < 1) throw DimensionError("search: restarts must be at least 1");
  if (config.max_iters < 0) throw DimensionError("search: max_iters must be nonnegative");
  if (!(config.step_size > 0.0)) throw DimensionError("search: step_size must be positive");
  if (!(config.tol_loss > 0.0)) throw DimensionError("search: tol_loss must be positive");
  if (config.threads < 1) throw DimensionError("search: threads must be at least 1");
  if (config.candidate_attempts < 1) {
    throw DimensionError("search: candidate_attempts must be at least 1");
  }
  if (config.warm_start) {
    if (config.strategy != Strategy::greedy) {
      throw DimensionError("search: a warm start requires the greedy strategy");
    }
    if (config.warm_start->dim != config.dim || config.warm_start->kind != config.kind) {
      throw DimensionError("search: warm start does not match dim/kind");
    }
  }
}

SearchConfig make_search_config(int dim, SetKind kind, int target_k) {
  SearchConfig config;
  config.dim = dim;
  config.kind = kind;
  config.target_k = target_k;
  validate(config);
  return config;
}

double orthogonality_loss(const std::vector<Matrix>& mats) {
  if (mats.size() < 2) throw DimensionError("orthogonality_loss: need at least two operators");
  const Eigen::Index d = mats.front().rows();
  for (const auto& m : mats) {
    if (m.rows() != d || m.cols() != d) {
      throw DimensionError("orthogonality_loss: operators of mixed dimension");
    }
  }
  double sum = 0.0;
  for (std::size_t a = 0; a < mats.size(); ++a) {
    for (std::size_t b = a + 1; b < mats.size(); ++b) {
      sum += std::norm(canonical_form(mats[a], mats[b]));
    }
  }
  return sum / static_cast<double>(d * d);
}

double orthogonality_loss(const std::vector<AntiLinearOp>& set) {
  std::vector<Matrix> mats;
  mats.reserve(set.size());
  for (const auto& op : set) mats.push_back(op.mat());
  return orthogonality_loss(mats);
}

AntiLinearOp random_structured_unitary(int dim, SetKind kind, std::mt19937_64& rng) {
  if (dim < 1) throw DimensionError("random_structured_unitary: dim must be at least 1");
  if (kind == SetKind::skew && dim % 2 == 1) {
    throw BoundError(
        "random_structured_unitary: skew conjugations exist in even dimensional spaces only "
        "(dim = " + std::to_string(dim) + ")");
  }
  const Matrix v = haar_unitary(dim, rng);
  return AntiLinearOp(dim, v * structure_form(dim, kind) * v.transpose());
}

OrthogonalityObjective::OrthogonalityObjective(int dim, SetKind kind, std::vector<Matrix> fixed)
    : dim_(dim), form_(structure_form(dim, kind)), fixed_(std::move(fixed)) {}

std::vector<Matrix> OrthogonalityObjective::matrices(const std::vector<Matrix>& bases,
                                                     const Eigen::VectorXd& params) const {
  std::vector<Matrix> mats;
  mats.reserve(bases.size());
  for (std::size_t a = 0; a < bases.size(); ++a) {
    const Matrix h = hermitian_from_params(params.data() + a * params_per_op(), dim_);
    const Matrix v = bases[a] * exp_i_hermitian(h);
    mats.push_back(v * form_ * v.transpose());
  }
  return mats;
}

double OrthogonalityObjective::loss_and_matrix_gradients(const std::vector<Matrix>& mats,
                                                         std::vector<Matrix>* grads) const {
  const double norm = 1.0 / static_cast<double>(dim_ * dim_);
  if (grads) grads->assign(mats.size(), Matrix::Zero(dim_, dim_));
  double sum = 0.0;
  for (std::size_t a = 0; a < mats.size(); ++a) {
    for (std::size_t b = a + 1; b < mats.size(); ++b) {
      const Complex c = canonical_form(mats[a], mats[b]);
      sum += std::norm(c);
      if (grads) {
        (*grads)[a] += (2.0 * norm * std::conj(c)) * mats[b].transpose();
        (*grads)[b] += (2.0 * norm * c) * mats[a].transpose();
      }
    }
    for (const auto& f : fixed_) {
      const Complex c = canonical_form(mats[a], f);
      sum += std::norm(c);
      if (grads) (*grads)[a] += (2.0 * norm * std::conj(c)) * f.transpose();
    }
  }
  return sum * norm;
}

double OrthogonalityObjective::value(const std::vector<Matrix>& bases,
                                     const Eigen::VectorXd& params) const {
  return loss_and_matrix_gradients(matrices(bases, params), nullptr);
}

double OrthogonalityObjective::value_and_gradient(const std::vector<Matrix>& bases,
                                                  const Eigen::VectorXd& params,
                                                  Eigen::VectorXd& gradient) const {
  const std::size_t count = bases.size();
  std::vector<Matrix> hs, vs, mats;
  hs.reserve(count);
  vs.reserve(count);
  mats.reserve(count);
  for (std::size_t a = 0; a < count; ++a) {
    hs.push_back(hermitian_from_params(params.data() + a * params_per_op(), dim_));
    vs.push_back(bases[a] * exp_i_hermitian(hs.back()));
    mats.push_back(vs.back() * form_ * vs.back().transpose());
  }

  std::vector<Matrix> grad_m;
  const double loss = loss_and_matrix_gradients(mats, &grad_m);

  gradient.resize(static_cast<Eigen::Index>(count) * params_per_op());
  for (std::size_t a = 0; a < count; ++a) {
    // M = V S V^T  =>  dL/dV = G conj(V) S^T + G^T conj(V) S.
    const Matrix vbar = vs[a].conjugate();
    const Matrix grad_v =
        grad_m[a] * vbar * form_.transpose() + grad_m[a].transpose() * vbar * form_;
    // V = B E  =>  dL/dE = B^H dL/dV.
    const Matrix grad_e = bases[a].adjoint() * grad_v;
    params_gradient(exp_i_hermitian_pullback(hs[a], grad_e),
                    gradient.data() + a * params_per_op());
  }
  return loss;
}

double gradient_check(const OrthogonalityObjective& objective, const std::vector<Matrix>& bases,
                      const Eigen::VectorXd& params, double step) {
  Eigen::VectorXd analytic;
  objective.value_and_gradient(bases, params, analytic);
  Eigen::VectorXd numeric(params.size());
  Eigen::VectorXd probe = params;
  for (Eigen::Index i = 0; i < params.size(); ++i) {
    probe(i) = params(i) + step;
    const double up = objective.value(bases, probe);
    probe(i) = params(i) - step;
    const double down = objective.value(bases, probe);
    probe(i) = params(i);
    numeric(i) = (up - down) / (2.0 * step);
  }
  const double scale = std::max(analytic.norm(), numeric.norm());
  return scale == 0.0 ? 0.0 : (analytic - numeric).norm() / scale;
}

DescentResult minimize_orthogonality(const OrthogonalityObjective& objective,
                                     std::vector<Matrix>& bases, int max_iters,
                                     double step_size, double stop_loss) {
  const Eigen::Index n = static_cast<Eigen::Index>(bases.size()) * objective.params_per_op();
  const Eigen::VectorXd origin = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd grad;
  double loss = objective.value_and_gradient(bases, origin, grad);
  double step = step_size;

  DescentResult result;
  for (; result.iterations < max_iters; ++result.iterations) {
    if (loss <= stop_loss) break;
    const double grad_sq = grad.squaredNorm();
    if (grad_sq < 1e-32) break;

    // Armijo backtracking from the current trial step.
    Eigen::VectorXd trial;
    double trial_loss = loss;
    bool accepted = false;
    for (int halvings = 0; halvings < 60; ++halvings) {
      trial = -step * grad;
      trial_loss = objective.value(bases, trial);
      if (trial_loss <= loss - 1e-4 * step * grad_sq) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;

    for (std::size_t a = 0; a < bases.size(); ++a) {
      const Matrix h = hermitian_from_params(trial.data() + a * objective.params_per_op(),
                                             objective.dim());
      bases[a] = bases[a] * exp_i_hermitian(h);
    }
    const Eigen::VectorXd previous = grad;
    loss = objective.value_and_gradient(bases, origin, grad);

    // Barzilai-Borwein trial step for the next line search. After re-basing,
    // both gradients live in body coordinates at neighbouring points.
    const Eigen::VectorXd change = grad - previous;
    const double curvature = trial.dot(change);
    if (curvature > 0.0) {
      step = std::clamp(trial.squaredNorm() / curvature, 1e-8, 1e4);
    } else {
      step = std::min(2.0 * step, 1e4);
    }
  }
  result.loss = loss;
  return result;
}

namespace detail {

std::uint64_t restart_seed(std::uint64_t master, std::uint64_t index) {
  // splitmix64 finalizer over a counter offset from the master seed.
  std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

SearchReport search_unchecked(const SearchConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<RestartResult> results(config.restarts);

  const int workers = std::min(config.threads, config.restarts);
  if (workers <= 1) {
    for (int r = 0; r < config.restarts; ++r) results[r] = run_restart(config, r);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (int r = next++; r < config.restarts; r = next++) results[r] = run_restart(config, r);
      });
    }
    for (auto& t : pool) t.join();
  }

  SearchReport report;
  report.config = config;
  report.best_loss = std::numeric_limits<double>::infinity();
  double worst_gradient_error = 0.0;
  for (int r = 0; r < config.restarts; ++r) {
    const RestartResult& res = results[r];
    report.per_restart_losses.push_back(res.loss);
    report.iterations_used += res.iterations;
    if (res.gradient_error) worst_gradient_error = std::max(worst_gradient_error, *res.gradient_error);
    if (res.loss < report.best_loss) {
      report.best_loss = res.loss;
      report.best_restart = r;
    }
  }
  if (config.check_gradient) report.gradient_check_error = worst_gradient_error;

  if (report.best_restart >= 0 && report.best_loss <= config.tol_loss) {
    OrthoSet set{config.dim, config.kind, {}, "search"};
    for (const auto& m : results[report.best_restart].mats) set.ops.emplace_back(config.dim, m);
    if (verify_set(set, 1e-6).passed) report.achieved = std::move(set);
  }
  report.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace detail

SearchReport search_max_set(const SearchConfig& config) {
  validate(config);
  return detail::search_unchecked(config);
}

std::vector<SearchReport> explore_dimension(int dim, SetKind kind, int k_min, int k_max,
                                            const ExploreBudget& budget) {
  if (k_min < 2) throw DimensionError("explore_dimension: k_min must be at least 2");
  if (k_max < k_min) throw DimensionError("explore_dimension: empty k range");
  if (k_max > max_set_bound(dim, kind)) {
    throw BoundError("explore_dimension: k_max = " + std::to_string(k_max) +
                     " exceeds the bound " + std::to_string(max_set_bound(dim, kind)));
  }

  const auto start = std::chrono::steady_clock::now();
  long long iterations = 0;
  std::vector<SearchReport> reports;
  for (int k = k_min; k <= k_max; ++k) {
    SearchConfig config;
    config.dim = dim;
    config.kind = kind;
    config.target_k = k;
    config.restarts = budget.restarts;
    config.max_iters = budget.max_iters;
    config.tol_loss = budget.tol_loss;
    config.seed = detail::restart_seed(budget.seed, 0x100000000ULL + static_cast<std::uint64_t>(k));
    config.strategy = budget.strategy;
    config.threads = budget.threads;
    validate(config);

    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool out_of_iters = budget.max_total_iters > 0 && iterations >= budget.max_total_iters;
    const bool out_of_time = budget.max_wall_seconds > 0.0 && elapsed >= budget.max_wall_seconds;
    if (out_of_iters || out_of_time) {
      SearchReport flagged;
      flagged.config = config;
      flagged.best_loss = std::numeric_limits<double>::infinity();
      flagged.budget_exhausted = true;
      reports.push_back(std::move(flagged));
      continue;
    }

    SearchReport report = search_max_set(config);
    iterations += report.iterations_used;
    if (report.achieved) {
      OrthoSet prefix = *report.achieved;
      prefix.ops.pop_back();
      report.prefix_verified = verify_set(prefix, 1e-6).passed;
    }
    reports.push_back(std::move(report));
  }
  return reports;
}

}  // namespace antilinear
