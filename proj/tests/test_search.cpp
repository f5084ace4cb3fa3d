#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "antilinear/construct.hpp"
#include "antilinear/search.hpp"
#include "antilinear/takagi.hpp"
#include "antilinear/unitary.hpp"
#include "antilinear/verify.hpp"

namespace antilinear {
namespace {

double takagi_error(const Matrix& m, const TakagiResult& t) {
  const Matrix back = t.u * t.sigma.cast<Complex>().asDiagonal() * t.u.transpose();
  return (back - m).norm();
}

double unitarity_error(const Matrix& u) {
  return (u * u.adjoint() - Matrix::Identity(u.rows(), u.cols())).norm();
}

// Unitary helpers ----------------------------------------------------------

TEST(Unitary, HaarIsUnitaryAndSeeded) {
  std::mt19937_64 a(1), b(1);
  const Matrix u = haar_unitary(5, a);
  EXPECT_LT(unitarity_error(u), 1e-13);
  EXPECT_EQ(u, haar_unitary(5, b));
}

TEST(Unitary, ExpOfHermitianAgainstTaylorSeries) {
  std::mt19937_64 rng(2);
  const Matrix g = random_matrix(4, rng);
  const Matrix h = 0.25 * (g + g.adjoint());
  Matrix term = Matrix::Identity(4, 4), sum = Matrix::Identity(4, 4);
  for (int n = 1; n < 40; ++n) {
    term = term * (Complex(0.0, 1.0) * h) / static_cast<double>(n);
    sum += term;
  }
  EXPECT_LT((exp_i_hermitian(h) - sum).norm(), 1e-13);
}

TEST(Unitary, HermitianParameterRoundTrip) {
  std::vector<double> params{0.1, -0.2, 0.3, 1.0, 2.0, -1.5, 0.5, 0.25, -0.75};
  const Matrix h = hermitian_from_params(params.data(), 3);
  EXPECT_EQ(h, h.adjoint());
  EXPECT_EQ(h(0, 1), Complex(1.0, 2.0));
  EXPECT_EQ(h(1, 2), Complex(0.25, -0.75));
}

// Takagi -------------------------------------------------------------------

TEST(Takagi, Identity) {
  const TakagiResult t = takagi(Matrix::Identity(3, 3));
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(t.sigma(i), 1.0, 1e-14);
  EXPECT_LT((t.u * t.u.transpose() - Matrix::Identity(3, 3)).norm(), 1e-13);
  EXPECT_LT(unitarity_error(t.u), 1e-13);
}

TEST(Takagi, PauliX) {
  const Matrix m = tau3().mat();
  const TakagiResult t = takagi(m);
  EXPECT_NEAR(t.sigma(0), 1.0, 1e-14);
  EXPECT_NEAR(t.sigma(1), 1.0, 1e-14);
  EXPECT_LT(takagi_error(m, t), 1e-14);
}

TEST(Takagi, RandomSymmetricProperty) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 1 + trial % 8;
    const Matrix g = random_matrix(d, rng);
    const Matrix m = g + g.transpose();
    const TakagiResult t = takagi(m);
    EXPECT_LT(takagi_error(m, t), 1e-10);
    EXPECT_LT(unitarity_error(t.u), 1e-10);
    for (int i = 0; i + 1 < d; ++i) EXPECT_GE(t.sigma(i), t.sigma(i + 1));
    EXPECT_GE(t.sigma.minCoeff(), 0.0);
  }
}

TEST(Takagi, DegenerateAndSingularSpectra) {
  std::mt19937_64 rng(4);
  const std::vector<std::vector<double>> spectra = {
      {2, 2, 2, 2}, {3, 3, 1, 1, 0, 0}, {1, 0, 0}, {0, 0}, {5, 5, 5, 0.5, 0.5}};
  for (const auto& s : spectra) {
    const int d = static_cast<int>(s.size());
    const Matrix u = haar_unitary(d, rng);
    Eigen::VectorXd sigma = Eigen::Map<const Eigen::VectorXd>(s.data(), d);
    const Matrix m = u * sigma.cast<Complex>().asDiagonal() * u.transpose();
    const TakagiResult t = takagi(m);
    EXPECT_LT(takagi_error(m, t), 1e-10);
    EXPECT_LT(unitarity_error(t.u), 1e-10);
    for (int i = 0; i < d; ++i) EXPECT_NEAR(t.sigma(i), s[i], 1e-10);
  }
}

TEST(Takagi, SymmetricUnitaryHasUnitSingularValues) {
  std::mt19937_64 rng(5);
  const AntiLinearOp c = random_structured_unitary(4, SetKind::conjugation, rng);
  const TakagiResult t = takagi(c.mat());
  EXPECT_LT((t.sigma - Eigen::VectorXd::Ones(4)).norm(), 1e-12);
  EXPECT_LT((t.u * t.u.transpose() - c.mat()).norm(), 1e-12);
}

TEST(Takagi, RejectsNonSymmetric) {
  Matrix m = Matrix::Identity(2, 2);
  m(0, 1) = 1.0;
  EXPECT_THROW(takagi(m), DimensionError);
}

// Structured unitaries -----------------------------------------------------

TEST(RandomStructuredUnitary, OneDimensionalIsUnimodular) {
  std::mt19937_64 rng(6);
  const AntiLinearOp op = random_structured_unitary(1, SetKind::conjugation, rng);
  EXPECT_NEAR(std::abs(op.mat()(0, 0)), 1.0, 1e-14);
}

TEST(RandomStructuredUnitary, TwoDimensionalSkewSquaresToMinusOne) {
  std::mt19937_64 rng(7);
  const AntiLinearOp op = random_structured_unitary(2, SetKind::skew, rng);
  EXPECT_LT((compose_aa(op, op).mat() + Matrix::Identity(2, 2)).norm(), 1e-13);
  // Up to a phase this is tau0.
  const Complex phase = op.mat()(1, 0);
  EXPECT_NEAR(std::abs(phase), 1.0, 1e-13);
  EXPECT_LT((op.mat() - phase * tau0().mat()).norm(), 1e-13);
}

TEST(RandomStructuredUnitary, PassesPredicates) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 1000; ++i) {
    EXPECT_TRUE(is_conjugation(random_structured_unitary(4, SetKind::conjugation, rng)));
    EXPECT_TRUE(is_skew_conjugation(random_structured_unitary(4, SetKind::skew, rng)));
  }
}

TEST(RandomStructuredUnitary, OddSkewRejected) {
  std::mt19937_64 rng(9);
  EXPECT_THROW(random_structured_unitary(3, SetKind::skew, rng), BoundError);
  EXPECT_THROW(random_structured_unitary(5, SetKind::skew, rng), BoundError);
}

// Loss ---------------------------------------------------------------------

TEST(OrthogonalityLoss, KnownValues) {
  EXPECT_EQ(orthogonality_loss(tau_set().conj.ops), 0.0);
  EXPECT_DOUBLE_EQ(orthogonality_loss({standard_conjugation(2), standard_conjugation(2)}), 1.0);
  EXPECT_LT(orthogonality_loss(fourier_set(3).ops), 1e-28);
  EXPECT_THROW(orthogonality_loss(std::vector<AntiLinearOp>{tau1()}), DimensionError);
}

TEST(OrthogonalityLoss, InvariantUnderGlobalCongruence) {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 20; ++trial) {
    const int d = 2 + trial % 3;
    std::vector<Matrix> mats;
    for (int a = 0; a < 4; ++a) mats.push_back(random_structured_unitary(d, SetKind::conjugation, rng).mat());
    const Matrix w = haar_unitary(d, rng);
    std::vector<Matrix> moved;
    for (const auto& m : mats) moved.push_back(w * m * w.transpose());
    EXPECT_LT(std::abs(orthogonality_loss(mats) - orthogonality_loss(moved)), 1e-12);
  }
}

// Gradient -----------------------------------------------------------------

TEST(Objective, GradientMatchesFiniteDifferences) {
  std::mt19937_64 rng(11);
  for (int d = 2; d <= 4; ++d) {
    for (const SetKind kind : {SetKind::conjugation, SetKind::skew}) {
      // In d = 1 every conjugation is a phase and in d = 2 every skew
      // conjugation is a phase times tau0, so the loss is constant there.
      if (kind == SetKind::skew && d < 4) continue;
      std::vector<Matrix> fixed{random_structured_unitary(d, kind, rng).mat()};
      const OrthogonalityObjective objective(d, kind, fixed);
      std::vector<Matrix> bases;
      for (int a = 0; a < 3; ++a) bases.push_back(haar_unitary(d, rng));
      std::uniform_real_distribution<double> u(-1.0, 1.0);
      Eigen::VectorXd params(3 * objective.params_per_op());
      for (auto& p : params) p = u(rng);
      EXPECT_LT(gradient_check(objective, bases, params), 1e-5) << "d=" << d;
      EXPECT_LT(gradient_check(objective, bases, Eigen::VectorXd::Zero(params.size())), 1e-5);
    }
  }
}

TEST(Objective, IteratesStayOnTheManifold) {
  std::mt19937_64 rng(12);
  const OrthogonalityObjective objective(4, SetKind::skew);
  std::vector<Matrix> bases{haar_unitary(4, rng), haar_unitary(4, rng), haar_unitary(4, rng)};
  minimize_orthogonality(objective, bases, 300, 0.5, 0.0);
  for (const auto& m : objective.matrices(bases, Eigen::VectorXd::Zero(48))) {
    EXPECT_LT(skew_residual(m), 1e-10);
    EXPECT_LT(antiunitary_residual(m), 1e-10);
  }
}

// Config gate --------------------------------------------------------------

TEST(SearchConfig, BoundIsEnforced) {
  EXPECT_THROW(make_search_config(2, SetKind::conjugation, 4), BoundError);
  EXPECT_THROW(make_search_config(2, SetKind::skew, 2), BoundError);
  EXPECT_THROW(make_search_config(3, SetKind::skew, 2), BoundError);
  EXPECT_THROW(make_search_config(3, SetKind::conjugation, 7), BoundError);
  EXPECT_NO_THROW(make_search_config(3, SetKind::conjugation, 6));
  EXPECT_THROW(make_search_config(3, SetKind::conjugation, 1), DimensionError);

  SearchConfig config;
  config.dim = 2;
  config.target_k = 4;
  EXPECT_THROW(search_max_set(config), BoundError);
}

TEST(SearchConfig, WarmStartNeedsGreedy) {
  SearchConfig config = make_search_config(4, SetKind::conjugation, 10);
  config.warm_start = max_sets(4).conj;
  EXPECT_THROW(validate(config), DimensionError);
  config.strategy = Strategy::greedy;
  EXPECT_NO_THROW(validate(config));
  config.warm_start = max_sets(2).conj;
  EXPECT_THROW(validate(config), DimensionError);
}

// Search -------------------------------------------------------------------

TEST(Search, DimensionTwoFindsThreeConjugations) {
  SearchConfig config = make_search_config(2, SetKind::conjugation, 3);
  config.restarts = 8;
  config.seed = 7;
  const SearchReport report = search_max_set(config);
  EXPECT_LT(report.best_loss, 1e-12);
  ASSERT_TRUE(report.achieved.has_value());
  EXPECT_TRUE(verify_set(*report.achieved, 1e-6).passed);
  EXPECT_EQ(report.per_restart_losses.size(), 8u);
}

TEST(Search, DimensionThreeFindsThreeConjugations) {
  SearchConfig config = make_search_config(3, SetKind::conjugation, 3);
  config.restarts = 16;
  config.seed = 1;
  config.tol_loss = 1e-8;
  const SearchReport report = search_max_set(config);
  EXPECT_LT(report.best_loss, 1e-8);
  EXPECT_TRUE(report.achieved.has_value());
}

TEST(Search, SkewDimensionFour) {
  SearchConfig config = make_search_config(4, SetKind::skew, 6);
  config.restarts = 4;
  config.seed = 3;
  const SearchReport report = search_max_set(config);
  ASSERT_TRUE(report.achieved.has_value());
  EXPECT_TRUE(verify_set(*report.achieved, 1e-6).passed);
}

TEST(Search, AchievedIffLossBelowTolerance) {
  SearchConfig config = make_search_config(3, SetKind::conjugation, 3);
  config.restarts = 2;
  config.max_iters = 2;  // too few to converge
  const SearchReport report = search_max_set(config);
  EXPECT_EQ(report.achieved.has_value(), report.best_loss <= config.tol_loss);
}

TEST(Search, GradientCheckFlag) {
  SearchConfig config = make_search_config(3, SetKind::conjugation, 3);
  config.restarts = 3;
  config.check_gradient = true;
  const SearchReport report = search_max_set(config);
  ASSERT_TRUE(report.gradient_check_error.has_value());
  EXPECT_LT(*report.gradient_check_error, 1e-5);
}

TEST(Search, DeterministicAcrossThreadCounts) {
  SearchConfig config = make_search_config(3, SetKind::conjugation, 4);
  config.restarts = 6;
  config.seed = 99;
  config.max_iters = 300;
  const SearchReport serial = search_max_set(config);
  config.threads = 3;
  const SearchReport parallel = search_max_set(config);
  EXPECT_EQ(serial.per_restart_losses, parallel.per_restart_losses);
  EXPECT_EQ(serial.iterations_used, parallel.iterations_used);
  EXPECT_EQ(serial.best_restart, parallel.best_restart);
}

TEST(Search, GreedyWarmStartCompletesMaxSet) {
  SearchConfig config = make_search_config(4, SetKind::conjugation, 10);
  config.strategy = Strategy::greedy;
  config.restarts = 4;
  config.seed = 5;
  OrthoSet seed = max_sets(4).conj;
  seed.ops.erase(seed.ops.begin() + 6, seed.ops.end());
  config.warm_start = seed;
  const SearchReport report = search_max_set(config);
  ASSERT_TRUE(report.achieved.has_value()) << "best loss " << report.best_loss;
  EXPECT_EQ(report.achieved->size(), 10u);
  EXPECT_TRUE(verify_set(*report.achieved, 1e-6).passed);
}

TEST(Search, RankObstructionWhenGateBypassed) {
  SearchConfig config;
  config.dim = 2;
  config.target_k = 4;
  config.restarts = 4;
  const SearchReport report = detail::search_unchecked(config);
  EXPECT_GT(report.best_loss, 0.1);
  EXPECT_FALSE(report.achieved.has_value());
}

TEST(Search, RestartSeedsAreDistinct) {
  EXPECT_NE(detail::restart_seed(0, 0), detail::restart_seed(0, 1));
  EXPECT_NE(detail::restart_seed(0, 0), detail::restart_seed(1, 0));
  EXPECT_EQ(detail::restart_seed(42, 3), detail::restart_seed(42, 3));
}

// Verify -------------------------------------------------------------------

TEST(VerifySet, MaxSetFour) {
  const Certificate cert = verify_set(max_sets(4).conj, 1e-10);
  EXPECT_TRUE(cert.passed);
  EXPECT_EQ(cert.k, 10);
}

TEST(VerifySet, NonSymmetricMemberFails) {
  OrthoSet set = tau_set().conj;
  Matrix bad = set.ops[0].mat();
  bad(0, 1) += 1e-3;
  set.ops[0] = AntiLinearOp(2, bad);
  const Certificate cert = verify_set(set, 1e-10);
  EXPECT_FALSE(cert.passed);
  EXPECT_GT(cert.max_structure_residual, 1e-10);
}

TEST(VerifySet, Tau0AsSkew) {
  const Certificate cert = verify_set(tau_set().skew, 1e-10);
  EXPECT_TRUE(cert.passed);
  EXPECT_EQ(cert.gram(0, 0), Complex(-2.0));
}

TEST(VerifySet, WrongParityOrDiagonalFails) {
  EXPECT_FALSE(verify_set(2, SetKind::skew, {tau1().mat()}, 1e-10).passed);
  // Orthogonal but not unitary: diagonal of the Gram matrix is off.
  EXPECT_FALSE(verify_set(2, SetKind::conjugation, {2.0 * tau1().mat(), tau3().mat()}, 1e-10).passed);
  EXPECT_THROW(verify_set(2, SetKind::conjugation, {}, 1e-10), DimensionError);
}

// Explore ------------------------------------------------------------------

TEST(Explore, DimensionTwo) {
  ExploreBudget budget;
  budget.seed = 2;
  const auto reports = explore_dimension(2, SetKind::conjugation, 2, 3, budget);
  ASSERT_EQ(reports.size(), 2u);
  EXPECT_EQ(reports[0].config.target_k, 2);
  EXPECT_EQ(reports[1].config.target_k, 3);
  for (const auto& r : reports) {
    EXPECT_TRUE(r.achieved.has_value());
    ASSERT_TRUE(r.prefix_verified.has_value());
    EXPECT_TRUE(*r.prefix_verified);
  }
}

TEST(Explore, DimensionFourFullRange) {
  ExploreBudget budget;
  budget.seed = 4;
  budget.restarts = 4;
  const auto reports = explore_dimension(4, SetKind::conjugation, 2, 10, budget);
  ASSERT_EQ(reports.size(), 9u);
  for (const auto& r : reports) EXPECT_TRUE(r.achieved.has_value()) << "k=" << r.config.target_k;
}

TEST(Explore, DimensionThreeReportsEvidence) {
  ExploreBudget budget;
  budget.seed = 1;
  budget.restarts = 4;
  budget.tol_loss = 1e-8;
  const auto reports = explore_dimension(3, SetKind::conjugation, 3, 6, budget);
  ASSERT_EQ(reports.size(), 4u);
  EXPECT_TRUE(reports[0].achieved.has_value());
  for (const auto& r : reports) {
    EXPECT_GE(r.best_loss, 0.0);
    EXPECT_EQ(r.per_restart_losses.size(), 4u);
  }
}

TEST(Explore, BudgetExhaustionFlagsRemainingReports) {
  ExploreBudget budget;
  budget.restarts = 2;
  budget.max_total_iters = 1;
  const auto reports = explore_dimension(4, SetKind::conjugation, 2, 5, budget);
  ASSERT_EQ(reports.size(), 4u);
  EXPECT_FALSE(reports[0].budget_exhausted);
  for (std::size_t i = 1; i < reports.size(); ++i) {
    EXPECT_TRUE(reports[i].budget_exhausted);
    EXPECT_FALSE(reports[i].achieved.has_value());
  }
}

TEST(Explore, BoundChecked) {
  EXPECT_THROW(explore_dimension(2, SetKind::conjugation, 2, 4, {}), BoundError);
  EXPECT_THROW(explore_dimension(2, SetKind::conjugation, 1, 3, {}), DimensionError);
}

}  // namespace
}  // namespace antilinear
