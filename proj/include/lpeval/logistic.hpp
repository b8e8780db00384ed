#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace lpeval {

struct LogisticOptions {
  /// Penalty (lambda / 2) ||w||^2 added to the summed log-loss; the intercept is not penalised.
  double l2 = 1.0;
  /// Stop when the largest Newton step component falls below this.
  double tolerance = 1e-6;
  std::size_t max_iterations = 100;
  /// Standardise columns with training-set mean and deviation.
  bool standardize = true;
};

/// L2-regularised binary logistic regression fitted by damped Newton steps.
class LogisticRegression {
 public:
  explicit LogisticRegression(LogisticOptions options = {}) : options_(options) {}

  /// labels are 0/1.
  void fit(const Eigen::MatrixXd& x, std::span<const int> labels);
  /// P(label = 1) per row.
  Eigen::VectorXd predict_proba(const Eigen::MatrixXd& x) const;

  const Eigen::VectorXd& weights() const { return weights_; }
  double intercept() const { return intercept_; }
  std::size_t iterations() const { return iterations_; }
  bool converged() const { return converged_; }

 private:
  LogisticOptions options_;
  Eigen::RowVectorXd mean_;
  Eigen::RowVectorXd scale_;
  Eigen::VectorXd weights_;
  double intercept_ = 0.0;
  std::size_t iterations_ = 0;
  bool converged_ = false;
};

/// Fold index per example. Each class is shuffled with `seed` and dealt
/// round-robin, so every fold's class counts differ by at most one.
/// Throws kStratification when either class has fewer than `folds` members.
std::vector<std::size_t> stratified_folds(std::span<const int> labels, std::size_t folds, std::uint64_t seed);

/// Every example scored by the model trained on the other folds.
std::vector<double> out_of_fold_scores(const Eigen::MatrixXd& x, std::span<const int> labels,
                                       std::size_t folds, std::uint64_t seed,
                                       const LogisticOptions& options = {}, std::size_t jobs = 1);

}  // namespace lpeval
