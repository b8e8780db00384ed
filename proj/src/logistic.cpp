#include "lpeval/logistic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lpeval/error.hpp"
#include "lpeval/parallel.hpp"
#include "lpeval/seeds.hpp"

namespace lpeval {
namespace {

double log1pexp(double z) { return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

}  // namespace

void LogisticRegression::fit(const Eigen::MatrixXd& x_raw, std::span<const int> labels) {
  const Eigen::Index n = x_raw.rows();
  const Eigen::Index d = x_raw.cols();
  if (static_cast<std::size_t>(n) != labels.size()) {
    throw Error(ErrorKind::kInvalidArgument, "feature rows and labels differ in length");
  }
  if (n == 0) throw Error(ErrorKind::kEmptyInput, "no training examples");

  mean_ = Eigen::RowVectorXd::Zero(d);
  scale_ = Eigen::RowVectorXd::Ones(d);
  if (options_.standardize) {
    mean_ = x_raw.colwise().mean();
    for (Eigen::Index j = 0; j < d; ++j) {
      const double var = (x_raw.col(j).array() - mean_(j)).square().mean();
      scale_(j) = var > 1e-24 ? std::sqrt(var) : 1.0;
    }
  }
  const Eigen::MatrixXd x = (x_raw.rowwise() - mean_).array().rowwise() / scale_.array();
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) y(i) = labels[static_cast<std::size_t>(i)] ? 1.0 : 0.0;

  // theta = [w; b]
  Eigen::VectorXd theta = Eigen::VectorXd::Zero(d + 1);
  auto objective = [&](const Eigen::VectorXd& t) {
    const Eigen::VectorXd z = (x * t.head(d)).array() + t(d);
    double f = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) f += log1pexp(z(i)) - y(i) * z(i);
    return f + 0.5 * options_.l2 * t.head(d).squaredNorm();
  };

  converged_ = false;
  iterations_ = 0;
  double f = objective(theta);
  while (iterations_ < options_.max_iterations) {
    ++iterations_;
    const Eigen::VectorXd z = (x * theta.head(d)).array() + theta(d);
    const Eigen::VectorXd p = z.unaryExpr([](double v) {
      return v >= 0 ? 1.0 / (1.0 + std::exp(-v)) : std::exp(v) / (1.0 + std::exp(v));
    });
    const Eigen::VectorXd s = (p.array() * (1.0 - p.array())).max(1e-12);
    const Eigen::VectorXd r = p - y;

    Eigen::VectorXd grad(d + 1);
    grad.head(d) = x.transpose() * r + options_.l2 * theta.head(d);
    grad(d) = r.sum();

    Eigen::MatrixXd hess(d + 1, d + 1);
    const Eigen::MatrixXd xs = x.array().colwise() * s.array().sqrt();
    hess.topLeftCorner(d, d) = xs.transpose() * xs;
    hess.topLeftCorner(d, d).diagonal().array() += options_.l2;
    const Eigen::VectorXd xts = x.transpose() * s;
    hess.topRightCorner(d, 1) = xts;
    hess.bottomLeftCorner(1, d) = xts.transpose();
    hess(d, d) = s.sum() + 1e-10;

    const Eigen::VectorXd step = hess.ldlt().solve(grad);
    if (!step.allFinite()) throw Error(ErrorKind::kNumerical, "logistic regression Newton step is not finite");

    // Backtracking keeps the objective monotone.
    double t = 1.0;
    Eigen::VectorXd next = theta - step;
    double f_next = objective(next);
    while (f_next > f + 1e-12 * std::abs(f) && t > 1e-8) {
      t *= 0.5;
      next = theta - t * step;
      f_next = objective(next);
    }
    theta = next;
    f = f_next;
    if ((t * step).lpNorm<Eigen::Infinity>() < options_.tolerance) {
      converged_ = true;
      break;
    }
  }
  weights_ = theta.head(d);
  intercept_ = theta(d);
}

Eigen::VectorXd LogisticRegression::predict_proba(const Eigen::MatrixXd& x_raw) const {
  if (x_raw.cols() != weights_.size()) throw Error(ErrorKind::kInvalidArgument, "feature dimension mismatch");
  const Eigen::MatrixXd x = (x_raw.rowwise() - mean_).array().rowwise() / scale_.array();
  const Eigen::VectorXd z = (x * weights_).array() + intercept_;
  return z.unaryExpr([](double v) { return v >= 0 ? 1.0 / (1.0 + std::exp(-v)) : std::exp(v) / (1.0 + std::exp(v)); });
}

std::vector<std::size_t> stratified_folds(std::span<const int> labels, std::size_t folds, std::uint64_t seed) {
  if (folds < 2) throw Error(ErrorKind::kInvalidArgument, "need at least two folds");
  std::vector<std::size_t> pos, neg;
  for (std::size_t i = 0; i < labels.size(); ++i) (labels[i] ? pos : neg).push_back(i);
  if (pos.size() < folds || neg.size() < folds) {
    throw Error(ErrorKind::kStratification,
                "cannot stratify " + std::to_string(pos.size()) + " positives and " + std::to_string(neg.size()) +
                    " negatives into " + std::to_string(folds) + " folds without a single-class fold");
  }
  Rng rng(seed);
  auto shuffle = [&](std::vector<std::size_t>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[uniform_index(rng, i)]);
  };
  shuffle(pos);
  shuffle(neg);
  std::vector<std::size_t> fold(labels.size());
  for (std::size_t i = 0; i < pos.size(); ++i) fold[pos[i]] = i % folds;
  // Continue dealing where the positives stopped so fold sizes stay balanced.
  for (std::size_t i = 0; i < neg.size(); ++i) fold[neg[i]] = (pos.size() + i) % folds;
  return fold;
}

std::vector<double> out_of_fold_scores(const Eigen::MatrixXd& x, std::span<const int> labels, std::size_t folds,
                                       std::uint64_t seed, const LogisticOptions& options, std::size_t jobs) {
  if (static_cast<std::size_t>(x.rows()) != labels.size()) {
    throw Error(ErrorKind::kInvalidArgument, "feature rows and labels differ in length");
  }
  const auto fold = stratified_folds(labels, folds, seed);
  std::vector<double> scores(labels.size(), 0.0);
  parallel_for(folds, jobs, [&](std::size_t k) {
    std::vector<Eigen::Index> train, test;
    for (std::size_t i = 0; i < fold.size(); ++i) (fold[i] == k ? test : train).push_back(static_cast<Eigen::Index>(i));
    Eigen::MatrixXd xtr(static_cast<Eigen::Index>(train.size()), x.cols());
    std::vector<int> ytr(train.size());
    for (std::size_t i = 0; i < train.size(); ++i) {
      xtr.row(static_cast<Eigen::Index>(i)) = x.row(train[i]);
      ytr[i] = labels[static_cast<std::size_t>(train[i])];
    }
    Eigen::MatrixXd xte(static_cast<Eigen::Index>(test.size()), x.cols());
    for (std::size_t i = 0; i < test.size(); ++i) xte.row(static_cast<Eigen::Index>(i)) = x.row(test[i]);
    LogisticRegression model(options);
    model.fit(xtr, ytr);
    const Eigen::VectorXd p = model.predict_proba(xte);
    for (std::size_t i = 0; i < test.size(); ++i) scores[static_cast<std::size_t>(test[i])] = p(static_cast<Eigen::Index>(i));
  });
  return scores;
}

}  // namespace lpeval
