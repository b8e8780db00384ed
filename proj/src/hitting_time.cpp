#include <Eigen/Dense>
#include <cmath>

#include "lpeval/error.hpp"
#include "lpeval/similarity.hpp"

namespace lpeval {
namespace {

// deg(x) h(x) - sum_{z in N(x), z != t} h(z) = deg(x) over x != t: the
// Laplacian with target row/column removed, which is SPD on a connected graph.
std::vector<double> dense_hitting_time(const Graph& g, NodeId target) {
  const std::size_t n = g.num_nodes();
  const auto reduced = [target](NodeId x) { return x < target ? x : x - 1; };
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n - 1), static_cast<Eigen::Index>(n - 1));
  Eigen::VectorXd rhs(static_cast<Eigen::Index>(n - 1));
  for (NodeId x = 0; x < n; ++x) {
    if (x == target) continue;
    const auto i = static_cast<Eigen::Index>(reduced(x));
    lap(i, i) = static_cast<double>(g.degree(x));
    rhs(i) = static_cast<double>(g.degree(x));
    for (NodeId z : g.neighbors(x)) {
      if (z != target) lap(i, static_cast<Eigen::Index>(reduced(z))) -= 1.0;
    }
  }
  Eigen::LLT<Eigen::MatrixXd> llt(lap);
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorKind::kNumerical, "reduced Laplacian is not positive definite (disconnected graph?)");
  }
  const Eigen::VectorXd h = llt.solve(rhs);
  std::vector<double> out(n, 0.0);
  for (NodeId x = 0; x < n; ++x) {
    if (x != target) out[x] = h(static_cast<Eigen::Index>(reduced(x)));
  }
  return out;
}

std::vector<double> gauss_seidel_hitting_time(const Graph& g, NodeId target, const SimilarityParams& p) {
  const std::size_t n = g.num_nodes();
  std::vector<double> h(n, 0.0);
  auto residual = [&] {
    double worst = 0.0;
    for (NodeId x = 0; x < n; ++x) {
      if (x == target) continue;
      double s = 0.0;
      for (NodeId z : g.neighbors(x)) s += h[z];
      worst = std::max(worst, std::abs(1.0 + s / static_cast<double>(g.degree(x)) - h[x]));
    }
    return worst;
  };
  for (std::size_t sweep = 1; sweep <= p.max_sweeps; ++sweep) {
    for (NodeId x = 0; x < n; ++x) {
      if (x == target) continue;
      double s = 0.0;
      for (NodeId z : g.neighbors(x)) s += h[z];
      h[x] = 1.0 + s / static_cast<double>(g.degree(x));
    }
    if (sweep % 8 == 0 && residual() < p.solve_tolerance) return h;
  }
  if (residual() < p.solve_tolerance) return h;
  throw Error(ErrorKind::kNonConvergence, "Gauss-Seidel hitting-time solve for target " + g.label(target) +
                                              " did not reach tolerance within " +
                                              std::to_string(p.max_sweeps) + " sweeps");
}

}  // namespace

std::vector<double> hitting_time(const Graph& g, NodeId target, const SimilarityParams& params) {
  g.degree(target);
  if (g.num_nodes() == 1) return {0.0};
  if (g.num_nodes() <= params.dense_limit) return dense_hitting_time(g, target);
  return gauss_seidel_hitting_time(g, target, params);
}

HittingTimeTable::HittingTimeTable(const Graph& g) : n_(g.num_nodes()) {
  const auto n = static_cast<Eigen::Index>(n_);
  two_m_ = 2.0 * static_cast<double>(g.num_edges());
  // L + J/n is nonsingular on a connected graph; its inverse minus J/n is L+.
  Eigen::MatrixXd m = Eigen::MatrixXd::Constant(n, n, 1.0 / static_cast<double>(n_));
  for (NodeId x = 0; x < n_; ++x) {
    m(x, x) += static_cast<double>(g.degree(x));
    for (NodeId z : g.neighbors(x)) m(x, z) -= 1.0;
  }
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() != Eigen::Success) throw Error(ErrorKind::kNumerical, "Laplacian factorisation failed");
  Eigen::MatrixXd pinv = llt.solve(Eigen::MatrixXd::Identity(n, n));
  pinv.array() -= 1.0 / static_cast<double>(n_);

  Eigen::VectorXd deg(n);
  for (NodeId x = 0; x < n_; ++x) deg(x) = static_cast<double>(g.degree(x));
  const Eigen::VectorXd w = pinv * deg;
  w_.assign(w.data(), w.data() + n);
  pinv_.resize(n_ * n_);
  Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(pinv_.data(), n, n) = pinv;
}

double HittingTimeTable::operator()(NodeId source, NodeId target) const {
  if (source >= n_ || target >= n_) throw Error(ErrorKind::kOutOfRange, "node id out of range");
  if (source == target) return 0.0;
  return w_[source] - w_[target] + two_m_ * (pinv_[target * n_ + target] - pinv_[source * n_ + target]);
}

}  // namespace lpeval
