#include "permchan/analysis.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <optional>

#include "permchan/simplex_lp.hpp"

namespace permchan {

int numerical_rank(const Eigen::MatrixXd& m, double rel_tol) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0) return 0;
  const double cutoff = rel_tol * sv(0);
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i) {
    if (sv(i) > cutoff) ++rank;
  }
  return rank;
}

int numerical_rank(const Channel& channel, double rel_tol) {
  return numerical_rank(channel.matrix(), rel_tol);
}

namespace {

bool rows_equal(const Eigen::MatrixXd& m, int a, int b, double tol) {
  return (m.row(a) - m.row(b)).cwiseAbs().maxCoeff() <= tol;
}

// Convex weights lambda >= 0 with sum 1 and basis' * lambda = target, if any.
// Constraint matrix: one equality per output symbol plus the sum-to-one row.
std::optional<std::vector<double>> convex_weights(const Eigen::MatrixXd& basis_rows,
                                                  const Eigen::VectorXd& target) {
  const int d = static_cast<int>(basis_rows.rows());
  const int y = static_cast<int>(basis_rows.cols());
  Eigen::MatrixXd A(y + 1, d);
  A.topRows(y) = basis_rows.transpose();
  A.bottomRows(1).setOnes();
  Eigen::VectorXd b(y + 1);
  b.head(y) = target;
  b(y) = 1.0;

  const LpSolution sol = lp_feasible_point(A, b, kLpFeasTol);
  if (sol.status != LpSolution::Status::optimal) return std::nullopt;
  std::vector<double> w(d);
  for (int i = 0; i < d; ++i) w[i] = sol.x(i);
  return w;
}

}  // namespace

ExtremeRowDecomposition extreme_rows(const Channel& channel) {
  const Eigen::MatrixXd& m = channel.matrix();
  const int inputs = channel.input_size();

  // Collapse duplicates to the first occurrence.
  std::vector<int> representative(inputs);
  std::vector<int> distinct;
  for (int x = 0; x < inputs; ++x) {
    representative[x] = x;
    for (const int d : distinct) {
      if (rows_equal(m, x, d, kLpFeasTol)) {
        representative[x] = d;
        break;
      }
    }
    if (representative[x] == x) distinct.push_back(x);
  }

  // A distinct row is extreme iff it is not a convex combination of the
  // other distinct rows.
  std::vector<int> extremes;
  for (std::size_t i = 0; i < distinct.size(); ++i) {
    if (distinct.size() == 1) {
      extremes.push_back(distinct[i]);
      break;
    }
    Eigen::MatrixXd others(distinct.size() - 1, m.cols());
    int r = 0;
    for (std::size_t j = 0; j < distinct.size(); ++j) {
      if (j != i) others.row(r++) = m.row(distinct[j]);
    }
    if (!convex_weights(others, m.row(distinct[i]).transpose())) {
      extremes.push_back(distinct[i]);
    }
  }

  ExtremeRowDecomposition out;
  out.extreme_rows = extremes;
  out.weights.assign(inputs, {});

  Eigen::MatrixXd extreme_matrix(extremes.size(), m.cols());
  for (std::size_t i = 0; i < extremes.size(); ++i) extreme_matrix.row(i) = m.row(extremes[i]);

  for (int x = 0; x < inputs; ++x) {
    const bool is_extreme =
        std::find(extremes.begin(), extremes.end(), x) != extremes.end();
    if (is_extreme) continue;
    // Duplicates of an extreme row reconstruct trivially.
    const int rep = representative[x];
    const auto rep_pos = std::find(extremes.begin(), extremes.end(), rep);
    if (rep_pos != extremes.end()) {
      std::vector<double> w(extremes.size(), 0.0);
      w[rep_pos - extremes.begin()] = 1.0;
      out.weights[x] = std::move(w);
      continue;
    }
    auto w = convex_weights(extreme_matrix, m.row(x).transpose());
    if (!w) {
      // Hull membership is guaranteed; a miss here is a solver defect.
      fail(Errc::solver_failure, "failed to decompose a non-extreme row");
    }
    out.weights[x] = std::move(*w);
  }
  return out;
}

ChannelProfile build_profile(const Channel& channel, double rank_tol) {
  ChannelProfile p;
  p.input_size = channel.input_size();
  p.output_size = channel.output_size();

  const Eigen::MatrixXd& m = channel.matrix();
  p.rank_r = numerical_rank(m, rank_tol);

  // Greedy scan in input order; keep rows that raise the rank.
  std::vector<int> kept;
  for (int x = 0; x < p.input_size && static_cast<int>(kept.size()) < p.rank_r; ++x) {
    Eigen::MatrixXd candidate(kept.size() + 1, m.cols());
    for (std::size_t i = 0; i < kept.size(); ++i) candidate.row(static_cast<int>(i)) = m.row(kept[i]);
    candidate.row(static_cast<int>(kept.size())) = m.row(x);
    if (numerical_rank(candidate, rank_tol) > static_cast<int>(kept.size())) kept.push_back(x);
  }
  if (static_cast<int>(kept.size()) != p.rank_r) {
    fail(Errc::rank_deficient_subset, "greedy row scan missed the numerical rank");
  }
  p.row_subset = kept;

  p.reduced_matrix.resize(p.rank_r, p.output_size);
  for (int i = 0; i < p.rank_r; ++i) p.reduced_matrix.row(i) = m.row(kept[i]);

  // Right inverse via the Gram matrix: pinv = M' (M M')^-1.
  const Eigen::MatrixXd gram = p.reduced_matrix * p.reduced_matrix.transpose();
  p.right_pinv = gram.ldlt().solve(p.reduced_matrix).transpose();

  Eigen::JacobiSVD<Eigen::MatrixXd> reduced_svd(p.reduced_matrix);
  p.sigma_min = reduced_svd.singularValues()(p.rank_r - 1);
  Eigen::JacobiSVD<Eigen::MatrixXd> pinv_svd(p.right_pinv);
  p.sigma = pinv_svd.singularValues()(0);

  const ExtremeRowDecomposition ext = extreme_rows(channel);
  p.ext_count = ext.ext_count();
  p.extreme_rows = ext.extreme_rows;

  p.nu = channel.min_entry();
  p.strictly_positive = p.nu > 0.0;
  p.doeblin_eta = doeblin_coefficient(channel);
  return p;
}

double doeblin_coefficient(const Channel& channel) {
  return channel.matrix().colwise().minCoeff().sum();
}

}  // namespace permchan
