#pragma once

#include <Eigen/Dense>
#include <vector>

#include "permchan/channel.hpp"

namespace permchan {

inline constexpr double kRankTol = 1e-10;       // relative to the largest singular value
inline constexpr double kLpFeasTol = 1e-9;      // convex-combination feasibility

// Number of singular values above rel_tol times the largest.
int numerical_rank(const Eigen::MatrixXd& m, double rel_tol = kRankTol);
int numerical_rank(const Channel& channel, double rel_tol = kRankTol);

// Extreme points of the convex hull of the channel rows. Duplicate rows
// collapse to their lowest-index representative. Every input whose row is
// not an extreme point gets convex weights over the extreme rows that
// reconstruct it.
struct ExtremeRowDecomposition {
  std::vector<int> extreme_rows;               // ascending input indices
  // weights[x] spans extreme_rows for non-extreme inputs; empty for extremes.
  std::vector<std::vector<double>> weights;

  int ext_count() const noexcept { return static_cast<int>(extreme_rows.size()); }
};

ExtremeRowDecomposition extreme_rows(const Channel& channel);

// Derived analytics of one channel, computed once and then shared.
struct ChannelProfile {
  int input_size = 0;
  int output_size = 0;

  int rank_r = 0;                  // numerical rank of the transition matrix
  std::vector<int> row_subset;     // r inputs with linearly independent rows
  Eigen::MatrixXd reduced_matrix;  // those rows, r x |Y|
  Eigen::MatrixXd right_pinv;      // |Y| x r right inverse of reduced_matrix
  double sigma = 0.0;              // operator norm of right_pinv
  double sigma_min = 0.0;          // smallest singular value of reduced_matrix

  int ext_count = 0;
  std::vector<int> extreme_rows;

  double nu = 0.0;                 // minimum matrix entry
  bool strictly_positive = false;
  double doeblin_eta = 0.0;        // sum over outputs of the column minima
};

// Row subset is chosen greedily in input order: a row is kept whenever it
// raises the rank of the kept set. Deterministic, not optimized for sigma.
ChannelProfile build_profile(const Channel& channel, double rank_tol = kRankTol);

double doeblin_coefficient(const Channel& channel);

}  // namespace permchan
