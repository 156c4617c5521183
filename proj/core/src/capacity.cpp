#include "permchan/capacity.hpp"

#include <algorithm>
#include <cmath>

namespace permchan {

bool is_permutation_matrix(const Channel& channel, double tol) {
  const Eigen::MatrixXd& m = channel.matrix();
  if (m.rows() != m.cols()) return false;
  for (int x = 0; x < m.rows(); ++x) {
    int ones = 0;
    for (int y = 0; y < m.cols(); ++y) {
      const double v = m(x, y);
      if (std::abs(v - 1.0) <= tol) {
        ++ones;
      } else if (std::abs(v) > tol) {
        return false;
      }
    }
    if (ones != 1) return false;
  }
  for (int y = 0; y < m.cols(); ++y) {
    if (std::abs(m.col(y).sum() - 1.0) > tol) return false;
  }
  return true;
}

std::optional<ErasureStructure> detect_erasure_structure(const Channel& channel, double tol) {
  const Eigen::MatrixXd& m = channel.matrix();
  const int q = channel.input_size();
  if (channel.output_size() != q + 1) return std::nullopt;

  for (int c = 0; c < channel.output_size(); ++c) {
    const double eta = m(0, c);
    bool constant = true;
    for (int x = 1; x < q && constant; ++x) constant = std::abs(m(x, c) - eta) <= tol;
    if (!constant) continue;

    // Remaining columns must pair off with the rows, each carrying 1 - eta.
    std::vector<int> copy_column(q, -1);
    std::vector<bool> used(channel.output_size(), false);
    used[c] = true;
    bool ok = true;
    for (int y = 0; y < channel.output_size() && ok; ++y) {
      if (y == c) continue;
      int owner = -1;
      for (int x = 0; x < q; ++x) {
        const double v = m(x, y);
        if (std::abs(v - (1.0 - eta)) <= tol && 1.0 - eta > tol) {
          if (owner >= 0) {
            ok = false;
            break;
          }
          owner = x;
        } else if (std::abs(v) > tol) {
          ok = false;
          break;
        }
      }
      if (!ok) break;
      if (owner < 0) {
        // A zero column is only consistent with full erasure.
        ok = std::abs(1.0 - eta) <= tol;
        continue;
      }
      if (copy_column[owner] >= 0) {
        ok = false;
        break;
      }
      copy_column[owner] = y;
    }
    if (!ok) continue;
    if (1.0 - eta > tol) {
      if (std::any_of(copy_column.begin(), copy_column.end(), [](int v) { return v < 0; })) {
        continue;
      }
    }
    ErasureStructure s;
    s.q = q;
    s.eta = eta;
    s.erasure_column = c;
    s.copy_column = std::move(copy_column);
    return s;
  }
  return std::nullopt;
}

CapacityBounds capacity_bounds(const Channel& channel, const ChannelProfile& profile) {
  CapacityBounds b;
  const int out = channel.output_size();
  const int effective = std::min(profile.ext_count, out);

  if (profile.rank_r <= 1) {
    // All rows equal: the output carries nothing about the input.
    b.lower = b.upper = 0.0;
    b.exact = true;
    b.rules = {"unit-rank"};
    return b;
  }

  if (is_permutation_matrix(channel)) {
    b.lower = b.upper = static_cast<double>(channel.input_size() - 1);
    b.exact = true;
    b.rules = {"permutation-matrix"};
    return b;
  }

  const auto erasure = detect_erasure_structure(channel);
  if (erasure && erasure->eta <= kStochasticTol) {
    // Noiseless erasure channel: an identity with a dead erasure column.
    b.lower = b.upper = static_cast<double>(erasure->q - 1);
    b.exact = true;
    b.rules = {"erasure-structure-noiseless"};
    return b;
  }

  b.lower = static_cast<double>(profile.rank_r - 1) / 2.0;
  b.rules.push_back("rank-achievability");
  if (profile.strictly_positive) {
    b.upper = static_cast<double>(effective - 1) / 2.0;
    b.exact = profile.rank_r == effective;
    b.rules.push_back("strictly-positive-converse");
    if (b.exact) {
      b.rules.push_back("full-rank-exact");
    } else {
      b.annotations.push_back(
          "unproven candidate: capacity of every strictly positive channel equals (rank-1)/2");
    }
    return b;
  }

  b.upper = static_cast<double>(effective - 1);
  b.rules.push_back("effective-alphabet-converse");
  if (erasure) {
    // For a genuine erasure channel the general rules already give
    // [(q-1)/2, q-1]; record the sharper provenance.
    b.rules.push_back("erasure-structure");
    if (erasure->q == 2) {
      b.annotations.push_back("unproven candidate: binary erasure capacity equals 1/2");
    } else {
      b.annotations.push_back("unproven candidate: erasure capacity is at most q/2");
    }
  }
  return b;
}

double rate_of(std::uint64_t message_count, std::int64_t n) {
  if (n < 2) fail(Errc::parameter_out_of_range, "rate needs blocklength n >= 2");
  if (message_count == 0) fail(Errc::parameter_out_of_range, "message count must be positive");
  return std::log2(static_cast<double>(message_count)) / std::log2(static_cast<double>(n));
}

}  // namespace permchan
