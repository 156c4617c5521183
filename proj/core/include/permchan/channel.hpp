#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "permchan/error.hpp"
#include "permchan/rng.hpp"

namespace permchan {

// Absolute tolerance for stochasticity checks; inputs within it are cleaned
// up (clamped / renormalized), anything worse is rejected.
inline constexpr double kStochasticTol = 1e-12;

class DistVector;

// A discrete memoryless channel: row-stochastic matrix, rows indexed by the
// input alphabet, columns by the output alphabet. Immutable once built.
class Channel {
 public:
  // Validates and normalizes an arbitrary matrix. Alphabet sizes must be at
  // least 2. Throws negative_entry / row_sum_mismatch / degenerate_shape.
  static Channel validate(const Eigen::MatrixXd& rows);
  static Channel validate(const std::vector<std::vector<double>>& rows);

  // Same checks but permits single-row/column matrices; degradation
  // witnesses are the one place such shapes occur.
  static Channel validate_witness(const Eigen::MatrixXd& rows);

  // q-ary symmetric channel: 1-delta on the diagonal, delta/(q-1) elsewhere.
  static Channel symmetric(int q, double delta);
  // q-ary erasure channel: q x (q+1), erasure symbol is the last output.
  static Channel erasure(int q, double eta);
  static Channel identity(int q);

  int input_size() const noexcept { return static_cast<int>(mat_.rows()); }
  int output_size() const noexcept { return static_cast<int>(mat_.cols()); }
  const Eigen::MatrixXd& matrix() const noexcept { return mat_; }
  double operator()(int x, int y) const { return mat_(x, y); }
  Eigen::VectorXd row(int x) const { return mat_.row(x).transpose(); }

  double min_entry() const { return mat_.minCoeff(); }
  bool strictly_positive() const { return min_entry() > 0.0; }

 private:
  explicit Channel(Eigen::MatrixXd mat) : mat_(std::move(mat)) {}
  static Channel validate_impl(const Eigen::MatrixXd& rows, int min_inputs, int min_outputs);

  Eigen::MatrixXd mat_;
};

// A length-n sequence over an alphabet; symbols are 0-based indices.
struct Codeword {
  std::vector<std::int32_t> symbols;
  std::int32_t alphabet_size = 0;

  std::int64_t n() const noexcept { return static_cast<std::int64_t>(symbols.size()); }
};

// Empirical distribution (type) of a codeword: symbol counts plus total.
class Histogram {
 public:
  explicit Histogram(std::vector<std::int64_t> counts);

  const std::vector<std::int64_t>& counts() const noexcept { return counts_; }
  std::int64_t total() const noexcept { return n_; }
  int alphabet_size() const noexcept { return static_cast<int>(counts_.size()); }

  // counts / n as a probability vector.
  Eigen::VectorXd frequencies() const;

  // Natural log of n! / prod(counts!): the number of sequences of this type.
  double log_multinomial() const;
  double multinomial() const { return std::exp(log_multinomial()); }

  bool operator==(const Histogram& other) const noexcept {
    return counts_ == other.counts_;
  }

 private:
  std::vector<std::int64_t> counts_;
  std::int64_t n_ = 0;
};

// A probability vector over a finite alphabet.
class DistVector {
 public:
  static DistVector validate(Eigen::VectorXd probs);
  static DistVector validate(const std::vector<double>& probs);
  static DistVector uniform(int q);
  static DistVector point_mass(int q, int x);

  int size() const noexcept { return static_cast<int>(p_.size()); }
  const Eigen::VectorXd& probs() const noexcept { return p_; }
  double operator()(int i) const { return p_(i); }

 private:
  explicit DistVector(Eigen::VectorXd p) : p_(std::move(p)) {}
  Eigen::VectorXd p_;
};

enum class TransmitOrder {
  dmc_then_permute,   // memoryless noise first, then a uniform permutation
  permute_then_dmc,   // statistically equivalent swapped order
};

// One channel use on a whole block: per-symbol noise plus a uniform random
// permutation of the block, in the requested order.
Codeword transmit(const Channel& channel, const Codeword& input, Rng& rng,
                  TransmitOrder order = TransmitOrder::dmc_then_permute);

// Output distribution of a single channel use: row-vector times matrix.
DistVector push_forward(const DistVector& dist, const Channel& channel);

Histogram empirical_distribution(const Codeword& codeword);

// Sorted codeword realizing exactly the given type: counts[0] copies of
// symbol 0, then counts[1] copies of symbol 1, and so on.
Codeword composition_codeword(const Histogram& hist);

// C(n, k) in exact integer arithmetic; throws Errc::overflow past 2^63-1.
std::uint64_t binomial_checked(std::int64_t n, std::int64_t k);

}  // namespace permchan
