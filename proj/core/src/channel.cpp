#include "permchan/channel.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace permchan {

Channel Channel::validate_impl(const Eigen::MatrixXd& rows, int min_inputs, int min_outputs) {
  if (rows.size() == 0) fail(Errc::degenerate_shape, "empty matrix");
  if (rows.rows() < min_inputs || rows.cols() < min_outputs) {
    std::ostringstream os;
    os << "matrix is " << rows.rows() << "x" << rows.cols() << ", need at least "
       << min_inputs << "x" << min_outputs;
    fail(Errc::degenerate_shape, os.str());
  }

  Eigen::MatrixXd m = rows;
  for (int x = 0; x < m.rows(); ++x) {
    for (int y = 0; y < m.cols(); ++y) {
      double v = m(x, y);
      if (!std::isfinite(v)) fail(Errc::degenerate_shape, "non-finite entry");
      if (v < 0.0) {
        if (v < -kStochasticTol) {
          std::ostringstream os;
          os << "entry (" << x << "," << y << ") = " << v;
          fail(Errc::negative_entry, os.str());
        }
        m(x, y) = 0.0;
      } else if (v > 1.0 && v <= 1.0 + kStochasticTol) {
        m(x, y) = 1.0;
      }
    }
    const double sum = m.row(x).sum();
    const double deviation = sum - 1.0;
    if (std::abs(deviation) > kStochasticTol) {
      std::ostringstream os;
      os << "row " << x << " sums to " << sum << " (deviation " << std::showpos << deviation
         << ")";
      fail(Errc::row_sum_mismatch, os.str());
    }
    if (sum != 1.0 && sum > 0.0) m.row(x) /= sum;
  }
  return Channel(std::move(m));
}

Channel Channel::validate(const Eigen::MatrixXd& rows) { return validate_impl(rows, 2, 2); }

Channel Channel::validate(const std::vector<std::vector<double>>& rows) {
  if (rows.empty() || rows.front().empty()) fail(Errc::degenerate_shape, "empty matrix");
  const std::size_t cols = rows.front().size();
  for (const auto& r : rows) {
    if (r.size() != cols) fail(Errc::degenerate_shape, "ragged rows");
  }
  Eigen::MatrixXd m(rows.size(), cols);
  for (std::size_t x = 0; x < rows.size(); ++x) {
    for (std::size_t y = 0; y < cols; ++y) m(static_cast<int>(x), static_cast<int>(y)) = rows[x][y];
  }
  return validate(m);
}

Channel Channel::validate_witness(const Eigen::MatrixXd& rows) {
  return validate_impl(rows, 1, 1);
}

Channel Channel::symmetric(int q, double delta) {
  if (q < 2) fail(Errc::parameter_out_of_range, "symmetric channel needs q >= 2");
  if (!(delta >= 0.0 && delta <= 1.0)) {
    fail(Errc::parameter_out_of_range, "crossover probability must lie in [0,1]");
  }
  Eigen::MatrixXd m = Eigen::MatrixXd::Constant(q, q, delta / (q - 1));
  m.diagonal().setConstant(1.0 - delta);
  return validate_impl(m, 2, 2);
}

Channel Channel::erasure(int q, double eta) {
  if (q < 2) fail(Errc::parameter_out_of_range, "erasure channel needs q >= 2");
  if (!(eta >= 0.0 && eta <= 1.0)) {
    fail(Errc::parameter_out_of_range, "erasure probability must lie in [0,1]");
  }
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(q, q + 1);
  for (int x = 0; x < q; ++x) {
    m(x, x) = 1.0 - eta;
    m(x, q) = eta;
  }
  return validate_impl(m, 2, 2);
}

Channel Channel::identity(int q) {
  if (q < 2) fail(Errc::parameter_out_of_range, "identity channel needs q >= 2");
  return validate_impl(Eigen::MatrixXd::Identity(q, q), 2, 2);
}

Histogram::Histogram(std::vector<std::int64_t> counts) : counts_(std::move(counts)) {
  if (counts_.empty()) fail(Errc::degenerate_shape, "empty histogram");
  n_ = 0;
  for (const auto c : counts_) {
    if (c < 0) fail(Errc::negative_entry, "negative count");
    n_ += c;
  }
}

Eigen::VectorXd Histogram::frequencies() const {
  Eigen::VectorXd f(counts_.size());
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    f(static_cast<int>(i)) = n_ > 0 ? static_cast<double>(counts_[i]) / static_cast<double>(n_) : 0.0;
  }
  return f;
}

double Histogram::log_multinomial() const {
  double value = std::lgamma(static_cast<double>(n_) + 1.0);
  for (const auto c : counts_) value -= std::lgamma(static_cast<double>(c) + 1.0);
  return value;
}

DistVector DistVector::validate(Eigen::VectorXd probs) {
  if (probs.size() == 0) fail(Errc::degenerate_shape, "empty distribution");
  for (int i = 0; i < probs.size(); ++i) {
    if (!std::isfinite(probs(i))) fail(Errc::degenerate_shape, "non-finite probability");
    if (probs(i) < 0.0) {
      if (probs(i) < -kStochasticTol) fail(Errc::negative_entry, "negative probability");
      probs(i) = 0.0;
    }
  }
  const double sum = probs.sum();
  if (std::abs(sum - 1.0) > kStochasticTol) {
    std::ostringstream os;
    os << "probabilities sum to " << sum;
    fail(Errc::row_sum_mismatch, os.str());
  }
  if (sum != 1.0 && sum > 0.0) probs /= sum;
  return DistVector(std::move(probs));
}

DistVector DistVector::validate(const std::vector<double>& probs) {
  Eigen::VectorXd p(probs.size());
  for (std::size_t i = 0; i < probs.size(); ++i) p(static_cast<int>(i)) = probs[i];
  return validate(std::move(p));
}

DistVector DistVector::uniform(int q) {
  if (q < 1) fail(Errc::parameter_out_of_range, "alphabet size must be positive");
  return DistVector(Eigen::VectorXd::Constant(q, 1.0 / q));
}

DistVector DistVector::point_mass(int q, int x) {
  if (q < 1 || x < 0 || x >= q) fail(Errc::parameter_out_of_range, "point mass out of range");
  Eigen::VectorXd p = Eigen::VectorXd::Zero(q);
  p(x) = 1.0;
  return DistVector(std::move(p));
}

namespace {

void check_codeword(const Codeword& cw, int expected_alphabet) {
  if (cw.symbols.empty()) fail(Errc::degenerate_shape, "empty codeword");
  if (cw.alphabet_size != expected_alphabet) {
    std::ostringstream os;
    os << "codeword alphabet " << cw.alphabet_size << " vs channel input " << expected_alphabet;
    fail(Errc::alphabet_mismatch, os.str());
  }
  for (const auto s : cw.symbols) {
    if (s < 0 || s >= cw.alphabet_size) fail(Errc::alphabet_mismatch, "symbol out of range");
  }
}

// Per-row cumulative sums for inverse-CDF sampling.
Eigen::MatrixXd row_cumulatives(const Channel& channel) {
  Eigen::MatrixXd cum = channel.matrix();
  for (int x = 0; x < cum.rows(); ++x) {
    for (int y = 1; y < cum.cols(); ++y) cum(x, y) += cum(x, y - 1);
  }
  return cum;
}

std::int32_t sample_row(const Eigen::MatrixXd& cum, int x, Rng& rng) {
  const double u = rng.next_double();
  const int last = static_cast<int>(cum.cols()) - 1;
  for (int y = 0; y < last; ++y) {
    if (u < cum(x, y)) return y;
  }
  return last;
}

}  // namespace

Codeword transmit(const Channel& channel, const Codeword& input, Rng& rng, TransmitOrder order) {
  check_codeword(input, channel.input_size());
  const Eigen::MatrixXd cum = row_cumulatives(channel);
  Codeword out;
  out.alphabet_size = channel.output_size();
  out.symbols.resize(input.symbols.size());

  if (order == TransmitOrder::dmc_then_permute) {
    for (std::size_t i = 0; i < input.symbols.size(); ++i) {
      out.symbols[i] = sample_row(cum, input.symbols[i], rng);
    }
    rng.shuffle(out.symbols);
  } else {
    std::vector<std::int32_t> permuted = input.symbols;
    rng.shuffle(permuted);
    for (std::size_t i = 0; i < permuted.size(); ++i) {
      out.symbols[i] = sample_row(cum, permuted[i], rng);
    }
  }
  return out;
}

DistVector push_forward(const DistVector& dist, const Channel& channel) {
  if (dist.size() != channel.input_size()) {
    fail(Errc::alphabet_mismatch, "distribution length does not match channel input");
  }
  Eigen::VectorXd out = channel.matrix().transpose() * dist.probs();
  return DistVector::validate(std::move(out));
}

Histogram empirical_distribution(const Codeword& codeword) {
  if (codeword.symbols.empty() || codeword.alphabet_size < 1) {
    fail(Errc::degenerate_shape, "empty codeword");
  }
  std::vector<std::int64_t> counts(codeword.alphabet_size, 0);
  for (const auto s : codeword.symbols) {
    if (s < 0 || s >= codeword.alphabet_size) fail(Errc::alphabet_mismatch, "symbol out of range");
    ++counts[s];
  }
  return Histogram(std::move(counts));
}

Codeword composition_codeword(const Histogram& hist) {
  Codeword cw;
  cw.alphabet_size = hist.alphabet_size();
  cw.symbols.reserve(hist.total());
  for (int a = 0; a < hist.alphabet_size(); ++a) {
    for (std::int64_t i = 0; i < hist.counts()[a]; ++i) cw.symbols.push_back(a);
  }
  return cw;
}

std::uint64_t binomial_checked(std::int64_t n, std::int64_t k) {
  if (n < 0 || k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  unsigned __int128 acc = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    acc = acc * static_cast<unsigned __int128>(n - k + i) / static_cast<unsigned __int128>(i);
    if (acc > static_cast<unsigned __int128>(std::numeric_limits<std::int64_t>::max())) {
      fail(Errc::overflow, "binomial coefficient exceeds 2^63-1");
    }
  }
  return static_cast<std::uint64_t>(acc);
}

}  // namespace permchan
