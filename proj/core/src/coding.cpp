#include "permchan/coding.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace permchan {

namespace {

// Compositions of total t into m non-negative parts: C(t+m-1, m-1).
std::uint64_t composition_count(std::int64_t t, int m) {
  return binomial_checked(t + m - 1, m - 1);
}

}  // namespace

MessageLattice::MessageLattice(int r, std::int64_t k) : r_(r), k_(k) {
  if (r < 1 || k < 1) fail(Errc::parameter_out_of_range, "lattice needs r >= 1 and k >= 1");
  size_ = composition_count(k, r);
}

LatticeMessage MessageLattice::at(std::uint64_t index) const {
  if (index >= size_) fail(Errc::parameter_out_of_range, "message index out of range");
  LatticeMessage msg;
  msg.k = k_;
  msg.numerators.assign(r_, 0);
  std::int64_t remaining = k_;
  for (int i = 0; i < r_ - 1; ++i) {
    const int tail = r_ - i - 1;  // coordinates after this one
    // count = completions with numerators[i] = v, updated multiplicatively
    // as v grows: C(t+tail-1, tail-1) -> C(t+tail-2, tail-1) via * t/(t+tail-1).
    std::int64_t v = 0;
    unsigned __int128 count = composition_count(remaining, tail);
    while (index >= count) {
      index -= static_cast<std::uint64_t>(count);
      const std::int64_t t = remaining - v;
      count = count * static_cast<unsigned __int128>(t) /
              static_cast<unsigned __int128>(t + tail - 1);
      ++v;
    }
    msg.numerators[i] = v;
    remaining -= v;
  }
  msg.numerators[r_ - 1] = remaining;
  return msg;
}

std::uint64_t MessageLattice::index_of(const LatticeMessage& message) const {
  if (message.r() != r_ || message.k != k_) fail(Errc::config_mismatch, "message is from another lattice");
  std::int64_t remaining = k_;
  std::uint64_t index = 0;
  for (int i = 0; i < r_ - 1; ++i) {
    const int tail = r_ - i - 1;
    const std::int64_t v = message.numerators[i];
    if (v < 0 || v > remaining) fail(Errc::parameter_out_of_range, "invalid lattice point");
    unsigned __int128 count = composition_count(remaining, tail);
    for (std::int64_t u = 0; u < v; ++u) {
      index += static_cast<std::uint64_t>(count);
      const std::int64_t t = remaining - u;
      count = count * static_cast<unsigned __int128>(t) /
              static_cast<unsigned __int128>(t + tail - 1);
    }
    remaining -= v;
  }
  if (message.numerators[r_ - 1] != remaining) {
    fail(Errc::parameter_out_of_range, "numerators do not sum to k");
  }
  return index;
}

std::int64_t lattice_denominator(std::int64_t n, double epsilon) {
  if (n < 1) fail(Errc::parameter_out_of_range, "blocklength must be positive");
  if (!(epsilon > 0.0 && epsilon < 0.5)) {
    fail(Errc::parameter_out_of_range, "epsilon must lie in (0, 1/2)");
  }
  // The 1e-9 nudge keeps exact integer powers from rounding down.
  return static_cast<std::int64_t>(std::floor(std::pow(static_cast<double>(n), 0.5 - epsilon) + 1e-9));
}

CodeConfig CodeConfig::make(ChannelProfile profile, std::int64_t n, double epsilon) {
  CodeConfig c;
  c.n = n;
  c.epsilon = epsilon;
  c.k = lattice_denominator(n, epsilon);
  if (c.k < 1) fail(Errc::parameter_out_of_range, "blocklength too small: lattice denominator is 0");
  c.message_count = MessageLattice(profile.rank_r, c.k).size();
  c.profile = std::move(profile);
  return c;
}

Codeword encode_randomized(const LatticeMessage& message, const CodeConfig& config, Rng& rng) {
  if (message.r() != config.profile.rank_r || message.k != config.k) {
    fail(Errc::config_mismatch, "message does not match the code configuration");
  }
  // Integer thresholds make the draw exact: coordinate i wins when the
  // uniform draw over {0,...,k-1} lands below the running numerator sum.
  std::vector<std::int64_t> cumulative(message.numerators.size());
  std::int64_t acc = 0;
  for (std::size_t i = 0; i < cumulative.size(); ++i) {
    acc += message.numerators[i];
    cumulative[i] = acc;
  }

  Codeword cw;
  cw.alphabet_size = config.profile.input_size;
  cw.symbols.resize(config.n);
  for (std::int64_t pos = 0; pos < config.n; ++pos) {
    const std::int64_t u = static_cast<std::int64_t>(rng.next_below(message.k));
    int coord = 0;
    while (u >= cumulative[coord]) ++coord;
    cw.symbols[pos] = static_cast<std::int32_t>(config.profile.row_subset[coord]);
  }
  return cw;
}

std::optional<LatticeMessage> decode_threshold(const Codeword& received, const CodeConfig& config,
                                               Rng& rng) {
  if (received.alphabet_size != config.profile.output_size) {
    fail(Errc::alphabet_mismatch, "received codeword is not over the channel output alphabet");
  }
  const Histogram hist = empirical_distribution(received);
  const Eigen::VectorXd stat = config.profile.right_pinv.transpose() * hist.frequencies();

  const std::int64_t k = config.k;
  LatticeMessage msg;
  msg.k = k;
  msg.numerators.resize(config.profile.rank_r);
  std::int64_t sum = 0;
  for (int x = 0; x < config.profile.rank_r; ++x) {
    const double tk = stat(x) * static_cast<double>(k);
    std::int64_t j;
    if (tk <= 0.0) {
      j = 0;
    } else if (tk >= static_cast<double>(k)) {
      j = k;
    } else {
      const std::int64_t lo = static_cast<std::int64_t>(std::floor(tk));
      const double down = tk - static_cast<double>(lo);
      const double up = static_cast<double>(lo + 1) - tk;
      if (std::abs(down - up) <= 1e-12) {
        j = lo + static_cast<std::int64_t>(rng.next_below(2));
      } else {
        j = down < up ? lo : lo + 1;
      }
    }
    msg.numerators[x] = j;
    sum += j;
  }
  if (sum != k) return std::nullopt;  // the erasure verdict
  return msg;
}

MlDecodeResult decode_ml_lattice(const Codeword& received, const Channel& channel,
                                 const CodeConfig& config) {
  if (received.alphabet_size != channel.output_size()) {
    fail(Errc::alphabet_mismatch, "received codeword is not over the channel output alphabet");
  }
  if (config.message_count > kMlEnumerationCap) {
    std::ostringstream os;
    os << "ML enumeration over " << config.message_count
       << " messages exceeds the cap of " << kMlEnumerationCap
       << "; use the thresholding decoder instead";
    fail(Errc::instance_too_large, os.str());
  }
  const Histogram hist = empirical_distribution(received);
  const auto& counts = hist.counts();
  const MessageLattice lattice(config.profile.rank_r, config.k);

  constexpr double kMinusInf = -std::numeric_limits<double>::infinity();
  double best = kMinusInf;
  std::uint64_t best_index = 0;
  bool any_finite = false;

  for (std::uint64_t idx = 0; idx < lattice.size(); ++idx) {
    const LatticeMessage msg = lattice.at(idx);
    Eigen::VectorXd input = Eigen::VectorXd::Zero(channel.input_size());
    for (int i = 0; i < msg.r(); ++i) {
      input(config.profile.row_subset[i]) =
          static_cast<double>(msg.numerators[i]) / static_cast<double>(msg.k);
    }
    const Eigen::VectorXd out_dist = channel.matrix().transpose() * input;

    double score = 0.0;
    for (int y = 0; y < channel.output_size(); ++y) {
      if (counts[y] == 0) continue;
      if (out_dist(y) <= 0.0) {
        score = kMinusInf;
        break;
      }
      score += static_cast<double>(counts[y]) * std::log(out_dist(y));
    }
    if (score > best) {
      best = score;
      best_index = idx;
      any_finite = score != kMinusInf;
    }
  }
  return MlDecodeResult{lattice.at(best_index), !any_finite};
}

Codeword encode_composition(const Histogram& hist) { return composition_codeword(hist); }

Histogram decode_permutation_channel(const Codeword& received, const Channel& channel) {
  const Eigen::MatrixXd& m = channel.matrix();
  if (m.rows() != m.cols()) fail(Errc::not_permutation_matrix, "matrix is not square");
  for (int x = 0; x < m.rows(); ++x) {
    int ones = 0;
    for (int y = 0; y < m.cols(); ++y) {
      const double v = m(x, y);
      if (std::abs(v - 1.0) <= kStochasticTol) {
        ++ones;
      } else if (std::abs(v) > kStochasticTol) {
        fail(Errc::not_permutation_matrix, "entries must be exactly 0 or 1");
      }
    }
    if (ones != 1) fail(Errc::not_permutation_matrix, "each row needs exactly one unit entry");
  }
  for (int y = 0; y < m.cols(); ++y) {
    if (std::abs(m.col(y).sum() - 1.0) > kStochasticTol) {
      fail(Errc::not_permutation_matrix, "each column needs exactly one unit entry");
    }
  }
  if (received.alphabet_size != channel.output_size()) {
    fail(Errc::alphabet_mismatch, "received codeword is not over the channel output alphabet");
  }

  const Histogram out_type = empirical_distribution(received);
  std::vector<std::int64_t> input_counts(channel.input_size(), 0);
  for (int x = 0; x < channel.input_size(); ++x) {
    double acc = 0.0;
    for (int y = 0; y < channel.output_size(); ++y) {
      acc += m(x, y) * static_cast<double>(out_type.counts()[y]);
    }
    input_counts[x] = static_cast<std::int64_t>(std::llround(acc));
  }
  return Histogram(std::move(input_counts));
}

std::optional<LatticeMessage> decode_erasure_symmetrized(const Codeword& received, int q,
                                                         const CodeConfig& symmetric_config,
                                                         Rng& rng) {
  if (received.alphabet_size != q + 1) {
    fail(Errc::alphabet_mismatch, "expected symbols over the erasure output alphabet");
  }
  if (symmetric_config.profile.input_size != q || symmetric_config.profile.output_size != q) {
    fail(Errc::config_mismatch, "configuration must describe the q-ary symmetric channel");
  }
  Codeword replaced;
  replaced.alphabet_size = q;
  replaced.symbols.resize(received.symbols.size());
  for (std::size_t i = 0; i < received.symbols.size(); ++i) {
    const std::int32_t s = received.symbols[i];
    replaced.symbols[i] =
        s == q ? static_cast<std::int32_t>(rng.next_below(static_cast<std::uint64_t>(q))) : s;
  }
  return decode_threshold(replaced, symmetric_config, rng);
}

}  // namespace permchan
