#include "permchan/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "permchan/coding.hpp"

namespace permchan {

namespace {

double pow_int(double base, int exponent) {
  double v = 1.0;
  for (int i = 0; i < exponent; ++i) v *= base;
  return v;
}

// Kahan-compensated accumulator; the type sums run up to ~1e6 terms.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double v) {
    const double y = v - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

double log_factorial(std::int64_t n) { return std::lgamma(static_cast<double>(n) + 1.0); }

// Probability of one type under the n-fold product of dist, computed in log
// space: exp(log multinomial + sum counts * log dist).
double iid_type_probability(const std::vector<std::int64_t>& counts, const Eigen::VectorXd& dist,
                            std::int64_t n) {
  double log_p = log_factorial(n);
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] == 0) continue;
    if (dist(static_cast<int>(i)) <= 0.0) return 0.0;
    log_p += static_cast<double>(counts[i]) * std::log(dist(static_cast<int>(i))) -
             log_factorial(counts[i]);
  }
  return std::exp(log_p);
}

}  // namespace

double OutputTypeLaw::type_probability(const std::vector<std::int64_t>& counts) const {
  const auto it = types.find(counts);
  return it == types.end() ? 0.0 : it->second;
}

double OutputTypeLaw::sequence_probability(const Codeword& sequence) const {
  if (sequence.alphabet_size != output_size || sequence.n() != n) {
    fail(Errc::alphabet_mismatch, "sequence does not match the law's alphabet or length");
  }
  const Histogram type = empirical_distribution(sequence);
  const double p = type_probability(type.counts());
  return p == 0.0 ? 0.0 : p / type.multinomial();
}

OutputTypeLaw exact_output_law(const Channel& channel, const Codeword& input) {
  if (input.alphabet_size != channel.input_size()) {
    fail(Errc::alphabet_mismatch, "input codeword is not over the channel input alphabet");
  }
  const int out = channel.output_size();
  const std::int64_t n = input.n();
  if (pow_int(static_cast<double>(out), static_cast<int>(n)) > kOracleCap) {
    fail(Errc::instance_too_large, "output space exceeds the exact-enumeration cap");
  }

  // One pass per position, convolving the running type distribution with the
  // noise law of that position's input symbol.
  OutputTypeLaw law;
  law.output_size = out;
  law.n = n;
  std::map<std::vector<std::int64_t>, double> current;
  current[std::vector<std::int64_t>(out, 0)] = 1.0;
  for (const auto symbol : input.symbols) {
    std::map<std::vector<std::int64_t>, double> next;
    for (const auto& [counts, prob] : current) {
      for (int y = 0; y < out; ++y) {
        const double p = channel(symbol, y);
        if (p == 0.0) continue;
        std::vector<std::int64_t> bumped = counts;
        ++bumped[y];
        next[std::move(bumped)] += prob * p;
      }
    }
    current = std::move(next);
  }
  law.types = std::move(current);
  return law;
}

namespace {

// All sequences of the given length over {0,...,alphabet-1}.
void enumerate_sequences(int alphabet, int n, std::vector<std::vector<std::int32_t>>* out) {
  out->clear();
  std::vector<std::int32_t> seq(n, 0);
  for (;;) {
    out->push_back(seq);
    int pos = n - 1;
    while (pos >= 0 && seq[pos] == alphabet - 1) {
      seq[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
    ++seq[pos];
  }
}

std::vector<std::int64_t> type_of(const std::vector<std::int32_t>& seq, int alphabet) {
  std::vector<std::int64_t> counts(alphabet, 0);
  for (const auto s : seq) ++counts[s];
  return counts;
}

double log_permutation_count(const std::vector<std::int64_t>& counts, std::int64_t n) {
  double v = -log_factorial(n);
  for (const auto c : counts) v += log_factorial(c);
  return v;  // log of (prod counts!) / n!
}

}  // namespace

double verify_equivalent_model(const Channel& channel, int n) {
  const int in = channel.input_size();
  const int out = channel.output_size();
  const double work = pow_int(static_cast<double>(in), n) * pow_int(static_cast<double>(out), n);
  if (work > kOracleCap) {
    fail(Errc::instance_too_large, "sequence enumeration exceeds the exact-enumeration cap");
  }

  std::vector<std::vector<std::int32_t>> inputs;
  std::vector<std::vector<std::int32_t>> outputs;
  enumerate_sequences(in, n, &inputs);
  enumerate_sequences(out, n, &outputs);

  double max_gap = 0.0;
  for (const auto& x : inputs) {
    const std::vector<std::int64_t> x_type = type_of(x, in);
    const double x_perm = std::exp(log_permutation_count(x_type, n));

    // Noise first: group the product law of the noisy block by type; a
    // permutation then spreads each type uniformly over its sequences.
    std::map<std::vector<std::int64_t>, double> z_mass_by_type;
    for (const auto& z : outputs) {
      double p = 1.0;
      for (int i = 0; i < n; ++i) p *= channel(x[i], z[i]);
      if (p != 0.0) z_mass_by_type[type_of(z, out)] += p;
    }

    for (const auto& y : outputs) {
      const std::vector<std::int64_t> y_type = type_of(y, out);
      const auto it = z_mass_by_type.find(y_type);
      const double law_noise_first =
          it == z_mass_by_type.end()
              ? 0.0
              : it->second * std::exp(log_permutation_count(y_type, n));

      // Permutation first: average the product law over all rearrangements
      // of the input block.
      double law_permute_first = 0.0;
      for (const auto& v : inputs) {
        if (type_of(v, in) != x_type) continue;
        double p = 1.0;
        for (int i = 0; i < n; ++i) p *= channel(v[i], y[i]);
        law_permute_first += p;
      }
      law_permute_first *= x_perm;

      max_gap = std::max(max_gap, std::abs(law_noise_first - law_permute_first));
    }
  }
  return max_gap;
}

TestBoundsReport test_bounds(const DistVector& p, const DistVector& q, std::int64_t n) {
  if (p.size() != q.size()) fail(Errc::alphabet_mismatch, "distributions live on different alphabets");
  const int alphabet = p.size();
  const double type_count =
      static_cast<double>(binomial_checked(n + alphabet - 1, alphabet - 1));
  if (type_count > kOracleCap) {
    fail(Errc::instance_too_large, "type space exceeds the exact-enumeration cap");
  }

  TestBoundsReport report;

  // Exact TV over types: half the l1 distance between the product laws.
  const MessageLattice types(alphabet, n);
  CompensatedSum l1;
  for (std::uint64_t i = 0; i < types.size(); ++i) {
    const LatticeMessage t = types.at(i);
    const double pp = iid_type_probability(t.numerators, p.probs(), n);
    const double qq = iid_type_probability(t.numerators, q.probs(), n);
    l1.add(std::abs(pp - qq));
  }
  report.exact_tv = std::min(1.0, 0.5 * l1.sum);
  report.exact_ml_error = 0.5 * (1.0 - report.exact_tv);

  // Second-moment lower bound, with the closed-form variance of each
  // empirical frequency under the equal-prior mixture of p and q.
  const double sq_l2 = (p.probs() - q.probs()).squaredNorm();
  double var_sum = 0.0;
  for (int x = 0; x < alphabet; ++x) {
    const double px = p(x);
    const double qx = q(x);
    var_sum += (px * (1.0 - px) + qx * (1.0 - qx)) / (2.0 * static_cast<double>(n)) +
               (px - qx) * (px - qx) / 4.0;
  }
  report.tv_lower = var_sum > 0.0 ? std::min(1.0, sq_l2 / (4.0 * var_sum)) : 0.0;

  // l2-separation upper bound on the ML error. The premise asks for
  // ||p - q||_2 >= n^-(1/2 - eps); the largest admissible eps solves it with
  // equality, eps = 1/2 + log||p - q||_2 / log n.
  if (n >= 2 && sq_l2 > 0.0) {
    const double eps = 0.5 + 0.5 * std::log(sq_l2) / std::log(static_cast<double>(n));
    if (eps > 0.0 && eps < 0.5) {
      report.l2_premise_holds = true;
      report.epsilon_n = eps;
      const double n2eps = std::pow(static_cast<double>(n), 2.0 * eps);
      report.ml_error_upper = alphabet / (2.0 * alphabet + 2.0 * n2eps);
    }
  }
  return report;
}

AnalyticErrorBounds analytic_error_bounds(const ChannelProfile& profile, std::int64_t n,
                                          double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 0.5)) {
    fail(Errc::parameter_out_of_range, "epsilon must lie in (0, 1/2)");
  }
  AnalyticErrorBounds bounds;
  const double nd = static_cast<double>(n);
  const double n2eps = std::pow(nd, 2.0 * epsilon);
  bounds.general = static_cast<double>(profile.rank_r) * std::pow(nd, 0.5 - epsilon) *
                   std::exp(-n2eps / (8.0 * profile.sigma * profile.sigma));
  if (profile.rank_r == 2) {
    bounds.rank2 = static_cast<double>(profile.output_size) * std::numbers::pi * std::numbers::pi /
                   (6.0 * profile.sigma_min * profile.sigma_min * n2eps);
  }
  return bounds;
}

double hoeffding_tail(double gamma, double sigma, std::int64_t n) {
  if (gamma < 0.0 || sigma <= 0.0 || n < 1) {
    fail(Errc::parameter_out_of_range, "tail bound needs gamma >= 0, sigma > 0, n >= 1");
  }
  return std::exp(-static_cast<double>(n) * gamma * gamma / (2.0 * sigma * sigma));
}

BinomialEntropyCheck binomial_entropy_check(std::int64_t n, double p) {
  if (n < 1 || !(p > 0.0 && p < 1.0)) {
    fail(Errc::parameter_out_of_range, "binomial entropy needs n >= 1 and p in (0,1)");
  }
  const double log_p = std::log(p);
  const double log_1mp = std::log1p(-p);
  CompensatedSum entropy_nats;
  for (std::int64_t k = 0; k <= n; ++k) {
    const double log_prob = log_factorial(n) - log_factorial(k) - log_factorial(n - k) +
                            static_cast<double>(k) * log_p + static_cast<double>(n - k) * log_1mp;
    entropy_nats.add(-std::exp(log_prob) * log_prob);
  }
  BinomialEntropyCheck check;
  check.exact_bits = entropy_nats.sum / std::numbers::ln2;
  check.gaussian_bits =
      0.5 * std::log2(2.0 * std::numbers::pi * std::numbers::e * static_cast<double>(n) * p * (1.0 - p));
  check.gap = std::abs(check.exact_bits - check.gaussian_bits);
  return check;
}

}  // namespace permchan
