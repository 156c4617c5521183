#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "permchan/analysis.hpp"
#include "permchan/channel.hpp"

namespace permchan {

// Enumeration ceiling for the exact small-instance computations.
inline constexpr double kOracleCap = 1e6;

// Exact distribution of the output type after one block transmission of a
// fixed input codeword. Within a type every sequence is equally likely, so
// the per-sequence law is the type mass divided by the type size.
struct OutputTypeLaw {
  int output_size = 0;
  std::int64_t n = 0;
  std::map<std::vector<std::int64_t>, double> types;

  double type_probability(const std::vector<std::int64_t>& counts) const;
  double sequence_probability(const Codeword& sequence) const;
};

OutputTypeLaw exact_output_law(const Channel& channel, const Codeword& input);

// Maximum absolute gap, over all input/output sequence pairs, between the
// exact conditional laws of "noise then permutation" and "permutation then
// noise". Both laws are built by raw sequence enumeration.
double verify_equivalent_model(const Channel& channel, int n);

// Exact binary-hypothesis-testing quantities for n i.i.d. samples from p
// versus q, plus the analytic bounds that sandwich them.
struct TestBoundsReport {
  double exact_tv = 0.0;        // total variation between the n-fold products
  double exact_ml_error = 0.0;  // (1 - exact_tv) / 2 for equiprobable hypotheses
  double tv_lower = 0.0;        // second-moment lower bound on exact_tv

  // Upper bound on the ML error from the l2 separation of p and q; valid
  // when ||p - q||_2 >= n^-(1/2 - eps) for some eps in (0, 1/2). epsilon_n
  // is the largest such eps (the separation condition met with equality).
  bool l2_premise_holds = false;
  std::optional<double> epsilon_n;
  std::optional<double> ml_error_upper;
};

TestBoundsReport test_bounds(const DistVector& p, const DistVector& q, std::int64_t n);

// Closed-form error bounds for the randomized coding scheme at blocklength n
// and rate-gap epsilon. The general bound holds for every rank; the rank-2
// refinement exists only when the profile has rank exactly 2.
struct AnalyticErrorBounds {
  double general = 0.0;
  std::optional<double> rank2;
};

AnalyticErrorBounds analytic_error_bounds(const ChannelProfile& profile, std::int64_t n,
                                          double epsilon);

// One-sided tail bound exp(-n gamma^2 / (2 sigma^2)) for the mean of n
// i.i.d. samples bounded by sigma.
double hoeffding_tail(double gamma, double sigma, std::int64_t n);

// Binomial entropy versus its Gaussian surrogate, both in bits.
struct BinomialEntropyCheck {
  double exact_bits = 0.0;
  double gaussian_bits = 0.0;
  double gap = 0.0;
};

BinomialEntropyCheck binomial_entropy_check(std::int64_t n, double p);

}  // namespace permchan
