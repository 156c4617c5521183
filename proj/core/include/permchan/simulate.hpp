#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "permchan/channel.hpp"

namespace permchan {

enum class Scheme { threshold, ml, permutation, erasure_symmetrized };

const char* scheme_name(Scheme s) noexcept;
Scheme scheme_from_name(const std::string& name);

// A reproducible Monte Carlo experiment: one channel, one coding scheme, a
// grid of blocklengths. Trial t at blocklength n always runs on the random
// stream derived from (seed, n, t), so results do not depend on how trials
// are spread over threads.
struct ExperimentConfig {
  std::string channel_path;
  Scheme scheme = Scheme::threshold;
  double epsilon = 0.1;
  std::vector<std::int64_t> n_grid;
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
  std::string output_path;
  int threads = 0;  // 0 = hardware concurrency
};

struct SimResult {
  std::int64_t n = 0;
  std::int64_t k = 0;
  std::uint64_t message_count = 0;
  std::int64_t trials = 0;
  std::int64_t errors = 0;
  double error_rate = 0.0;
  double ci_low = 0.0;   // Wilson 95% interval
  double ci_high = 0.0;
  double analytic_bound = 0.0;
  double wall_seconds = 0.0;
};

struct WilsonInterval {
  double low = 0.0;
  double high = 0.0;
};

// Wilson score interval; stays honest at zero observed errors.
WilsonInterval wilson_interval(std::int64_t errors, std::int64_t trials,
                               double z = 1.959963984540054);

std::vector<SimResult> run_experiment(const Channel& channel, const ExperimentConfig& config);

// CSV with one row per blocklength. Fixed formatting; a rerun with the same
// seed must reproduce the bytes exactly.
void write_csv(std::ostream& os, const ExperimentConfig& config,
               const std::vector<SimResult>& results);

// PERMCHAN_SEED, when set, wins over the configured seed.
void apply_seed_override(ExperimentConfig& config);

}  // namespace permchan
