#include "permchan/simulate.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <thread>

#include "permchan/capacity.hpp"
#include "permchan/coding.hpp"
#include "permchan/oracle.hpp"

namespace permchan {

const char* scheme_name(Scheme s) noexcept {
  switch (s) {
    case Scheme::threshold: return "threshold";
    case Scheme::ml: return "ml";
    case Scheme::permutation: return "permutation";
    case Scheme::erasure_symmetrized: return "erasure_symmetrized";
  }
  return "unknown";
}

Scheme scheme_from_name(const std::string& name) {
  if (name == "threshold") return Scheme::threshold;
  if (name == "ml") return Scheme::ml;
  if (name == "permutation") return Scheme::permutation;
  if (name == "erasure_symmetrized") return Scheme::erasure_symmetrized;
  fail(Errc::io_error, "unknown scheme '" + name + "'");
}

WilsonInterval wilson_interval(std::int64_t errors, std::int64_t trials, double z) {
  if (trials < 1 || errors < 0 || errors > trials) {
    fail(Errc::parameter_out_of_range, "invalid error/trial counts");
  }
  const double nd = static_cast<double>(trials);
  const double p = static_cast<double>(errors) / nd;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nd;
  const double center = (p + z2 / (2.0 * nd)) / denom;
  const double radius =
      z * std::sqrt(p * (1.0 - p) / nd + z2 / (4.0 * nd * nd)) / denom;
  return WilsonInterval{std::max(0.0, center - radius), std::min(1.0, center + radius)};
}

namespace {

struct SchemeContext {
  const Channel* channel = nullptr;
  Scheme scheme = Scheme::threshold;
  CodeConfig encode_config;      // threshold / ml / erasure encoding
  CodeConfig decode_config;      // erasure scheme decodes via the symmetric channel
  Channel decode_channel = Channel::identity(2);  // symmetric twin for erasure decoding
  MessageLattice lattice{1, 1};
  int erasure_q = 0;
};

bool run_single_trial(const SchemeContext& ctx, Rng& rng) {
  const std::uint64_t index = rng.next_below(ctx.lattice.size());
  switch (ctx.scheme) {
    case Scheme::threshold: {
      const LatticeMessage msg = ctx.lattice.at(index);
      const Codeword sent = encode_randomized(msg, ctx.encode_config, rng);
      const Codeword received = transmit(*ctx.channel, sent, rng);
      const auto decoded = decode_threshold(received, ctx.encode_config, rng);
      return !decoded || !(*decoded == msg);
    }
    case Scheme::ml: {
      const LatticeMessage msg = ctx.lattice.at(index);
      const Codeword sent = encode_randomized(msg, ctx.encode_config, rng);
      const Codeword received = transmit(*ctx.channel, sent, rng);
      const MlDecodeResult decoded = decode_ml_lattice(received, *ctx.channel, ctx.encode_config);
      return !(decoded.message == msg);
    }
    case Scheme::permutation: {
      const LatticeMessage msg = ctx.lattice.at(index);
      const Histogram type{std::vector<std::int64_t>(msg.numerators)};
      const Codeword sent = encode_composition(type);
      const Codeword received = transmit(*ctx.channel, sent, rng);
      const Histogram decoded = decode_permutation_channel(received, *ctx.channel);
      return !(decoded == type);
    }
    case Scheme::erasure_symmetrized: {
      const LatticeMessage msg = ctx.lattice.at(index);
      const Codeword sent = encode_randomized(msg, ctx.encode_config, rng);
      const Codeword received = transmit(*ctx.channel, sent, rng);
      const auto decoded = decode_erasure_symmetrized(received, ctx.erasure_q, ctx.decode_config, rng);
      return !decoded || !(*decoded == msg);
    }
  }
  return true;
}

SchemeContext make_context(const Channel& channel, const ExperimentConfig& config,
                           std::int64_t n) {
  SchemeContext ctx;
  ctx.channel = &channel;
  ctx.scheme = config.scheme;
  switch (config.scheme) {
    case Scheme::threshold:
    case Scheme::ml: {
      ctx.encode_config = CodeConfig::make(build_profile(channel), n, config.epsilon);
      if (config.scheme == Scheme::ml && ctx.encode_config.message_count > kMlEnumerationCap) {
        fail(Errc::instance_too_large,
             "ML enumeration cap exceeded; use the threshold scheme for this blocklength");
      }
      ctx.lattice = MessageLattice(ctx.encode_config.profile.rank_r, ctx.encode_config.k);
      break;
    }
    case Scheme::permutation: {
      if (!is_permutation_matrix(channel)) {
        fail(Errc::scheme_channel_mismatch,
             "permutation scheme needs a permutation-matrix channel");
      }
      // Message set: every input type of the blocklength.
      ctx.lattice = MessageLattice(channel.input_size(), n);
      break;
    }
    case Scheme::erasure_symmetrized: {
      const auto structure = detect_erasure_structure(channel);
      if (!structure || structure->erasure_column != channel.input_size() ||
          structure->eta <= 0.0 || structure->eta >= 1.0) {
        fail(Errc::scheme_channel_mismatch,
             "erasure scheme needs an erasure channel (erasure column last, eta in (0,1))");
      }
      const int q = structure->q;
      ctx.erasure_q = q;
      ctx.encode_config = CodeConfig::make(build_profile(channel), n, config.epsilon);
      ctx.decode_channel = Channel::symmetric(q, structure->eta * (q - 1) / q);
      ctx.decode_config = CodeConfig::make(build_profile(ctx.decode_channel), n, config.epsilon);
      ctx.lattice = MessageLattice(ctx.encode_config.profile.rank_r, ctx.encode_config.k);
      break;
    }
  }
  return ctx;
}

double analytic_bound_for(const SchemeContext& ctx, std::int64_t n, double epsilon) {
  if (ctx.scheme == Scheme::permutation) return 0.0;  // zero-error by construction
  const ChannelProfile& profile = ctx.scheme == Scheme::erasure_symmetrized
                                      ? ctx.decode_config.profile
                                      : ctx.encode_config.profile;
  const AnalyticErrorBounds bounds = analytic_error_bounds(profile, n, epsilon);
  return bounds.rank2 ? *bounds.rank2 : bounds.general;
}

}  // namespace

std::vector<SimResult> run_experiment(const Channel& channel, const ExperimentConfig& config) {
  if (config.trials < 1) fail(Errc::parameter_out_of_range, "need at least one trial");
  if (config.n_grid.empty()) fail(Errc::parameter_out_of_range, "empty blocklength grid");
  for (std::size_t i = 1; i < config.n_grid.size(); ++i) {
    if (config.n_grid[i] <= config.n_grid[i - 1]) {
      fail(Errc::parameter_out_of_range, "blocklength grid must be strictly increasing");
    }
  }

  const int threads = config.threads > 0
                          ? config.threads
                          : std::max(1u, std::thread::hardware_concurrency());

  std::vector<SimResult> results;
  for (const std::int64_t n : config.n_grid) {
    const auto start = std::chrono::steady_clock::now();
    const SchemeContext ctx = make_context(channel, config, n);

    // Trial t always draws from the (seed, n, t) stream; the thread split is
    // pure work division and cannot change any outcome.
    std::atomic<std::int64_t> next_trial{0};
    std::atomic<std::int64_t> total_errors{0};
    auto worker = [&]() {
      std::int64_t local_errors = 0;
      constexpr std::int64_t kChunk = 64;
      for (;;) {
        const std::int64_t begin = next_trial.fetch_add(kChunk);
        if (begin >= config.trials) break;
        const std::int64_t end = std::min(begin + kChunk, config.trials);
        for (std::int64_t t = begin; t < end; ++t) {
          Rng rng = Rng::derive(config.seed, static_cast<std::uint64_t>(n),
                                static_cast<std::uint64_t>(t));
          if (run_single_trial(ctx, rng)) ++local_errors;
        }
      }
      total_errors.fetch_add(local_errors);
    };

    std::vector<std::thread> pool;
    for (int i = 1; i < threads; ++i) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    SimResult r;
    r.n = n;
    r.k = ctx.scheme == Scheme::permutation ? n : ctx.encode_config.k;
    r.message_count = ctx.lattice.size();
    r.trials = config.trials;
    r.errors = total_errors.load();
    r.error_rate = static_cast<double>(r.errors) / static_cast<double>(r.trials);
    const WilsonInterval ci = wilson_interval(r.errors, r.trials);
    r.ci_low = ci.low;
    r.ci_high = ci.high;
    r.analytic_bound = analytic_bound_for(ctx, n, config.epsilon);
    r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    results.push_back(r);
  }
  return results;
}

namespace {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace

void write_csv(std::ostream& os, const ExperimentConfig& config,
               const std::vector<SimResult>& results) {
  os << "n,k,message_count,trials,errors,error_rate,ci_low,ci_high,analytic_bound,seed,scheme\n";
  for (const auto& r : results) {
    os << r.n << ',' << r.k << ',' << r.message_count << ',' << r.trials << ',' << r.errors << ','
       << format_double(r.error_rate) << ',' << format_double(r.ci_low) << ','
       << format_double(r.ci_high) << ',' << format_double(r.analytic_bound) << ',' << config.seed
       << ',' << scheme_name(config.scheme) << '\n';
  }
}

void apply_seed_override(ExperimentConfig& config) {
  if (const char* env = std::getenv("PERMCHAN_SEED")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0') fail(Errc::io_error, "PERMCHAN_SEED must be an integer");
    config.seed = static_cast<std::uint64_t>(v);
  }
}

}  // namespace permchan
