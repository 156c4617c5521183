#pragma once

#include <stdexcept>
#include <string>

namespace permchan {

enum class Errc {
  degenerate_shape,
  negative_entry,
  row_sum_mismatch,
  parameter_out_of_range,
  alphabet_mismatch,
  overflow,
  config_mismatch,
  likelihood_degenerate,
  not_permutation_matrix,
  singular_channel,
  not_strictly_positive,
  minorization_violated,
  solver_failure,
  rank_deficient_subset,
  instance_too_large,
  scheme_channel_mismatch,
  io_error,
};

inline const char* errc_name(Errc c) noexcept {
  switch (c) {
    case Errc::degenerate_shape: return "degenerate_shape";
    case Errc::negative_entry: return "negative_entry";
    case Errc::row_sum_mismatch: return "row_sum_mismatch";
    case Errc::parameter_out_of_range: return "parameter_out_of_range";
    case Errc::alphabet_mismatch: return "alphabet_mismatch";
    case Errc::overflow: return "overflow";
    case Errc::config_mismatch: return "config_mismatch";
    case Errc::likelihood_degenerate: return "likelihood_degenerate";
    case Errc::not_permutation_matrix: return "not_permutation_matrix";
    case Errc::singular_channel: return "singular_channel";
    case Errc::not_strictly_positive: return "not_strictly_positive";
    case Errc::minorization_violated: return "minorization_violated";
    case Errc::solver_failure: return "solver_failure";
    case Errc::rank_deficient_subset: return "rank_deficient_subset";
    case Errc::instance_too_large: return "instance_too_large";
    case Errc::scheme_channel_mismatch: return "scheme_channel_mismatch";
    case Errc::io_error: return "io_error";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

}  // namespace permchan
