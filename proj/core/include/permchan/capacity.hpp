#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "permchan/analysis.hpp"
#include "permchan/channel.hpp"

namespace permchan {

// Computed [lower, upper] interval for the permutation-channel capacity of a
// DMC, with the structural rules that produced each endpoint. Annotations
// carry unproven candidate values and never move the bounds.
struct CapacityBounds {
  double lower = 0.0;
  double upper = 0.0;
  bool exact = false;
  std::vector<std::string> rules;
  std::vector<std::string> annotations;
};

CapacityBounds capacity_bounds(const Channel& channel, const ChannelProfile& profile);

// Rate of a code: log(message count) / log(blocklength).
double rate_of(std::uint64_t message_count, std::int64_t n);

// Exact 0/1 structure test (square, one unit entry per row and column).
bool is_permutation_matrix(const Channel& channel, double tol = kStochasticTol);

// Erasure-channel structure up to a permutation of the output columns:
// one constant column (the erasure output) and a bijection of the remaining
// columns onto the inputs carrying 1 - eta.
struct ErasureStructure {
  int q = 0;
  double eta = 0.0;
  int erasure_column = 0;
  std::vector<int> copy_column;  // copy_column[x] holds the 1 - eta entry of row x
};

std::optional<ErasureStructure> detect_erasure_structure(const Channel& channel,
                                                         double tol = kStochasticTol);

}  // namespace permchan
