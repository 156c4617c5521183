#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "permchan/analysis.hpp"
#include "permchan/channel.hpp"
#include "permchan/rng.hpp"

namespace permchan {

// Messages that can be enumerated exhaustively by the maximum-likelihood
// decoder; past this the O(n)-per-message cost stops being reasonable and
// the thresholding decoder is the intended tool.
inline constexpr std::uint64_t kMlEnumerationCap = 1'000'000;

// A point of the scaled-simplex lattice: non-negative numerators summing to
// the denominator k, i.e. the probability vector (p_1/k, ..., p_r/k).
struct LatticeMessage {
  std::vector<std::int64_t> numerators;
  std::int64_t k = 0;

  int r() const noexcept { return static_cast<int>(numerators.size()); }
  bool operator==(const LatticeMessage& other) const noexcept {
    return k == other.k && numerators == other.numerators;
  }
};

// Indexed enumeration of all lattice messages for fixed (r, k), in ascending
// lexicographic order of the numerator tuple: (0,...,0,k) first, (k,0,...,0)
// last. Index math uses the combinatorial number system, so random access
// stays O(r k) without materializing the set.
class MessageLattice {
 public:
  MessageLattice(int r, std::int64_t k);

  int r() const noexcept { return r_; }
  std::int64_t k() const noexcept { return k_; }
  std::uint64_t size() const noexcept { return size_; }

  LatticeMessage at(std::uint64_t index) const;
  std::uint64_t index_of(const LatticeMessage& message) const;

 private:
  int r_;
  std::int64_t k_;
  std::uint64_t size_;
};

// Blocklength-derived code parameters shared by encoder and decoders.
struct CodeConfig {
  ChannelProfile profile;
  std::int64_t n = 0;
  double epsilon = 0.0;          // rate-gap parameter in (0, 1/2)
  std::int64_t k = 0;            // lattice denominator floor(n^(1/2-epsilon))
  std::uint64_t message_count = 0;

  static CodeConfig make(ChannelProfile profile, std::int64_t n, double epsilon);
};

std::int64_t lattice_denominator(std::int64_t n, double epsilon);

// n i.i.d. input symbols drawn from the message's distribution, supported on
// the profile's independent row subset.
Codeword encode_randomized(const LatticeMessage& message, const CodeConfig& config, Rng& rng);

// Element-wise thresholding decoder: invert the output type through the
// right pseudoinverse, round each coordinate to the nearest lattice point
// (ties uniformly at random), and erase (nullopt) unless the rounded
// coordinates sum back to k.
std::optional<LatticeMessage> decode_threshold(const Codeword& received, const CodeConfig& config,
                                               Rng& rng);

struct MlDecodeResult {
  LatticeMessage message;
  // Set when every message had a zero-probability output; the decoder then
  // falls back to the lexicographically smallest message.
  bool degenerate = false;
};

// Exhaustive maximum-likelihood decoding over the lattice. Conditioned on a
// message the outputs are i.i.d., so the score is the log-likelihood of the
// output type under the pushed-forward distribution. Ties go to the
// lexicographically smallest message.
MlDecodeResult decode_ml_lattice(const Codeword& received, const Channel& channel,
                                 const CodeConfig& config);

// Fixed-composition encoder: the sorted codeword realizing the type exactly.
Codeword encode_composition(const Histogram& hist);

// Zero-error decoder for permutation-matrix channels: push the output type
// back through the matrix to recover the input type.
Histogram decode_permutation_channel(const Codeword& received, const Channel& channel);

// Erasure-channel decoding by symmetrization: replace every erasure symbol
// (last output index) with an independent uniform symbol, then run the
// thresholding decoder configured for the matching symmetric channel.
std::optional<LatticeMessage> decode_erasure_symmetrized(const Codeword& received, int q,
                                                         const CodeConfig& symmetric_config,
                                                         Rng& rng);

}  // namespace permchan
