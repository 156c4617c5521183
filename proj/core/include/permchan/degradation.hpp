#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "permchan/channel.hpp"

namespace permchan {

inline constexpr double kWitnessTol = 1e-9;
inline constexpr double kDegradationLpTol = 1e-8;

// Channel W such that dominator * W reproduces the degraded channel.
struct DegradationWitness {
  Channel intermediate;
  double residual = 0.0;  // max-abs reconstruction error actually achieved
};

// Crossover parameter tau with S_delta * S_tau = I. Singular when
// delta = (q-1)/q, where the symmetric matrix loses rank.
double symmetric_inverse_parameter(int q, double delta);

// S_tau as a plain matrix (entries go negative for delta > 0, so it is not
// itself a channel).
Eigen::MatrixXd symmetric_inverse_matrix(int q, double delta);

// Witness showing the channel is a degraded version of q-SC(delta), built as
// S_tau * P. Valid whenever delta is within the symmetric_dominator bound;
// throws parameter_out_of_range if the construction leaves the simplex.
DegradationWitness symmetric_witness(const Channel& channel, double delta);

struct SymmetricDominator {
  double delta_max = 0.0;
  DegradationWitness witness;  // built at delta_max
};

// Largest guaranteed crossover nu/(1 - nu + nu/(q-1)) for which the channel
// is a degraded version of q-SC(delta), with the witness at that bound. The
// all-rows-(1/2,1/2) channel is the degenerate case: every delta works and
// the channel is its own witness.
SymmetricDominator symmetric_dominator(const Channel& channel);

// Channel over the extended input alphabet (inputs plus an erasure state)
// witnessing that the channel is a degraded version of q-EC(eta):
// row x is (P(z|x) - eta q_z(z)) / (1 - eta), the erasure row is q_z.
// Requires the minorization P(z|x) >= eta q_z(z) everywhere.
Channel doeblin_witness(const Channel& channel, double eta, const DistVector& q_z);

// LP feasibility of degraded = dominator * W over row-stochastic W. Returns
// the witness when the minimal constraint violation is within tol.
std::optional<DegradationWitness> degradation_feasibility(const Channel& dominator,
                                                          const Channel& degraded,
                                                          double tol = kDegradationLpTol);

// Largest eta with degradation_feasibility(q-EC(eta), channel) feasible,
// located by bisection. Converges to the Doeblin coefficient.
double doeblin_coefficient_by_search(const Channel& channel, double tol = 1e-6);

// Named invariant violations of a claimed witness; empty means valid.
std::vector<std::string> check_witness(const Channel& dominator, const Channel& degraded,
                                       const Eigen::MatrixXd& intermediate,
                                       double tol = kWitnessTol);

}  // namespace permchan
