#include "permchan/degradation.hpp"

#include <cmath>
#include <sstream>

#include "permchan/simplex_lp.hpp"

namespace permchan {

namespace {

constexpr double kClampTol = 1e-12;

// Entries within kClampTol below zero are pivot noise at the tight end of
// the dominator bound; anything worse is a genuine violation.
Eigen::MatrixXd clamp_and_renormalize(const Eigen::MatrixXd& m, Errc on_violation,
                                      const char* what) {
  Eigen::MatrixXd out = m;
  for (int i = 0; i < out.rows(); ++i) {
    for (int j = 0; j < out.cols(); ++j) {
      if (out(i, j) < 0.0) {
        if (out(i, j) < -kClampTol) {
          std::ostringstream os;
          os << what << ": entry (" << i << "," << j << ") = " << out(i, j);
          fail(on_violation, os.str());
        }
        out(i, j) = 0.0;
      }
    }
    out.row(i) /= out.row(i).sum();
  }
  return out;
}

double reconstruction_residual(const Channel& dominator, const Eigen::MatrixXd& intermediate,
                               const Channel& degraded) {
  return (dominator.matrix() * intermediate - degraded.matrix()).cwiseAbs().maxCoeff();
}

bool is_half_half_channel(const Channel& channel) {
  if (channel.output_size() != 2) return false;
  return (channel.matrix().array() - 0.5).abs().maxCoeff() <= kClampTol;
}

}  // namespace

double symmetric_inverse_parameter(int q, double delta) {
  if (q < 2) fail(Errc::parameter_out_of_range, "symmetric channel needs q >= 2");
  const double singular_point = static_cast<double>(q - 1) / q;
  const double denom = 1.0 - delta - delta / (q - 1);
  if (std::abs(delta - singular_point) <= kClampTol || denom == 0.0) {
    fail(Errc::singular_channel, "symmetric matrix is singular at delta = (q-1)/q");
  }
  return -delta / denom;
}

Eigen::MatrixXd symmetric_inverse_matrix(int q, double delta) {
  const double tau = symmetric_inverse_parameter(q, delta);
  Eigen::MatrixXd m = Eigen::MatrixXd::Constant(q, q, tau / (q - 1));
  m.diagonal().setConstant(1.0 - tau);
  return m;
}

DegradationWitness symmetric_witness(const Channel& channel, double delta) {
  const int q = channel.input_size();
  if (delta == 0.0) {
    return DegradationWitness{Channel::validate_witness(channel.matrix()), 0.0};
  }
  if (is_half_half_channel(channel)) {
    // S_delta fixes this channel for every delta, including the singular one.
    DegradationWitness w{Channel::validate_witness(channel.matrix()), 0.0};
    w.residual = reconstruction_residual(Channel::symmetric(q, delta), w.intermediate.matrix(),
                                         channel);
    return w;
  }
  const Eigen::MatrixXd raw = symmetric_inverse_matrix(q, delta) * channel.matrix();
  const Eigen::MatrixXd cleaned =
      clamp_and_renormalize(raw, Errc::parameter_out_of_range, "witness left the simplex");
  DegradationWitness w{Channel::validate_witness(cleaned), 0.0};
  w.residual =
      reconstruction_residual(Channel::symmetric(q, delta), w.intermediate.matrix(), channel);
  return w;
}

SymmetricDominator symmetric_dominator(const Channel& channel) {
  const int q = channel.input_size();
  const double nu = channel.min_entry();
  if (is_half_half_channel(channel)) {
    const double delta_max = static_cast<double>(q - 1) / q;
    return SymmetricDominator{delta_max, symmetric_witness(channel, delta_max)};
  }
  if (nu <= 0.0) {
    fail(Errc::not_strictly_positive, "symmetric dominator needs a strictly positive channel");
  }
  const double delta_max = nu / (1.0 - nu + nu / (q - 1));
  return SymmetricDominator{delta_max, symmetric_witness(channel, delta_max)};
}

Channel doeblin_witness(const Channel& channel, double eta, const DistVector& q_z) {
  if (!(eta > 0.0 && eta < 1.0)) {
    fail(Errc::parameter_out_of_range, "minorization level must lie in (0,1)");
  }
  if (q_z.size() != channel.output_size()) {
    fail(Errc::alphabet_mismatch, "minorizing distribution must live on the output alphabet");
  }
  const Eigen::MatrixXd& m = channel.matrix();
  for (int x = 0; x < m.rows(); ++x) {
    for (int z = 0; z < m.cols(); ++z) {
      if (m(x, z) < eta * q_z(z) - kClampTol) {
        std::ostringstream os;
        os << "P(z|x) < eta*q(z) at (x=" << x << ", z=" << z << "): " << m(x, z) << " < "
           << eta * q_z(z);
        fail(Errc::minorization_violated, os.str());
      }
    }
  }
  Eigen::MatrixXd w(m.rows() + 1, m.cols());
  for (int x = 0; x < m.rows(); ++x) {
    w.row(x) = (m.row(x) - eta * q_z.probs().transpose()) / (1.0 - eta);
  }
  w.row(m.rows()) = q_z.probs().transpose();
  return Channel::validate_witness(
      clamp_and_renormalize(w, Errc::minorization_violated, "witness row left the simplex"));
}

std::optional<DegradationWitness> degradation_feasibility(const Channel& dominator,
                                                          const Channel& degraded, double tol) {
  if (dominator.input_size() != degraded.input_size()) {
    fail(Errc::alphabet_mismatch, "channels must share the input alphabet");
  }
  const int m = dominator.input_size();
  const int a = dominator.output_size();
  const int b = degraded.output_size();

  // Variables: the a*b entries of W, row-major. Constraints: every entry of
  // dominator*W matches the degraded channel, and W rows sum to one.
  const int vars = a * b;
  const int cons = m * b + a;
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(cons, vars);
  Eigen::VectorXd rhs(cons);
  int row = 0;
  for (int x = 0; x < m; ++x) {
    for (int j = 0; j < b; ++j) {
      for (int i = 0; i < a; ++i) A(row, i * b + j) = dominator(x, i);
      rhs(row) = degraded(x, j);
      ++row;
    }
  }
  for (int i = 0; i < a; ++i) {
    for (int j = 0; j < b; ++j) A(row, i * b + j) = 1.0;
    rhs(row) = 1.0;
    ++row;
  }

  const LpSolution sol = lp_feasible_point(A, rhs, tol);
  if (sol.status == LpSolution::Status::iteration_limit ||
      sol.status == LpSolution::Status::unbounded) {
    fail(Errc::solver_failure, "simplex did not settle the degradation system");
  }
  if (sol.status != LpSolution::Status::optimal) return std::nullopt;

  Eigen::MatrixXd w(a, b);
  for (int i = 0; i < a; ++i) {
    for (int j = 0; j < b; ++j) w(i, j) = sol.x(i * b + j);
    const double sum = w.row(i).sum();
    if (sum > 0.0) w.row(i) /= sum;
  }
  DegradationWitness out{Channel::validate_witness(w), 0.0};
  out.residual = reconstruction_residual(dominator, out.intermediate.matrix(), degraded);
  if (out.residual > tol) return std::nullopt;
  return out;
}

double doeblin_coefficient_by_search(const Channel& channel, double tol) {
  const int q = channel.input_size();
  double lo = 0.0;  // q-EC(0) dominates everything: append any erasure row to the channel
  double hi = 1.0;
  if (degradation_feasibility(Channel::erasure(q, 1.0), channel)) return 1.0;
  while (hi - lo > 0.5 * tol) {
    const double mid = 0.5 * (lo + hi);
    if (degradation_feasibility(Channel::erasure(q, mid), channel)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<std::string> check_witness(const Channel& dominator, const Channel& degraded,
                                       const Eigen::MatrixXd& intermediate, double tol) {
  std::vector<std::string> violations;
  if (intermediate.rows() != dominator.output_size() ||
      intermediate.cols() != degraded.output_size()) {
    violations.push_back("shape: intermediate must be |Z1| x |Z2|");
    return violations;
  }
  if (intermediate.minCoeff() < -tol) {
    violations.push_back("non-negativity: intermediate has a negative entry");
  }
  for (int i = 0; i < intermediate.rows(); ++i) {
    if (std::abs(intermediate.row(i).sum() - 1.0) > tol) {
      std::ostringstream os;
      os << "row-stochasticity: row " << i << " sums to " << intermediate.row(i).sum();
      violations.push_back(os.str());
    }
  }
  const double residual =
      (dominator.matrix() * intermediate - degraded.matrix()).cwiseAbs().maxCoeff();
  if (residual > tol) {
    std::ostringstream os;
    os << "reconstruction: max-abs residual " << residual << " exceeds " << tol;
    violations.push_back(os.str());
  }
  return violations;
}

}  // namespace permchan
