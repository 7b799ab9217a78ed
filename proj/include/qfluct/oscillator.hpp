// Truncated Fock-space quadrature measurements: number states, squeezed
// vacuum via the dense matrix exponential, and their total variances.
#pragma once

#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

#include "qfluct/measurements.hpp"

namespace qfluct {

// Lowering operator and quadratures q = (a + a^+)/2, p = -i(a - a^+)/2 on the
// space spanned by |0..n_max>. [a, a^+] = I except the (n_max, n_max) entry.
class FockSpace {
 public:
  explicit FockSpace(int n_max) : n_max_(n_max) {
    if (n_max < 2 || n_max + 1 > 1024)
      throw dimension_error("FockSpace: n_max must lie in [2, 1023]");
    const int D = n_max + 1;
    a_ = Mat::Zero(D, D);
    for (int n = 1; n <= n_max; ++n) a_(n - 1, n) = std::sqrt(static_cast<double>(n));
    q_ = 0.5 * (a_ + a_.adjoint());
    p_ = cxd(0, -0.5) * (a_ - a_.adjoint());
  }

  int n_max() const { return n_max_; }
  QuditSystem system() const { return QuditSystem({n_max_ + 1}); }
  const Mat& lowering() const { return a_; }
  const Mat& q() const { return q_; }
  const Mat& p() const { return p_; }

  // q^2 + p^2 = a^+a + 1/2 is not proportional to the identity, so no Casimir
  // constant is attached (verify_casimir reports absence for this set).
  MeasurementSet quadrature_set() const {
    std::vector<Observable> obs;
    obs.push_back(global_observable(q_, "q"));
    obs.push_back(global_observable(p_, "p"));
    return MeasurementSet{system(), std::move(obs), std::nullopt};
  }

 private:
  int n_max_;
  Mat a_, q_, p_;
};

inline PureState fock_state(int n, int n_max) {
  FockSpace fs(n_max);
  if (n < 0 || n > n_max)
    throw std::out_of_range("fock_state: level " + std::to_string(n) + " outside [0, " +
                            std::to_string(n_max) + "]");
  Vec amps = Vec::Zero(n_max + 1);
  amps(n) = 1.0;
  return PureState::raw(fs.system(), std::move(amps), true);
}

// Weight of the state above level n_max - 2. Quadrature moments are exact on
// the truncated space only when this is negligible.
inline double truncation_tail_weight(const PureState& state) {
  const long D = state.system().total_dim();
  double w = 0.0;
  for (long k = D - 2; k < D; ++k) w += std::norm(state.amplitudes()(k));
  return w;
}

inline constexpr double kTailGuard = 1e-10;

// V(q) + V(p) on the truncated space; refuses states with non-negligible
// weight at the truncation boundary.
template <class State>
VarianceReport quadrature_report(const State& state, int n_max) {
  FockSpace fs(n_max);
  if (state.system() != fs.system())
    throw dimension_error("quadrature_report: state dimension does not match n_max + 1");
  if constexpr (std::is_same_v<State, PureState>) {
    if (truncation_tail_weight(state) > kTailGuard)
      throw std::runtime_error("quadrature_report: state weight above n_max - 2 exceeds 1e-10");
  }
  return total_variance(state, fs.quadrature_set());
}

inline double quadrature_total_variance(const PureState& state, int n_max) {
  return quadrature_report(state, n_max).total;
}

// exp(r (a^2 - a^+2) / 2) |0>, renormalized on the truncated space. Only even
// levels are populated; V(q) = e^{-2r}/4 and V(p) = e^{2r}/4, so the total
// variance is cosh(2r)/2.
inline PureState squeezed_vacuum(double r, int n_max) {
  FockSpace fs(n_max);
  const int D = n_max + 1;
  Eigen::MatrixXd low = Eigen::MatrixXd::Zero(D, D);
  for (int n = 1; n <= n_max; ++n) low(n - 1, n) = std::sqrt(static_cast<double>(n));
  const Eigen::MatrixXd a2 = low * low;
  const Eigen::MatrixXd generator = 0.5 * r * (a2 - a2.transpose());
  const Eigen::MatrixXd squeeze = generator.exp();
  Vec amps = squeeze.col(0).cast<cxd>();
  amps /= amps.norm();
  PureState state = PureState::raw(fs.system(), std::move(amps), true);
  if (truncation_tail_weight(state) > kTailGuard)
    throw std::runtime_error(
        "squeezed_vacuum: truncation tail above 1e-10; increase n_max for this r");
  return state;
}

// Smallest truncation keeping the squeezed-vacuum tail below the guard, from
// the closed-form photon-number distribution (floor 40).
inline int recommended_n_max(double r) {
  const double t2 = std::tanh(std::abs(r)) * std::tanh(std::abs(r));
  if (t2 < 1e-300) return 40;
  double w = 1.0 / std::cosh(r);  // weight of |0>
  int k = 0;
  while (k < 480) {
    const double w_next = w * t2 * (2.0 * k + 1.0) / (2.0 * k + 2.0);
    if (w_next / (1.0 - t2) <= 1e-12) break;
    w = w_next;
    ++k;
  }
  return std::max(40, 2 * k + 4);
}

}  // namespace qfluct
