// Geometric entanglement measure mu(psi): the squared length of the minimal
// vector in the complexified local-group orbit, found by moment-map descent,
// plus the two-qubit concurrence and the three-qubit tangle as closed-form
// cross-checks.
#pragma once

#include <cmath>
#include <vector>

#include "qfluct/tensor_state.hpp"

namespace qfluct {

struct SloccOptions {
  double step = 1.0;        // initial step size, adapted by backtracking
  double tol = 1e-10;       // threshold on sum_j ||m_j||_F^2
  int max_iters = 10000;
  double null_floor = 1e-12;  // norm^2 below this means null-cone membership
  unsigned seed = 0;          // reserved for randomized restarts; descent is deterministic
};

struct SloccResult {
  double mu = 0.0;
  std::vector<Mat> group_element;  // one SL(d_j) factor per party, det re-projected to 1
  PureState minimal_vector;
  double moment_residual = 0.0;    // sum_j ||m_j||_F^2 at exit
  int iterations = 0;
  bool converged = false;
  bool null_cone = false;
};

namespace detail {

// Moment-map component for one party: the traceless part of the reduced
// density matrix of the normalized working vector.
inline Mat moment_component(const QuditSystem& sys, const Vec& phi, int party, double inv_norm2) {
  const int d = sys.dim(party);
  Mat m = reduced_density(sys, phi, party) * inv_norm2;
  m -= (m.trace() / static_cast<double>(d)) * Mat::Identity(d, d);
  return m;
}

}  // namespace detail

// Minimizes ||g psi||^2 over g in the product of SL(d_j, C) by descending along
// the moment map: phi <- (x_j exp(-eta m_j)) phi. The norm is non-increasing
// across accepted steps (backtracking halves eta until that holds, and doubles
// it after five straight acceptances). Termination:
//   - converged: sum_j ||m_j||_F^2 <= tol, i.e. the normalized working vector
//     has vanishing su(d) expectations and is the minimal vector;
//   - null_cone: norm^2 fell below null_floor (or kept shrinking with a
//     stagnant moment residual below norm^2 = 1e-6), so the orbit closure
//     contains zero and mu = 0;
//   - neither within max_iters: converged = false.
inline SloccResult minimize_orbit(const PureState& state, const SloccOptions& opts = {}) {
  if (!(opts.step > 0) || !(opts.tol > 0) || !(opts.null_floor > 0) || opts.max_iters < 1)
    throw std::invalid_argument("minimize_orbit: options out of range");
  if (!state.is_normalized())
    throw std::invalid_argument("minimize_orbit: input state must be normalized");

  const QuditSystem& sys = state.system();
  const int N = sys.parties();
  constexpr double kEtaMax = 256.0;  // keeps exp(eta * m) finite
  constexpr double kEtaMin = 1e-18;
  constexpr int kStagnationWindow = 100;

  Vec phi = state.amplitudes();
  double u = phi.squaredNorm();
  std::vector<Mat> group;
  group.reserve(N);
  for (int j = 1; j <= N; ++j) group.push_back(Mat::Identity(sys.dim(j), sys.dim(j)));

  double eta = opts.step;
  int streak = 0;
  int iter = 0;
  double residual = 0.0;
  bool converged = false, null_cone = false;
  std::vector<double> hist_u, hist_r;
  const int reserve = std::min(opts.max_iters, 16384) + 1;
  hist_u.reserve(reserve);
  hist_r.reserve(reserve);

  std::vector<Eigen::SelfAdjointEigenSolver<Mat>> eig(N);

  for (iter = 0;; ++iter) {
    const double inv_u = 1.0 / u;
    residual = 0.0;
    std::vector<Mat> m(N);
    for (int j = 1; j <= N; ++j) {
      m[j - 1] = detail::moment_component(sys, phi, j, inv_u);
      residual += m[j - 1].squaredNorm();
    }
    hist_u.push_back(u);
    hist_r.push_back(residual);

    if (residual <= opts.tol) {
      converged = true;
      break;
    }
    if (u <= opts.null_floor) {
      null_cone = true;
      break;
    }
    if (iter >= kStagnationWindow && u < 1e-6) {
      const double r_then = hist_r[iter - kStagnationWindow];
      const double u_then = hist_u[iter - kStagnationWindow];
      if (std::abs(residual - r_then) <= 1e-3 * r_then && u <= 0.999 * u_then) {
        null_cone = true;
        break;
      }
    }
    if (iter >= opts.max_iters) break;

    for (int j = 0; j < N; ++j) eig[j].compute(m[j]);

    // Backtracking line search. d(log u)/d eta at 0 is exactly -2 * residual,
    // so sufficient decrease means u_trial <= u * exp(-2 c1 eta residual);
    // plain non-increase would tolerate neutral oscillation at the stability
    // boundary and stall.
    constexpr double kArmijo = 0.1;
    Vec trial;
    double u_trial = 0.0;
    bool stepped = false;
    std::vector<Mat> factors(N);
    while (true) {
      trial = phi;
      for (int j = 0; j < N; ++j) {
        const auto& vecs = eig[j].eigenvectors();
        factors[j] = vecs * (-eta * eig[j].eigenvalues().array()).exp().matrix().asDiagonal() *
                     vecs.adjoint();
        trial = apply_local(sys, trial, j + 1, factors[j]);
      }
      u_trial = trial.squaredNorm();
      if (std::isfinite(u_trial) && u_trial <= u * std::exp(-2.0 * kArmijo * eta * residual)) {
        stepped = true;
        break;
      }
      eta *= 0.5;
      streak = 0;
      if (eta < kEtaMin) break;  // machine-precision stall; report as not converged
    }
    if (!stepped) break;

    phi.swap(trial);
    u = u_trial;
    for (int j = 0; j < N; ++j) {
      group[j] = factors[j] * group[j];
      // exp of a traceless matrix has unit determinant; re-project rounding drift
      const cxd det = group[j].determinant();
      group[j] /= std::pow(det, 1.0 / sys.dim(j + 1));
    }
    if (++streak >= 5) {
      eta = std::min(eta * 2.0, kEtaMax);
      streak = 0;
    }
  }

  SloccResult result{/*mu=*/0.0,
                     std::move(group),
                     PureState::raw(sys, std::move(phi), false),
                     residual,
                     iter,
                     converged,
                     null_cone};
  if (!null_cone) result.mu = std::min(u, 1.0);
  return result;
}

// Two-qubit concurrence: twice the absolute determinant of the amplitude
// matrix (the factor 2 makes the Bell state score 1, matching mu).
inline double concurrence(const PureState& state) {
  if (state.system().dims() != std::vector<int>{2, 2})
    throw dimension_error("concurrence: state must be a two-qubit state");
  if (!state.is_normalized())
    throw std::invalid_argument("concurrence: state must be normalized");
  const Vec& a = state.amplitudes();
  return 2.0 * std::abs(a(0) * a(3) - a(1) * a(2));
}

// Three-qubit tangle tau = 4 |Det(psi)| with Det the 2x2x2 Cayley
// hyperdeterminant of the amplitude tensor.
inline double three_tangle(const PureState& state) {
  if (state.system().dims() != std::vector<int>{2, 2, 2})
    throw dimension_error("three_tangle: state must be a three-qubit state");
  if (!state.is_normalized())
    throw std::invalid_argument("three_tangle: state must be normalized");
  const Vec& a = state.amplitudes();
  const cxd p000 = a(0), p001 = a(1), p010 = a(2), p011 = a(3);
  const cxd p100 = a(4), p101 = a(5), p110 = a(6), p111 = a(7);
  const cxd d1 = p000 * p000 * p111 * p111 + p001 * p001 * p110 * p110 +
                 p010 * p010 * p101 * p101 + p100 * p100 * p011 * p011;
  const cxd d2 = p000 * p111 * p011 * p100 + p000 * p111 * p101 * p010 +
                 p000 * p111 * p110 * p001 + p011 * p100 * p101 * p010 +
                 p011 * p100 * p110 * p001 + p101 * p010 * p110 * p001;
  const cxd d3 = p000 * p110 * p101 * p011 + p111 * p001 * p010 * p100;
  return 4.0 * std::abs(d1 - 2.0 * d2 + 4.0 * d3);
}

inline double mu_measure(const PureState& state, const SloccOptions& opts = {}) {
  return minimize_orbit(state, opts).mu;
}

}  // namespace qfluct
