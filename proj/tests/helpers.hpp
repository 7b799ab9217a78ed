#pragma once

#include <random>
#include <vector>

#include "qfluct/tensor_state.hpp"

namespace qtest {

using qfluct::cxd;
using qfluct::Mat;
using qfluct::PureState;
using qfluct::QuditSystem;
using qfluct::Vec;

inline PureState ghz(int n) {
  QuditSystem sys(std::vector<int>(n, 2));
  Vec amps = Vec::Zero(sys.total_dim());
  amps(0) = amps(sys.total_dim() - 1) = 1.0;
  return qfluct::make_pure(sys, amps);
}

inline PureState bell() { return ghz(2); }

inline PureState w_state() {
  QuditSystem sys({2, 2, 2});
  Vec amps = Vec::Zero(8);
  amps(1) = amps(2) = amps(4) = 1.0;  // |001>, |010>, |100>
  return qfluct::make_pure(sys, amps);
}

inline PureState random_state(std::mt19937& rng, const QuditSystem& sys) {
  std::normal_distribution<double> dist(0.0, 1.0);
  Vec amps(sys.total_dim());
  for (long i = 0; i < amps.size(); ++i) amps(i) = cxd(dist(rng), dist(rng));
  return qfluct::make_pure(sys, amps);
}

inline Mat random_matrix(std::mt19937& rng, int d) {
  std::normal_distribution<double> dist(0.0, 1.0);
  Mat m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = cxd(dist(rng), dist(rng));
  return m;
}

inline Mat random_unitary(std::mt19937& rng, int d) {
  Eigen::HouseholderQR<Mat> qr(random_matrix(rng, d));
  Mat q = qr.householderQ();
  // fix the column phases so Q is unique given R's positive diagonal
  Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < d; ++i) {
    const cxd rii = r(i, i);
    if (std::abs(rii) > 0) q.col(i) *= rii / std::abs(rii);
  }
  return q;
}

// exp of a bounded random traceless matrix: a well-conditioned SL(d) element.
inline Mat random_sl(std::mt19937& rng, int d, double scale = 0.5) {
  Mat a = scale * random_matrix(rng, d);
  a -= (a.trace() / static_cast<double>(d)) * Mat::Identity(d, d);
  Mat result = Mat::Identity(d, d);
  Mat term = Mat::Identity(d, d);
  for (int k = 1; k <= 40; ++k) {  // power series; ||a|| is small
    term = term * a / static_cast<double>(k);
    result += term;
  }
  const cxd det = result.determinant();
  result /= std::pow(det, 1.0 / d);
  return result;
}

inline qfluct::DensityMatrix random_density(std::mt19937& rng, const QuditSystem& sys) {
  const long D = sys.total_dim();
  Mat a = random_matrix(rng, static_cast<int>(D));
  Mat rho = a * a.adjoint();
  rho /= rho.trace().real();
  rho = 0.5 * (rho + rho.adjoint());
  return qfluct::DensityMatrix(sys, rho);
}

// GHZ-class (semistable) three-qubit state: bounded invertible local ops
// applied to GHZ, then renormalized.
inline PureState random_ghz_class(std::mt19937& rng, double scale = 0.5) {
  PureState state = ghz(3);
  Vec amps = state.amplitudes();
  for (int j = 1; j <= 3; ++j)
    amps = qfluct::apply_local(state.system(), amps, j, random_sl(rng, 2, scale));
  return qfluct::make_pure(state.system(), amps);
}

// Partial-trace oracle, independent of the slice-based production path: forms
// the full |psi><psi| matrix and contracts it index by index.
inline Mat dense_partial_trace_oracle(const PureState& state, int party) {
  const QuditSystem& sys = state.system();
  const long D = sys.total_dim();
  const Mat full = state.amplitudes() * state.amplitudes().adjoint();
  const int d = sys.dim(party);
  Mat out = Mat::Zero(d, d);
  const auto decode = [&sys](long idx, int p) {  // level of party p inside linear index
    long rem = idx;
    int level = 0;
    for (int j = 1; j <= sys.parties(); ++j) {
      const long s = sys.stride(j);
      level = static_cast<int>(rem / s);
      rem %= s;
      if (j == p) return level;
    }
    return level;
  };
  for (long i = 0; i < D; ++i)
    for (long k = 0; k < D; ++k) {
      bool rest_match = true;
      for (int j = 1; j <= sys.parties(); ++j)
        if (j != party && decode(i, j) != decode(k, j)) {
          rest_match = false;
          break;
        }
      if (rest_match) out(decode(i, party), decode(k, party)) += full(i, k);
    }
  return out;
}

}  // namespace qtest
