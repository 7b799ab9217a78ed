// Multi-party pure states as row-major coefficient tensors, plus dense
// density matrices, slicing, local-operator action, partial traces and
// purification.
#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qfluct {

using cxd = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

// Shape disagreement between states, operators or measurement sets. The CLI
// maps this to its own exit code, distinct from unreadable-input errors.
struct dimension_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Desk scale: everything is dense, nothing above this total dimension.
inline constexpr long kMaxTotalDim = 4096;

// Ordered local dimensions (d_1, ..., d_N); parties are numbered 1..N.
// Multi-indices are row-major with party 1 slowest: the linear index of
// (l_1, ..., l_N) is l_1*d_2*...*d_N + ... + l_N.
class QuditSystem {
 public:
  explicit QuditSystem(std::vector<int> dims) : dims_(std::move(dims)) {
    if (dims_.empty())
      throw dimension_error("QuditSystem: need at least one party");
    total_ = 1;
    for (int d : dims_) {
      if (d < 2)
        throw dimension_error("QuditSystem: every local dimension must be >= 2");
      total_ *= d;
      if (total_ > kMaxTotalDim)
        throw dimension_error("QuditSystem: total dimension exceeds " +
                              std::to_string(kMaxTotalDim));
    }
  }

  int parties() const { return static_cast<int>(dims_.size()); }
  long total_dim() const { return total_; }
  const std::vector<int>& dims() const { return dims_; }

  int dim(int party) const {
    check_party(party);
    return dims_[party - 1];
  }

  // Product of local dimensions strictly after `party` (the row-major stride).
  long stride(int party) const {
    check_party(party);
    long s = 1;
    for (int j = party; j < parties(); ++j) s *= dims_[j];
    return s;
  }

  // Product of local dimensions strictly before `party`.
  long blocks(int party) const {
    check_party(party);
    long b = 1;
    for (int j = 0; j < party - 1; ++j) b *= dims_[j];
    return b;
  }

  bool all_qubits() const {
    for (int d : dims_)
      if (d != 2) return false;
    return true;
  }

  bool operator==(const QuditSystem& other) const { return dims_ == other.dims_; }
  bool operator!=(const QuditSystem& other) const { return !(*this == other); }

 private:
  void check_party(int party) const {
    if (party < 1 || party > parties())
      throw std::out_of_range("party index " + std::to_string(party) +
                              " outside [1, " + std::to_string(parties()) + "]");
  }

  std::vector<int> dims_;
  long total_ = 0;
};

// Sub-tensor selector: all amplitudes with l_party == level.
struct SliceIndex {
  int party;  // 1-based
  int level;  // 0-based
};

class PureState {
 public:
  // Bypasses normalization; `normalized` asserts the unit-norm invariant.
  static PureState raw(QuditSystem system, Vec amplitudes, bool normalized) {
    if (amplitudes.size() != system.total_dim())
      throw dimension_error("PureState: amplitude count " +
                            std::to_string(amplitudes.size()) +
                            " does not match total dimension " +
                            std::to_string(system.total_dim()));
    if (normalized && std::abs(amplitudes.squaredNorm() - 1.0) > 1e-12)
      throw std::invalid_argument("PureState: state flagged normalized has |norm^2 - 1| > 1e-12");
    return PureState(std::move(system), std::move(amplitudes), normalized, 1.0);
  }

  const QuditSystem& system() const { return system_; }
  const Vec& amplitudes() const { return amps_; }
  bool is_normalized() const { return normalized_; }
  double norm2() const { return amps_.squaredNorm(); }
  // Scale factor applied at construction by make_pure (1 elsewhere).
  double applied_scale() const { return scale_; }

 private:
  PureState(QuditSystem s, Vec a, bool normalized, double scale)
      : system_(std::move(s)), amps_(std::move(a)), normalized_(normalized), scale_(scale) {}

  QuditSystem system_;
  Vec amps_;
  bool normalized_;
  double scale_;

  friend PureState make_pure(const QuditSystem&, const Vec&);
};

// Builds a unit-norm state, recording the applied scale factor.
inline PureState make_pure(const QuditSystem& system, const Vec& amplitudes) {
  if (amplitudes.size() != system.total_dim())
    throw dimension_error("make_pure: amplitude count does not match system dimension");
  const double norm = amplitudes.norm();
  if (norm <= 0.0 || !std::isfinite(norm))
    throw std::invalid_argument("make_pure: zero (or non-finite) amplitude vector");
  return PureState(system, amplitudes / norm, true, 1.0 / norm);
}

inline Vec slice(const QuditSystem& system, const Vec& amps, SliceIndex idx) {
  const int d = system.dim(idx.party);  // validates party
  if (idx.level < 0 || idx.level >= d)
    throw std::out_of_range("slice: level " + std::to_string(idx.level) +
                            " outside [0, " + std::to_string(d - 1) + "]");
  const long stride = system.stride(idx.party);
  const long blocks = system.blocks(idx.party);
  Vec out(blocks * stride);
  for (long b = 0; b < blocks; ++b) {
    const long base = b * d * stride + idx.level * stride;
    out.segment(b * stride, stride) = amps.segment(base, stride);
  }
  return out;
}

inline Vec slice(const PureState& state, SliceIndex idx) {
  return slice(state.system(), state.amplitudes(), idx);
}

inline bool is_unitary(const Mat& op, double tol = 1e-12) {
  return (op.adjoint() * op - Mat::Identity(op.rows(), op.cols()))
             .cwiseAbs()
             .maxCoeff() <= tol;
}

// (I x ... x op x ... x I) amps, with op acting on `party`.
inline Vec apply_local(const QuditSystem& system, const Vec& amps, int party, const Mat& op) {
  const int d = system.dim(party);
  if (op.rows() != d || op.cols() != d)
    throw dimension_error("apply_local: operator is " + std::to_string(op.rows()) +
                          "x" + std::to_string(op.cols()) + " but party has dimension " +
                          std::to_string(d));
  const long stride = system.stride(party);
  const long blocks = system.blocks(party);
  Vec out(amps.size());
  Vec in_col(d), out_col(d);
  for (long b = 0; b < blocks; ++b) {
    const long base = b * d * stride;
    for (long s = 0; s < stride; ++s) {
      for (int l = 0; l < d; ++l) in_col(l) = amps(base + l * stride + s);
      out_col.noalias() = op * in_col;
      for (int l = 0; l < d; ++l) out(base + l * stride + s) = out_col(l);
    }
  }
  return out;
}

inline PureState apply_local(const PureState& state, int party, const Mat& op) {
  Vec out = apply_local(state.system(), state.amplitudes(), party, op);
  const bool keeps_norm = state.is_normalized() && is_unitary(op);
  return PureState::raw(state.system(), std::move(out), keeps_norm);
}

// Partial trace over all parties except `party`. Trace equals the squared
// norm of the amplitude vector; entries are inter-slice inner products.
inline Mat reduced_density(const QuditSystem& system, const Vec& amps, int party) {
  const int d = system.dim(party);
  const long stride = system.stride(party);
  const long blocks = system.blocks(party);
  Mat rho = Mat::Zero(d, d);
  for (long b = 0; b < blocks; ++b) {
    const long base = b * d * stride;
    for (int a = 0; a < d; ++a)
      for (int c = 0; c < d; ++c) {
        cxd acc(0, 0);
        const long off_a = base + a * stride;
        const long off_c = base + c * stride;
        for (long s = 0; s < stride; ++s) acc += amps(off_a + s) * std::conj(amps(off_c + s));
        rho(a, c) += acc;
      }
  }
  return rho;
}

inline Mat reduced_density(const PureState& state, int party) {
  return reduced_density(state.system(), state.amplitudes(), party);
}

// Density matrix of the leading index block: rho_ab = sum_k psi[a*T+k] conj(psi[b*T+k])
// where T = D / block_dim. Used to trace out the mirror half of a purification.
inline Mat leading_block_density(const PureState& state, long block_dim) {
  const long D = state.system().total_dim();
  if (block_dim < 1 || D % block_dim != 0)
    throw dimension_error("leading_block_density: block dimension must divide the total dimension");
  const long tail = D / block_dim;
  const Vec& amps = state.amplitudes();
  Mat rho = Mat::Zero(block_dim, block_dim);
  for (long a = 0; a < block_dim; ++a)
    for (long b = 0; b < block_dim; ++b) {
      cxd acc(0, 0);
      for (long k = 0; k < tail; ++k) acc += amps(a * tail + k) * std::conj(amps(b * tail + k));
      rho(a, b) = acc;
    }
  return rho;
}

class DensityMatrix {
 public:
  DensityMatrix(QuditSystem system, Mat matrix)
      : system_(std::move(system)), matrix_(std::move(matrix)) {
    const long D = system_.total_dim();
    if (matrix_.rows() != D || matrix_.cols() != D)
      throw dimension_error("DensityMatrix: matrix size does not match system dimension");
    if ((matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
      throw std::invalid_argument("DensityMatrix: not Hermitian within 1e-12");
    if (std::abs(matrix_.trace().real() - 1.0) > 1e-12 || std::abs(matrix_.trace().imag()) > 1e-12)
      throw std::invalid_argument("DensityMatrix: trace differs from 1 beyond 1e-12");
    Eigen::SelfAdjointEigenSolver<Mat> es(matrix_, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-10)
      throw std::invalid_argument("DensityMatrix: eigenvalue below -1e-10");
  }

  const QuditSystem& system() const { return system_; }
  const Mat& matrix() const { return matrix_; }

 private:
  QuditSystem system_;
  Mat matrix_;
};

inline DensityMatrix pure_density(const PureState& state) {
  if (!state.is_normalized())
    throw std::invalid_argument("pure_density: state must be normalized");
  const Vec& a = state.amplitudes();
  return DensityMatrix(state.system(), a * a.adjoint());
}

// Partial trace of a density matrix onto one party.
inline Mat partial_trace(const DensityMatrix& rho, int party) {
  const QuditSystem& sys = rho.system();
  const int d = sys.dim(party);
  const long stride = sys.stride(party);
  const long blocks = sys.blocks(party);
  const Mat& m = rho.matrix();
  Mat out = Mat::Zero(d, d);
  for (int a = 0; a < d; ++a)
    for (int c = 0; c < d; ++c) {
      cxd acc(0, 0);
      for (long b = 0; b < blocks; ++b) {
        const long base = b * d * stride;
        for (long s = 0; s < stride; ++s) acc += m(base + a * stride + s, base + c * stride + s);
      }
      out(a, c) = acc;
    }
  return out;
}

// Purification on the doubled system (dims repeated): eigenvectors paired with
// mirror basis states in descending eigenvalue order, eigenvalues below 1e-12
// dropped so rank-deficient inputs do not leak noise into the doubled state.
inline PureState purify(const DensityMatrix& rho) {
  const QuditSystem& sys = rho.system();
  std::vector<int> doubled = sys.dims();
  doubled.insert(doubled.end(), sys.dims().begin(), sys.dims().end());
  QuditSystem big(doubled);  // throws if D^2 exceeds the desk-scale cap

  Eigen::SelfAdjointEigenSolver<Mat> es(rho.matrix());
  const long D = sys.total_dim();
  Vec out = Vec::Zero(D * D);
  long mirror = 0;
  for (long k = D - 1; k >= 0; --k) {  // Eigen sorts ascending
    const double lambda = es.eigenvalues()(k);
    if (lambda <= 1e-12) break;
    const double w = std::sqrt(lambda);
    for (long i = 0; i < D; ++i) out(i * D + mirror) = w * es.eigenvectors()(i, k);
    ++mirror;
  }
  out /= out.norm();
  return PureState::raw(std::move(big), std::move(out), true);
}

}  // namespace qfluct
