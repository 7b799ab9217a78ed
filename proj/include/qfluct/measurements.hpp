// Measurement sets (local Pauli / generalized Gell-Mann generators),
// expectations, variances, total variance and the Casimir identity check.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qfluct/tensor_state.hpp"

namespace qfluct {

// Hermitian observable, either local to one party (party >= 1) or global
// (party == 0, D x D).
struct Observable {
  int party = 0;
  Mat matrix;
  std::string label;
};

inline bool is_hermitian(const Mat& m, double tol = 1e-12) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

inline Observable local_observable(int party, Mat m, std::string label) {
  if (party < 1) throw std::invalid_argument("local_observable: party must be >= 1");
  if (m.rows() != m.cols()) throw dimension_error("local_observable: matrix must be square");
  if (!is_hermitian(m))
    throw std::invalid_argument("local_observable: matrix not Hermitian within 1e-12");
  return Observable{party, std::move(m), std::move(label)};
}

inline Observable global_observable(Mat m, std::string label) {
  if (m.rows() != m.cols()) throw dimension_error("global_observable: matrix must be square");
  if (!is_hermitian(m))
    throw std::invalid_argument("global_observable: matrix not Hermitian within 1e-12");
  return Observable{0, std::move(m), std::move(label)};
}

struct MeasurementSet {
  QuditSystem system;
  std::vector<Observable> observables;
  std::optional<double> casimir;
};

inline const Mat& pauli(int a) {
  static const Mat s1 = (Mat(2, 2) << 0, 1, 1, 0).finished();
  static const Mat s2 = (Mat(2, 2) << 0, cxd(0, -1), cxd(0, 1), 0).finished();
  static const Mat s3 = (Mat(2, 2) << 1, 0, 0, -1).finished();
  switch (a) {
    case 1: return s1;
    case 2: return s2;
    case 3: return s3;
    default: throw std::out_of_range("pauli: index must be 1, 2 or 3");
  }
}

// Generalized Gell-Mann basis of su(d), normalized to tr(T_a T_b) = 2 delta_ab.
// Order per dimension l = 1..d-1: symmetric(k,l), antisymmetric(k,l) for
// k < l, then the diagonal generator; at d = 2 this is exactly (s1, s2, s3).
inline std::vector<Mat> gell_mann_generators(int d) {
  if (d < 2) throw dimension_error("gell_mann_generators: dimension must be >= 2");
  std::vector<Mat> out;
  out.reserve(static_cast<size_t>(d) * d - 1);
  for (int l = 1; l < d; ++l) {
    for (int k = 0; k < l; ++k) {
      Mat sym = Mat::Zero(d, d);
      sym(k, l) = 1;
      sym(l, k) = 1;
      out.push_back(std::move(sym));
      Mat asym = Mat::Zero(d, d);
      asym(k, l) = cxd(0, -1);
      asym(l, k) = cxd(0, 1);
      out.push_back(std::move(asym));
    }
    Mat diag = Mat::Zero(d, d);
    const double w = std::sqrt(2.0 / (l * (l + 1.0)));
    for (int k = 0; k < l; ++k) diag(k, k) = w;
    diag(l, l) = -l * w;
    out.push_back(std::move(diag));
  }
  return out;
}

inline void check_observable_dims(const QuditSystem& system, const Observable& obs) {
  if (obs.party == 0) {
    if (obs.matrix.rows() != system.total_dim())
      throw dimension_error("observable '" + obs.label + "': global matrix size mismatch");
  } else {
    if (obs.matrix.rows() != system.dim(obs.party))  // dim() validates the party index
      throw dimension_error("observable '" + obs.label + "': local matrix size mismatch");
  }
}

// Embed a local observable into the full D x D space.
inline Mat embed_local(const QuditSystem& system, int party, const Mat& m) {
  const int d = system.dim(party);
  const long stride = system.stride(party);
  const long blocks = system.blocks(party);
  const long D = system.total_dim();
  Mat out = Mat::Zero(D, D);
  for (long b = 0; b < blocks; ++b) {
    const long base = b * d * stride;
    for (int a = 0; a < d; ++a)
      for (int c = 0; c < d; ++c) {
        const cxd v = m(a, c);
        if (v == cxd(0, 0)) continue;
        for (long s = 0; s < stride; ++s) out(base + a * stride + s, base + c * stride + s) = v;
      }
  }
  return out;
}

// Checks whether sum_i M_i^2 is proportional to the identity; returns the
// constant when it is. All-local sets are checked party by party (the embedded
// traceless remainders are Frobenius-orthogonal across parties), so no dense
// D x D matrix is built for them.
inline std::optional<double> verify_casimir(const MeasurementSet& set) {
  const QuditSystem& sys = set.system;
  if (set.observables.empty()) return 0.0;  // empty sum is 0 * I

  const double tol = 1e-10;
  bool all_local = true;
  for (const auto& obs : set.observables) {
    check_observable_dims(sys, obs);
    if (obs.party == 0) all_local = false;
  }

  if (all_local) {
    std::vector<Mat> per_party;
    per_party.reserve(sys.parties());
    for (int j = 1; j <= sys.parties(); ++j) per_party.push_back(Mat::Zero(sys.dim(j), sys.dim(j)));
    for (const auto& obs : set.observables)
      per_party[obs.party - 1] += obs.matrix * obs.matrix;
    double c = 0.0, dev2 = 0.0;
    for (int j = 1; j <= sys.parties(); ++j) {
      const int d = sys.dim(j);
      const double cj = per_party[j - 1].trace().real() / d;
      const Mat rem = per_party[j - 1] - cj * Mat::Identity(d, d);
      dev2 += static_cast<double>(sys.total_dim() / d) * rem.squaredNorm();
      c += cj;
    }
    if (std::sqrt(dev2) <= tol) return c;
    return std::nullopt;
  }

  const long D = sys.total_dim();
  if (D > 1024)
    throw dimension_error("verify_casimir: dense check limited to total dimension 1024");
  Mat sum = Mat::Zero(D, D);
  for (const auto& obs : set.observables) {
    if (obs.party == 0)
      sum += obs.matrix * obs.matrix;
    else
      sum += embed_local(sys, obs.party, obs.matrix * obs.matrix);
  }
  const double c = sum.trace().real() / D;
  sum -= c * Mat::Identity(D, D);
  if (sum.norm() <= tol) return c;
  return std::nullopt;
}

// Validates observables against the system and attaches the Casimir constant
// when sum_i M_i^2 is proportional to the identity.
inline MeasurementSet make_measurement_set(QuditSystem system, std::vector<Observable> observables) {
  MeasurementSet set{std::move(system), std::move(observables), std::nullopt};
  set.casimir = verify_casimir(set);
  return set;
}

// The 3N local Pauli observables sigma_a^(j); Casimir constant 3N.
inline MeasurementSet pauli_set(const QuditSystem& system) {
  if (!system.all_qubits())
    throw dimension_error("pauli_set: every party must be a qubit");
  std::vector<Observable> obs;
  obs.reserve(3 * system.parties());
  for (int j = 1; j <= system.parties(); ++j)
    for (int a = 1; a <= 3; ++a)
      obs.push_back(local_observable(j, pauli(a), "sigma" + std::to_string(a) + "@" + std::to_string(j)));
  return MeasurementSet{system, std::move(obs), 3.0 * system.parties()};
}

// Per party the d^2-1 generalized Gell-Mann generators; coincides with
// pauli_set when every party is a qubit. Casimir attached numerically.
inline MeasurementSet su_d_set(const QuditSystem& system) {
  std::vector<Observable> obs;
  for (int j = 1; j <= system.parties(); ++j) {
    const int d = system.dim(j);
    if (d > 32)
      throw dimension_error("su_d_set: local dimension above 32 not supported at desk scale");
    auto gens = gell_mann_generators(d);
    const std::string prefix = (d == 2) ? "sigma" : "t";
    for (size_t a = 0; a < gens.size(); ++a)
      obs.push_back(local_observable(j, std::move(gens[a]),
                                     prefix + std::to_string(a + 1) + "@" + std::to_string(j)));
  }
  return make_measurement_set(system, std::move(obs));
}

namespace detail {

inline double checked_real(cxd value, const std::string& label) {
  if (std::abs(value.imag()) > 1e-12)
    throw std::runtime_error("expectation of '" + label +
                             "' has imaginary residue above 1e-12; observable not Hermitian?");
  return value.real();
}

inline double clamp_variance(double v, const std::string& label) {
  if (v < -1e-12)
    throw std::runtime_error("variance of '" + label + "' below -1e-12");
  return v < 0.0 ? 0.0 : v;
}

// <M> and <M^2> in one pass.
inline std::pair<double, double> moments(const PureState& state, const Observable& obs) {
  if (!state.is_normalized())
    throw std::invalid_argument("moments: state must be normalized");
  check_observable_dims(state.system(), obs);
  if (obs.party == 0) {
    const Vec mv = obs.matrix * state.amplitudes();
    const cxd e = state.amplitudes().dot(mv);
    return {checked_real(e, obs.label), mv.squaredNorm()};  // <M^2> = |M psi|^2
  }
  const Mat rho = reduced_density(state, obs.party);
  const cxd e = (rho * obs.matrix).trace();
  const cxd m2 = (rho * obs.matrix * obs.matrix).trace();
  return {checked_real(e, obs.label), checked_real(m2, obs.label)};
}

inline std::pair<double, double> moments(const DensityMatrix& state, const Observable& obs) {
  check_observable_dims(state.system(), obs);
  const Mat rho = (obs.party == 0) ? state.matrix() : partial_trace(state, obs.party);
  const cxd e = (rho * obs.matrix).trace();
  const cxd m2 = (rho * obs.matrix * obs.matrix).trace();
  return {checked_real(e, obs.label), checked_real(m2, obs.label)};
}

}  // namespace detail

template <class State>
double expectation(const State& state, const Observable& obs) {
  return detail::moments(state, obs).first;
}

template <class State>
double variance(const State& state, const Observable& obs) {
  const auto [e, m2] = detail::moments(state, obs);
  return detail::clamp_variance(m2 - e * e, obs.label);
}

struct VarianceReport {
  std::vector<std::string> labels;
  std::vector<double> expectations;
  std::vector<double> variances;
  double total = 0.0;
  std::optional<double> casimir;
};

// Per-observable expectations and variances plus the total variance. When the
// set carries a Casimir constant, the identity V = C - sum <M_i>^2 is checked.
template <class State>
VarianceReport total_variance(const State& state, const MeasurementSet& set) {
  if (state.system() != set.system)
    throw dimension_error("total_variance: state and measurement set live on different systems");
  VarianceReport report;
  report.casimir = set.casimir;
  double sum_e2 = 0.0;
  for (const auto& obs : set.observables) {
    const auto [e, m2] = detail::moments(state, obs);
    report.labels.push_back(obs.label);
    report.expectations.push_back(e);
    report.variances.push_back(detail::clamp_variance(m2 - e * e, obs.label));
    report.total += report.variances.back();
    sum_e2 += e * e;
  }
  if (set.casimir && std::abs(report.total - (*set.casimir - sum_e2)) > 1e-10)
    throw std::runtime_error("total_variance: Casimir identity violated; inconsistent measurement set");
  return report;
}

}  // namespace qfluct
