// Generic maximum-entangled states (|0...0> +/- |1...1>)/sqrt(2) and the
// orthonormal ME basis generated from them by local cyclic permutations.
#pragma once

#include <string>
#include <vector>

#include "qfluct/tensor_state.hpp"

namespace qfluct {

// |0><1| + |1><2| + ... + |d-1><0|; the d-th power is the identity, and at
// d = 2 the matrix is exactly sigma1.
struct CyclicOp {
  int d = 0;
  Mat matrix;
};

inline CyclicOp cyclic_op(int d) {
  if (d < 2) throw dimension_error("cyclic_op: dimension must be >= 2");
  Mat m = Mat::Zero(d, d);
  for (int l = 1; l < d; ++l) m(l - 1, l) = 1;
  m(d - 1, 0) = 1;
  return CyclicOp{d, std::move(m)};
}

// (|0...0> + sign |1...1>)/sqrt(2) on N qubits.
inline PureState generic_me(int n_parties, int sign) {
  if (n_parties < 1) throw std::invalid_argument("generic_me: need at least one party");
  if (sign != 1 && sign != -1) throw std::invalid_argument("generic_me: sign must be +1 or -1");
  QuditSystem sys(std::vector<int>(n_parties, 2));
  Vec amps = Vec::Zero(sys.total_dim());
  const double w = 1.0 / std::sqrt(2.0);
  amps(0) = w;
  amps(sys.total_dim() - 1) = sign * w;
  return PureState::raw(std::move(sys), std::move(amps), true);
}

struct MEBasisState {
  std::string label;
  std::vector<int> flipped_parties;  // subset of {2..N} the cyclic operator acted on
  int sign = +1;
  PureState state;
};

// The 2^N states obtained by applying the local cyclic permutation on every
// subset of parties {2..N} (party 1 stays fixed) to both generic states.
// For N = 2 these are the four Bell states; in general the GHZ basis.
inline std::vector<MEBasisState> me_basis(int n_parties) {
  if (n_parties < 2) throw std::invalid_argument("me_basis: need at least two parties");
  QuditSystem sys(std::vector<int>(n_parties, 2));
  const long D = sys.total_dim();
  const double w = 1.0 / std::sqrt(2.0);

  std::vector<MEBasisState> basis;
  basis.reserve(2 * (D / 2));
  for (long mask = 0; mask < D / 2; ++mask) {
    // bit (N-1-j) of mask set <=> party j flipped, j in {2..N}
    std::vector<int> flipped;
    long index = 0;
    for (int j = 2; j <= n_parties; ++j)
      if (mask & (1L << (n_parties - j))) {
        flipped.push_back(j);
        index += sys.stride(j);
      }
    for (int sign : {+1, -1}) {
      Vec amps = Vec::Zero(D);
      amps(index) = w;
      amps(D - 1 - index) = sign * w;
      std::string label = (sign > 0) ? "me+_S{" : "me-_S{";
      for (size_t i = 0; i < flipped.size(); ++i)
        label += (i ? "," : "") + std::to_string(flipped[i]);
      label += "}";
      basis.push_back(MEBasisState{std::move(label), flipped, sign,
                                   PureState::raw(sys, std::move(amps), true)});
    }
  }
  return basis;
}

}  // namespace qfluct
