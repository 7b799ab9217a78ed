// Prints total variances and ME verdicts for the usual three-qubit suspects.
#include <cstdio>

#include "qfluct/me_analysis.hpp"
#include "qfluct/me_basis.hpp"

using namespace qfluct;

int main() {
  const QuditSystem sys({2, 2, 2});
  const MeasurementSet set = pauli_set(sys);

  Vec w = Vec::Zero(8);
  w(1) = w(2) = w(4) = 1.0;

  struct Entry {
    const char* name;
    PureState state;
  };
  const Entry entries[] = {
      {"GHZ", generic_me(3, +1)},
      {"W", make_pure(sys, w)},
      {"psi_x(0.5)", family_state(0.5)},
      {"psi_x(0.3)", family_state(0.3)},
  };

  std::printf("%-12s %-18s %-8s\n", "state", "total variance", "ME?");
  for (const auto& e : entries) {
    const MEVerdict v = check_me(e.state, set);
    std::printf("%-12s %-18.12f %-8s\n", e.name, v.total_variance, v.is_me ? "yes" : "no");
  }
  std::printf("(Casimir bound: %g)\n", 3.0 * sys.parties());
  return 0;
}
