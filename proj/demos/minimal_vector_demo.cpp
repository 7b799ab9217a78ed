// Runs the orbit minimizer on states with known mu: Bell (1), a skewed Schmidt
// pair (2*sqrt(0.09) = 0.6) and the W state (null cone, 0).
#include <cmath>
#include <cstdio>

#include "qfluct/me_basis.hpp"
#include "qfluct/slocc.hpp"

using namespace qfluct;

int main() {
  const QuditSystem two({2, 2});
  Vec skew = Vec::Zero(4);
  skew(0) = std::sqrt(0.9);
  skew(3) = std::sqrt(0.1);

  Vec w = Vec::Zero(8);
  w(1) = w(2) = w(4) = 1.0;

  struct Entry {
    const char* name;
    PureState state;
  };
  const Entry entries[] = {
      {"Bell", generic_me(2, +1)},
      {"skewed Schmidt", make_pure(two, skew)},
      {"W", make_pure(QuditSystem({2, 2, 2}), w)},
  };

  for (const auto& e : entries) {
    const SloccResult r = minimize_orbit(e.state);
    std::printf("%-16s mu = %.10f  null_cone = %-5s  iterations = %d\n", e.name, r.mu,
                r.null_cone ? "true" : "false", r.iterations);
  }
  return 0;
}
