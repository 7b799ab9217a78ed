// Maximum-entanglement certification: vanishing measurement expectations,
// the equivalent tensor-slice conditions, constraint counting, and the
// one-parameter x(|000>+|111>)+y(|001>+|110>) family with its scan.
#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "qfluct/measurements.hpp"
#include "qfluct/slocc.hpp"

namespace qfluct {

struct MEVerdict {
  bool is_me = false;
  double max_abs_expectation = 0.0;
  // Filled for pure qubit states checked against the Pauli set.
  std::optional<double> slice_orthogonality_residual;
  std::optional<double> slice_norm_residual;
  double total_variance = 0.0;
  std::optional<double> casimir;
  double tol = 0.0;
};

struct SliceResiduals {
  double orthogonality = 0.0;  // largest |<slice_a, slice_b>| over parallel slices
  double norm = 0.0;           // largest | ||slice_a||^2 - ||slice_b||^2 |
};

inline SliceResiduals slice_conditions(const PureState& state) {
  const QuditSystem& sys = state.system();
  SliceResiduals res;
  for (int j = 1; j <= sys.parties(); ++j) {
    const int d = sys.dim(j);
    std::vector<Vec> slices;
    slices.reserve(d);
    for (int l = 0; l < d; ++l) slices.push_back(slice(state, {j, l}));
    for (int a = 0; a < d; ++a)
      for (int b = a + 1; b < d; ++b) {
        res.orthogonality = std::max(res.orthogonality, std::abs(slices[a].dot(slices[b])));
        res.norm = std::max(res.norm,
                            std::abs(slices[a].squaredNorm() - slices[b].squaredNorm()));
      }
  }
  return res;
}

namespace detail {

inline bool is_pauli_structured(const MeasurementSet& set) {
  if (!set.system.all_qubits()) return false;
  std::vector<std::array<int, 3>> seen(set.system.parties(), {0, 0, 0});
  for (const auto& obs : set.observables) {
    if (obs.party == 0) return false;
    bool matched = false;
    for (int a = 1; a <= 3; ++a)
      if ((obs.matrix - pauli(a)).cwiseAbs().maxCoeff() <= 1e-14) {
        ++seen[obs.party - 1][a - 1];
        matched = true;
        break;
      }
    if (!matched) return false;
  }
  for (const auto& counts : seen)
    if (counts != std::array<int, 3>{1, 1, 1}) return false;
  return true;
}

template <class State>
MEVerdict check_me_impl(const State& state, const MeasurementSet& set, double tol) {
  if (tol <= 0) throw std::invalid_argument("check_me: tolerance must be positive");
  const VarianceReport report = total_variance(state, set);
  MEVerdict verdict;
  verdict.tol = tol;
  verdict.total_variance = report.total;
  verdict.casimir = report.casimir;
  for (double e : report.expectations)
    verdict.max_abs_expectation = std::max(verdict.max_abs_expectation, std::abs(e));
  verdict.is_me = verdict.max_abs_expectation <= tol;
  if (verdict.is_me && verdict.casimir) {
    const double bound = *verdict.casimir -
                         static_cast<double>(report.expectations.size()) * tol * tol;
    if (report.total < bound - 1e-9)
      throw std::runtime_error("check_me: total variance inconsistent with vanishing expectations");
  }
  return verdict;
}

}  // namespace detail

// is_me iff every |<M_i>| <= tol. For pure qubit states with the Pauli set the
// slice residuals are filled as well; the two routes agree by construction of
// the Pauli expectations from inter-slice inner products.
inline MEVerdict check_me(const PureState& state, const MeasurementSet& set, double tol = 1e-9) {
  MEVerdict verdict = detail::check_me_impl(state, set, tol);
  if (state.system().all_qubits() && detail::is_pauli_structured(set)) {
    const SliceResiduals res = slice_conditions(state);
    verdict.slice_orthogonality_residual = res.orthogonality;
    verdict.slice_norm_residual = res.norm;
  }
  return verdict;
}

inline MEVerdict check_me(const DensityMatrix& state, const MeasurementSet& set, double tol = 1e-9) {
  return detail::check_me_impl(state, set, tol);
}

struct EquivalenceWitness {
  double inner_product_discrepancy = 0.0;  // sigma1/sigma2 vs 2 Re/Im <slice0, slice1>
  double norm_discrepancy = 0.0;           // sigma3 vs slice norm difference
};

// Recomputes every Pauli expectation from the slice data and compares with the
// measurement route; both discrepancies must vanish to rounding.
inline EquivalenceWitness equivalence_witness(const PureState& state) {
  const QuditSystem& sys = state.system();
  if (!sys.all_qubits())
    throw dimension_error("equivalence_witness: qubit systems only");
  EquivalenceWitness w;
  for (int j = 1; j <= sys.parties(); ++j) {
    const Vec s0 = slice(state, {j, 0});
    const Vec s1 = slice(state, {j, 1});
    const cxd inter = s0.dot(s1);  // sum conj(s0) s1
    const double e1_slice = 2.0 * inter.real();
    const double e2_slice = 2.0 * inter.imag();
    const double e3_slice = s0.squaredNorm() - s1.squaredNorm();
    const std::string at = "@" + std::to_string(j);
    const double e1 = expectation(state, local_observable(j, pauli(1), "sigma1" + at));
    const double e2 = expectation(state, local_observable(j, pauli(2), "sigma2" + at));
    const double e3 = expectation(state, local_observable(j, pauli(3), "sigma3" + at));
    w.inner_product_discrepancy =
        std::max({w.inner_product_discrepancy, std::abs(e1 - e1_slice), std::abs(e2 - e2_slice)});
    w.norm_discrepancy = std::max(w.norm_discrepancy, std::abs(e3 - e3_slice));
  }
  return w;
}

struct DofReport {
  long n_constraints = 0;  // sum_j (d_j^2 - 1) + 1; equals 3N + 1 for qubits
  long n_real_params = 0;  // 2D
  bool has_continuum = false;
};

inline DofReport dof_report(const QuditSystem& system) {
  DofReport report;
  report.n_constraints = 1;
  for (int d : system.dims()) report.n_constraints += static_cast<long>(d) * d - 1;
  report.n_real_params = 2 * system.total_dim();
  report.has_continuum = report.n_real_params > report.n_constraints;
  return report;
}

inline constexpr double kFamilyXMax = 0.7071067811865476;  // 1/sqrt(2)
inline constexpr double kTotalVarianceW = 26.0 / 3.0;
// Interval endpoints quoted in earlier work for the V_x < V_W window; they do
// not match the crossings computed from this normalization (reported, never
// asserted).
inline constexpr std::array<double, 2> kReferenceEndpoints{0.122, 0.696};

// x(|000> + |111>) + y(|001> + |110>) with y = +sqrt(1/2 - x^2).
inline PureState family_state(double x) {
  if (!(x >= 0.0) || x > kFamilyXMax + 1e-12)
    throw std::invalid_argument("family_state: x must lie in [0, 1/sqrt(2)]");
  const double y = std::sqrt(std::max(0.0, 0.5 - x * x));
  QuditSystem sys({2, 2, 2});
  Vec amps = Vec::Zero(8);
  amps(0) = x;  // |000>
  amps(7) = x;  // |111>
  amps(1) = y;  // |001>
  amps(6) = y;  // |110>
  return make_pure(sys, amps);
}

struct FamilyScanRow {
  double x = 0.0;
  double total_variance = 0.0;
  double mu = 0.0;
  double three_tangle = 0.0;
};

struct FamilyScanResult {
  std::vector<FamilyScanRow> rows;
  std::vector<double> vw_crossings;  // bisection roots of total(x) = V_W
};

inline std::vector<double> family_grid(int points) {
  if (points < 2) throw std::invalid_argument("family_grid: need at least two points");
  std::vector<double> grid(points);
  for (int i = 0; i < points; ++i)
    grid[i] = kFamilyXMax * static_cast<double>(i) / (points - 1);
  return grid;
}

// Evaluates total variance (Pauli set), mu and the tangle on the grid, then
// locates the V_W crossings by bisection on the brute-force total variance.
inline FamilyScanResult family_scan(const std::vector<double>& grid,
                                    const SloccOptions& opts = {}) {
  const MeasurementSet set = pauli_set(QuditSystem({2, 2, 2}));
  const auto total_at = [&set](double x) {
    return total_variance(family_state(x), set).total;
  };

  FamilyScanResult result;
  result.rows.reserve(grid.size());
  for (double x : grid) {
    if (!(x >= 0.0) || x > kFamilyXMax + 1e-12)
      throw std::invalid_argument("family_scan: grid point outside [0, 1/sqrt(2)]");
    const PureState state = family_state(x);
    FamilyScanRow row;
    row.x = x;
    row.total_variance = total_variance(state, set).total;
    row.mu = minimize_orbit(state, opts).mu;
    row.three_tangle = three_tangle(state);
    result.rows.push_back(row);
  }

  for (size_t i = 0; i + 1 < result.rows.size(); ++i) {
    double lo = result.rows[i].x, hi = result.rows[i + 1].x;
    double flo = result.rows[i].total_variance - kTotalVarianceW;
    const double fhi = result.rows[i + 1].total_variance - kTotalVarianceW;
    if (flo == 0.0) {
      result.vw_crossings.push_back(lo);
      continue;
    }
    if (flo * fhi > 0.0) continue;
    for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
      const double mid = 0.5 * (lo + hi);
      const double fmid = total_at(mid) - kTotalVarianceW;
      if (fmid == 0.0) {
        lo = hi = mid;
        break;
      }
      if (flo * fmid < 0.0) {
        hi = mid;
      } else {
        lo = mid;
        flo = fmid;
      }
    }
    result.vw_crossings.push_back(0.5 * (lo + hi));
  }
  return result;
}

}  // namespace qfluct
