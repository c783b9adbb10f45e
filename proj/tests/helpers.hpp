#pragma once
// Shared oracles for the unit tests.
#include <cmath>
#include <numbers>
#include <vector>

#include "hiweno/experiments.hpp"

namespace testing {

// Allowed shortfall of a fitted log-log slope below its design order.
inline constexpr double kSlopeTol = 0.25;
inline constexpr double kPi = std::numbers::pi;

// Least-squares slope of log(err) against log(n).
inline double fitted_order(const std::vector<int>& n, const std::vector<double>& err) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = static_cast<double>(n.size());
  for (std::size_t i = 0; i < n.size(); ++i) {
    double x = std::log(double(n[i])), y = std::log(err[i]);
    sx += x; sy += y; sxx += x * x; sxy += x * y;
  }
  return -(m * sxy - sx * sy) / (m * sxx - sx * sx);
}

inline hiweno::StaggeredGrid2D periodic_grid(int n, int k = 3, double L = 2 * kPi) {
  return hiweno::build_grid({0, L, 0, L}, n, n, hiweno::BoundaryKind::PeriodicBoth, hiweno::required_halo(k));
}

template <class Field>
double max_interior_error(const Field& f, const hiweno::StaggeredGrid2D& g,
                          const std::function<double(double, double)>& exact) {
  double e = 0;
  for (int j = 0; j < f.extent_y(); ++j)
    for (int i = 0; i < f.extent_x(); ++i)
      e = std::max(e, std::fabs(f(i, j) - exact(g.node_x(Field::kind, i), g.node_y(Field::kind, j))));
  return e;
}

// Discrete L1 error sum |f - exact| dx dy over the interior nodes.
template <class Field>
double l1_interior_error(const Field& f, const hiweno::StaggeredGrid2D& g,
                         const std::function<double(double, double)>& exact) {
  double e = 0;
  for (int j = 0; j < f.extent_y(); ++j)
    for (int i = 0; i < f.extent_x(); ++i)
      e += std::fabs(f(i, j) - exact(g.node_x(Field::kind, i), g.node_y(Field::kind, j)));
  return e * g.dx() * g.dy();
}

}  // namespace testing
