#pragma once

#include <cstddef>

#include "hiweno/grid.hpp"

namespace hiweno::detail {

// Strided 2D view in an (a, b) frame. Transposed views let one kernel
// serve both momentum components: v-momentum is u-momentum with x and y swapped.
struct ConstView {
  const double* p;
  std::ptrdiff_t sa, sb;
  double operator()(int a, int b) const noexcept { return p[a * sa + b * sb]; }
  const double* ptr(int a, int b) const noexcept { return p + a * sa + b * sb; }
};

struct MutView {
  double* p;
  std::ptrdiff_t sa, sb;
  double& operator()(int a, int b) const noexcept { return p[a * sa + b * sb]; }
};

inline ConstView view(const FieldStorage& f, bool transpose = false) {
  std::ptrdiff_t s = f.stride();
  return transpose ? ConstView{f.at(0, 0), s, 1} : ConstView{f.at(0, 0), 1, s};
}

inline MutView mut_view(FieldStorage& f, bool transpose = false) {
  std::ptrdiff_t s = f.stride();
  return transpose ? MutView{f.at(0, 0), s, 1} : MutView{f.at(0, 0), 1, s};
}

}  // namespace hiweno::detail
