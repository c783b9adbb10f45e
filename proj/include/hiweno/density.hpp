#pragma once

#include <functional>

#include "hiweno/grid.hpp"

namespace hiweno {

// rho0(y) pre-sampled at every node family, halo rows included. In the
// channel the ghost rows are even reflections of the interior profile.
class ReferenceDensity {
 public:
  ReferenceDensity(const StaggeredGrid2D& g, const std::function<double(double)>& rho_of_y);
  static ReferenceDensity uniform(const StaggeredGrid2D& g, double value = 1.0);

  const CellField& centers() const noexcept { return center_; }
  const UFaceField& on_u() const noexcept { return u_; }
  const VFaceField& on_v() const noexcept { return v_; }
  const CornerField& corners() const noexcept { return corner_; }
  bool is_uniform() const noexcept { return uniform_; }
  // Values at center rows y_{j+1/2} and face rows y_j (halo rows allowed).
  double center_row(int j) const noexcept { return center_(0, j); }
  double face_row(int j) const noexcept { return corner_(0, j); }

 private:
  CellField center_;
  UFaceField u_;
  VFaceField v_;
  CornerField corner_;
  bool uniform_ = false;
};

}  // namespace hiweno
