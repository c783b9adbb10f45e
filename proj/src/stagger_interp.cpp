#include "hiweno/stagger_interp.hpp"

#include <stdexcept>

#include "hiweno/weno.hpp"

namespace hiweno {

namespace {

// out(i, j) = midpoint between in(i+oi, j+oj) and the next node along the
// stride direction.
template <int K, class Out, class In>
void midpoint_pass(Out& out, const In& in, int oi, int oj, bool along_x) {
  const std::ptrdiff_t stride = along_x ? 1 : in.stride();
  const int nx = out.extent_x(), ny = out.extent_y();
#pragma omp parallel for schedule(static)
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) out(i, j) = eno_midpoint<K>(in.at(i + oi, j + oj), stride);
}

template <class Out, class In>
Out run_pass(const In& in, const StaggeredGrid2D& g, int k, int oi, int oj, bool along_x) {
  if (g.halo() < 2 * k - 2) throw std::invalid_argument("halo too small for ENO interpolation");
  Out out(g);
  switch (k) {
    case 2: midpoint_pass<2>(out, in, oi, oj, along_x); break;
    case 3: midpoint_pass<3>(out, in, oi, oj, along_x); break;
    case 4: midpoint_pass<4>(out, in, oi, oj, along_x); break;
    default: throw std::invalid_argument("ENO k must be 2, 3 or 4");
  }
  return out;
}

}  // namespace

// Center (i, j) lies between v(i, j) and v(i, j+1).
CellField interp_v_to_centers(const VFaceField& v, const StaggeredGrid2D& g, int k) {
  return run_pass<CellField>(v, g, k, 0, 0, false);
}

// u-point (i, j) lies between centers (i-1, j) and (i, j).
UFaceField interp_centers_to_u_points(const CellField& vc, const StaggeredGrid2D& g, int k) {
  return run_pass<UFaceField>(vc, g, k, -1, 0, true);
}

// Center (i, j) lies between u(i, j) and u(i+1, j).
CellField interp_u_to_centers(const UFaceField& u, const StaggeredGrid2D& g, int k) {
  return run_pass<CellField>(u, g, k, 0, 0, true);
}

// v-point (i, j) lies between centers (i, j-1) and (i, j).
VFaceField interp_centers_to_v_points(const CellField& uc, const StaggeredGrid2D& g, int k) {
  return run_pass<VFaceField>(uc, g, k, 0, -1, false);
}

StaggeredInterpolants interpolate_centers(const FlowState& s, const GhostFiller& fill, int k) {
  const auto& g = fill.grid();
  StaggeredInterpolants r;
  r.v_centers = interp_v_to_centers(s.v, g, k);
  fill(r.v_centers, Quantity::VelocityY, s.t);
  r.u_centers = interp_u_to_centers(s.u, g, k);
  fill(r.u_centers, Quantity::VelocityX, s.t);
  return r;
}

StaggeredInterpolants interpolate_velocities(const FlowState& s, const GhostFiller& fill, int k) {
  const auto& g = fill.grid();
  StaggeredInterpolants r = interpolate_centers(s, fill, k);
  r.v_on_u = interp_centers_to_u_points(r.v_centers, g, k);
  fill(r.v_on_u, Quantity::VelocityY, s.t);
  r.u_on_v = interp_centers_to_v_points(r.u_centers, g, k);
  fill(r.u_on_v, Quantity::VelocityX, s.t);
  return r;
}

}  // namespace hiweno
