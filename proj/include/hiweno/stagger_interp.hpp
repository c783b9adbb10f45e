#pragma once

#include "hiweno/grid.hpp"

namespace hiweno {

// ENO interpolation of staggered velocities. Outputs cover the interior of
// the target family; ghosts are left for the caller (see interpolate_velocities).
CellField interp_v_to_centers(const VFaceField& v, const StaggeredGrid2D& g, int k);
UFaceField interp_centers_to_u_points(const CellField& vc, const StaggeredGrid2D& g, int k);
CellField interp_u_to_centers(const UFaceField& u, const StaggeredGrid2D& g, int k);
VFaceField interp_centers_to_v_points(const CellField& uc, const StaggeredGrid2D& g, int k);

// Cross velocities at the companion faces plus the intermediate center
// values (reused by scalar transport). All ghosts filled at time t.
struct StaggeredInterpolants {
  CellField u_centers, v_centers;
  UFaceField v_on_u;
  VFaceField u_on_v;
};

// u and v must have filled ghosts.
StaggeredInterpolants interpolate_velocities(const FlowState& s, const GhostFiller& fill, int k);
// Center values only (scalar transport with a non-ENO momentum scheme).
StaggeredInterpolants interpolate_centers(const FlowState& s, const GhostFiller& fill, int k);

}  // namespace hiweno
