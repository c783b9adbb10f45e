#pragma once

#include <string>

#include "hiweno/density.hpp"
#include "hiweno/grid.hpp"
#include "hiweno/stagger_interp.hpp"
#include "hiweno/weno.hpp"

namespace hiweno {

enum class AdvectionScheme {
  HighOrderWeno,
  PresselWeno,
  WickerSkamarock4,
  WickerSkamarock6,
  Morinishi4,
  Morinishi6
};
enum class NumericalFlux { Upwind, Rusanov };
// Central interpolation of the advecting velocity in the upwind-interpolation scheme:
// 2k points, or the narrower 2k-2 points.
enum class PresselWidth { Full, Reduced };

struct SchemeConfig {
  AdvectionScheme scheme = AdvectionScheme::HighOrderWeno;
  int k = 3;
  NumericalFlux flux = NumericalFlux::Upwind;
  WenoParams weno{};
  PresselWidth pressel_width = PresselWidth::Full;

  void validate() const;  // throws std::invalid_argument
  bool is_weno() const noexcept {
    return scheme == AdvectionScheme::HighOrderWeno || scheme == AdvectionScheme::PresselWeno;
  }
  // Formal order of the central baselines (0 for the WENO families).
  int central_order() const noexcept;
};

std::string to_string(AdvectionScheme s);
AdvectionScheme parse_scheme(const std::string& name);  // hiweno|pressel|ws4|ws6|morinishi4|morinishi6

struct MomentumTendency {
  UFaceField du;
  VFaceField dv;
  MomentumTendency() = default;
  explicit MomentumTendency(const StaggeredGrid2D& g) : du(g), dv(g) {}
};

// Face values of the x self flux F^{u,x} at the centers of row j:
// out[c + 1] = F_{c+1/2}, c = -1..nx_u-1. Ghosts of u must be filled.
std::vector<double> flux_self(const UFaceField& u, const ReferenceDensity& rho, int j,
                              const SchemeConfig& cfg);
// Cross flux F^{u,y} of column i at corner rows: out[r] = F at (x_i, y_r), r = 0..ny.
std::vector<double> flux_cross(const UFaceField& u, const UFaceField& v_on_u,
                               const ReferenceDensity& rho, int i, const SchemeConfig& cfg);

// Advective tendencies -(1/rho0) div(rho0 U u_c) on interior faces. Inputs
// must have filled ghosts. Boundary-face values are computed but are
// overwritten by the boundary treatment.
MomentumTendency momentum_tendency_high_order(const FlowState& s, const StaggeredInterpolants& it,
                                              const ReferenceDensity& rho, const SchemeConfig& cfg,
                                              const StaggeredGrid2D& g);
MomentumTendency momentum_tendency_pressel(const FlowState& s, const ReferenceDensity& rho,
                                           const SchemeConfig& cfg, const StaggeredGrid2D& g);
MomentumTendency momentum_tendency_wicker_skamarock(const FlowState& s, const ReferenceDensity& rho,
                                                    int order, const StaggeredGrid2D& g);
MomentumTendency momentum_tendency_morinishi(const FlowState& s, const ReferenceDensity& rho,
                                             int order, const StaggeredGrid2D& g);

// Dispatch on cfg.scheme; `it` is required for HighOrderWeno.
MomentumTendency advective_tendency(const FlowState& s, const StaggeredInterpolants* it,
                                    const ReferenceDensity& rho, const SchemeConfig& cfg,
                                    const StaggeredGrid2D& g);

}  // namespace hiweno
