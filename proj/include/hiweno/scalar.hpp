#pragma once

#include <vector>

#include "hiweno/density.hpp"
#include "hiweno/grid.hpp"
#include "hiweno/weno.hpp"

namespace hiweno {

// Non-conservative high-order advection: returns -(u_c dphi/dx + v_c dphi/dy)
// at interior centers. Both one-sided derivatives of a cell use the bias set
// by the sign of that cell's own center velocity. Ghosts of phi, uc, vc filled.
CellField scalar_tendency(const CellField& phi, const CellField& uc, const CellField& vc,
                          const StaggeredGrid2D& g, int k, const WenoParams& prm = {});

namespace thermo {
inline constexpr double g = 9.8;
inline constexpr double Rd = 287.1;
inline constexpr double cpd = 1004.0;
inline constexpr double s_ref = 6864.8;   // s~
inline constexpr double p_ref = 1.0e5;    // p~
inline constexpr double T_ref = 300.0;    // surface / reference temperature

// T from specific entropy at reference pressure p0.
double temperature(double s, double p0);
// Inverse of temperature().
double entropy(double T, double p0);
// Entropy temperature 300 exp((s - s~)/c_pd).
double entropy_temperature(double s);
}  // namespace thermo

// Dry isentropic hydrostatic profile sampled on the vertical grid lines.
struct ReferenceState {
  double Ts = thermo::T_ref;
  // Profiles as functions of height.
  double T0(double z) const;
  double p0(double z) const;
  double rho0(double z) const;
  // Samples at center rows j (halo rows included), index j + halo.
  std::vector<double> T0_c, p0_c, rho0_c;
  int halo = 0;
  double T0_center(int j) const { return T0_c[j + halo]; }
  double p0_center(int j) const { return p0_c[j + halo]; }
};

ReferenceState build_reference_state(const StaggeredGrid2D& g, double Ts = thermo::T_ref);

// b = g (T - T0)/T0 at centers, averaged to v-faces (2-point vertical mean).
// Ghosts of s must be filled.
VFaceField buoyancy_from_entropy(const CellField& s, const ReferenceState& ref,
                                 const StaggeredGrid2D& g);
CellField entropy_temperature(const CellField& s, const StaggeredGrid2D& g);
double total_entropy(const CellField& s, const ReferenceDensity& rho, const StaggeredGrid2D& g);

}  // namespace hiweno
