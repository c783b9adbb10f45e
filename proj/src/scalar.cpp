#include "hiweno/scalar.hpp"

#include <cmath>
#include <stdexcept>

namespace hiweno {

namespace {

template <int K>
void scalar_kernel(const CellField& phi, const CellField& uc, const CellField& vc,
                   const StaggeredGrid2D& g, const WenoParams& prm, CellField& out) {
  const std::ptrdiff_t sx = 1, sy = phi.stride();
  const double idx = 1.0 / g.dx(), idy = 1.0 / g.dy();
#pragma omp parallel for schedule(static)
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) {
      const double* p = phi.at(i, j);
      double u = uc(i, j), v = vc(i, j);
      double dx, dy;
      // Edge values at x_{i+1} and x_i, both biased by the sign of u.
      if (u >= 0) dx = weno_plus<K>(p, sx, prm) - weno_plus<K>(p - sx, sx, prm);
      else dx = weno_minus<K>(p + sx, sx, prm) - weno_minus<K>(p, sx, prm);
      if (v >= 0) dy = weno_plus<K>(p, sy, prm) - weno_plus<K>(p - sy, sy, prm);
      else dy = weno_minus<K>(p + sy, sy, prm) - weno_minus<K>(p, sy, prm);
      out(i, j) = -(u * dx * idx + v * dy * idy);
    }
}

}  // namespace

CellField scalar_tendency(const CellField& phi, const CellField& uc, const CellField& vc,
                          const StaggeredGrid2D& g, int k, const WenoParams& prm) {
  if (g.halo() < k) throw std::invalid_argument("grid halo too small for scalar transport");
  CellField out(g);
  switch (k) {
    case 2: scalar_kernel<2>(phi, uc, vc, g, prm, out); break;
    case 3: scalar_kernel<3>(phi, uc, vc, g, prm, out); break;
    case 4: scalar_kernel<4>(phi, uc, vc, g, prm, out); break;
    default: throw std::invalid_argument("k must be 2, 3 or 4");
  }
  return out;
}

namespace thermo {
double temperature(double s, double p0) {
  return T_ref * std::exp((s - s_ref + Rd * std::log(p0 / p_ref)) / cpd);
}
double entropy(double T, double p0) {
  return s_ref + cpd * std::log(T / T_ref) - Rd * std::log(p0 / p_ref);
}
double entropy_temperature(double s) { return T_ref * std::exp((s - s_ref) / cpd); }
}  // namespace thermo

double ReferenceState::T0(double z) const { return Ts - thermo::g * z / thermo::cpd; }
double ReferenceState::p0(double z) const {
  return thermo::p_ref * std::pow(T0(z) / Ts, thermo::cpd / thermo::Rd);
}
double ReferenceState::rho0(double z) const { return p0(z) / (thermo::Rd * T0(z)); }

ReferenceState build_reference_state(const StaggeredGrid2D& g, double Ts) {
  ReferenceState ref;
  ref.Ts = Ts;
  ref.halo = g.halo();
  const int h = g.halo(), ny = g.ny();
  for (double z : {g.bounds().ymin, g.bounds().ymax})
    if (!(ref.T0(z) > 0)) throw std::domain_error("reference temperature is nonpositive inside the domain");
  for (int j = -h; j < ny + h; ++j) {
    int jj = j;
    // Channel ghosts mirror the interior profile (even reflection).
    if (!g.periodic_y()) jj = j < 0 ? -1 - j : (j >= ny ? 2 * ny - 1 - j : j);
    double z = g.y_mid(jj);
    ref.T0_c.push_back(ref.T0(z));
    ref.p0_c.push_back(ref.p0(z));
    ref.rho0_c.push_back(ref.rho0(z));
  }
  return ref;
}

VFaceField buoyancy_from_entropy(const CellField& s, const ReferenceState& ref,
                                 const StaggeredGrid2D& g) {
  const int h = g.halo();
  CellField b(g);
  for (int j = -h; j < g.ny() + h; ++j) {
    double T0 = ref.T0_center(j), p0 = ref.p0_center(j);
    for (int i = -h; i < g.nx() + h; ++i) b(i, j) = thermo::g * (thermo::temperature(s(i, j), p0) - T0) / T0;
  }
  VFaceField bv(g);
  for (int j = 0; j < bv.extent_y(); ++j)
    for (int i = 0; i < bv.extent_x(); ++i) bv(i, j) = 0.5 * (b(i, j - 1) + b(i, j));
  return bv;
}

CellField entropy_temperature(const CellField& s, const StaggeredGrid2D& g) {
  CellField th(g);
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) th(i, j) = thermo::entropy_temperature(s(i, j));
  return th;
}

double total_entropy(const CellField& s, const ReferenceDensity& rho, const StaggeredGrid2D& g) {
  double sum = 0.0;
  for (int j = 0; j < g.ny(); ++j) {
    double row = 0.0;
    for (int i = 0; i < g.nx(); ++i) row += s(i, j);
    sum += rho.center_row(j) * row;
  }
  return sum * g.dx() * g.dy();
}

}  // namespace hiweno
