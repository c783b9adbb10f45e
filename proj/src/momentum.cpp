#include "hiweno/momentum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "views.hpp"

namespace hiweno {

using detail::ConstView;
using detail::MutView;

void SchemeConfig::validate() const {
  if (is_weno() && (k < 2 || k > 4)) throw std::invalid_argument("k must be 2, 3 or 4");
  if (!(weno.eps > 0)) throw std::invalid_argument("WENO eps must be positive");
  if (!(weno.p > 0)) throw std::invalid_argument("WENO power p must be positive");
  if (scheme == AdvectionScheme::PresselWeno && pressel_width == PresselWidth::Reduced && k < 2)
    throw std::invalid_argument("reduced upwind-interpolation width needs k >= 2");
}

int SchemeConfig::central_order() const noexcept {
  switch (scheme) {
    case AdvectionScheme::WickerSkamarock4:
    case AdvectionScheme::Morinishi4: return 4;
    case AdvectionScheme::WickerSkamarock6:
    case AdvectionScheme::Morinishi6: return 6;
    default: return 0;
  }
}

std::string to_string(AdvectionScheme s) {
  switch (s) {
    case AdvectionScheme::HighOrderWeno: return "hiweno";
    case AdvectionScheme::PresselWeno: return "pressel";
    case AdvectionScheme::WickerSkamarock4: return "ws4";
    case AdvectionScheme::WickerSkamarock6: return "ws6";
    case AdvectionScheme::Morinishi4: return "morinishi4";
    case AdvectionScheme::Morinishi6: return "morinishi6";
  }
  return "?";
}

AdvectionScheme parse_scheme(const std::string& name) {
  for (auto s : {AdvectionScheme::HighOrderWeno, AdvectionScheme::PresselWeno,
                 AdvectionScheme::WickerSkamarock4, AdvectionScheme::WickerSkamarock6,
                 AdvectionScheme::Morinishi4, AdvectionScheme::Morinishi6})
    if (to_string(s) == name) return s;
  throw std::invalid_argument("unknown scheme '" + name + "'");
}

namespace {

// u-momentum in an (a, b) frame; v-momentum uses the transposed frame.
// U lives at (a_i, b_{j+1/2}), V at (a_{i+1/2}, b_j), corners at (a_i, b_j).
struct Frame {
  ConstView U, V, Vt;           // transported, other component, other component at U nodes
  ConstView rhoU, rhoC, rhoK;   // rho0 at U nodes, centers, corners
  MutView dU;
  int na, nb, halo;
  double da, db;
};

Frame make_frame(const FlowState& s, const StaggeredInterpolants* it, const ReferenceDensity& rho,
                 const StaggeredGrid2D& g, MomentumTendency& out, bool v_component) {
  const bool t = v_component;
  Frame f{};
  if (!t) {
    f.U = detail::view(s.u);
    f.V = detail::view(s.v);
    if (it) f.Vt = detail::view(it->v_on_u);
    f.rhoU = detail::view(rho.on_u());
    f.dU = detail::mut_view(out.du);
    f.na = s.u.extent_x();
    f.nb = s.u.extent_y();
    f.da = g.dx();
    f.db = g.dy();
  } else {
    f.U = detail::view(s.v, true);
    f.V = detail::view(s.u, true);
    if (it) f.Vt = detail::view(it->u_on_v, true);
    f.rhoU = detail::view(rho.on_v(), true);
    f.dU = detail::mut_view(out.dv, true);
    f.na = s.v.extent_y();
    f.nb = s.v.extent_x();
    f.da = g.dy();
    f.db = g.dx();
  }
  f.rhoC = detail::view(rho.centers(), t);
  f.rhoK = detail::view(rho.corners(), t);
  f.halo = g.halo();
  return f;
}

// Numerical flux at the interface between node pointers f (left) and f+stride
// (right). a: advecting speed; alpha: Rusanov wave speed; q: conserved values.
template <int K>
inline double interface_flux(const double* f, const double* q, std::ptrdiff_t stride, double a,
                             double alpha, const SchemeConfig& cfg) {
  if (cfg.flux == NumericalFlux::Upwind)
    return a >= 0 ? weno_plus<K>(f, stride, cfg.weno) : weno_minus<K>(f + stride, stride, cfg.weno);
  double fp[2 * K], fm[2 * K];
  for (int m = 0; m < 2 * K; ++m) {
    std::ptrdiff_t o = (m - (K - 1)) * stride;
    fp[m] = 0.5 * (f[o] + alpha * q[o]);
    fm[m] = 0.5 * (f[o] - alpha * q[o]);
  }
  return weno_plus<K>(fp + (K - 1), 1, cfg.weno) + weno_minus<K>(fm + K, 1, cfg.weno);
}

// ---------------------------------------------------------------- hiweno

// Self flux along a for line b = j: out[c + 1] = F_{c+1/2}, c = -1..na-1.
template <int K>
void hiweno_self_line(const Frame& fr, int j, const SchemeConfig& cfg, std::vector<double>& f,
                      std::vector<double>& q, std::vector<double>& out) {
  const int h = fr.halo, n = fr.na;
  f.resize(n + 2 * h);
  q.resize(n + 2 * h);
  for (int l = -h; l < n + h; ++l) {
    double u = fr.U(l, j);
    q[l + h] = fr.rhoU(l, j) * u;
    f[l + h] = q[l + h] * u;
  }
  out.resize(n + 1);
  for (int c = -1; c < n; ++c) {
    double ul = fr.U(c, j), ur = fr.U(c + 1, j);
    double a = 0.5 * (ul + ur), alpha = std::max(std::fabs(ul), std::fabs(ur));
    out[c + 1] = interface_flux<K>(&f[c + h], &q[c + h], 1, a, alpha, cfg);
  }
}

// Cross flux along b for line a = i: out[r] = F at corner (i, r), r = 0..nb.
template <int K>
void hiweno_cross_line(const Frame& fr, int i, const SchemeConfig& cfg, std::vector<double>& g,
                       std::vector<double>& q, std::vector<double>& out) {
  const int h = fr.halo, n = fr.nb;
  g.resize(n + 2 * h);
  q.resize(n + 2 * h);
  for (int l = -h; l < n + h; ++l) {
    q[l + h] = fr.rhoU(i, l) * fr.U(i, l);
    g[l + h] = q[l + h] * fr.Vt(i, l);
  }
  out.resize(n + 1);
  for (int r = 0; r <= n; ++r) {
    double vl = fr.Vt(i, r - 1), vr = fr.Vt(i, r);
    double a = 0.5 * (vl + vr), alpha = std::max(std::fabs(vl), std::fabs(vr));
    out[r] = interface_flux<K>(&g[r - 1 + h], &q[r - 1 + h], 1, a, alpha, cfg);
  }
}

template <int K>
void hiweno_kernel(const Frame& fr, const SchemeConfig& cfg) {
#pragma omp parallel
  {
    std::vector<double> b1, b2, flux;
#pragma omp for schedule(static)
    for (int j = 0; j < fr.nb; ++j) {
      hiweno_self_line<K>(fr, j, cfg, b1, b2, flux);
      for (int i = 0; i < fr.na; ++i)
        fr.dU(i, j) = -(flux[i + 1] - flux[i]) / fr.da / fr.rhoU(i, j);
    }
#pragma omp for schedule(static)
    for (int i = 0; i < fr.na; ++i) {
      hiweno_cross_line<K>(fr, i, cfg, b1, b2, flux);
      for (int j = 0; j < fr.nb; ++j)
        fr.dU(i, j) -= (flux[j + 1] - flux[j]) / fr.db / fr.rhoU(i, j);
    }
  }
}

// ---------------------------------------------------------------- upwind interpolation

template <int K>
void pressel_kernel(const Frame& fr, const SchemeConfig& cfg) {
  const int w = cfg.pressel_width == PresselWidth::Full ? 2 * K : 2 * K - 2;
  const std::vector<double> wc = central_midpoint_weights(w);
  const int half = w / 2;
#pragma omp parallel
  {
    std::vector<double> flux;
#pragma omp for schedule(static)
    for (int j = 0; j < fr.nb; ++j) {
      flux.resize(fr.na + 1);
      for (int c = -1; c < fr.na; ++c) {
        // Advecting velocity at the center from the faces c-half+1..c+half.
        double ut = 0.0;
        for (int m = 0; m < w; ++m) ut += wc[m] * fr.U(c - half + 1 + m, j);
        double uh = ut >= 0 ? weno_plus<K>(fr.U.ptr(c, j), fr.U.sa, cfg.weno)
                            : weno_minus<K>(fr.U.ptr(c + 1, j), fr.U.sa, cfg.weno);
        flux[c + 1] = fr.rhoC(c, j) * ut * uh;
      }
      for (int i = 0; i < fr.na; ++i)
        fr.dU(i, j) = -(flux[i + 1] - flux[i]) / fr.da / fr.rhoU(i, j);
    }
#pragma omp for schedule(static)
    for (int i = 0; i < fr.na; ++i) {
      flux.resize(fr.nb + 1);
      for (int r = 0; r <= fr.nb; ++r) {
        // Advecting velocity at the corner from V faces i-half..i+half-1 of row r.
        double vt = 0.0;
        for (int m = 0; m < w; ++m) vt += wc[m] * fr.V(i - half + m, r);
        double uh = vt >= 0 ? weno_plus<K>(fr.U.ptr(i, r - 1), fr.U.sb, cfg.weno)
                            : weno_minus<K>(fr.U.ptr(i, r), fr.U.sb, cfg.weno);
        flux[r] = fr.rhoK(i, r) * vt * uh;
      }
      for (int j = 0; j < fr.nb; ++j)
        fr.dU(i, j) -= (flux[j + 1] - flux[j]) / fr.db / fr.rhoU(i, j);
    }
  }
}

// ---------------------------------------------------------------- upwind-biased central

// Central interface interpolation between p[0] and p[s].
inline double ws_interp(const double* p, std::ptrdiff_t s, int order) {
  if (order == 4) return (7.0 * (p[0] + p[s]) - (p[-s] + p[2 * s])) / 12.0;
  return (37.0 * (p[0] + p[s]) - 8.0 * (p[-s] + p[2 * s]) + (p[-2 * s] + p[3 * s])) / 60.0;
}

void ws_kernel(const Frame& fr, int order) {
#pragma omp parallel
  {
    std::vector<double> flux;
#pragma omp for schedule(static)
    for (int j = 0; j < fr.nb; ++j) {
      flux.resize(fr.na + 1);
      for (int c = -1; c < fr.na; ++c) {
        double adv = 0.5 * (fr.rhoU(c, j) * fr.U(c, j) + fr.rhoU(c + 1, j) * fr.U(c + 1, j));
        flux[c + 1] = adv * ws_interp(fr.U.ptr(c, j), fr.U.sa, order);
      }
      for (int i = 0; i < fr.na; ++i)
        fr.dU(i, j) = -(flux[i + 1] - flux[i]) / fr.da / fr.rhoU(i, j);
    }
#pragma omp for schedule(static)
    for (int i = 0; i < fr.na; ++i) {
      flux.resize(fr.nb + 1);
      for (int r = 0; r <= fr.nb; ++r) {
        double adv = fr.rhoK(i, r) * 0.5 * (fr.V(i - 1, r) + fr.V(i, r));
        flux[r] = adv * ws_interp(fr.U.ptr(i, r - 1), fr.U.sb, order);
      }
      for (int j = 0; j < fr.nb; ++j)
        fr.dU(i, j) -= (flux[j + 1] - flux[j]) / fr.db / fr.rhoU(i, j);
    }
  }
}

// ---------------------------------------------------------------- skew-symmetric central

// Divergence form sum_n c_n delta_n(A * avg_n(U)) / (n h), with the advecting
// mass flux A = sum_m c_m avg_m(rho0 V) at each flux point.
struct MorinishiCoeffs {
  int count;
  int n[3];
  double c[3];
};

MorinishiCoeffs morinishi_coeffs(int order) {
  if (order == 4) return {2, {1, 3, 0}, {9.0 / 8, -1.0 / 8, 0.0}};
  if (order == 6) return {3, {1, 3, 5}, {150.0 / 128, -25.0 / 128, 3.0 / 128}};
  if (order == 2) return {1, {1, 0, 0}, {1.0, 0.0, 0.0}};
  throw std::invalid_argument("central order must be 2, 4 or 6");
}

void morinishi_kernel(const Frame& fr, int order) {
  const MorinishiCoeffs mc = morinishi_coeffs(order);
  const int reach = mc.n[mc.count - 1];  // widest spacing
#pragma omp parallel
  {
    std::vector<double> A;
#pragma omp for schedule(static)
    for (int j = 0; j < fr.nb; ++j) {
      // Centers c at a_{c+1/2}; flux points of u-node i for spacing n are
      // centers i+(n-1)/2 and i-(n+1)/2.
      const int c0 = -(reach + 1) / 2, c1 = fr.na - 1 + (reach - 1) / 2;
      A.assign(c1 - c0 + 1, 0.0);
      for (int c = c0; c <= c1; ++c) {
        double a = 0.0;
        for (int t = 0; t < mc.count; ++t) {
          int m = mc.n[t];
          int ip = c + (1 + m) / 2, im = c + (1 - m) / 2;
          a += mc.c[t] * 0.5 * (fr.rhoU(ip, j) * fr.U(ip, j) + fr.rhoU(im, j) * fr.U(im, j));
        }
        A[c - c0] = a;
      }
      for (int i = 0; i < fr.na; ++i) {
        double sum = 0.0;
        for (int t = 0; t < mc.count; ++t) {
          int n = mc.n[t];
          int cp = i + (n - 1) / 2, cm = i - (n + 1) / 2;
          double bp = 0.5 * (fr.U(cp + (1 + n) / 2, j) + fr.U(cp + (1 - n) / 2, j));
          double bm = 0.5 * (fr.U(cm + (1 + n) / 2, j) + fr.U(cm + (1 - n) / 2, j));
          sum += mc.c[t] * (A[cp - c0] * bp - A[cm - c0] * bm) / (n * fr.da);
        }
        fr.dU(i, j) = -sum / fr.rhoU(i, j);
      }
    }
#pragma omp for schedule(static)
    for (int i = 0; i < fr.na; ++i) {
      // Corner rows r at b_r; flux points of u-node j for spacing n are
      // rows j+(1+n)/2 and j+(1-n)/2.
      const int r0 = (1 - reach) / 2, r1 = fr.nb + (reach - 1) / 2;
      A.assign(r1 - r0 + 1, 0.0);
      for (int r = r0; r <= r1; ++r) {
        double a = 0.0;
        for (int t = 0; t < mc.count; ++t) {
          int m = mc.n[t];
          a += mc.c[t] * 0.5 * (fr.V(i + (m - 1) / 2, r) + fr.V(i - (m + 1) / 2, r));
        }
        A[r - r0] = fr.rhoK(i, r) * a;
      }
      for (int j = 0; j < fr.nb; ++j) {
        double sum = 0.0;
        for (int t = 0; t < mc.count; ++t) {
          int n = mc.n[t];
          int rp = j + (1 + n) / 2, rm = j + (1 - n) / 2;
          double bp = 0.5 * (fr.U(i, rp + (n - 1) / 2) + fr.U(i, rp - (n + 1) / 2));
          double bm = 0.5 * (fr.U(i, rm + (n - 1) / 2) + fr.U(i, rm - (n + 1) / 2));
          sum += mc.c[t] * (A[rp - r0] * bp - A[rm - r0] * bm) / (n * fr.db);
        }
        fr.dU(i, j) -= sum / fr.rhoU(i, j);
      }
    }
  }
}

template <class Fn>
MomentumTendency both_components(const FlowState& s, const StaggeredInterpolants* it,
                                 const ReferenceDensity& rho, const StaggeredGrid2D& g, Fn&& kernel) {
  MomentumTendency out(g);
  kernel(make_frame(s, it, rho, g, out, false));
  kernel(make_frame(s, it, rho, g, out, true));
  return out;
}

void check_halo(const StaggeredGrid2D& g, int need) {
  if (g.halo() < need) throw std::invalid_argument("grid halo too small for the selected scheme");
}

}  // namespace

std::vector<double> flux_self(const UFaceField& u, const ReferenceDensity& rho, int j,
                              const SchemeConfig& cfg) {
  Frame fr{};
  fr.U = detail::view(u);
  fr.rhoU = detail::view(rho.on_u());
  fr.na = u.extent_x();
  fr.nb = u.extent_y();
  fr.halo = u.halo();
  std::vector<double> a, b, out;
  switch (cfg.k) {
    case 2: hiweno_self_line<2>(fr, j, cfg, a, b, out); break;
    case 3: hiweno_self_line<3>(fr, j, cfg, a, b, out); break;
    default: hiweno_self_line<4>(fr, j, cfg, a, b, out); break;
  }
  return out;
}

std::vector<double> flux_cross(const UFaceField& u, const UFaceField& v_on_u,
                               const ReferenceDensity& rho, int i, const SchemeConfig& cfg) {
  Frame fr{};
  fr.U = detail::view(u);
  fr.Vt = detail::view(v_on_u);
  fr.rhoU = detail::view(rho.on_u());
  fr.na = u.extent_x();
  fr.nb = u.extent_y();
  fr.halo = u.halo();
  std::vector<double> a, b, out;
  switch (cfg.k) {
    case 2: hiweno_cross_line<2>(fr, i, cfg, a, b, out); break;
    case 3: hiweno_cross_line<3>(fr, i, cfg, a, b, out); break;
    default: hiweno_cross_line<4>(fr, i, cfg, a, b, out); break;
  }
  return out;
}

MomentumTendency momentum_tendency_high_order(const FlowState& s, const StaggeredInterpolants& it,
                                              const ReferenceDensity& rho, const SchemeConfig& cfg,
                                              const StaggeredGrid2D& g) {
  check_halo(g, 2 * cfg.k - 1);
  return both_components(s, &it, rho, g, [&](const Frame& fr) {
    switch (cfg.k) {
      case 2: hiweno_kernel<2>(fr, cfg); break;
      case 3: hiweno_kernel<3>(fr, cfg); break;
      default: hiweno_kernel<4>(fr, cfg); break;
    }
  });
}

MomentumTendency momentum_tendency_pressel(const FlowState& s, const ReferenceDensity& rho,
                                           const SchemeConfig& cfg, const StaggeredGrid2D& g) {
  check_halo(g, cfg.k + 1);
  return both_components(s, nullptr, rho, g, [&](const Frame& fr) {
    switch (cfg.k) {
      case 2: pressel_kernel<2>(fr, cfg); break;
      case 3: pressel_kernel<3>(fr, cfg); break;
      default: pressel_kernel<4>(fr, cfg); break;
    }
  });
}

MomentumTendency momentum_tendency_wicker_skamarock(const FlowState& s, const ReferenceDensity& rho,
                                                    int order, const StaggeredGrid2D& g) {
  if (order != 4 && order != 6) throw std::invalid_argument("upwind-biased order must be 4 or 6");
  check_halo(g, order / 2 + 1);
  return both_components(s, nullptr, rho, g, [&](const Frame& fr) { ws_kernel(fr, order); });
}

MomentumTendency momentum_tendency_morinishi(const FlowState& s, const ReferenceDensity& rho,
                                             int order, const StaggeredGrid2D& g) {
  morinishi_coeffs(order);
  check_halo(g, order - 1);
  return both_components(s, nullptr, rho, g, [&](const Frame& fr) { morinishi_kernel(fr, order); });
}

MomentumTendency advective_tendency(const FlowState& s, const StaggeredInterpolants* it,
                                    const ReferenceDensity& rho, const SchemeConfig& cfg,
                                    const StaggeredGrid2D& g) {
  switch (cfg.scheme) {
    case AdvectionScheme::HighOrderWeno:
      if (!it) throw std::invalid_argument("high-order scheme needs staggered interpolants");
      return momentum_tendency_high_order(s, *it, rho, cfg, g);
    case AdvectionScheme::PresselWeno: return momentum_tendency_pressel(s, rho, cfg, g);
    case AdvectionScheme::WickerSkamarock4: return momentum_tendency_wicker_skamarock(s, rho, 4, g);
    case AdvectionScheme::WickerSkamarock6: return momentum_tendency_wicker_skamarock(s, rho, 6, g);
    case AdvectionScheme::Morinishi4: return momentum_tendency_morinishi(s, rho, 4, g);
    case AdvectionScheme::Morinishi6: return momentum_tendency_morinishi(s, rho, 6, g);
  }
  throw std::logic_error("unreachable");
}

}  // namespace hiweno
