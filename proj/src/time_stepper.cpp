#include "hiweno/time_stepper.hpp"

#include <algorithm>
#include <cmath>

#include "hiweno/scalar.hpp"
#include "hiweno/stagger_interp.hpp"

namespace hiweno {

namespace {

double max_abs(const FieldStorage& f) {
  double m = 0.0;
  for (int j = 0; j < f.extent_y(); ++j)
    for (int i = 0; i < f.extent_x(); ++i) m = std::max(m, std::fabs(f(i, j)));
  return m;
}

bool finite(const FieldStorage& f) {
  for (int j = 0; j < f.extent_y(); ++j)
    for (int i = 0; i < f.extent_x(); ++i)
      if (!std::isfinite(f(i, j))) return false;
  return true;
}

// out = a x + b y over the full storage (halo included).
void axpby(FieldStorage& out, double a, const FieldStorage& x, double b, const FieldStorage& y) {
  auto o = out.storage();
  auto xs = x.storage();
  auto ys = y.storage();
  for (std::size_t n = 0; n < o.size(); ++n) o[n] = a * xs[n] + b * ys[n];
}

void add_scaled(FieldStorage& out, const FieldStorage& x, double dt, const FieldStorage& dx) {
  for (int j = 0; j < out.extent_y(); ++j)
    for (int i = 0; i < out.extent_x(); ++i) out(i, j) = x(i, j) + dt * dx(i, j);
}

}  // namespace

double compute_dt(const FlowState& s, double cfl, const StaggeredGrid2D& g) {
  if (!(cfl > 0)) throw std::invalid_argument("cfl must be positive");
  return cfl / (max_abs(s.u) / g.dx() + max_abs(s.v) / g.dy() + 1e-14);
}

bool all_finite(const FlowState& s) {
  return finite(s.u) && finite(s.v) && (!s.phi || finite(*s.phi));
}

FlowState lincomb(double a, const FlowState& x, double b, const FlowState& y) {
  FlowState out = x;
  axpby(out.u, a, x.u, b, y.u);
  axpby(out.v, a, x.v, b, y.v);
  if (x.phi) axpby(*out.phi, a, *x.phi, b, *y.phi);
  out.t = a * x.t + b * y.t;
  return out;
}

FlowSolver::FlowSolver(const StaggeredGrid2D& g, SolverConfig cfg, ReferenceDensity rho,
                       ExactSolution exact, SourceFn sources)
    : grid_(g), cfg_(cfg), rho_(std::move(rho)), filler_(grid_, std::move(exact)),
      sources_(std::move(sources)) {
  cfg_.scheme.validate();
  if (cfg_.project)
    projector_ = std::make_unique<PressureProjector>(grid_, rho_, cfg_.div_order, cfg_.symbol);
}

FlowState FlowSolver::euler_stage(const FlowState& s, double dt) {
  const auto& sc = cfg_.scheme;
  const bool hiweno = sc.scheme == AdvectionScheme::HighOrderWeno;
  std::optional<StaggeredInterpolants> it;
  if (hiweno) it = interpolate_velocities(s, filler_, sc.k);
  else if (s.phi) it = interpolate_centers(s, filler_, sc.k);

  MomentumTendency mt = advective_tendency(s, it ? &*it : nullptr, rho_, sc, grid_);
  Tendencies tend{std::move(mt.du), std::move(mt.dv), std::nullopt};
  if (s.phi) tend.dphi = scalar_tendency(*s.phi, it->u_centers, it->v_centers, grid_, sc.k, sc.weno);
  if (sources_) sources_(s, s.t, tend);

  FlowState out(grid_, s.phi.has_value());
  add_scaled(out.u, s.u, dt, tend.du);
  add_scaled(out.v, s.v, dt, tend.dv);
  if (s.phi) add_scaled(*out.phi, *s.phi, dt, *tend.dphi);
  out.t = s.t + dt;
  filler_.fill_state(out);
  if (projector_) {
    CellField P = projector_->project(out.u, out.v);
    filler_.fill_state(out);
    for (int j = 0; j < grid_.ny(); ++j)
      for (int i = 0; i < grid_.nx(); ++i) P(i, j) *= rho_.center_row(j) / dt;
    pressure_ = std::move(P);
  }
  if (!all_finite(out)) throw BlowUpError(out.t);
  return out;
}

void FlowSolver::step(FlowState& s, double dt) {
  const double t_end = s.t + dt;
  auto euler = [this](const FlowState& y, double, double h) { return euler_stage(y, h); };
  auto comb = [this](double a, const FlowState& x, double b, const FlowState& y) {
    FlowState out = lincomb(a, x, b, y);
    filler_.fill_state(out);
    return out;
  };
  FlowState next = ssp_rk3(s, s.t, dt, euler, comb);
  next.t = t_end;
  filler_.fill_state(next);
  if (!all_finite(next)) throw BlowUpError(next.t);
  s = std::move(next);
}

}  // namespace hiweno
