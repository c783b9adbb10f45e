#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

#include "hiweno/density.hpp"
#include "hiweno/grid.hpp"
#include "hiweno/momentum.hpp"
#include "hiweno/pressure.hpp"

namespace hiweno {

struct Tendencies {
  UFaceField du;
  VFaceField dv;
  std::optional<CellField> dphi;
};

// Adds source terms evaluated for `state` at time t into `tend`.
using SourceFn = std::function<void(const FlowState& state, double t, Tendencies& tend)>;

class BlowUpError : public std::runtime_error {
 public:
  explicit BlowUpError(double t)
      : std::runtime_error("non-finite values at t = " + std::to_string(t)), time_(t) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

// cfl / (max|u|/dx + max|v|/dy + 1e-14) over interior nodes.
double compute_dt(const FlowState& s, double cfl, const StaggeredGrid2D& g);

// SSP-RK3 in convex-combination form. euler(y, t, dt) must return y + dt L(y, t)
// (including any projection); lincomb(a, x, b, y) returns a x + b y.
template <class State, class Euler, class Combine>
State ssp_rk3(const State& y0, double t, double dt, Euler&& euler, Combine&& lincomb) {
  State y1 = euler(y0, t, dt);
  State y2 = lincomb(0.75, y0, 0.25, euler(y1, t + dt, dt));
  return lincomb(1.0 / 3.0, y0, 2.0 / 3.0, euler(y2, t + 0.5 * dt, dt));
}

// Same scheme for a plain right-hand side rhs(y, t) (y + dt * rhs must be valid).
template <class State, class Rhs>
State ssp_rk3_rhs(const State& y0, double t, double dt, Rhs&& rhs) {
  auto euler = [&](const State& y, double tt, double h) -> State { return y + h * rhs(y, tt); };
  auto comb = [](double a, const State& x, double b, const State& y) -> State { return a * x + b * y; };
  return ssp_rk3(y0, t, dt, euler, comb);
}

struct SolverConfig {
  SchemeConfig scheme{};
  int div_order = 6;
  PressureSymbol symbol = PressureSymbol::ModifiedWavenumber;
  bool project = true;
};

// One time step of the full scheme: per SSP-RK3 stage, ghost fill ->
// momentum tendency -> sources -> forward-Euler update -> projection, with
// the scalar advanced by cached center velocities.
class FlowSolver {
 public:
  FlowSolver(const StaggeredGrid2D& g, SolverConfig cfg, ReferenceDensity rho,
             ExactSolution exact = {}, SourceFn sources = {});
  FlowSolver(const FlowSolver&) = delete;
  FlowSolver& operator=(const FlowSolver&) = delete;

  // s must have ghosts filled at s.t; result has ghosts filled at s.t + dt.
  FlowState euler_stage(const FlowState& s, double dt);
  // Advances s (ghosts filled on entry and exit) by dt. Throws BlowUpError.
  void step(FlowState& s, double dt);
  void fill(FlowState& s) const { filler_.fill_state(s); }

  // Dynamic pressure p' of the most recent stage (rho0 P / dt).
  const std::optional<CellField>& pressure() const noexcept { return pressure_; }
  const ReferenceDensity& density() const noexcept { return rho_; }
  const StaggeredGrid2D& grid() const noexcept { return grid_; }
  const SolverConfig& config() const noexcept { return cfg_; }
  const GhostFiller& filler() const noexcept { return filler_; }

 private:
  StaggeredGrid2D grid_;
  SolverConfig cfg_;
  ReferenceDensity rho_;
  GhostFiller filler_;
  SourceFn sources_;
  std::unique_ptr<PressureProjector> projector_;
  std::optional<CellField> pressure_;
};

bool all_finite(const FlowState& s);
FlowState lincomb(double a, const FlowState& x, double b, const FlowState& y);

}  // namespace hiweno
