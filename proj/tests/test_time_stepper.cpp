#include <cmath>
#include <limits>
#include <valarray>

#include "doctest.h"
#include "helpers.hpp"
#include "hiweno/time_stepper.hpp"

using namespace hiweno;
using testing::kPi;

TEST_SUITE("time_stepper") {

TEST_CASE("zero right-hand side leaves the state unchanged") {
  double y = ssp_rk3_rhs(2.5, 0.0, 0.1, [](double, double) { return 0.0; });
  CHECK(y == 2.5);
}

TEST_CASE("linear ODE: one step is the cubic Taylor polynomial") {
  for (double z : {-0.5, 0.1, 1.0}) {
    double y = ssp_rk3_rhs(1.0, 0.0, 1.0, [z](double y, double) { return z * y; });
    CHECK(y == doctest::Approx(1 + z + z * z / 2 + z * z * z / 6).epsilon(1e-15));
  }
}

TEST_CASE("global error is third order") {
  using V = std::valarray<double>;
  // Nonlinear, nonautonomous scalar ODE against a fine-step reference.
  auto rhs = [](double y, double t) { return -y * y + std::cos(t); };
  auto solve = [&](int steps) {
    double y = 1.0, t = 0.0, h = 1.0 / steps;
    for (int s = 0; s < steps; ++s, t += h) y = ssp_rk3_rhs(y, t, h, rhs);
    return y;
  };
  double ref = solve(20000);
  std::vector<int> ns{10, 20, 40, 80};
  std::vector<double> errs;
  for (int n : ns) errs.push_back(std::fabs(solve(n) - ref));
  CHECK(testing::fitted_order(ns, errs) == doctest::Approx(3.0).epsilon(0.2 / 3));
  V v0{1.0, 0.0};
  auto rot = [](const V& y, double) { return V{-y[1], y[0]}; };
  V v1 = ssp_rk3_rhs(v0, 0.0, 1e-2, rot);
  CHECK(v1[0] == doctest::Approx(std::cos(1e-2)).epsilon(1e-8));
}

TEST_CASE("CFL time step") {
  auto g = build_grid({0, 1.6, 0, 1.6}, 16, 16, BoundaryKind::PeriodicBoth, 5);
  FlowState s(g);
  s.u.fill(1.0);
  CHECK(compute_dt(s, 0.1, g) == doctest::Approx(0.01).epsilon(1e-12));
  s.v.fill(-2.0);
  CHECK(compute_dt(s, 0.1, g) == doctest::Approx(0.1 / (1 / 0.1 + 2 / 0.1)));
  FlowState z(g);
  CHECK(std::isfinite(compute_dt(z, 0.5, g)));
}

TEST_CASE("vortex patch first step from a direct max scan") {
  const auto& c = case_spec("vortex_patch");
  auto g = case_grid(c, 128, 128, 5);
  auto s = init_case(c, g);
  double mu = 0, mv = 0;
  for (int j = 0; j < 128; ++j)
    for (int i = 0; i < 128; ++i) {
      mu = std::max(mu, std::fabs(c.initial(Quantity::VelocityX, g.x_face(i), g.y_mid(j), 0)));
      mv = std::max(mv, std::fabs(c.initial(Quantity::VelocityY, g.x_mid(i), g.y_face(j), 0)));
    }
  CHECK(compute_dt(s, 0.1, g) == doctest::Approx(0.1 / (mu / g.dx() + mv / g.dy())).epsilon(1e-12));
}

TEST_CASE("solver: rest stays at rest, non-finite input is a blow-up") {
  auto g = testing::periodic_grid(16);
  SolverConfig cfg;
  FlowSolver solver(g, cfg, ReferenceDensity::uniform(g));
  FlowState s(g);
  solver.fill(s);
  solver.step(s, 0.1);
  CHECK(max_abs(s.u) == 0.0);
  CHECK(max_abs(s.v) == 0.0);
  CHECK(s.t == doctest::Approx(0.1));
  s.u(3, 4) = std::numeric_limits<double>::quiet_NaN();
  solver.fill(s);
  CHECK_THROWS_AS(solver.step(s, 0.1), BlowUpError);
}

TEST_CASE("each step leaves a discretely divergence-free field") {
  auto g = testing::periodic_grid(32);
  auto rho = ReferenceDensity::uniform(g);
  SolverConfig cfg;
  FlowSolver solver(g, cfg, rho);
  FlowState s(g);
  s.u = sample<NodeKind::UFace>(g, [](double x, double y) { return std::sin(x) * std::cos(y) + 0.2 * std::cos(2 * x); });
  s.v = sample<NodeKind::VFace>(g, [](double x, double y) { return -std::cos(x) * std::sin(y) + 0.1 * std::sin(y); });
  PressureProjector P(g, rho, 6);
  solver.fill(s);
  P.project(s.u, s.v);  // stages combine with y0, so start discretely solenoidal
  solver.fill(s);
  for (int n = 0; n < 3; ++n) solver.step(s, 0.02);
  CHECK(max_abs(P.divergence(s.u, s.v)) < 1e-12);
  CHECK(solver.pressure().has_value());
}

TEST_CASE("state linear combination") {
  auto g = testing::periodic_grid(10);
  FlowState a(g, true), b(g, true);
  a.u.fill(1.0);
  b.u.fill(4.0);
  a.phi->fill(2.0);
  b.phi->fill(-2.0);
  auto c = lincomb(0.75, a, 0.25, b);
  CHECK(c.u(2, 2) == doctest::Approx(1.75));
  CHECK((*c.phi)(1, 1) == doctest::Approx(1.0));
  CHECK(all_finite(c));
}

}  // TEST_SUITE
