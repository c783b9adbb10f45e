#include "hiweno/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

namespace hiweno {

namespace {

constexpr double kPi = std::numbers::pi;

CaseSpec make_vortex_patch() {
  CaseSpec c;
  c.name = "vortex_patch";
  c.bounds = {0, 2 * kPi, 0, 2 * kPi};
  c.cfl = 0.1;
  c.tend = 5.0;
  c.project = false;
  c.default_n = 128;
  c.initial = [](Quantity q, double x, double y, double) {
    bool inside = (x - kPi) * (x - kPi) + (y - kPi) * (y - kPi) < kPi / 2;
    if (!inside) return 0.0;
    return q == Quantity::VelocityX ? -0.5 * (y - kPi) : 0.5 * (x - kPi);
  };
  return c;
}

CaseSpec make_taylor_vortex() {
  CaseSpec c;
  c.name = "taylor_vortex";
  c.bounds = {-8, 8, -8, 8};
  c.dt = 1e-4;
  c.tend = 0.01;
  c.default_n = 108;
  c.initial = [](Quantity q, double x, double y, double) {
    double e = std::exp(0.5 * (1 - x * x - y * y));
    return q == Quantity::VelocityX ? -y * e + 8.0 : x * e;
  };
  return c;
}

CaseSpec make_shear_layer() {
  CaseSpec c;
  c.name = "shear_layer";
  c.bounds = {0, 2 * kPi, 0, 2 * kPi};
  c.cfl = 0.2;
  c.tend = 14.0;
  c.default_n = 192;
  c.initial = [](Quantity q, double x, double y, double) {
    const double rho = kPi / 15, delta = 0.05;
    if (q == Quantity::VelocityY) return delta * std::sin(x);
    return y <= kPi ? std::tanh((y - kPi / 2) / rho) : std::tanh((3 * kPi / 2 - y) / rho);
  };
  return c;
}

CaseSpec make_dirichlet() {
  CaseSpec c;
  c.name = "dirichlet_manufactured";
  c.bounds = {0, kPi, 0, kPi};
  c.bc = BoundaryKind::DirichletExact;
  c.dt = 1e-5;
  c.tend = 0.1;
  c.default_n = 32;
  c.exact = [](Quantity q, double x, double y, double t) {
    switch (q) {
      case Quantity::VelocityX: return (1 + t) * std::sin(x) * std::cos(y);
      case Quantity::VelocityY: return -(1 + t) * std::cos(x) * std::sin(y);
      default: return 0.0;
    }
  };
  c.initial = c.exact;
  c.forcing = [](Quantity q, double x, double y, double t) {
    double a = 0.5 * (1 + t) * (1 + t);
    switch (q) {
      case Quantity::VelocityX: return std::sin(x) * std::cos(y) + a * std::sin(2 * x);
      case Quantity::VelocityY: return -std::cos(x) * std::sin(y) + a * std::sin(2 * y);
      default: return 0.0;
    }
  };
  return c;
}

CaseSpec make_passive_scalar() {
  CaseSpec c;
  c.name = "passive_scalar";
  c.bounds = {0, 2 * kPi, 0, 2 * kPi};
  c.dt = 1e-3;
  c.tend = 1.0;
  c.default_n = 64;
  c.scalar = true;
  c.exact = [](Quantity q, double x, double y, double t) {
    double ct = std::cos(t);
    switch (q) {
      case Quantity::VelocityX: return -ct * std::sin(x) * std::sin(2 * y);
      case Quantity::VelocityY: return ct * std::cos(x) * std::sin(y) * std::sin(y);
      case Quantity::Scalar: return 2 + std::cos(x) * std::sin(y) * ct;
      default: return 0.0;
    }
  };
  c.initial = c.exact;
  // Sources make (u, v, phi) an exact solution with zero pressure:
  // Phi = d_t q + u d_x q + v d_y q for each component.
  c.forcing = [](Quantity q, double x, double y, double t) {
    double ct = std::cos(t), st = std::sin(t), c2 = ct * ct;
    double sx = std::sin(x), cx = std::cos(x), sy = std::sin(y), cy = std::cos(y);
    double s2y = std::sin(2 * y), c2y = std::cos(2 * y);
    switch (q) {
      case Quantity::VelocityX:
        return st * sx * s2y + c2 * sx * cx * s2y * s2y - 2 * c2 * sx * cx * sy * sy * c2y;
      case Quantity::VelocityY: return -st * cx * sy * sy + c2 * sy * sy * s2y;
      case Quantity::Scalar:
        return -st * cx * sy + c2 * sx * sx * s2y * sy + c2 * cx * cx * sy * sy * cy;
      default: return 0.0;
    }
  };
  return c;
}

CaseSpec make_straka() {
  CaseSpec c;
  c.name = "straka";
  c.bounds = {-25600, 25600, 0, 6400};
  c.bc = BoundaryKind::ChannelNoFlowVertical;
  c.cfl = 0.5;
  c.dt_max = 1.0;
  c.tend = 900.0;
  c.default_n = 256;
  c.scalar = true;
  c.buoyancy = true;
  c.initial = [](Quantity q, double x, double z, double) {
    if (q != Quantity::Scalar) return 0.0;
    ReferenceState ref;
    double L = std::sqrt((x / 4000) * (x / 4000) + ((z - 3000) / 2000) * ((z - 3000) / 2000));
    double dT = -7.5 * (std::cos(std::min(L, 1.0) * kPi) + 1.0);
    return thermo::entropy(ref.T0(z) + dT, ref.p0(z));
  };
  return c;
}

const std::map<std::string, CaseSpec>& registry() {
  static const std::map<std::string, CaseSpec> r = [] {
    std::map<std::string, CaseSpec> m;
    for (auto c : {make_vortex_patch(), make_taylor_vortex(), make_shear_layer(), make_dirichlet(),
                   make_passive_scalar(), make_straka()})
      m.emplace(c.name, c);
    return m;
  }();
  return r;
}

template <NodeKind Kind>
void sample_interior(StaggeredField<Kind>& f, const StaggeredGrid2D& g, const PointFn& fn, Quantity q,
                     double t) {
  for (int j = 0; j < f.extent_y(); ++j)
    for (int i = 0; i < f.extent_x(); ++i) f(i, j) = fn(q, g.node_x(Kind, i), g.node_y(Kind, j), t);
}

template <NodeKind Kind>
void add_forcing(StaggeredField<Kind>& f, const StaggeredGrid2D& g, const PointFn& fn, Quantity q,
                 double t) {
#pragma omp parallel for schedule(static)
  for (int j = 0; j < f.extent_y(); ++j)
    for (int i = 0; i < f.extent_x(); ++i) f(i, j) += fn(q, g.node_x(Kind, i), g.node_y(Kind, j), t);
}

}  // namespace

std::vector<std::string> case_names() {
  std::vector<std::string> names;
  for (const auto& [k, v] : registry()) names.push_back(k);
  return names;
}

const CaseSpec& case_spec(const std::string& name) {
  auto it = registry().find(name);
  if (it == registry().end()) throw std::invalid_argument("unknown case '" + name + "'");
  return it->second;
}

StaggeredGrid2D case_grid(const CaseSpec& c, int nx, int ny, int halo) {
  return StaggeredGrid2D(c.bounds, nx, ny, c.bc, halo);
}

ReferenceDensity case_density(const CaseSpec& c, const StaggeredGrid2D& g) {
  if (c.buoyancy) {
    ReferenceState ref;
    return ReferenceDensity(g, [ref](double z) { return ref.rho0(z); });
  }
  return ReferenceDensity::uniform(g);
}

FlowState init_case(const CaseSpec& c, const StaggeredGrid2D& g) {
  if (g.bc() != c.bc) throw std::invalid_argument("grid boundary kind does not match case " + c.name);
  FlowState s(g, c.scalar);
  sample_interior(s.u, g, c.initial, Quantity::VelocityX, 0.0);
  sample_interior(s.v, g, c.initial, Quantity::VelocityY, 0.0);
  if (s.phi) sample_interior(*s.phi, g, c.initial, Quantity::Scalar, 0.0);
  GhostFiller(g, c.exact).fill_state(s);
  return s;
}

SourceFields manufactured_sources(const CaseSpec& c, double t, const StaggeredGrid2D& g) {
  if (!c.forcing) throw std::invalid_argument("case " + c.name + " has no manufactured sources");
  SourceFields f{UFaceField(g), VFaceField(g), std::nullopt};
  add_forcing(f.fu, g, c.forcing, Quantity::VelocityX, t);
  add_forcing(f.fv, g, c.forcing, Quantity::VelocityY, t);
  if (c.scalar) {
    f.fphi = CellField(g);
    add_forcing(*f.fphi, g, c.forcing, Quantity::Scalar, t);
  }
  return f;
}

SourceFn case_sources(const CaseSpec& c, const StaggeredGrid2D& g) {
  if (c.forcing) {
    PointFn fn = c.forcing;
    return [fn, g](const FlowState&, double t, Tendencies& tend) {
      add_forcing(tend.du, g, fn, Quantity::VelocityX, t);
      add_forcing(tend.dv, g, fn, Quantity::VelocityY, t);
      if (tend.dphi) add_forcing(*tend.dphi, g, fn, Quantity::Scalar, t);
    };
  }
  if (c.buoyancy) {
    ReferenceState ref = build_reference_state(g);
    return [ref, g](const FlowState& s, double, Tendencies& tend) {
      VFaceField b = buoyancy_from_entropy(*s.phi, ref, g);
      for (int j = 0; j < b.extent_y(); ++j)
        for (int i = 0; i < b.extent_x(); ++i) tend.dv(i, j) += b(i, j);
    };
  }
  return {};
}

template <NodeKind Kind>
StaggeredField<Kind> sample(const StaggeredGrid2D& g, const std::function<double(double, double)>& f) {
  StaggeredField<Kind> out(g);
  const int h = g.halo();
  for (int j = -h; j < out.extent_y() + h; ++j)
    for (int i = -h; i < out.extent_x() + h; ++i) out(i, j) = f(g.node_x(Kind, i), g.node_y(Kind, j));
  return out;
}

template CellField sample(const StaggeredGrid2D&, const std::function<double(double, double)>&);
template UFaceField sample(const StaggeredGrid2D&, const std::function<double(double, double)>&);
template VFaceField sample(const StaggeredGrid2D&, const std::function<double(double, double)>&);

template <NodeKind Kind>
double l1_error(const StaggeredField<Kind>& num, const StaggeredGrid2D& g,
                const std::function<double(double, double)>& exact) {
  double sum = 0.0;
  for (int j = 0; j < num.extent_y(); ++j)
    for (int i = 0; i < num.extent_x(); ++i)
      sum += std::fabs(num(i, j) - exact(g.node_x(Kind, i), g.node_y(Kind, j)));
  return sum * g.dx() * g.dy();
}

template double l1_error(const CellField&, const StaggeredGrid2D&, const std::function<double(double, double)>&);
template double l1_error(const UFaceField&, const StaggeredGrid2D&, const std::function<double(double, double)>&);
template double l1_error(const VFaceField&, const StaggeredGrid2D&, const std::function<double(double, double)>&);

double l1_difference(const FieldStorage& a, const FieldStorage& b, const StaggeredGrid2D& g) {
  if (a.extent_x() != b.extent_x() || a.extent_y() != b.extent_y())
    throw std::invalid_argument("l1_difference of fields with different extents");
  double sum = 0.0;
  for (int j = 0; j < a.extent_y(); ++j)
    for (int i = 0; i < a.extent_x(); ++i) sum += std::fabs(a(i, j) - b(i, j));
  return sum * g.dx() * g.dy();
}

std::vector<double> eoc(const std::vector<double>& errors, const std::vector<int>& n) {
  if (errors.size() != n.size()) throw std::invalid_argument("eoc: mismatched lengths");
  std::vector<double> out;
  for (std::size_t m = 1; m < errors.size(); ++m)
    out.push_back(std::log(errors[m - 1] / errors[m]) / std::log(double(n[m]) / n[m - 1]));
  return out;
}

FlowState restrict_to_coarse(const FlowState& fine, const StaggeredGrid2D& fg, const StaggeredGrid2D& cg) {
  if (fg.nx() % cg.nx() || fg.ny() % cg.ny())
    throw std::invalid_argument("reference resolution is not a multiple of the coarse resolution");
  const int rx = fg.nx() / cg.nx(), ry = fg.ny() / cg.ny();
  if (rx % 2 == 0 || ry % 2 == 0)
    throw std::invalid_argument("coincident staggered nodes need an odd refinement ratio");
  const int ox = (rx - 1) / 2, oy = (ry - 1) / 2;
  FlowState c(cg, fine.phi.has_value());
  c.t = fine.t;
  for (int j = 0; j < c.u.extent_y(); ++j)
    for (int i = 0; i < c.u.extent_x(); ++i) c.u(i, j) = fine.u(i * rx, j * ry + oy);
  for (int j = 0; j < c.v.extent_y(); ++j)
    for (int i = 0; i < c.v.extent_x(); ++i) c.v(i, j) = fine.v(i * rx + ox, j * ry);
  if (c.phi)
    for (int j = 0; j < cg.ny(); ++j)
      for (int i = 0; i < cg.nx(); ++i) (*c.phi)(i, j) = (*fine.phi)(i * rx + ox, j * ry + oy);
  return c;
}

CellField vorticity(const FlowState& s, const StaggeredGrid2D& g) {
  CellField w(g);
  const double idx = 0.5 / g.dx(), idy = 0.5 / g.dy();
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) {
      double vr = 0.5 * (s.v(i + 1, j) + s.v(i + 1, j + 1)), vl = 0.5 * (s.v(i - 1, j) + s.v(i - 1, j + 1));
      double ut = 0.5 * (s.u(i, j + 1) + s.u(i + 1, j + 1)), ub = 0.5 * (s.u(i, j - 1) + s.u(i + 1, j - 1));
      w(i, j) = (vr - vl) * idx - (ut - ub) * idy;
    }
  return w;
}

double max_abs(const FieldStorage& f) {
  double m = 0.0;
  for (int j = 0; j < f.extent_y(); ++j)
    for (int i = 0; i < f.extent_x(); ++i) m = std::max(m, std::fabs(f(i, j)));
  return m;
}

int default_div_order(const SchemeConfig& s) {
  switch (s.scheme) {
    case AdvectionScheme::WickerSkamarock4:
    case AdvectionScheme::Morinishi4: return 4;
    case AdvectionScheme::WickerSkamarock6:
    case AdvectionScheme::Morinishi6: return 6;
    default: return s.k <= 2 ? 4 : 6;
  }
}

RunResult run_case(const CaseSpec& c, const StaggeredGrid2D& g, const RunOptions& opt) {
  if (opt.cfl.has_value() == opt.dt.has_value())
    throw std::invalid_argument("exactly one of cfl and dt must be set");
  auto start = std::chrono::steady_clock::now();
  FlowSolver solver(g, opt.solver, case_density(c, g), c.exact, case_sources(c, g));
  RunResult res;
  res.state = init_case(c, g);
  std::vector<double> outs;
  for (double t : opt.output_times)
    if (t > 0 && t < opt.tend) outs.push_back(t);
  std::sort(outs.begin(), outs.end());
  outs.push_back(opt.tend);
  bool initial_output = std::find(opt.output_times.begin(), opt.output_times.end(), 0.0) !=
                        opt.output_times.end();
  if (initial_output && opt.on_output) opt.on_output(res.state, solver);

  const double u0 = std::max(max_abs(res.state.u), max_abs(res.state.v));
  try {
    for (double target : outs) {
      while (res.state.t < target) {
        double dt = opt.dt ? *opt.dt : std::min(compute_dt(res.state, *opt.cfl, g), opt.dt_max);
        bool last = res.state.t + dt >= target - 1e-9 * dt;
        if (last) dt = target - res.state.t;
        solver.step(res.state, dt);
        ++res.steps;
        if (last) res.state.t = target;
        if (u0 > 0 && std::max(max_abs(res.state.u), max_abs(res.state.v)) > opt.blowup_factor * u0)
          throw BlowUpError(res.state.t);
        if (opt.on_step) opt.on_step(res.state, solver);
      }
      if (opt.on_output) opt.on_output(res.state, solver);
    }
  } catch (const BlowUpError& e) {
    res.blew_up = true;
    res.blowup_time = e.time();
  }
  res.pressure = solver.pressure();
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return res;
}

}  // namespace hiweno
