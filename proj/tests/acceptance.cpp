// Acceptance runner: one PASS/FAIL line per primary criterion.
// Usage: acceptance [--out DIR] [--list] [criterion ...]

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hiweno/commands.hpp"
#include "hiweno/experiments.hpp"
#include "hiweno/io.hpp"
#include "hiweno/momentum.hpp"
#include "hiweno/pressure.hpp"
#include "hiweno/stagger_interp.hpp"
#include "hiweno/weno.hpp"

using namespace hiweno;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;
// Allowed deviation of a fitted log-log slope from a design order.
constexpr double kSlopeTol = 0.25;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  std::string name;
  std::function<Outcome()> run;
};

fs::path g_out = "acceptance_out";

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

std::string sci(double x) { return fmt("%.3g", x); }
std::string fix(double x) { return fmt("%.2f", x); }

// Least-squares slope of log(err) against -log(n).
double fitted_order(const std::vector<int>& ns, const std::vector<double>& errs) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0, m = static_cast<double>(ns.size());
  for (std::size_t i = 0; i < ns.size(); ++i) {
    double x = std::log(static_cast<double>(ns[i])), y = std::log(errs[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return -(m * sxy - sx * sy) / (m * sxx - sx * sx);
}

std::string join(const std::vector<double>& v, std::string (*f)(double)) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + f(v[i]);
  return s;
}

void save(const std::string& name, const std::string& text) {
  fs::create_directories(g_out);
  std::ofstream(g_out / name) << text;
}

// ---------------------------------------------------------------- kernels

Outcome kernel_exactness() {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> coef(-1, 1), shift(-5, 5), width(0.01, 1);
  double worst_lin = 0, worst_nl = 0;
  for (int k : {2, 3}) {
    auto d = optimal_weights(k);
    for (int trial = 0; trial < 500; ++trial) {
      int deg = static_cast<int>(rng() % (2 * k - 1));
      std::vector<double> c(deg + 1);
      for (auto& x : c) x = coef(rng);
      double x0 = shift(rng), h = width(rng);
      // Antiderivative of sum c_m x^m, for exact cell averages.
      auto prim = [&](double x) {
        double s = 0;
        for (int m = deg; m >= 0; --m) s = s * x + c[m] / (m + 1);
        return s * x;
      };
      auto value = [&](double x) {
        double s = 0;
        for (int m = deg; m >= 0; --m) s = s * x + c[m];
        return s;
      };
      std::vector<double> a(2 * k - 1);
      double scale = 0;
      for (int m = 0; m < 2 * k - 1; ++m) {
        double lo = x0 + m * h, hi = lo + h;
        a[m] = (prim(hi) - prim(lo)) / h;
        scale = std::max(scale, std::fabs(a[m]));
      }
      scale = std::max(scale, 1e-300);
      double right = value(x0 + k * h), left = value(x0 + (k - 1) * h);
      auto cand = candidate_values(a, k);
      double lin = 0;
      for (int s = 0; s < k; ++s) lin += d[s] * cand[s];
      worst_lin = std::max(worst_lin, std::fabs(lin - right) / scale);
      if (deg <= k - 1) {
        worst_nl = std::max(worst_nl, std::fabs(weno_reconstruct(a, EdgeSide::Plus, k) - right) / scale);
        worst_nl = std::max(worst_nl, std::fabs(weno_reconstruct(a, EdgeSide::Minus, k) - left) / scale);
      }
    }
  }
  return {worst_lin <= 1e-12 && worst_nl <= 1e-12,
          "degree<=2k-2 optimal-weight kernel rel err " + sci(worst_lin) + ", nonlinear degree<=k-1 " +
              sci(worst_nl)};
}

Outcome derivative_order() {
  std::vector<int> ns{32, 64, 128, 256};
  std::vector<double> errs;
  for (int n : ns) {
    double h = 2 * kPi / n;
    auto flux = [&](int i) {  // edge i+1/2
      double q[5];
      for (int m = 0; m < 5; ++m) q[m] = std::sin((i + m - 2) * h);
      return weno_plus<3>(q + 2, 1, {});
    };
    double e = 0;
    for (int i = 0; i < n; ++i) e += std::fabs((flux(i) - flux(i - 1)) / h - std::cos(i * h)) * h;
    errs.push_back(e);
  }
  double o = fitted_order(ns, errs);
  return {o >= 4.0 && o <= 5.0 + kSlopeTol, "L1 errors " + join(errs, sci) + ", fitted EOC " + fix(o)};
}

// ---------------------------------------------------------------- convergence tables

std::vector<ConvergenceRow> sweep(const std::string& case_name, const std::string& scheme, int k,
                                  std::vector<int> ns, const FlowState* ref = nullptr,
                                  const StaggeredGrid2D* ref_grid = nullptr,
                                  PresselWidth width = PresselWidth::Full, int ref_n = 0) {
  RunConfig cfg;
  cfg.case_name = case_name;
  cfg.k = k;
  cfg.resolutions = std::move(ns);
  cfg.pressel_width = width;
  std::ostringstream log;
  auto rows = convergence_sweep(cfg, scheme, ref, ref_grid, log);
  std::string tag = scheme + "_k" + std::to_string(k) + (width == PresselWidth::Reduced ? "_reduced" : "");
  save("convergence_" + case_name + "_" + tag + ".txt",
       format_convergence_table(rows, "case " + case_name + " scheme " + scheme + " k " + std::to_string(k) +
                                          (ref ? " reference morinishi6 n " + std::to_string(ref_n)
                                               : " reference exact")));
  return rows;
}

std::vector<double> column(const std::vector<ConvergenceRow>& rows, char which) {
  std::vector<double> v;
  for (const auto& r : rows) v.push_back(which == 'u' ? r.l1_u : which == 'v' ? r.l1_v : r.l1_phi.value_or(NAN));
  return v;
}

std::vector<int> sizes(const std::vector<ConvergenceRow>& rows) {
  std::vector<int> n;
  for (const auto& r : rows) n.push_back(r.n);
  return n;
}

bool within_factor(const std::vector<double>& got, const std::vector<double>& want, double f) {
  for (std::size_t i = 0; i < got.size(); ++i)
    if (!(got[i] <= f * want[i] && got[i] >= want[i] / f)) return false;
  return true;
}

bool all_at_least(const std::vector<double>& v, double lo) {
  return std::all_of(v.begin(), v.end(), [lo](double x) { return x >= lo; });
}

Outcome dirichlet_box() {
  auto r5 = sweep("dirichlet_manufactured", "hiweno", 3, {16, 32, 64});
  auto e5 = column(r5, 'u');
  auto o5 = eoc(e5, sizes(r5));
  auto r7 = sweep("dirichlet_manufactured", "hiweno", 4, {16, 32});
  auto o7 = eoc(column(r7, 'u'), sizes(r7));
  bool ok = within_factor(e5, {0.000505, 2.07e-5, 5.29e-7}, 3.0) && all_at_least(o5, 4.3) && o7[0] >= 5.5;
  return {ok, "5th L1(u) " + join(e5, sci) + " EOC " + join(o5, fix) + "; 7th EOC " + fix(o7[0])};
}

Outcome passive_scalar() {
  auto r = sweep("passive_scalar", "hiweno", 3, {32, 64, 128});
  auto eu = column(r, 'u'), ep = column(r, 'p');
  auto ou = eoc(eu, sizes(r)), op = eoc(ep, sizes(r));
  bool ok = all_at_least(op, 4.3) && all_at_least(ou, 4.4) &&
            within_factor(eu, {0.01, 0.00042, 1.47e-5}, 3.0) && within_factor(ep, {0.0497, 0.00198, 7.68e-5}, 3.0);
  return {ok, "L1(u) " + join(eu, sci) + " EOC " + join(ou, fix) + "; L1(phi) " + join(ep, sci) + " EOC " +
                  join(op, fix)};
}

Outcome taylor_vortex() {
  const auto& c = case_spec("taylor_vortex");
  RunConfig cfg;
  cfg.case_name = c.name;
  constexpr int kRef = 972;
  auto ref_grid = make_grid(cfg, c, kRef, kRef);
  RunResult ref = reference_solution(c, cfg, kRef);
  if (ref.blew_up) return {false, "reference run blew up"};
  std::vector<int> ns{36, 108, 324};
  auto hw = sweep(c.name, "hiweno", 3, ns, &ref.state, &ref_grid, PresselWidth::Full, kRef);
  auto pf = sweep(c.name, "pressel", 3, ns, &ref.state, &ref_grid, PresselWidth::Full, kRef);
  auto pr = sweep(c.name, "pressel", 2, ns, &ref.state, &ref_grid, PresselWidth::Reduced, kRef);
  // Sweep EOC: end-to-end rate between the coarsest and finest level.
  auto span = [&](const std::vector<ConvergenceRow>& r) {
    return std::log(r.front().l1_u / r.back().l1_u) / std::log(double(r.back().n) / r.front().n);
  };
  double o_hw = eoc(column(hw, 'u'), ns)[0], o_pf = span(pf), o_pr = span(pr);
  bool ok = o_hw >= 4.2 && o_pf >= 1.6 && o_pf <= 2.4 && o_pr >= 0.7 && o_pr <= 1.4;
  return {ok, "hiweno k=3 EOC(36->108) " + fix(o_hw) + "; pressel width 2k EOC " + fix(o_pf) + " (levels " +
                  join(eoc(column(pf, 'u'), ns), fix) + "); pressel k=2 width 2k-2 EOC " + fix(o_pr) +
                  " (levels " + join(eoc(column(pr, 'u'), ns), fix) + ")"};
}

// ---------------------------------------------------------------- tendencies

Outcome upwind_biased_central() {
  auto order = [](double amp) {
    std::vector<int> ns{32, 64, 128};
    std::vector<double> errs;
    for (int n : ns) {
      auto g = build_grid({0, 2 * kPi, 0, 2 * kPi}, n, n, BoundaryKind::PeriodicBoth, required_halo(3));
      FlowState s(g);
      s.u = sample<NodeKind::UFace>(g, [](double, double y) { return std::sin(y); });
      s.v = sample<NodeKind::VFace>(g, [amp](double x, double) { return 1 + amp * std::sin(x); });
      GhostFiller fill(g);
      fill.fill_state(s);
      SchemeConfig sc;
      sc.scheme = AdvectionScheme::WickerSkamarock4;
      auto t = advective_tendency(s, nullptr, ReferenceDensity::uniform(g), sc, g);
      errs.push_back(l1_error(t.du, g, [amp](double x, double y) { return -(1 + amp * std::sin(x)) * std::cos(y); }));
    }
    return fitted_order(ns, errs);
  };
  double oc = order(0.0), ov = order(0.5);
  return {std::fabs(oc - 4) <= 0.3 && std::fabs(ov - 2) <= 0.3,
          "EOC constant velocity " + fix(oc) + ", variable velocity " + fix(ov)};
}

// ---------------------------------------------------------------- runs

double max_speed(const FlowState& s) { return std::max(max_abs(s.u), max_abs(s.v)); }

RunResult run(const std::string& case_name, const std::string& scheme, int n,
              std::function<void(const FlowState&, const StaggeredGrid2D&)> each = {}, double tend = 0) {
  RunConfig cfg;
  cfg.case_name = case_name;
  cfg.scheme = scheme;
  const auto& c = case_spec(case_name);
  auto g = make_grid(cfg, c, n, n);
  RunOptions o = make_run_options(cfg, c, scheme);
  if (tend > 0) o.tend = tend;
  if (each) o.on_step = [&](const FlowState& s, const FlowSolver&) { each(s, g); };
  return run_case(c, g, o);
}

Outcome vortex_patch() {
  const auto& c = case_spec("vortex_patch");
  RunConfig cfg;
  cfg.case_name = c.name;
  auto g = make_grid(cfg, c, 128, 128);
  const double u0 = max_speed(init_case(c, g));
  RunResult m6 = run(c.name, "morinishi6", 128, {}, 2.0);
  std::string detail = "morinishi6 " + (m6.blew_up ? "blew up at t=" + fix(m6.blowup_time) : std::string("survived"));
  bool ok = m6.blew_up && m6.blowup_time < 2.0;
  for (const char* scheme : {"hiweno", "pressel"}) {
    double peak = 0;
    RunResult r = run(c.name, scheme, 128, [&](const FlowState& s, const StaggeredGrid2D&) {
      peak = std::max(peak, max_speed(s));
    });
    ok = ok && !r.blew_up && r.state.t >= c.tend - 1e-9 && peak <= 1.2 * u0;
    detail += std::string("; ") + scheme + (r.blew_up ? " blew up" : " reached t=" + fix(r.state.t)) +
              " peak/initial " + fmt("%.3f", peak / u0);
  }
  return {ok, detail};
}

Outcome projection_contract() {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> amp(-1, 1), phase(0, 2 * kPi);
  const int n = 64;
  auto g = build_grid({0, 2 * kPi, 0, 2 * kPi}, n, n, BoundaryKind::PeriodicBoth, required_halo(3));
  auto rho = ReferenceDensity::uniform(g);
  double worst_div = 0, worst_idem = 0;
  for (int order : {2, 4, 6}) {
    PressureProjector P(g, rho, order);
    for (int trial = 0; trial < 5; ++trial) {
      struct Mode {
        int kx, ky;
        double a, b, p, q;
      };
      std::vector<Mode> modes;
      for (int m = 0; m < 8; ++m)
        modes.push_back({int(rng() % 7), int(rng() % 7), amp(rng), amp(rng), phase(rng), phase(rng)});
      auto field = [&](bool second) {
        return [&modes, second](double x, double y) {
          double s = 0;
          for (const auto& m : modes)
            s += (second ? m.b : m.a) * std::sin(m.kx * x + m.ky * y + (second ? m.q : m.p));
          return s;
        };
      };
      auto u = sample<NodeKind::UFace>(g, field(false));
      auto v = sample<NodeKind::VFace>(g, field(true));
      GhostFiller fill(g);
      fill(u, Quantity::VelocityX, 0.0);
      fill(v, Quantity::VelocityY, 0.0);
      double pre = max_abs(P.divergence(u, v));
      P.project(u, v);
      fill(u, Quantity::VelocityX, 0.0);
      fill(v, Quantity::VelocityY, 0.0);
      double post = max_abs(P.divergence(u, v));
      UFaceField u1 = u;
      VFaceField v1 = v;
      P.project(u, v);
      double change = 0, size = std::max(max_abs(u1), max_abs(v1));
      for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
          change = std::max({change, std::fabs(u(i, j) - u1(i, j)), std::fabs(v(i, j) - v1(i, j))});
      worst_div = std::max(worst_div, post / pre);
      worst_idem = std::max(worst_idem, change / size);
    }
  }
  return {worst_div <= 1e-11 && worst_idem <= 1e-11,
          "post/pre divergence " + sci(worst_div) + ", idempotence " + sci(worst_idem)};
}

Outcome shear_layer() {
  const int n = 192;
  const auto& c = case_spec("shear_layer");
  RunConfig cfg;
  cfg.case_name = c.name;
  auto g = make_grid(cfg, c, n, n);
  FlowState s0 = init_case(c, g);
  GhostFiller(g).fill_state(s0);
  const double w0 = max_abs(vorticity(s0, g));
  bool ok = true;
  std::string detail = "initial max|w| " + fix(w0);
  for (const char* scheme : {"hiweno", "pressel", "morinishi6", "ws6"}) {
    double peak = w0;
    RunResult r = run(c.name, scheme, n, [&](const FlowState& s, const StaggeredGrid2D& gg) {
      peak = std::max(peak, max_abs(vorticity(s, gg)));
    });
    const bool weno = std::string(scheme) == "hiweno" || std::string(scheme) == "pressel";
    if (weno) ok = ok && !r.blew_up && peak <= 1.5 * w0;
    else ok = ok && (r.blew_up || peak > 2.0 * w0);
    detail += std::string("; ") + scheme + (r.blew_up ? " blew up at t=" + fix(r.blowup_time) : "") +
              " peak ratio " + fmt("%.3f", peak / w0);
    if (!r.blew_up) {
      DumpHeader h{kDumpFormatVersion, c.name, scheme, 3, n, n, c.bounds, c.bc, r.state.t};
      CellField w = vorticity(r.state, g);
      fs::create_directories(g_out);
      write_field_dump((g_out / dump_name(c.name, scheme, 3, n, r.state.t)).string(), h, r.state, g, nullptr, &w);
    }
  }
  return {ok, detail};
}

Outcome density_current() {
  const int n = 256;
  const auto& c = case_spec("straka");
  RunConfig cfg;
  cfg.case_name = c.name;
  auto g = make_grid(cfg, c, n, n);
  auto rho = case_density(c, g);
  const double e0 = total_entropy(*init_case(c, g).phi, rho, g);
  RunResult r = run(c.name, "hiweno", n);
  if (r.blew_up) return {false, "blew up at t=" + fix(r.blowup_time)};
  double drift = std::fabs(total_entropy(*r.state.phi, rho, g) - e0) / std::fabs(e0);
  DumpHeader h{kDumpFormatVersion, c.name, "hiweno", 3, n, n, c.bounds, c.bc, r.state.t};
  fs::create_directories(g_out);
  write_field_dump((g_out / dump_name(c.name, "hiweno", 3, n, r.state.t)).string(), h, r.state, g,
                   r.pressure ? &*r.pressure : nullptr);
  return {drift <= 1e-3, "relative entropy drift " + sci(drift) + " at t=" + fix(r.state.t) + " (" +
                             std::to_string(r.steps) + " steps)"};
}

// Every file of a directory tree, path -> bytes.
std::vector<std::pair<std::string, std::string>> read_tree(const fs::path& dir) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& e : fs::recursive_directory_iterator(dir))
    if (e.is_regular_file()) {
      std::ifstream in(e.path(), std::ios::binary);
      out.emplace_back(fs::relative(e.path(), dir).string(),
                       std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()));
    }
  std::sort(out.begin(), out.end());
  return out;
}

Outcome determinism() {
  const int many = std::max(4, omp_get_num_procs());
  struct Job {
    const char* case_name;
    const char* scheme;
    int n;
    double tend;
  };
  const Job jobs[] = {{"taylor_vortex", "hiweno", 108, 0.01},
                      {"passive_scalar", "hiweno", 32, 0.05},
                      {"straka", "hiweno", 64, 60.0},
                      {"shear_layer", "morinishi6", 64, 0.5},
                      {"dirichlet_manufactured", "pressel", 16, 0.002}};
  const int saved = omp_get_max_threads();
  std::vector<std::vector<std::pair<std::string, std::string>>> trees;
  for (int threads : {1, many}) {
    omp_set_num_threads(threads);
    fs::path dir = g_out / ("determinism_" + std::to_string(threads));
    fs::remove_all(dir);
    for (const auto& j : jobs) {
      RunConfig cfg;
      cfg.case_name = j.case_name;
      cfg.scheme = j.scheme;
      cfg.nx = cfg.ny = j.n;
      cfg.tend = j.tend;
      cfg.dump_interval = j.tend / 2;
      cfg.out = (dir / j.case_name).string();
      std::ostringstream log;
      command_run(cfg, log);
    }
    trees.push_back(read_tree(dir));
  }
  omp_set_num_threads(saved);
  bool same = trees[0] == trees[1] && !trees[0].empty();
  return {same, std::to_string(trees[0].size()) + " dumps, 1 vs " + std::to_string(many) + " threads " +
                    (same ? "byte-identical" : "differ")};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all = {
      {"kernel_exactness", kernel_exactness},
      {"derivative_order", derivative_order},
      {"dirichlet_box_order", dirichlet_box},
      {"passive_scalar_order", passive_scalar},
      {"taylor_vortex_orders", taylor_vortex},
      {"upwind_biased_central_order", upwind_biased_central},
      {"vortex_patch_robustness", vortex_patch},
      {"projection_contract", projection_contract},
      {"shear_layer_stability", shear_layer},
      {"density_current_entropy", density_current},
      {"determinism", determinism},
  };
  std::vector<std::string> wanted;
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if (a == "--list") {
      for (const auto& c : all) std::printf("%s\n", c.name.c_str());
      return 0;
    }
    if (a == "--out" && i + 1 < argc) g_out = argv[++i];
    else wanted.push_back(a);
  }
  for (const auto& w : wanted)
    if (std::none_of(all.begin(), all.end(), [&](const Criterion& c) { return c.name == w; })) {
      std::fprintf(stderr, "unknown criterion '%s' (see --list)\n", w.c_str());
      return 2;
    }
  int failed = 0;
  for (const auto& c : all) {
    if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), c.name) == wanted.end()) continue;
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s %s: %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", c.name.c_str(), o.detail.c_str(), secs);
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed ? 1 : 0;
}
