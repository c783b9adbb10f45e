#include "hiweno/commands.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>

namespace hiweno {

namespace fs = std::filesystem;

StaggeredGrid2D make_grid(const RunConfig& cfg, const CaseSpec& c, int nx, int ny) {
  if (nx <= 0) nx = c.default_n;
  if (ny <= 0) ny = c.default_ny > 0 ? c.default_ny : nx;
  return case_grid(c, nx, ny, required_halo(cfg.k));
}

RunOptions make_run_options(const RunConfig& cfg, const CaseSpec& c, const std::string& scheme) {
  RunOptions o;
  o.solver.scheme = cfg.scheme_config(scheme);
  o.solver.scheme.validate();
  o.solver.div_order = cfg.div_order ? *cfg.div_order : default_div_order(o.solver.scheme);
  o.solver.symbol = cfg.pressure_symbol;
  o.solver.project = cfg.project ? *cfg.project : c.project;
  if (cfg.cfl) o.cfl = cfg.cfl;
  else if (cfg.dt) o.dt = cfg.dt;
  else {
    o.cfl = c.cfl;
    o.dt = c.dt;
  }
  o.tend = cfg.tend ? *cfg.tend : c.tend;
  o.dt_max = cfg.dt_max ? *cfg.dt_max : c.dt_max;
  if (cfg.dump_interval) {
    o.output_times.push_back(0.0);
    for (long m = 1;; ++m) {
      double t = m * *cfg.dump_interval;
      if (t >= o.tend * (1 - 1e-12)) break;
      o.output_times.push_back(t);
    }
  }
  return o;
}

std::string dump_name(const std::string& case_name, const std::string& scheme, int k, int nx, double t) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%s_%s_k%d_n%d_t%.6g.dump", case_name.c_str(), scheme.c_str(), k, nx, t);
  return buf;
}

ConvergenceRow error_row(const CaseSpec& c, const FlowState& s, const StaggeredGrid2D& g,
                         const FlowState* reference, const StaggeredGrid2D* ref_grid) {
  ConvergenceRow r;
  r.n = g.nx();
  if (c.exact) {
    double t = s.t;
    auto ex = [&](Quantity q) {
      return std::function<double(double, double)>([&c, q, t](double x, double y) { return c.exact(q, x, y, t); });
    };
    r.l1_u = l1_error(s.u, g, ex(Quantity::VelocityX));
    r.l1_v = l1_error(s.v, g, ex(Quantity::VelocityY));
    if (s.phi) r.l1_phi = l1_error(*s.phi, g, ex(Quantity::Scalar));
    return r;
  }
  if (!reference || !ref_grid) throw std::invalid_argument("case " + c.name + " needs a reference solution");
  FlowState ref = restrict_to_coarse(*reference, *ref_grid, g);
  r.l1_u = l1_difference(s.u, ref.u, g);
  r.l1_v = l1_difference(s.v, ref.v, g);
  if (s.phi && ref.phi) r.l1_phi = l1_difference(*s.phi, *ref.phi, g);
  return r;
}

RunResult reference_solution(const CaseSpec& c, const RunConfig& cfg, int fine_n) {
  RunConfig rc = cfg;
  rc.div_order.reset();
  RunOptions o = make_run_options(rc, c, "morinishi6");
  if (!o.dt) throw std::invalid_argument("reference runs need a fixed dt");
  StaggeredGrid2D g = make_grid(rc, c, fine_n, fine_n);
  return run_case(c, g, o);
}

std::vector<ConvergenceRow> convergence_sweep(const RunConfig& cfg, const std::string& scheme,
                                              const FlowState* reference, const StaggeredGrid2D* ref_grid,
                                              std::ostream& log) {
  const CaseSpec& c = case_spec(cfg.case_name);
  std::vector<ConvergenceRow> rows;
  for (int n : cfg.resolutions) {
    StaggeredGrid2D g = make_grid(cfg, c, n, n);
    RunOptions o = make_run_options(cfg, c, scheme);
    RunResult res = run_case(c, g, o);
    if (res.blew_up) throw BlowUpError(res.blowup_time);
    rows.push_back(error_row(c, res.state, g, reference, ref_grid));
    log << c.name << ' ' << scheme << " k=" << cfg.k << " n=" << n << " l1_u=" << format_double(rows.back().l1_u)
        << " (" << res.steps << " steps, " << res.seconds << " s)\n";
  }
  return rows;
}

namespace {

void write_text(const fs::path& p, const std::string& text) {
  std::ofstream f(p);
  if (!f) throw std::runtime_error("cannot write '" + p.string() + "'");
  f << text;
}

DumpHeader header_for(const CaseSpec& c, const std::string& scheme, int k) {
  DumpHeader h;
  h.case_name = c.name;
  h.scheme = scheme;
  h.k = k;
  return h;
}

// Runs one scheme with dumps; returns the run result.
RunResult run_with_dumps(const RunConfig& cfg, const CaseSpec& c, const std::string& scheme,
                         const fs::path& dir, std::ostream& log) {
  fs::create_directories(dir);
  StaggeredGrid2D g = make_grid(cfg, c, cfg.nx, cfg.ny);
  RunOptions o = make_run_options(cfg, c, scheme);
  DumpHeader h = header_for(c, scheme, cfg.k);
  o.on_output = [&](const FlowState& s, const FlowSolver& solver) {
    CellField w = vorticity(s, g);
    const CellField* p = solver.pressure() ? &*solver.pressure() : nullptr;
    fs::path path = dir / dump_name(c.name, scheme, cfg.k, g.nx(), s.t);
    write_field_dump(path.string(), h, s, g, p, &w);
    log << "wrote " << path.string() << "\n";
  };
  RunResult res = run_case(c, g, o);
  if (res.blew_up) {
    log << c.name << ' ' << scheme << ": blow-up at t = " << format_double(res.blowup_time) << "\n";
  } else {
    log << c.name << ' ' << scheme << ": reached t = " << format_double(res.state.t) << " in " << res.steps
        << " steps (" << res.seconds << " s)\n";
  }
  return res;
}

}  // namespace

int command_run(const RunConfig& cfg, std::ostream& log) {
  const CaseSpec& c = case_spec(cfg.case_name);
  RunResult res = run_with_dumps(cfg, c, cfg.scheme, cfg.out, log);
  return res.blew_up ? kExitBlowUp : kExitOk;
}

int command_convergence(const RunConfig& cfg, std::ostream& log) {
  const CaseSpec& c = case_spec(cfg.case_name);
  if (cfg.resolutions.size() < 2) throw ConfigError("convergence needs at least two resolutions");
  std::optional<RunResult> ref;
  std::optional<StaggeredGrid2D> ref_grid;
  if (!c.exact) {
    if (cfg.reference_n <= 0) throw ConfigError("case " + c.name + " needs 'reference_n'");
    ref_grid = make_grid(cfg, c, cfg.reference_n, cfg.reference_n);
    log << "reference: morinishi6 n=" << cfg.reference_n << "\n";
    ref = reference_solution(c, cfg, cfg.reference_n);
    if (ref->blew_up) throw BlowUpError(ref->blowup_time);
  }
  fs::create_directories(cfg.out);
  std::vector<std::string> schemes = cfg.schemes.empty() ? std::vector<std::string>{cfg.scheme} : cfg.schemes;
  for (const auto& scheme : schemes) {
    auto rows = convergence_sweep(cfg, scheme, ref ? &ref->state : nullptr, ref_grid ? &*ref_grid : nullptr, log);
    std::string comment = "case " + c.name + " scheme " + scheme + " k " + std::to_string(cfg.k) +
                          (c.exact ? " reference exact" : " reference morinishi6 n " + std::to_string(cfg.reference_n));
    std::string table = format_convergence_table(rows, comment);
    fs::path p = fs::path(cfg.out) / ("convergence_" + c.name + "_" + scheme + "_k" + std::to_string(cfg.k) + ".txt");
    write_text(p, table);
    log << table;
  }
  return kExitOk;
}

int command_compare(const RunConfig& cfg, std::ostream& log) {
  const CaseSpec& c = case_spec(cfg.case_name);
  if (cfg.schemes.empty()) throw ConfigError("compare needs 'schemes'");
  bool any_blowup = false;
  for (const auto& scheme : cfg.schemes) {
    RunResult res = run_with_dumps(cfg, c, scheme, fs::path(cfg.out) / scheme, log);
    any_blowup = any_blowup || res.blew_up;
  }
  return any_blowup ? kExitBlowUp : kExitOk;
}

int command_bench(const RunConfig& cfg, std::ostream& log) {
  const CaseSpec& c = case_spec(cfg.case_name);
  std::vector<std::string> schemes = cfg.schemes.empty() ? std::vector<std::string>{cfg.scheme} : cfg.schemes;
  std::vector<int> ns = cfg.resolutions.empty() ? std::vector<int>{cfg.nx > 0 ? cfg.nx : c.default_n} : cfg.resolutions;
  std::optional<RunResult> ref;
  std::optional<StaggeredGrid2D> ref_grid;
  if (!c.exact && cfg.reference_n > 0) {
    ref_grid = make_grid(cfg, c, cfg.reference_n, cfg.reference_n);
    ref = reference_solution(c, cfg, cfg.reference_n);
  }
  std::string table = "# case " + c.name + "\nscheme k n seconds steps l1_u l1_v l1_phi\n";
  for (const auto& scheme : schemes)
    for (int n : ns) {
      StaggeredGrid2D g = make_grid(cfg, c, n, n);
      RunResult res = run_case(c, g, make_run_options(cfg, c, scheme));
      table += scheme + " " + std::to_string(cfg.k) + " " + std::to_string(n) + " " + format_double(res.seconds) +
               " " + std::to_string(res.steps);
      if (res.blew_up) {
        table += " blowup blowup blowup\n";
        continue;
      }
      if (c.exact || ref) {
        ConvergenceRow r = error_row(c, res.state, g, ref ? &ref->state : nullptr, ref_grid ? &*ref_grid : nullptr);
        table += " " + format_double(r.l1_u) + " " + format_double(r.l1_v) + " " +
                 (r.l1_phi ? format_double(*r.l1_phi) : "-") + "\n";
      } else {
        table += " - - -\n";
      }
    }
  fs::create_directories(cfg.out);
  write_text(fs::path(cfg.out) / ("bench_" + c.name + ".txt"), table);
  log << table;
  return kExitOk;
}

}  // namespace hiweno
