#include "hiweno/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace hiweno {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    double x = std::stod(v, &pos);
    if (pos != v.size() || !std::isfinite(x)) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': expected a number, got '" + v + "'");
  }
}

int to_int(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    int x = std::stoi(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': expected an integer, got '" + v + "'");
  }
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double positive(const std::string& key, double x) {
  if (!(x > 0)) throw ConfigError("key '" + key + "' must be positive");
  return x;
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "case",  "scheme", "k",          "nx",   "ny",       "cfl",           "dt",
      "tend",  "out",    "dump_interval", "pressure_symbol", "pressel_width", "flux",
      "eps",   "p",      "div_order",  "dt_max", "project", "resolutions",  "reference_n",
      "schemes"};
  return keys;
}

SchemeConfig RunConfig::scheme_config() const { return scheme_config(scheme); }

SchemeConfig RunConfig::scheme_config(const std::string& name) const {
  SchemeConfig s;
  s.scheme = parse_scheme(name);
  s.k = k;
  s.flux = flux;
  s.weno = {eps, p};
  s.pressel_width = pressel_width;
  return s;
}

void apply_config_value(RunConfig& c, const std::string& key, const std::string& v) {
  if (key == "case") c.case_name = v;
  else if (key == "scheme") {
    try {
      parse_scheme(v);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    c.scheme = v;
  } else if (key == "k") c.k = to_int(key, v);
  else if (key == "nx") c.nx = to_int(key, v);
  else if (key == "ny") c.ny = to_int(key, v);
  else if (key == "cfl") c.cfl = positive(key, to_double(key, v));
  else if (key == "dt") c.dt = positive(key, to_double(key, v));
  else if (key == "tend") c.tend = positive(key, to_double(key, v));
  else if (key == "out") c.out = v;
  else if (key == "dump_interval") c.dump_interval = positive(key, to_double(key, v));
  else if (key == "pressure_symbol") {
    if (v == "modified") c.pressure_symbol = PressureSymbol::ModifiedWavenumber;
    else if (v == "continuous") c.pressure_symbol = PressureSymbol::Continuous;
    else throw ConfigError("pressure_symbol must be 'modified' or 'continuous'");
  } else if (key == "pressel_width") {
    if (v == "2k") c.pressel_width = PresselWidth::Full;
    else if (v == "2k-2") c.pressel_width = PresselWidth::Reduced;
    else throw ConfigError("pressel_width must be '2k' or '2k-2'");
  } else if (key == "flux") {
    if (v == "upwind") c.flux = NumericalFlux::Upwind;
    else if (v == "rusanov") c.flux = NumericalFlux::Rusanov;
    else throw ConfigError("flux must be 'upwind' or 'rusanov'");
  } else if (key == "eps") c.eps = positive(key, to_double(key, v));
  else if (key == "p") c.p = positive(key, to_double(key, v));
  else if (key == "div_order") c.div_order = to_int(key, v);
  else if (key == "dt_max") c.dt_max = positive(key, to_double(key, v));
  else if (key == "project") {
    if (v == "true") c.project = true;
    else if (v == "false") c.project = false;
    else throw ConfigError("project must be 'true' or 'false'");
  } else if (key == "resolutions") {
    c.resolutions.clear();
    for (const auto& s : split_list(v)) c.resolutions.push_back(to_int(key, s));
  } else if (key == "reference_n") c.reference_n = to_int(key, v);
  else if (key == "schemes") {
    c.schemes = split_list(v);
    for (const auto& s : c.schemes) apply_config_value(c, "scheme", s);
    c.scheme = c.schemes.empty() ? c.scheme : c.schemes.front();
  } else throw ConfigError("unknown key '" + key + "'");
}

void validate_config(const RunConfig& c) {
  if (c.case_name.empty()) throw ConfigError("missing required key 'case'");
  if (c.cfl && c.dt) throw ConfigError("keys 'cfl' and 'dt' are mutually exclusive");
  if (c.k < 2 || c.k > 4) throw ConfigError("k must be 2, 3 or 4");
  if (c.nx < 0 || c.ny < 0) throw ConfigError("nx and ny must be positive");
  if (c.div_order && *c.div_order != 2 && *c.div_order != 4 && *c.div_order != 6)
    throw ConfigError("div_order must be 2, 4 or 6");
  for (int n : c.resolutions)
    if (n <= 0) throw ConfigError("resolutions must be positive");
}

RunConfig parse_config(const std::string& text) {
  RunConfig c;
  apply_config_text(c, text);
  validate_config(c);
  return c;
}

void apply_config_text(RunConfig& c, const std::string& text) {
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
    std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    if (!seen.insert(key).second) throw ConfigError("duplicate key '" + key + "'");
    apply_config_value(c, key, value);
  }
}

// --- dumps --------------------------------------------------------------------

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string to_string(BoundaryKind bc) {
  switch (bc) {
    case BoundaryKind::PeriodicBoth: return "periodic";
    case BoundaryKind::DirichletExact: return "dirichlet";
    case BoundaryKind::ChannelNoFlowVertical: return "channel";
  }
  return "?";
}

BoundaryKind parse_boundary(const std::string& s) {
  if (s == "periodic") return BoundaryKind::PeriodicBoth;
  if (s == "dirichlet") return BoundaryKind::DirichletExact;
  if (s == "channel") return BoundaryKind::ChannelNoFlowVertical;
  throw std::runtime_error("unknown boundary kind '" + s + "'");
}

namespace {
template <NodeKind Kind>
void write_rows(std::FILE* f, const char* kind, const StaggeredField<Kind>& fld, const StaggeredGrid2D& g) {
  for (int j = 0; j < fld.extent_y(); ++j)
    for (int i = 0; i < fld.extent_x(); ++i)
      std::fprintf(f, "%s %d %d %.17g %.17g %.17g\n", kind, i, j, g.node_x(Kind, i), g.node_y(Kind, j),
                   fld(i, j));
}
}  // namespace

void write_field_dump(const std::string& path, const DumpHeader& h, const FlowState& s,
                      const StaggeredGrid2D& g, const CellField* pressure, const CellField* vort) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  const Bounds& b = g.bounds();
  std::fprintf(f, "# format %d\n# case %s\n# scheme %s\n# k %d\n# nx %d\n# ny %d\n", kDumpFormatVersion,
               h.case_name.c_str(), h.scheme.c_str(), h.k, g.nx(), g.ny());
  std::fprintf(f, "# bounds %.17g %.17g %.17g %.17g\n# bc %s\n# time %.17g\n", b.xmin, b.xmax, b.ymin,
               b.ymax, to_string(g.bc()).c_str(), s.t);
  write_rows(f, "u", s.u, g);
  write_rows(f, "v", s.v, g);
  if (s.phi) write_rows(f, "phi", *s.phi, g);
  if (pressure) write_rows(f, "p", *pressure, g);
  if (vort) write_rows(f, "vort", *vort, g);
  bool ok = std::fclose(f) == 0;
  if (!ok) throw std::runtime_error("error writing '" + path + "'");
}

FieldDump read_field_dump(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  FieldDump d;
  std::string line;
  bool have_version = false;
  auto& h = d.header;
  std::map<std::string, std::pair<int, int>> extents;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    if (line[0] == '#') {
      std::string hash, key;
      ls >> hash >> key;
      if (key == "format") {
        ls >> h.version;
        if (h.version != kDumpFormatVersion)
          throw std::runtime_error("dump format version " + std::to_string(h.version) + " unsupported");
        have_version = true;
      } else if (key == "case") ls >> h.case_name;
      else if (key == "scheme") ls >> h.scheme;
      else if (key == "k") ls >> h.k;
      else if (key == "nx") ls >> h.nx;
      else if (key == "ny") ls >> h.ny;
      else if (key == "bounds") {
        std::string a, b2, c, e;
        ls >> a >> b2 >> c >> e;
        h.bounds = {std::stod(a), std::stod(b2), std::stod(c), std::stod(e)};
      } else if (key == "bc") {
        std::string s;
        ls >> s;
        h.bc = parse_boundary(s);
      } else if (key == "time") {
        std::string s;
        ls >> s;
        h.time = std::stod(s);
      }
      continue;
    }
    if (!have_version) throw std::runtime_error("dump lacks a format header");
    if (extents.empty()) {
      StaggeredGrid2D g(h.bounds, h.nx, h.ny, h.bc, 0);
      extents["u"] = {g.extent_x(NodeKind::UFace), g.extent_y(NodeKind::UFace)};
      extents["v"] = {g.extent_x(NodeKind::VFace), g.extent_y(NodeKind::VFace)};
      for (const char* k : {"phi", "p", "vort"}) extents[k] = {h.nx, h.ny};
    }
    std::string kind, xs, ys, vs;
    int i = 0, j = 0;
    if (!(ls >> kind >> i >> j >> xs >> ys >> vs))
      throw std::runtime_error("malformed row at line " + std::to_string(lineno));
    auto ext = extents.find(kind);
    if (ext == extents.end() || i < 0 || j < 0 || i >= ext->second.first || j >= ext->second.second)
      throw std::runtime_error("malformed row at line " + std::to_string(lineno));
    auto& fld = d.fields[kind];
    if (fld.empty()) fld.assign(ext->second.second, std::vector<double>(ext->second.first, 0.0));
    fld[j][i] = std::stod(vs);
  }
  if (!have_version) throw std::runtime_error("dump lacks a format header");
  return d;
}

FlowState state_from_dump(const FieldDump& d, const StaggeredGrid2D& g) {
  FlowState s(g, d.fields.count("phi") > 0);
  s.t = d.header.time;
  auto copy = [](FieldStorage& f, const std::vector<std::vector<double>>& rows) {
    for (int j = 0; j < f.extent_y(); ++j)
      for (int i = 0; i < f.extent_x(); ++i) f(i, j) = rows.at(j).at(i);
  };
  copy(s.u, d.fields.at("u"));
  copy(s.v, d.fields.at("v"));
  if (s.phi) copy(*s.phi, d.fields.at("phi"));
  return s;
}

// --- tables ---------------------------------------------------------------------

std::string format_convergence_table(const std::vector<ConvergenceRow>& rows, const std::string& comment) {
  std::ostringstream o;
  if (!comment.empty()) o << "# " << comment << "\n";
  o << "n l1_u l1_v l1_phi eoc_u eoc_v eoc_phi\n";
  auto rate = [&](double a, double b, int na, int nb) {
    return format_double(std::log(a / b) / std::log(double(nb) / na));
  };
  for (std::size_t m = 0; m < rows.size(); ++m) {
    const auto& r = rows[m];
    o << r.n << ' ' << format_double(r.l1_u) << ' ' << format_double(r.l1_v) << ' '
      << (r.l1_phi ? format_double(*r.l1_phi) : "-");
    if (m == 0) {
      o << " - - -\n";
      continue;
    }
    const auto& q = rows[m - 1];
    o << ' ' << rate(q.l1_u, r.l1_u, q.n, r.n) << ' ' << rate(q.l1_v, r.l1_v, q.n, r.n) << ' '
      << (r.l1_phi && q.l1_phi ? rate(*q.l1_phi, *r.l1_phi, q.n, r.n) : "-") << "\n";
  }
  return o.str();
}

}  // namespace hiweno
