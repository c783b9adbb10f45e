#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hiweno/grid.hpp"
#include "hiweno/momentum.hpp"
#include "hiweno/pressure.hpp"

namespace hiweno {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string case_name;
  std::string scheme = "hiweno";
  int k = 3;
  int nx = 0, ny = 0;  // 0: case default
  std::optional<double> cfl, dt;
  std::optional<double> tend;
  std::string out = "out";
  std::optional<double> dump_interval;
  PressureSymbol pressure_symbol = PressureSymbol::ModifiedWavenumber;
  PresselWidth pressel_width = PresselWidth::Full;
  NumericalFlux flux = NumericalFlux::Upwind;
  double eps = 1e-10;
  double p = 2.0;
  std::optional<int> div_order;
  std::optional<double> dt_max;
  std::optional<bool> project;  // unset: case default
  std::vector<int> resolutions;
  int reference_n = 0;
  std::vector<std::string> schemes;

  SchemeConfig scheme_config() const;
  SchemeConfig scheme_config(const std::string& scheme_name) const;
};

// Keys accepted in config files and as --key flags.
const std::vector<std::string>& config_keys();

// Flat "key = value" text with '#' comments. Unknown keys, malformed lines,
// missing `case`, and cfl together with dt are errors (ConfigError).
RunConfig parse_config(const std::string& text);
// Applies every entry of `text` without the final cross-key validation.
void apply_config_text(RunConfig& cfg, const std::string& text);
// Applies one key; throws ConfigError on unknown keys or bad values.
void apply_config_value(RunConfig& cfg, const std::string& key, const std::string& value);
// Checks cross-key constraints after all sources were applied.
void validate_config(const RunConfig& cfg);

// --- field dumps ------------------------------------------------------------

inline constexpr int kDumpFormatVersion = 1;

struct DumpHeader {
  int version = kDumpFormatVersion;
  std::string case_name, scheme;
  int k = 0, nx = 0, ny = 0;
  Bounds bounds{};
  BoundaryKind bc = BoundaryKind::PeriodicBoth;
  double time = 0.0;
};

struct FieldDump {
  DumpHeader header;
  // Interior values per kind ("u", "v", "phi", "p", "vort"), indexed [j][i].
  std::map<std::string, std::vector<std::vector<double>>> fields;
};

std::string to_string(BoundaryKind bc);
BoundaryKind parse_boundary(const std::string& s);

// Writes u, v (always), phi (if present), p and vorticity (if given).
void write_field_dump(const std::string& path, const DumpHeader& h, const FlowState& s,
                      const StaggeredGrid2D& g, const CellField* pressure = nullptr,
                      const CellField* vort = nullptr);
FieldDump read_field_dump(const std::string& path);  // throws std::runtime_error
// Copies a dump's u, v, phi back into a state on the matching grid.
FlowState state_from_dump(const FieldDump& d, const StaggeredGrid2D& g);

// --- tables -----------------------------------------------------------------

struct ConvergenceRow {
  int n = 0;
  double l1_u = 0, l1_v = 0;
  std::optional<double> l1_phi;
};

// Columns "n l1_u l1_v l1_phi eoc_u eoc_v eoc_phi"; missing values print as "-".
std::string format_convergence_table(const std::vector<ConvergenceRow>& rows,
                                     const std::string& comment = "");

std::string format_double(double x);  // %.17g

}  // namespace hiweno
