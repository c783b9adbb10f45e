#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "hiweno/grid.hpp"
#include "hiweno/scalar.hpp"
#include "hiweno/time_stepper.hpp"

namespace hiweno {

// f(q, x, y, t) for a velocity component / scalar.
using PointFn = std::function<double(Quantity, double, double, double)>;

struct CaseSpec {
  std::string name;
  Bounds bounds{};
  BoundaryKind bc = BoundaryKind::PeriodicBoth;
  std::optional<double> cfl, dt;  // exactly one set
  double tend = 0.0;
  double dt_max = std::numeric_limits<double>::infinity();
  int default_n = 64;
  int default_ny = 0;  // 0: same as nx
  bool scalar = false;
  bool buoyancy = false;        // entropy-driven buoyancy
  bool project = true;          // false: advection only (no pressure)
  PointFn initial;              // point values at t = 0
  PointFn exact;                // empty when no closed form exists
  PointFn forcing;              // manufactured sources, empty otherwise
};

std::vector<std::string> case_names();
const CaseSpec& case_spec(const std::string& name);  // throws std::invalid_argument

StaggeredGrid2D case_grid(const CaseSpec& c, int nx, int ny, int halo);
ReferenceDensity case_density(const CaseSpec& c, const StaggeredGrid2D& g);
FlowState init_case(const CaseSpec& c, const StaggeredGrid2D& g);
// Source callback (manufactured forcing or buoyancy); empty if none.
SourceFn case_sources(const CaseSpec& c, const StaggeredGrid2D& g);

// Manufactured source fields at time t on the interior nodes.
struct SourceFields {
  UFaceField fu;
  VFaceField fv;
  std::optional<CellField> fphi;
};
SourceFields manufactured_sources(const CaseSpec& c, double t, const StaggeredGrid2D& g);

// Sample a point function on a node family (interior and halo).
template <NodeKind Kind>
StaggeredField<Kind> sample(const StaggeredGrid2D& g, const std::function<double(double, double)>& f);

// sum dx dy |num - exact| over interior nodes.
template <NodeKind Kind>
double l1_error(const StaggeredField<Kind>& num, const StaggeredGrid2D& g,
                const std::function<double(double, double)>& exact);
double l1_difference(const FieldStorage& a, const FieldStorage& b, const StaggeredGrid2D& g);

// EOC_m = ln(e_{m-1}/e_m)/ln(n_m/n_{m-1}); returns size-1 entries.
std::vector<double> eoc(const std::vector<double>& errors, const std::vector<int>& n);

// Sample a fine state at the nodes coinciding with the coarse grid
// (odd refinement ratio required).
FlowState restrict_to_coarse(const FlowState& fine, const StaggeredGrid2D& fine_g,
                             const StaggeredGrid2D& coarse_g);

// Vorticity -du/dy + dv/dx at centers (second-order). Ghosts of U filled.
CellField vorticity(const FlowState& s, const StaggeredGrid2D& g);
double max_abs(const FieldStorage& f);

// Time integration of a case with output callbacks.
struct RunOptions {
  SolverConfig solver{};
  std::optional<double> cfl, dt;
  double tend = 0.0;
  double dt_max = std::numeric_limits<double>::infinity();
  // Growth of max|U| beyond this factor times its initial value counts as a
  // blow-up (CFL-limited steps shrink faster than values overflow).
  double blowup_factor = 1e3;
  std::vector<double> output_times;  // sorted; tend is always an output
  std::function<void(const FlowState&, const FlowSolver&)> on_output;
  std::function<void(const FlowState&, const FlowSolver&)> on_step;
};

struct RunResult {
  FlowState state;
  bool blew_up = false;
  double blowup_time = 0.0;
  long steps = 0;
  double seconds = 0.0;
  std::optional<CellField> pressure;
};

RunResult run_case(const CaseSpec& c, const StaggeredGrid2D& g, const RunOptions& opt);

// Default projection order for a scheme: 4 for third-order WENO or 4th-order
// central schemes, 6 otherwise.
int default_div_order(const SchemeConfig& s);

}  // namespace hiweno
