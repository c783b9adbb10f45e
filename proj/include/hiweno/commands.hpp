#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "hiweno/experiments.hpp"
#include "hiweno/io.hpp"

namespace hiweno {

// Exit codes of the command-line front end.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitBlowUp = 3;

// Run options for one scheme of a config, with case defaults filled in.
RunOptions make_run_options(const RunConfig& cfg, const CaseSpec& c, const std::string& scheme);
StaggeredGrid2D make_grid(const RunConfig& cfg, const CaseSpec& c, int nx, int ny);

// L1 errors of one resolution against the exact solution, or against a
// stored reference state (coincident-node sampling) when the case has none.
ConvergenceRow error_row(const CaseSpec& c, const FlowState& s, const StaggeredGrid2D& g,
                         const FlowState* reference, const StaggeredGrid2D* ref_grid);

// Reference solution: 6th-order central at fine_n with the case's fixed dt.
RunResult reference_solution(const CaseSpec& c, const RunConfig& cfg, int fine_n);

// Sweeps cfg.resolutions for one scheme; `reference` optional.
std::vector<ConvergenceRow> convergence_sweep(const RunConfig& cfg, const std::string& scheme,
                                              const FlowState* reference, const StaggeredGrid2D* ref_grid,
                                              std::ostream& log);

std::string dump_name(const std::string& case_name, const std::string& scheme, int k, int nx, double t);

int command_run(const RunConfig& cfg, std::ostream& log);
int command_convergence(const RunConfig& cfg, std::ostream& log);
int command_compare(const RunConfig& cfg, std::ostream& log);
int command_bench(const RunConfig& cfg, std::ostream& log);

}  // namespace hiweno
