#pragma once

#include <memory>
#include <stdexcept>
#include <vector>

#include "hiweno/density.hpp"
#include "hiweno/grid.hpp"

namespace hiweno {

enum class PressureSymbol { ModifiedWavenumber, Continuous };

// Staggered central difference (face -> center and center -> face):
// (D f)_c = (1/h) sum_m a_m (f_{c+m} - f_{c+1-m}).
struct DivergenceOperator {
  int order = 6;
  std::vector<double> a;
  // Symbol of D∘G for Fourier angle theta: -(2/h sum_m a_m sin((2m-1) theta/2))^2.
  double symbol(double theta, double h) const;
};

DivergenceOperator make_divergence_operator(int order);  // 2, 4 or 6

class IncompatibleSource : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Solves D(rho0 G P) = eta for P = p' dt / rho0 and corrects U = U~ - G P.
//   PeriodicBoth: 2D FFT, constant rho0.
//   DirichletExact: 2D cosine transform (even-reflected P), constant rho0;
//     only faces strictly inside the box are corrected.
//   ChannelNoFlowVertical: FFT in x, second-order rho0-weighted tridiagonal
//     system in y with homogeneous Neumann closure; mode 0 anchored at P(·,0) = 0.
class PressureProjector {
 public:
  PressureProjector(const StaggeredGrid2D& g, const ReferenceDensity& rho, int order,
                    PressureSymbol symbol = PressureSymbol::ModifiedWavenumber);
  ~PressureProjector();
  PressureProjector(const PressureProjector&) = delete;
  PressureProjector& operator=(const PressureProjector&) = delete;

  // eta = D_x(rho0 u) + D_y(rho0 v) at interior centers; ghosts of u, v filled.
  CellField divergence(const UFaceField& u, const VFaceField& v) const;

  // P with zero mean / anchored null mode. `scale` sets the magnitude
  // against which the compatibility residual is judged (defaults to max|eta|).
  CellField solve(const CellField& eta, double scale = 0.0);
  CellField solve_poisson_periodic(const CellField& eta, double scale = 0.0);
  CellField solve_poisson_channel(const CellField& eta, double scale = 0.0);
  CellField solve_poisson_box(const CellField& eta);

  // U -= G P on corrected faces. P must have its ghosts filled (Quantity::Pressure).
  void subtract_gradient(const CellField& P, UFaceField& u, VFaceField& v) const;

  // Full projection: returns P (ghosts filled). u, v need filled ghosts on entry;
  // their ghosts are stale on exit.
  CellField project(UFaceField& u, VFaceField& v);

  const DivergenceOperator& x_operator() const noexcept { return dx_op_; }
  const DivergenceOperator& y_operator() const noexcept { return dy_op_; }

 private:
  struct Plans;
  const StaggeredGrid2D* grid_;
  const ReferenceDensity* rho_;
  DivergenceOperator dx_op_, dy_op_;
  PressureSymbol symbol_;
  std::unique_ptr<Plans> plans_;
  std::vector<double> lambda_x_, lambda_y_;
};

}  // namespace hiweno
