#include "hiweno/pressure.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

namespace hiweno {

double DivergenceOperator::symbol(double theta, double h) const {
  double s = 0.0;
  for (std::size_t m = 0; m < a.size(); ++m) s += a[m] * std::sin((2.0 * m + 1.0) * theta / 2.0);
  s *= 2.0 / h;
  return -s * s;
}

DivergenceOperator make_divergence_operator(int order) {
  switch (order) {
    case 2: return {2, {1.0}};
    case 4: return {4, {27.0 / 24, -1.0 / 24}};
    case 6: return {6, {2250.0 / 1920, -125.0 / 1920, 9.0 / 1920}};
    default: throw std::invalid_argument("divergence order must be 2, 4 or 6");
  }
}

struct PressureProjector::Plans {
  int nx = 0, ny = 0;
  double* real = nullptr;
  fftw_complex* spec = nullptr;
  fftw_plan forward = nullptr, backward = nullptr;
  ~Plans() {
    if (forward) fftw_destroy_plan(forward);
    if (backward) fftw_destroy_plan(backward);
    if (real) fftw_free(real);
    if (spec) fftw_free(spec);
  }
};

namespace {

constexpr double kPi = std::numbers::pi;

double continuous_symbol(int q, int n, double length, bool cosine) {
  // Cosine modes have wavenumber pi q / L, Fourier modes 2 pi q' / L.
  double kq = cosine ? kPi * q / length : 2.0 * kPi * std::min(q, n - q) / length;
  return -kq * kq;
}

}  // namespace

PressureProjector::PressureProjector(const StaggeredGrid2D& g, const ReferenceDensity& rho, int order,
                                     PressureSymbol symbol)
    : grid_(&g), rho_(&rho), dx_op_(make_divergence_operator(order)),
      dy_op_(g.bc() == BoundaryKind::ChannelNoFlowVertical ? make_divergence_operator(2)
                                                           : make_divergence_operator(order)),
      symbol_(symbol), plans_(std::make_unique<Plans>()) {
  const int nx = g.nx(), ny = g.ny();
  if (g.halo() < static_cast<int>(dx_op_.a.size()))
    throw std::invalid_argument("grid halo too small for the divergence operator");
  if (g.bc() != BoundaryKind::ChannelNoFlowVertical && !rho.is_uniform())
    throw std::invalid_argument("variable rho0 is supported only in the channel solver");
  auto& p = *plans_;
  p.nx = nx;
  p.ny = ny;
  p.real = fftw_alloc_real(static_cast<std::size_t>(nx) * ny);
  const Bounds& b = g.bounds();
  lambda_x_.resize(nx);
  lambda_y_.resize(ny);
  switch (g.bc()) {
    case BoundaryKind::PeriodicBoth: {
      p.spec = fftw_alloc_complex(static_cast<std::size_t>(ny) * (nx / 2 + 1));
      p.forward = fftw_plan_dft_r2c_2d(ny, nx, p.real, p.spec, FFTW_ESTIMATE);
      p.backward = fftw_plan_dft_c2r_2d(ny, nx, p.spec, p.real, FFTW_ESTIMATE);
      for (int q = 0; q < nx; ++q)
        lambda_x_[q] = symbol == PressureSymbol::ModifiedWavenumber
                           ? dx_op_.symbol(2.0 * kPi * q / nx, g.dx())
                           : continuous_symbol(q, nx, b.xmax - b.xmin, false);
      for (int q = 0; q < ny; ++q)
        lambda_y_[q] = symbol == PressureSymbol::ModifiedWavenumber
                           ? dy_op_.symbol(2.0 * kPi * q / ny, g.dy())
                           : continuous_symbol(q, ny, b.ymax - b.ymin, false);
      break;
    }
    case BoundaryKind::DirichletExact: {
      p.forward = fftw_plan_r2r_2d(ny, nx, p.real, p.real, FFTW_REDFT10, FFTW_REDFT10, FFTW_ESTIMATE);
      p.backward = fftw_plan_r2r_2d(ny, nx, p.real, p.real, FFTW_REDFT01, FFTW_REDFT01, FFTW_ESTIMATE);
      for (int q = 0; q < nx; ++q)
        lambda_x_[q] = symbol == PressureSymbol::ModifiedWavenumber
                           ? dx_op_.symbol(kPi * q / nx, g.dx())
                           : continuous_symbol(q, nx, b.xmax - b.xmin, true);
      for (int q = 0; q < ny; ++q)
        lambda_y_[q] = symbol == PressureSymbol::ModifiedWavenumber
                           ? dy_op_.symbol(kPi * q / ny, g.dy())
                           : continuous_symbol(q, ny, b.ymax - b.ymin, true);
      break;
    }
    case BoundaryKind::ChannelNoFlowVertical: {
      p.spec = fftw_alloc_complex(static_cast<std::size_t>(ny) * (nx / 2 + 1));
      int n[1] = {nx};
      p.forward = fftw_plan_many_dft_r2c(1, n, ny, p.real, nullptr, 1, nx, p.spec, nullptr, 1,
                                         nx / 2 + 1, FFTW_ESTIMATE);
      p.backward = fftw_plan_many_dft_c2r(1, n, ny, p.spec, nullptr, 1, nx / 2 + 1, p.real, nullptr,
                                          1, nx, FFTW_ESTIMATE);
      for (int q = 0; q < nx; ++q)
        lambda_x_[q] = symbol == PressureSymbol::ModifiedWavenumber
                           ? dx_op_.symbol(2.0 * kPi * q / nx, g.dx())
                           : continuous_symbol(q, nx, b.xmax - b.xmin, false);
      break;
    }
  }
}

PressureProjector::~PressureProjector() = default;

CellField PressureProjector::divergence(const UFaceField& u, const VFaceField& v) const {
  const auto& g = *grid_;
  CellField eta(g);
  const auto& ax = dx_op_.a;
  const auto& ay = dy_op_.a;
  const auto& ru = rho_->on_u();
  const auto& rv = rho_->on_v();
  const double idx = 1.0 / g.dx(), idy = 1.0 / g.dy();
#pragma omp parallel for schedule(static)
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) {
      double dxs = 0.0, dys = 0.0;
      for (int m = 1; m <= static_cast<int>(ax.size()); ++m)
        dxs += ax[m - 1] * (ru(i + m, j) * u(i + m, j) - ru(i + 1 - m, j) * u(i + 1 - m, j));
      for (int m = 1; m <= static_cast<int>(ay.size()); ++m)
        dys += ay[m - 1] * (rv(i, j + m) * v(i, j + m) - rv(i, j + 1 - m) * v(i, j + 1 - m));
      eta(i, j) = dxs * idx + dys * idy;
    }
  return eta;
}

namespace {
double max_abs_interior(const CellField& f) {
  double m = 0.0;
  for (int j = 0; j < f.extent_y(); ++j)
    for (int i = 0; i < f.extent_x(); ++i) m = std::max(m, std::fabs(f(i, j)));
  return m;
}
}  // namespace

CellField PressureProjector::solve(const CellField& eta, double scale) {
  switch (grid_->bc()) {
    case BoundaryKind::PeriodicBoth: return solve_poisson_periodic(eta, scale);
    case BoundaryKind::DirichletExact: return solve_poisson_box(eta);
    case BoundaryKind::ChannelNoFlowVertical: return solve_poisson_channel(eta, scale);
  }
  throw std::logic_error("unreachable");
}

CellField PressureProjector::solve_poisson_periodic(const CellField& eta, double scale) {
  const auto& g = *grid_;
  if (g.bc() != BoundaryKind::PeriodicBoth) throw std::logic_error("periodic solve on a non-periodic grid");
  auto& p = *plans_;
  const int nx = g.nx(), ny = g.ny(), nh = nx / 2 + 1;
  double sum = 0.0;
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) sum += eta(i, j);
  double mean = sum / (static_cast<double>(nx) * ny);
  double ref = std::max(scale, max_abs_interior(eta));
  if (std::fabs(mean) > 1e-10 * ref)
    throw IncompatibleSource("periodic Poisson source has nonzero mean " + std::to_string(mean));
  const double rho0 = rho_->center_row(0);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) p.real[j * nx + i] = eta(i, j) / rho0;
  fftw_execute(p.forward);
  const double norm = 1.0 / (static_cast<double>(nx) * ny);
  for (int l = 0; l < ny; ++l)
    for (int q = 0; q < nh; ++q) {
      fftw_complex& c = p.spec[l * nh + q];
      double lam = lambda_x_[q] + lambda_y_[l];
      double f = (l == 0 && q == 0) || lam == 0.0 ? 0.0 : norm / lam;
      c[0] *= f;
      c[1] *= f;
    }
  fftw_execute(p.backward);
  CellField P(g);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) P(i, j) = p.real[j * nx + i];
  return P;
}

CellField PressureProjector::solve_poisson_box(const CellField& eta) {
  const auto& g = *grid_;
  if (g.bc() != BoundaryKind::DirichletExact) throw std::logic_error("box solve on a non-box grid");
  auto& p = *plans_;
  const int nx = g.nx(), ny = g.ny();
  const double rho0 = rho_->center_row(0);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) p.real[j * nx + i] = eta(i, j) / rho0;
  fftw_execute(p.forward);
  // REDFT10 followed by REDFT01 scales by 2n per dimension. The constant
  // mode is dropped: boundary data make the net source truncation-small only.
  const double norm = 1.0 / (4.0 * nx * ny);
  for (int l = 0; l < ny; ++l)
    for (int q = 0; q < nx; ++q) {
      double lam = lambda_x_[q] + lambda_y_[l];
      double& c = p.real[l * nx + q];
      c = (l == 0 && q == 0) || lam == 0.0 ? 0.0 : c * norm / lam;
    }
  fftw_execute(p.backward);
  CellField P(g);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) P(i, j) = p.real[j * nx + i];
  return P;
}

CellField PressureProjector::solve_poisson_channel(const CellField& eta, double scale) {
  const auto& g = *grid_;
  if (g.bc() != BoundaryKind::ChannelNoFlowVertical)
    throw std::logic_error("channel solve on a non-channel grid");
  auto& p = *plans_;
  const int nx = g.nx(), ny = g.ny(), nh = nx / 2 + 1;
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) p.real[j * nx + i] = eta(i, j);
  fftw_execute(p.forward);

  // Net source of the x-mean: the Neumann problem is solvable only if it vanishes.
  double net = 0.0, mag = 0.0;
  for (int j = 0; j < ny; ++j) {
    net += p.spec[j * nh][0];
    mag += std::fabs(p.spec[j * nh][0]);
  }
  double ref = std::max(mag, std::max(scale, max_abs_interior(eta)) * nx * ny);
  if (std::fabs(net) > 1e-10 * ref)
    throw IncompatibleSource("channel Poisson source has nonzero net value " + std::to_string(net));

  const double idy2 = 1.0 / (g.dy() * g.dy());
  const double norm = 1.0 / nx;
#pragma omp parallel
  {
    std::vector<double> lo(ny), di(ny), up(ny), cp(ny);
    std::vector<std::complex<double>> rhs(ny), dp(ny);
#pragma omp for schedule(static)
    for (int q = 0; q < nh; ++q) {
      for (int j = 0; j < ny; ++j) {
        double below = j > 0 ? rho_->face_row(j) * idy2 : 0.0;
        double above = j < ny - 1 ? rho_->face_row(j + 1) * idy2 : 0.0;
        lo[j] = below;
        up[j] = above;
        di[j] = rho_->center_row(j) * lambda_x_[q] - below - above;
        rhs[j] = {p.spec[j * nh + q][0], p.spec[j * nh + q][1]};
      }
      if (q == 0) {
        // Anchor the null mode: P(0) = 0 replaces the first row.
        di[0] = 1.0;
        up[0] = 0.0;
        rhs[0] = 0.0;
      }
      // Thomas algorithm.
      cp[0] = up[0] / di[0];
      dp[0] = rhs[0] / di[0];
      for (int j = 1; j < ny; ++j) {
        double m = di[j] - lo[j] * cp[j - 1];
        cp[j] = up[j] / m;
        dp[j] = (rhs[j] - lo[j] * dp[j - 1]) / m;
      }
      for (int j = ny - 2; j >= 0; --j) dp[j] -= cp[j] * dp[j + 1];
      for (int j = 0; j < ny; ++j) {
        p.spec[j * nh + q][0] = dp[j].real() * norm;
        p.spec[j * nh + q][1] = dp[j].imag() * norm;
      }
    }
  }
  fftw_execute(p.backward);
  CellField P(g);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) P(i, j) = p.real[j * nx + i];
  return P;
}

void PressureProjector::subtract_gradient(const CellField& P, UFaceField& u, VFaceField& v) const {
  const auto& g = *grid_;
  const auto& ax = dx_op_.a;
  const auto& ay = dy_op_.a;
  const double idx = 1.0 / g.dx(), idy = 1.0 / g.dy();
  // Faces on a non-periodic boundary keep their boundary values.
  const int i0 = g.periodic_x() ? 0 : 1, i1 = g.periodic_x() ? u.extent_x() : u.extent_x() - 1;
  const int j0 = g.periodic_y() ? 0 : 1, j1 = g.periodic_y() ? v.extent_y() : v.extent_y() - 1;
#pragma omp parallel for schedule(static)
  for (int j = 0; j < u.extent_y(); ++j)
    for (int i = i0; i < i1; ++i) {
      double s = 0.0;
      for (int m = 1; m <= static_cast<int>(ax.size()); ++m) s += ax[m - 1] * (P(i + m - 1, j) - P(i - m, j));
      u(i, j) -= s * idx;
    }
#pragma omp parallel for schedule(static)
  for (int j = j0; j < j1; ++j)
    for (int i = 0; i < v.extent_x(); ++i) {
      double s = 0.0;
      for (int m = 1; m <= static_cast<int>(ay.size()); ++m) s += ay[m - 1] * (P(i, j + m - 1) - P(i, j - m));
      v(i, j) -= s * idy;
    }
}

CellField PressureProjector::project(UFaceField& u, VFaceField& v) {
  const auto& g = *grid_;
  CellField eta = divergence(u, v);
  // Rounding in eta scales with the fluxes, not with eta itself.
  double flux_scale = 0.0;
  for (int j = 0; j < u.extent_y(); ++j)
    for (int i = 0; i < u.extent_x(); ++i)
      flux_scale = std::max(flux_scale, std::fabs(rho_->on_u()(i, j) * u(i, j)) / g.dx());
  for (int j = 0; j < v.extent_y(); ++j)
    for (int i = 0; i < v.extent_x(); ++i)
      flux_scale = std::max(flux_scale, std::fabs(rho_->on_v()(i, j) * v(i, j)) / g.dy());
  CellField P = solve(eta, flux_scale);
  fill_ghosts(P, g, Quantity::Pressure, 0.0);
  subtract_gradient(P, u, v);
  return P;
}

}  // namespace hiweno
