#include "hiweno/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace hiweno {

StaggeredGrid2D::StaggeredGrid2D(Bounds bounds, int nx, int ny, BoundaryKind bc, int halo)
    : bounds_(bounds), nx_(nx), ny_(ny), bc_(bc), halo_(halo) {
  if (!(bounds.xmax > bounds.xmin) || !(bounds.ymax > bounds.ymin))
    throw std::invalid_argument("grid bounds must satisfy min < max");
  if (halo < 0) throw std::invalid_argument("halo must be non-negative");
  if (nx < 1 || ny < 1 || nx < 2 * halo || ny < 2 * halo)
    throw std::invalid_argument("grid of " + std::to_string(nx) + "x" + std::to_string(ny) +
                                " cells is too small for halo " + std::to_string(halo));
  dx_ = (bounds.xmax - bounds.xmin) / nx;
  dy_ = (bounds.ymax - bounds.ymin) / ny;
}

int StaggeredGrid2D::extent_x(NodeKind kind) const noexcept {
  bool face = kind == NodeKind::UFace || kind == NodeKind::Corner;
  return nx_ + (face && !periodic_x() ? 1 : 0);
}

int StaggeredGrid2D::extent_y(NodeKind kind) const noexcept {
  bool face = kind == NodeKind::VFace || kind == NodeKind::Corner;
  return ny_ + (face && !periodic_y() ? 1 : 0);
}

double StaggeredGrid2D::node_x(NodeKind kind, int i) const noexcept {
  return (kind == NodeKind::UFace || kind == NodeKind::Corner) ? x_face(i) : x_mid(i);
}

double StaggeredGrid2D::node_y(NodeKind kind, int j) const noexcept {
  return (kind == NodeKind::VFace || kind == NodeKind::Corner) ? y_face(j) : y_mid(j);
}

Point StaggeredGrid2D::locate(NodeKind kind, int i, int j) const {
  if (i < -halo_ || i >= extent_x(kind) + halo_ || j < -halo_ || j >= extent_y(kind) + halo_)
    throw std::out_of_range("node (" + std::to_string(i) + "," + std::to_string(j) +
                            ") outside interior+halo");
  return {node_x(kind, i), node_y(kind, j)};
}

int required_halo(int k) { return std::max(2 * k - 1, 5); }

void FieldStorage::fill(double value) { std::fill(data_.begin(), data_.end(), value); }

bool FlowState::matches(const StaggeredGrid2D& g) const {
  UFaceField ru(g);
  VFaceField rv(g);
  if (!u.same_shape(ru) || !v.same_shape(rv)) return false;
  return !phi || phi->same_shape(CellField(g));
}

namespace {

// Reflection of index `i` about the boundary of a non-periodic direction.
// Face-type nodes have boundary nodes at 0 and n (whole-sample symmetry);
// center-type nodes reflect about the half-index (half-sample symmetry).
struct Mirror {
  int n;      // number of cells
  bool face;  // face-type node in this direction
  int operator()(int i) const noexcept {
    if (face) return i < 0 ? -i : 2 * n - i;
    return i < 0 ? -1 - i : 2 * n - 1 - i;
  }
};

void fill_periodic_x(FieldStorage& f, int j0, int j1) {
  int n = f.extent_x(), h = f.halo();
  for (int j = j0; j < j1; ++j)
    for (int m = 1; m <= h; ++m) {
      f(-m, j) = f(n - m, j);
      f(n - 1 + m, j) = f(m - 1, j);
    }
}

void fill_periodic_y(FieldStorage& f) {
  int n = f.extent_y(), h = f.halo();
  for (int m = 1; m <= h; ++m)
    for (int i = -h; i < f.extent_x() + h; ++i) {
      f(i, -m) = f(i, n - m);
      f(i, n - 1 + m) = f(i, m - 1);
    }
}

void reflect_y(FieldStorage& f, int ncells, bool face, double sign) {
  int h = f.halo(), ny = f.extent_y();
  Mirror mirror{ncells, face};
  for (int i = -h; i < f.extent_x() + h; ++i) {
    if (face && sign < 0) {
      f(i, 0) = 0.0;
      f(i, ncells) = 0.0;
    }
    for (int m = 1; m <= h; ++m) {
      f(i, -m) = sign * f(i, mirror(-m));
      f(i, ny - 1 + m) = sign * f(i, mirror(ny - 1 + m));
    }
  }
}

void reflect_x(FieldStorage& f, int ncells, bool face, double sign) {
  int h = f.halo(), nx = f.extent_x();
  Mirror mirror{ncells, face};
  for (int j = -h; j < f.extent_y() + h; ++j) {
    if (face && sign < 0) {
      f(0, j) = 0.0;
      f(ncells, j) = 0.0;
    }
    for (int m = 1; m <= h; ++m) {
      f(-m, j) = sign * f(mirror(-m), j);
      f(nx - 1 + m, j) = sign * f(mirror(nx - 1 + m), j);
    }
  }
}

}  // namespace

template <NodeKind Kind>
void fill_ghosts(StaggeredField<Kind>& f, const StaggeredGrid2D& g, Quantity q, double t,
                 const ExactSolution* exact) {
  const bool xface = Kind == NodeKind::UFace || Kind == NodeKind::Corner;
  const bool yface = Kind == NodeKind::VFace || Kind == NodeKind::Corner;
  const int h = f.halo();
  switch (g.bc()) {
    case BoundaryKind::PeriodicBoth:
      fill_periodic_x(f, 0, f.extent_y());
      fill_periodic_y(f);
      return;
    case BoundaryKind::ChannelNoFlowVertical:
      fill_periodic_x(f, 0, f.extent_y());
      reflect_y(f, g.ny(), yface, q == Quantity::VelocityY ? -1.0 : 1.0);
      return;
    case BoundaryKind::DirichletExact: {
      if (q == Quantity::Pressure) {
        reflect_x(f, g.nx(), xface, 1.0);
        reflect_y(f, g.ny(), yface, 1.0);
        return;
      }
      if (!exact || !*exact)
        throw std::invalid_argument("Dirichlet ghost fill requires an exact solution");
      const auto& ex = *exact;
      const int nxi = f.extent_x(), nyi = f.extent_y();
      for (int j = -h; j < nyi + h; ++j) {
        double y = g.node_y(Kind, j);
        bool row_ghost = j < 0 || j >= nyi || (yface && (j == 0 || j == nyi - 1));
        for (int i = -h; i < nxi + h; ++i) {
          bool ghost = row_ghost || i < 0 || i >= nxi || (xface && (i == 0 || i == nxi - 1));
          if (ghost) f(i, j) = ex(q, g.node_x(Kind, i), y, t);
        }
      }
      return;
    }
  }
}

template void fill_ghosts(CellField&, const StaggeredGrid2D&, Quantity, double, const ExactSolution*);
template void fill_ghosts(UFaceField&, const StaggeredGrid2D&, Quantity, double, const ExactSolution*);
template void fill_ghosts(VFaceField&, const StaggeredGrid2D&, Quantity, double, const ExactSolution*);
template void fill_ghosts(CornerField&, const StaggeredGrid2D&, Quantity, double, const ExactSolution*);

GhostFiller::GhostFiller(const StaggeredGrid2D& g, ExactSolution exact)
    : grid_(&g), exact_(std::move(exact)) {}

void GhostFiller::fill_state(FlowState& s) const {
  (*this)(s.u, Quantity::VelocityX, s.t);
  (*this)(s.v, Quantity::VelocityY, s.t);
  if (s.phi) (*this)(*s.phi, Quantity::Scalar, s.t);
}

}  // namespace hiweno
