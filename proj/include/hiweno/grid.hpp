#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace hiweno {

enum class BoundaryKind { PeriodicBoth, DirichletExact, ChannelNoFlowVertical };

// Node families of the Arakawa-C layout. Corner nodes (x_i, y_j) only carry
// sampled reference profiles and flux points; no prognostic field lives there.
enum class NodeKind { Center, UFace, VFace, Corner };

// What a field represents; decides reflection parity and which exact
// solution component is used for Dirichlet ghosts.
enum class Quantity { VelocityX, VelocityY, Scalar, Pressure };

struct Bounds {
  double xmin, xmax, ymin, ymax;
};

struct Point {
  double x, y;
};

class StaggeredGrid2D {
 public:
  StaggeredGrid2D(Bounds bounds, int nx, int ny, BoundaryKind bc, int halo);

  int nx() const noexcept { return nx_; }
  int ny() const noexcept { return ny_; }
  int halo() const noexcept { return halo_; }
  double dx() const noexcept { return dx_; }
  double dy() const noexcept { return dy_; }
  const Bounds& bounds() const noexcept { return bounds_; }
  BoundaryKind bc() const noexcept { return bc_; }

  bool periodic_x() const noexcept { return bc_ != BoundaryKind::DirichletExact; }
  bool periodic_y() const noexcept { return bc_ == BoundaryKind::PeriodicBoth; }

  // Interior node counts per family. In a non-periodic direction face nodes
  // include both boundary faces (n+1 of them); periodic faces are not duplicated.
  int extent_x(NodeKind kind) const noexcept;
  int extent_y(NodeKind kind) const noexcept;

  double x_face(int i) const noexcept { return bounds_.xmin + i * dx_; }
  double x_mid(int i) const noexcept { return bounds_.xmin + (i + 0.5) * dx_; }
  double y_face(int j) const noexcept { return bounds_.ymin + j * dy_; }
  double y_mid(int j) const noexcept { return bounds_.ymin + (j + 0.5) * dy_; }

  double node_x(NodeKind kind, int i) const noexcept;
  double node_y(NodeKind kind, int j) const noexcept;

  // Physical coordinates of node (i, j); throws std::out_of_range outside interior+halo.
  Point locate(NodeKind kind, int i, int j) const;

  bool operator==(const StaggeredGrid2D&) const = default;

 private:
  Bounds bounds_;
  int nx_, ny_;
  BoundaryKind bc_;
  int halo_;
  double dx_, dy_;
};

inline StaggeredGrid2D build_grid(Bounds bounds, int nx, int ny, BoundaryKind bc, int halo) {
  return StaggeredGrid2D(bounds, nx, ny, bc, halo);
}

// Halo needed for WENO order k together with the widest central stencil in use.
int required_halo(int k);

// Raw 2D storage with halo; index (i, j) with i fastest, both may be negative.
class FieldStorage {
 public:
  FieldStorage() = default;
  FieldStorage(int nx, int ny, int halo)
      : nx_(nx), ny_(ny), halo_(halo), stride_(nx + 2 * halo),
        data_(static_cast<std::size_t>(nx + 2 * halo) * (ny + 2 * halo), 0.0) {}

  double& operator()(int i, int j) noexcept { return data_[index(i, j)]; }
  double operator()(int i, int j) const noexcept { return data_[index(i, j)]; }

  int extent_x() const noexcept { return nx_; }
  int extent_y() const noexcept { return ny_; }
  int halo() const noexcept { return halo_; }
  int stride() const noexcept { return stride_; }

  double* at(int i, int j) noexcept { return data_.data() + index(i, j); }
  const double* at(int i, int j) const noexcept { return data_.data() + index(i, j); }

  std::span<double> storage() noexcept { return data_; }
  std::span<const double> storage() const noexcept { return data_; }
  void fill(double value);

  bool same_shape(const FieldStorage& o) const noexcept {
    return nx_ == o.nx_ && ny_ == o.ny_ && halo_ == o.halo_;
  }

 private:
  std::size_t index(int i, int j) const noexcept {
    return static_cast<std::size_t>(j + halo_) * stride_ + (i + halo_);
  }
  int nx_ = 0, ny_ = 0, halo_ = 0, stride_ = 0;
  std::vector<double> data_;
};

template <NodeKind Kind>
class StaggeredField : public FieldStorage {
 public:
  static constexpr NodeKind kind = Kind;
  StaggeredField() = default;
  explicit StaggeredField(const StaggeredGrid2D& g)
      : FieldStorage(g.extent_x(Kind), g.extent_y(Kind), g.halo()) {}
};

using CellField = StaggeredField<NodeKind::Center>;
using UFaceField = StaggeredField<NodeKind::UFace>;
using VFaceField = StaggeredField<NodeKind::VFace>;
using CornerField = StaggeredField<NodeKind::Corner>;

struct FlowState {
  UFaceField u;
  VFaceField v;
  std::optional<CellField> phi;
  double t = 0.0;

  FlowState() = default;
  explicit FlowState(const StaggeredGrid2D& g, bool with_scalar = false)
      : u(g), v(g), phi(with_scalar ? std::optional<CellField>(CellField(g)) : std::nullopt) {}

  bool matches(const StaggeredGrid2D& g) const;
};

// exact(q, x, y, t): analytic value of quantity q; required for DirichletExact.
using ExactSolution = std::function<double(Quantity, double, double, double)>;

// Fills halo entries (and, for DirichletExact / no-flow boundaries, the
// boundary-face nodes) of f at time t. Interior values of periodic fields
// are never touched.
template <NodeKind Kind>
void fill_ghosts(StaggeredField<Kind>& f, const StaggeredGrid2D& g, Quantity q, double t,
                 const ExactSolution* exact = nullptr);

// Convenience wrapper binding a grid and an optional exact solution.
class GhostFiller {
 public:
  explicit GhostFiller(const StaggeredGrid2D& g, ExactSolution exact = {});
  template <NodeKind Kind>
  void operator()(StaggeredField<Kind>& f, Quantity q, double t) const {
    fill_ghosts(f, *grid_, q, t, exact_ ? &exact_ : nullptr);
  }
  void fill_state(FlowState& s) const;
  const StaggeredGrid2D& grid() const noexcept { return *grid_; }
  const ExactSolution& exact() const noexcept { return exact_; }

 private:
  const StaggeredGrid2D* grid_;
  ExactSolution exact_;
};

}  // namespace hiweno
