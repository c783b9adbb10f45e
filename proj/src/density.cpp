#include "hiweno/density.hpp"

namespace hiweno {

namespace {
template <NodeKind Kind>
void sample(StaggeredField<Kind>& f, const StaggeredGrid2D& g,
            const std::function<double(double)>& rho) {
  int h = f.halo();
  for (int j = -h; j < f.extent_y() + h; ++j) {
    double value = rho(g.node_y(Kind, j));
    for (int i = -h; i < f.extent_x() + h; ++i) f(i, j) = value;
  }
  if (g.bc() == BoundaryKind::ChannelNoFlowVertical) fill_ghosts(f, g, Quantity::Scalar, 0.0);
}
}  // namespace

ReferenceDensity::ReferenceDensity(const StaggeredGrid2D& g,
                                   const std::function<double(double)>& rho_of_y)
    : center_(g), u_(g), v_(g), corner_(g) {
  sample(center_, g, rho_of_y);
  sample(u_, g, rho_of_y);
  sample(v_, g, rho_of_y);
  sample(corner_, g, rho_of_y);
  double r0 = rho_of_y(g.bounds().ymin);
  uniform_ = true;
  for (double x : corner_.storage()) uniform_ = uniform_ && x == r0;
  for (double x : center_.storage()) uniform_ = uniform_ && x == r0;
}

ReferenceDensity ReferenceDensity::uniform(const StaggeredGrid2D& g, double value) {
  return ReferenceDensity(g, [value](double) { return value; });
}

}  // namespace hiweno
