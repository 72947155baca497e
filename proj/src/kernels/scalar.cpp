#include "seamkit/kernels.hpp"

#include <cmath>
#include <limits>

namespace seamkit::kernels {

PowerCubic from_bezier(double ax, double ay, double bx, double by, double cx, double cy,
                       double dx, double dy) {
  PowerCubic c;
  c.x0 = ax;
  c.x1 = 3.0 * (bx - ax);
  c.x2 = 3.0 * (ax - 2.0 * bx + cx);
  c.x3 = dx - ax + 3.0 * (bx - cx);
  c.y0 = ay;
  c.y1 = 3.0 * (by - ay);
  c.y2 = 3.0 * (ay - 2.0 * by + cy);
  c.y3 = dy - ay + 3.0 * (by - cy);
  return c;
}

namespace {

void points_scalar(const PowerCubic& c, const double* t, double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double s = t[i];
    x[i] = ((c.x3 * s + c.x2) * s + c.x1) * s + c.x0;
    y[i] = ((c.y3 * s + c.y2) * s + c.y1) * s + c.y0;
  }
}

void speeds_scalar(const PowerCubic& c, const double* t, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double s = t[i];
    const double dx = (3.0 * c.x3 * s + 2.0 * c.x2) * s + c.x1;
    const double dy = (3.0 * c.y3 * s + 2.0 * c.y2) * s + c.y1;
    out[i] = std::sqrt(dx * dx + dy * dy);
  }
}

void curvatures_scalar(const PowerCubic& c, const double* t, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double s = t[i];
    const double dx = (3.0 * c.x3 * s + 2.0 * c.x2) * s + c.x1;
    const double dy = (3.0 * c.y3 * s + 2.0 * c.y2) * s + c.y1;
    const double ddx = 6.0 * c.x3 * s + 2.0 * c.x2;
    const double ddy = 6.0 * c.y3 * s + 2.0 * c.y2;
    const double sp2 = dx * dx + dy * dy;
    if (sp2 == 0.0) {
      out[i] = std::numeric_limits<double>::infinity();
      continue;
    }
    out[i] = (dx * ddy - dy * ddx) / (sp2 * std::sqrt(sp2));
  }
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{"scalar", points_scalar, speeds_scalar, curvatures_scalar};
  return table;
}

}  // namespace seamkit::kernels
