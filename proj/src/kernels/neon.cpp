// AArch64 variant. NEON is mandatory on AArch64, so no runtime probe.

#include "seamkit/kernels.hpp"

#include <arm_neon.h>

#include <cmath>
#include <limits>

namespace seamkit::kernels::detail {

namespace {

constexpr std::size_t kLanes = 2;

void points_neon(const PowerCubic& c, const double* t, double* x, double* y, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const float64x2_t s = vld1q_f64(t + i);
    float64x2_t px = vfmaq_f64(vdupq_n_f64(c.x2), vdupq_n_f64(c.x3), s);
    px = vfmaq_f64(vdupq_n_f64(c.x1), px, s);
    px = vfmaq_f64(vdupq_n_f64(c.x0), px, s);
    float64x2_t py = vfmaq_f64(vdupq_n_f64(c.y2), vdupq_n_f64(c.y3), s);
    py = vfmaq_f64(vdupq_n_f64(c.y1), py, s);
    py = vfmaq_f64(vdupq_n_f64(c.y0), py, s);
    vst1q_f64(x + i, px);
    vst1q_f64(y + i, py);
  }
  for (; i < n; ++i) {
    const double s = t[i];
    x[i] = ((c.x3 * s + c.x2) * s + c.x1) * s + c.x0;
    y[i] = ((c.y3 * s + c.y2) * s + c.y1) * s + c.y0;
  }
}

inline void derivative(const PowerCubic& c, float64x2_t s, float64x2_t& dx, float64x2_t& dy) {
  dx = vfmaq_f64(vdupq_n_f64(2.0 * c.x2), vdupq_n_f64(3.0 * c.x3), s);
  dx = vfmaq_f64(vdupq_n_f64(c.x1), dx, s);
  dy = vfmaq_f64(vdupq_n_f64(2.0 * c.y2), vdupq_n_f64(3.0 * c.y3), s);
  dy = vfmaq_f64(vdupq_n_f64(c.y1), dy, s);
}

void speeds_neon(const PowerCubic& c, const double* t, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    float64x2_t dx, dy;
    derivative(c, vld1q_f64(t + i), dx, dy);
    vst1q_f64(out + i, vsqrtq_f64(vfmaq_f64(vmulq_f64(dy, dy), dx, dx)));
  }
  for (; i < n; ++i) {
    const double s = t[i];
    const double dx = (3.0 * c.x3 * s + 2.0 * c.x2) * s + c.x1;
    const double dy = (3.0 * c.y3 * s + 2.0 * c.y2) * s + c.y1;
    out[i] = std::sqrt(dx * dx + dy * dy);
  }
}

void curvatures_neon(const PowerCubic& c, const double* t, double* out, std::size_t n) {
  const double inf = std::numeric_limits<double>::infinity();
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const float64x2_t s = vld1q_f64(t + i);
    float64x2_t dx, dy;
    derivative(c, s, dx, dy);
    const float64x2_t ddx = vfmaq_f64(vdupq_n_f64(2.0 * c.x2), vdupq_n_f64(6.0 * c.x3), s);
    const float64x2_t ddy = vfmaq_f64(vdupq_n_f64(2.0 * c.y2), vdupq_n_f64(6.0 * c.y3), s);
    const float64x2_t sp2 = vfmaq_f64(vmulq_f64(dy, dy), dx, dx);
    const float64x2_t num = vfmsq_f64(vmulq_f64(dx, ddy), dy, ddx);
    const float64x2_t k = vdivq_f64(num, vmulq_f64(sp2, vsqrtq_f64(sp2)));
    const uint64x2_t degenerate = vceqq_f64(sp2, vdupq_n_f64(0.0));
    vst1q_f64(out + i, vbslq_f64(degenerate, vdupq_n_f64(inf), k));
  }
  for (; i < n; ++i) {
    const double s = t[i];
    const double dx = (3.0 * c.x3 * s + 2.0 * c.x2) * s + c.x1;
    const double dy = (3.0 * c.y3 * s + 2.0 * c.y2) * s + c.y1;
    const double ddx = 6.0 * c.x3 * s + 2.0 * c.x2;
    const double ddy = 6.0 * c.y3 * s + 2.0 * c.y2;
    const double sp2 = dx * dx + dy * dy;
    out[i] = sp2 == 0.0 ? inf : (dx * ddy - dy * ddx) / (sp2 * std::sqrt(sp2));
  }
}

}  // namespace

const KernelTable& neon_table_impl() {
  static const KernelTable table{"neon", points_neon, speeds_neon, curvatures_neon};
  return table;
}

}  // namespace seamkit::kernels::detail
