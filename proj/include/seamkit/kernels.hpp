#pragma once

// Batched evaluation of cubic Bézier curves in power-basis form.
//
// All curve-sampling hot loops (quadrature nodes, curvature scans, dense
// polylines) go through these kernels. The scalar table is the reference;
// vector variants must agree with it to rounding (see test_kernels.cpp).

#include <cstddef>
#include <span>
#include <string_view>

namespace seamkit::kernels {

/// B(t) = p0 + p1 t + p2 t^2 + p3 t^3, per coordinate.
struct PowerCubic {
  double x0 = 0, x1 = 0, x2 = 0, x3 = 0;
  double y0 = 0, y1 = 0, y2 = 0, y3 = 0;
};

/// Builds power-basis coefficients from Bézier control points.
PowerCubic from_bezier(double ax, double ay, double bx, double by, double cx, double cy,
                       double dx, double dy);

struct KernelTable {
  std::string_view name;
  void (*points)(const PowerCubic& c, const double* t, double* x, double* y, std::size_t n);
  /// |B'(t)|
  void (*speeds)(const PowerCubic& c, const double* t, double* out, std::size_t n);
  /// Signed curvature cross(B', B'') / |B'|^3; +inf where B'(t) == 0.
  void (*curvatures)(const PowerCubic& c, const double* t, double* out, std::size_t n);
};

const KernelTable& scalar_table();
/// nullptr when not compiled in or not supported by the running CPU.
const KernelTable* avx2_table();
const KernelTable* neon_table();

/// Fastest supported table. Setting SEAMKIT_SIMD=scalar forces the reference.
const KernelTable& active();

inline void eval_points(const PowerCubic& c, std::span<const double> t, std::span<double> x,
                        std::span<double> y) {
  active().points(c, t.data(), x.data(), y.data(), t.size());
}
inline void eval_speeds(const PowerCubic& c, std::span<const double> t, std::span<double> out) {
  active().speeds(c, t.data(), out.data(), t.size());
}
inline void eval_curvatures(const PowerCubic& c, std::span<const double> t,
                            std::span<double> out) {
  active().curvatures(c, t.data(), out.data(), t.size());
}

}  // namespace seamkit::kernels
