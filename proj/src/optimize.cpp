#include "seamkit/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "seamkit/error.hpp"

namespace seamkit::optimize {

std::vector<double> Box::clamp(std::vector<double> x) const {
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::clamp(x[i], lo[i], hi[i]);
  return x;
}

namespace {

struct Vertex {
  std::vector<double> x;
  double f;
};

struct Counter {
  const Objective& f;
  int calls = 0;
  double operator()(const std::vector<double>& x) {
    ++calls;
    const double v = f(x);
    return std::isnan(v) ? HUGE_VAL : v;
  }
};

double scale_of(const Box& box, std::size_t i) {
  const double w = box.hi[i] - box.lo[i];
  return w > 0.0 ? w : 1.0;
}

// One local run from a starting simplex around x0 with per-axis step `step`.
void local_run(Counter& eval, Vertex start, const Box& box, const std::vector<double>& step,
               const Options& opt, Result& out) {
  const std::size_t n = box.dim();
  std::vector<Vertex> simplex{start};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> x = start.x;
    const double s = step[i];
    x[i] = x[i] + s <= box.hi[i] ? x[i] + s : x[i] - s;
    x = box.clamp(x);
    simplex.push_back({x, eval(x)});
  }
  auto by_f = [](const Vertex& a, const Vertex& b) { return a.f < b.f; };
  std::vector<double> centroid(n);
  auto point = [&](double coef, const std::vector<double>& towards) {
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = centroid[i] + coef * (towards[i] - centroid[i]);
    return box.clamp(x);
  };
  for (int iter = 0; iter < opt.max_iterations; ++iter) {
    std::sort(simplex.begin(), simplex.end(), by_f);
    double diameter = 0.0;
    for (std::size_t k = 1; k <= n; ++k) {
      for (std::size_t i = 0; i < n; ++i) {
        diameter = std::max(diameter, std::abs(simplex[k].x[i] - simplex[0].x[i]) / scale_of(box, i));
      }
    }
    if (simplex[n].f - simplex[0].f <= opt.ftol && diameter <= opt.xtol) {
      out.converged = true;
      break;
    }
    ++out.iterations;
    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < n; ++i) centroid[i] += simplex[k].x[i] / static_cast<double>(n);
    }
    Vertex& worst = simplex[n];
    const std::vector<double> xr = point(-1.0, worst.x);
    const double fr = eval(xr);
    if (fr < simplex[0].f) {
      const std::vector<double> xe = point(-2.0, worst.x);
      const double fe = eval(xe);
      worst = fe < fr ? Vertex{xe, fe} : Vertex{xr, fr};
    } else if (fr < simplex[n - 1].f) {
      worst = {xr, fr};
    } else {
      const bool outside = fr < worst.f;
      const std::vector<double> xc = outside ? point(-0.5, worst.x) : point(0.5, worst.x);
      const double fc = eval(xc);
      if (fc < std::min(fr, worst.f)) {
        worst = {xc, fc};
      } else {
        for (std::size_t k = 1; k <= n; ++k) {
          for (std::size_t i = 0; i < n; ++i) {
            simplex[k].x[i] = simplex[0].x[i] + 0.5 * (simplex[k].x[i] - simplex[0].x[i]);
          }
          simplex[k].f = eval(simplex[k].x);
        }
      }
    }
    const double best = std::min_element(simplex.begin(), simplex.end(), by_f)->f;
    out.trace.push_back(out.trace.empty() ? best : std::min(best, out.trace.back()));
  }
  const Vertex& best = *std::min_element(simplex.begin(), simplex.end(), by_f);
  if (best.f < out.f) {
    out.f = best.f;
    out.x = best.x;
  }
}

}  // namespace

Result nelder_mead(const Objective& f, std::vector<double> x0, const Box& box, const Options& opt) {
  if (box.lo.size() != box.hi.size() || x0.size() != box.dim() || x0.empty()) {
    throw SolverError("optimizer dimension mismatch");
  }
  Counter eval{f};
  Result out;
  out.x = box.clamp(std::move(x0));
  out.f = eval(out.x);
  const std::size_t n = box.dim();
  std::vector<double> step(n);
  for (std::size_t i = 0; i < n; ++i) step[i] = 0.1 * scale_of(box, i);
  for (int r = 0; r <= opt.max_restarts; ++r) {
    const double before = out.f;
    out.converged = false;
    local_run(eval, {out.x, out.f}, box, step, opt, out);
    if (r > 0 && before - out.f <= opt.ftol * 1e-3) break;
    for (double& s : step) s *= 0.1;
  }
  out.evaluations = eval.calls;
  return out;
}

Result grid_seeded(const Objective& f, const Box& box, int per_dim, int seeds, const Options& opt) {
  const std::size_t n = box.dim();
  if (per_dim < 2 || seeds < 1) throw SolverError("grid seeding needs >= 2 points per axis");
  std::vector<Vertex> grid;
  std::vector<int> idx(n, 0);
  int evaluations = 0;
  while (true) {
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = box.lo[i] + (box.hi[i] - box.lo[i]) * idx[i] / (per_dim - 1);
    }
    const double v = f(x);
    ++evaluations;
    grid.push_back({x, std::isnan(v) ? HUGE_VAL : v});
    std::size_t d = 0;
    while (d < n && ++idx[d] == per_dim) idx[d++] = 0;
    if (d == n) break;
  }
  std::stable_sort(grid.begin(), grid.end(), [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
  Result best;
  best.f = HUGE_VAL;
  const int take = std::min<int>(seeds, static_cast<int>(grid.size()));
  for (int s = 0; s < take; ++s) {
    Result r = nelder_mead(f, grid[s].x, box, opt);
    evaluations += r.evaluations;
    if (r.f < best.f) {
      std::vector<double> trace = std::move(best.trace);
      best = std::move(r);
      if (!trace.empty()) {
        // Keep the combined trace monotone: prefix with earlier seeds' progress.
        for (double& t : best.trace) t = std::min(t, trace.back());
        trace.insert(trace.end(), best.trace.begin(), best.trace.end());
        best.trace = std::move(trace);
      }
    }
  }
  best.evaluations = evaluations;
  return best;
}

}  // namespace seamkit::optimize
