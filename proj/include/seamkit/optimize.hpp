#pragma once

#include <functional>
#include <vector>

namespace seamkit::optimize {

using Objective = std::function<double(const std::vector<double>&)>;

struct Box {
  std::vector<double> lo;
  std::vector<double> hi;
  std::size_t dim() const { return lo.size(); }
  std::vector<double> clamp(std::vector<double> x) const;
};

struct Options {
  int max_iterations = 500;  // per local run
  double ftol = 1e-10;       // spread of simplex values
  double xtol = 1e-10;       // simplex diameter, in box-normalized units
  int max_restarts = 4;
};

struct Result {
  std::vector<double> x;
  double f = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
  /// Best objective value after every iteration, over all runs.
  std::vector<double> trace;
};

/// Nelder–Mead with every trial point projected into the box. Restarts from
/// the best point with a fresh simplex until a restart stops improving.
Result nelder_mead(const Objective& f, std::vector<double> x0, const Box& box,
                   const Options& options = {});

/// Evaluates `f` on a `per_dim`^d grid spanning the box (bounds included),
/// then refines the `seeds` best grid points with `nelder_mead`.
Result grid_seeded(const Objective& f, const Box& box, int per_dim, int seeds,
                   const Options& options = {});

}  // namespace seamkit::optimize
