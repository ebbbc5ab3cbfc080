#pragma once

// Derivative-free scalar and simplex optimizers.

#include <functional>
#include <vector>

namespace sscap::optimize {

struct NelderMeadOptions {
  double initial_step = 0.5;
  double f_tol = 1e-10;       // stop when the simplex's value spread falls below this
  int max_evaluations = 20000;
  int rebuilds = 2;           // restarts of the simplex around the best vertex
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  int evaluations = 0;
  bool converged = false;
};

/// Minimizes `f` from `start` with the standard Nelder-Mead moves
/// (reflection 1, expansion 2, contraction 1/2, shrink 1/2).
NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             std::vector<double> start, const NelderMeadOptions& opts = {});

struct ScalarResult {
  double x = 0.0;
  double value = 0.0;
};

/// Maximizes a unimodal `f` on [lo, hi] by golden-section search until the
/// bracket is narrower than `tol`. The endpoints are compared against the
/// interior optimum, so maxima on the boundary are found too.
ScalarResult golden_section_max(const std::function<double(double)>& f, double lo, double hi, double tol);

}  // namespace sscap::optimize
