#include "sscap/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace sscap::optimize {

namespace {

using Point = std::vector<double>;

Point affine(const Point& a, const Point& b, double t) {
  // a + t (b - a)
  Point out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + t * (b[i] - a[i]);
  return out;
}

}  // namespace

NelderMeadResult nelder_mead(const std::function<double(const Point&)>& f, Point start,
                             const NelderMeadOptions& opts) {
  const std::size_t n = start.size();
  if (n == 0) throw std::invalid_argument("nelder_mead: empty starting point");

  NelderMeadResult result;
  result.x = std::move(start);
  result.value = f(result.x);
  result.evaluations = 1;

  double step = opts.initial_step;
  for (int round = 0; round <= opts.rebuilds; ++round) {
    std::vector<Point> simplex(n + 1, result.x);
    std::vector<double> values(n + 1, result.value);
    for (std::size_t i = 0; i < n; ++i) {
      simplex[i + 1][i] += step;
      values[i + 1] = f(simplex[i + 1]);
      ++result.evaluations;
    }

    std::vector<std::size_t> order(n + 1);
    bool converged = false;
    while (result.evaluations < opts.max_evaluations) {
      std::iota(order.begin(), order.end(), 0);
      std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
      const std::size_t best = order.front();
      const std::size_t worst = order.back();
      const std::size_t second = order[n - 1];

      if (values[worst] - values[best] <= opts.f_tol) {
        converged = true;
        break;
      }

      Point centroid(n, 0.0);
      for (std::size_t k = 0; k <= n; ++k) {
        if (k == worst) continue;
        for (std::size_t i = 0; i < n; ++i) centroid[i] += simplex[k][i];
      }
      for (double& c : centroid) c /= static_cast<double>(n);

      const Point reflected = affine(centroid, simplex[worst], -1.0);
      const double fr = f(reflected);
      ++result.evaluations;

      if (fr < values[best]) {
        const Point expanded = affine(centroid, simplex[worst], -2.0);
        const double fe = f(expanded);
        ++result.evaluations;
        if (fe < fr) {
          simplex[worst] = expanded;
          values[worst] = fe;
        } else {
          simplex[worst] = reflected;
          values[worst] = fr;
        }
        continue;
      }
      if (fr < values[second]) {
        simplex[worst] = reflected;
        values[worst] = fr;
        continue;
      }

      const bool outside = fr < values[worst];
      const Point contracted = outside ? affine(centroid, reflected, 0.5) : affine(centroid, simplex[worst], 0.5);
      const double fc = f(contracted);
      ++result.evaluations;
      if (fc < std::min(fr, values[worst])) {
        simplex[worst] = contracted;
        values[worst] = fc;
        continue;
      }

      for (std::size_t k = 0; k <= n; ++k) {
        if (k == best) continue;
        simplex[k] = affine(simplex[best], simplex[k], 0.5);
        values[k] = f(simplex[k]);
        ++result.evaluations;
      }
    }

    const auto best_it = std::min_element(values.begin(), values.end());
    const auto best_idx = static_cast<std::size_t>(best_it - values.begin());
    const bool improved = *best_it < result.value - opts.f_tol;
    if (*best_it <= result.value) {
      result.value = *best_it;
      result.x = simplex[best_idx];
    }
    result.converged = converged;
    if (result.evaluations >= opts.max_evaluations) break;
    if (round > 0 && !improved) break;
    step *= 0.25;
  }
  return result;
}

ScalarResult golden_section_max(const std::function<double(double)>& f, double lo, double hi, double tol) {
  if (!(hi >= lo)) throw std::invalid_argument("golden_section_max: empty interval");
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  ScalarResult best{fc >= fd ? c : d, std::max(fc, fd)};
  for (double edge : {lo, hi}) {
    const double fe = f(edge);
    if (fe > best.value) best = {edge, fe};
  }
  return best;
}

}  // namespace sscap::optimize
