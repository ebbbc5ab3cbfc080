#include "sscap/depol.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "sscap/coherent.hpp"
#include "sscap/optimize.hpp"

namespace sscap::depol {

namespace {

const double kLog2of3 = std::log2(3.0);

void require_range(double x, double lo, double hi, const char* what) {
  if (!(x >= lo && x <= hi)) {
    throw std::invalid_argument(std::string(what) + ": argument " + std::to_string(x) + " outside [" +
                                std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
}

// -m x log2 x, zero for x <= 0.
double term(double m, double x) { return x > 0.0 ? -m * x * std::log2(x) : 0.0; }

double h2(double x) { return term(1.0, x) + term(1.0, 1.0 - x); }

// Lower hull of points sorted by x (monotone chain).
std::vector<std::array<double, 2>> lower_hull(const std::vector<std::array<double, 2>>& pts) {
  std::vector<std::array<double, 2>> hull;
  for (const auto& pt : pts) {
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull.back();
      const double cross = (b[0] - a[0]) * (pt[1] - a[1]) - (b[1] - a[1]) * (pt[0] - a[0]);
      if (cross > 0.0) break;
      hull.pop_back();
    }
    hull.push_back(pt);
  }
  return hull;
}

void check_grid(std::span<const double> grid, double lo, double hi, const char* what) {
  if (grid.empty()) throw std::invalid_argument(std::string(what) + ": empty grid");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    require_range(grid[i], lo, hi, what);
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      throw std::invalid_argument(std::string(what) + ": grid must be strictly increasing");
    }
  }
}

}  // namespace

double binary_entropy(double x) {
  require_range(x, 0.0, 1.0, "binary_entropy");
  return h2(x);
}

double hashing(double p) {
  require_range(p, 0.0, 1.0, "hashing");
  return 1.0 - h2(p) - p * kLog2of3;
}

double dephasing_ub(double p) {
  require_range(p, 0.0, 1.0, "dephasing_ub");
  return 1.0 - h2(p);
}

double no_cloning(double p) {
  require_range(p, 0.0, 1.0, "no_cloning");
  return std::max(0.0, 1.0 - 4.0 * p);
}

double gamma_p(double p) {
  require_range(p, 0.0, 0.75, "gamma_p");
  const double s = std::sqrt(1.0 - p);
  return 4.0 * s * (1.0 - s);
}

AmpDampCapacity amp_damp_capacity(double gamma) {
  require_range(gamma, 0.0, 1.0, "amp_damp_capacity");
  if (gamma >= 0.5) return {0.0, 0.0};
  const auto best = optimize::golden_section_max(
      [gamma](double t) { return h2(t * (1.0 - gamma)) - h2(t * gamma); }, 0.0, 1.0, 1e-10);
  return {best.value, best.x};
}

double hull_source(double p) {
  require_range(p, 0.0, 0.25, "hull_source");
  return std::min(amp_damp_capacity(gamma_p(p)).value, no_cloning(p));
}

double eta(double p, double q) {
  const double radicand = 81.0 - 720.0 * p * q - 512.0 * p * p * q * q + 576.0 * q * p * (p + q);
  return std::sqrt(std::max(0.0, radicand)) / 36.0;
}

double s_bf(double p, double q) {
  const double e = eta(p, q);
  const double base = 0.25 - 2.0 * p * q / 9.0;
  return term(2.0, base - e) + term(2.0, base + e) + term(4.0, 2.0 * p * q / 9.0);
}

double s_ab(double p, double q) {
  return term(1.0, 1.0 - p - q + 4.0 * p * q / 3.0) + term(3.0, (p + q) / 3.0 - 4.0 * p * q / 9.0);
}

double ss_lower(double p, double q) {
  require_range(p, 0.0, 0.75, "ss_lower");
  require_range(q, 0.0, 0.75, "ss_lower");
  return 0.5 * (1.0 - h2(p) - p * kLog2of3) + 0.5 * (s_bf(p, q) - s_ab(p, q));
}

QOptimum optimize_q(double p, double tol) {
  require_range(p, 0.0, 0.75, "optimize_q");
  constexpr int kIntervals = 100;
  constexpr double kCompetitive = 1e-6;
  const double step = 0.75 / kIntervals;

  std::vector<double> scan(kIntervals + 1);
  for (int i = 0; i <= kIntervals; ++i) scan[i] = ss_lower(p, std::min(0.75, i * step));
  const double top = *std::max_element(scan.begin(), scan.end());

  QOptimum best{0.0, -1e300, false};
  int peaks = 0;
  int last_peak = -2;
  for (int i = 0; i <= kIntervals; ++i) {
    const bool left_ok = i == 0 || scan[i] >= scan[i - 1];
    const bool right_ok = i == kIntervals || scan[i] >= scan[i + 1];
    if (!left_ok || !right_ok || scan[i] < top - kCompetitive) continue;
    if (i > last_peak + 1) ++peaks;  // flat neighbours count once
    last_peak = i;
    const double lo = std::max(0, i - 1) * step;
    const double hi = std::min(0.75, std::min(kIntervals, i + 1) * step);
    const auto r = optimize::golden_section_max([p](double q) { return ss_lower(p, q); }, lo, hi, tol);
    if (r.value > best.value) best = {r.x, r.value, false};
  }
  best.multimodal = peaks > 1;
  return best;
}

qmat::PureState ansatz_state(const std::array<double, 4>& q_st) {
  using qmat::ComplexMatrix;
  using qmat::ComplexVector;
  double total = 0.0;
  for (double w : q_st) {
    if (w < 0.0) throw std::invalid_argument("ansatz_state: negative weight");
    total += w;
  }
  if (std::abs(total - 1.0) > qmat::kTraceTol) throw std::invalid_argument("ansatz_state: weights must sum to 1");

  const ComplexVector phi = qmat::PureState::max_entangled(2, coherent::kRef, coherent::kInput).amplitudes();
  const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
  ComplexVector out = ComplexVector::Zero(16);
  for (int s = 0; s < 2; ++s)
    for (int t = 0; t < 2; ++t) {
      const ComplexMatrix pauli = (s ? qmat::pauli_x() : id) * (t ? qmat::pauli_z() : id);
      ComplexVector flag = ComplexVector::Zero(4);
      flag(2 * s + t) = 1.0;
      out += std::sqrt(q_st[2 * s + t]) * qmat::kron(ComplexVector(qmat::kron(pauli, id) * phi), flag);
    }
  return qmat::PureState::normalized(out, {{coherent::kRef, 2}, {coherent::kInput, 2}, {coherent::kSide, 4}});
}

qmat::PureState ansatz_state(double q) {
  require_range(q, 0.0, 1.0, "ansatz_state");
  return ansatz_state({1.0 - q, q / 3.0, q / 3.0, q / 3.0});
}

std::string to_string(Kind kind) {
  switch (kind) {
    case Kind::hashing: return "hashing";
    case Kind::dephasing_ub: return "dephasing_ub";
    case Kind::no_cloning: return "no_cloning";
    case Kind::amp_damp_ub: return "amp_damp_ub";
    case Kind::hull_ub: return "hull_ub";
    case Kind::ss_lower: return "ss_lower";
    case Kind::ss_lower_qopt: return "ss_lower_qopt";
  }
  return "?";
}

std::vector<Kind> all_kinds() {
  return {Kind::hashing, Kind::dephasing_ub, Kind::no_cloning, Kind::amp_damp_ub,
          Kind::hull_ub, Kind::ss_lower,     Kind::ss_lower_qopt};
}

Kind parse_kind(const std::string& name) {
  std::string known;
  for (Kind k : all_kinds()) {
    if (to_string(k) == name) return k;
    known += (known.empty() ? "" : ", ") + to_string(k);
  }
  throw std::invalid_argument("unknown curve kind '" + name + "' (known: " + known + ")");
}

bool has_param(Kind kind) { return kind == Kind::amp_damp_ub || kind == Kind::ss_lower_qopt; }

std::vector<double> linspace(double lo, double hi, int n) {
  if (n < 2) throw std::invalid_argument("linspace: need at least 2 points");
  if (!(hi > lo)) throw std::invalid_argument("linspace: empty range");
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[i] = lo + (hi - lo) * i / (n - 1);
  out.back() = hi;
  return out;
}

BoundCurve hull_ub(std::span<const double> grid) {
  check_grid(grid, 0.0, 0.25, "hull_ub");
  std::vector<double> xs = linspace(0.0, 0.25, 1001);
  xs.insert(xs.end(), grid.begin(), grid.end());
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  std::vector<std::array<double, 2>> pts;
  pts.reserve(xs.size());
  for (double x : xs) pts.push_back({x, hull_source(x)});
  const auto hull = lower_hull(pts);

  BoundCurve out{Kind::hull_ub, {grid.begin(), grid.end()}, {}, {}};
  std::size_t seg = 0;
  for (double x : grid) {
    while (seg + 2 < hull.size() && hull[seg + 1][0] <= x) ++seg;
    const auto& a = hull[seg];
    const auto& b = hull[seg + 1];
    out.values.push_back(x == b[0] ? b[1] : a[1] + (b[1] - a[1]) * (x - a[0]) / (b[0] - a[0]));
  }
  return out;
}

double curve_value(Kind kind, double p, const CurveOptions& opts) {
  switch (kind) {
    case Kind::hashing: return hashing(p);
    case Kind::dephasing_ub: return dephasing_ub(p);
    case Kind::no_cloning: return no_cloning(p);
    case Kind::amp_damp_ub: return amp_damp_capacity(gamma_p(p)).value;
    case Kind::hull_ub: {
      const double x[1] = {p};
      return hull_ub(x).values[0];
    }
    case Kind::ss_lower: return ss_lower(p, opts.q);
    case Kind::ss_lower_qopt: return optimize_q(p).value;
  }
  throw std::invalid_argument("curve_value: bad kind");
}

BoundCurve curve(Kind kind, std::span<const double> grid, const CurveOptions& opts) {
  if (kind == Kind::hull_ub) return hull_ub(grid);
  check_grid(grid, 0.0, 1.0, "curve");

  const std::size_t n = grid.size();
  BoundCurve out{kind, {grid.begin(), grid.end()}, std::vector<double>(n), {}};
  if (has_param(kind)) out.params.resize(n);

  auto point = [&](std::size_t i) {
    const double p = grid[i];
    if (kind == Kind::amp_damp_ub) {
      const auto r = amp_damp_capacity(gamma_p(p));
      out.values[i] = r.value;
      out.params[i] = r.t_star;
    } else if (kind == Kind::ss_lower_qopt) {
      const auto r = optimize_q(p);
      out.values[i] = r.value;
      out.params[i] = r.q_star;
    } else {
      out.values[i] = curve_value(kind, p, opts);
    }
  };

  const auto workers = static_cast<std::size_t>(std::clamp(opts.threads, 1, 256));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) point(i);
    return out;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < n; i += workers) point(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

Threshold threshold(Kind kind, double lo, double hi, double tol, const CurveOptions& opts) {
  if (!(hi > lo)) throw std::invalid_argument("threshold: bracket must satisfy lo < hi");
  if (!(tol > 0.0)) throw std::invalid_argument("threshold: tolerance must be positive");
  auto positive = [&](double p) { return curve_value(kind, p, opts) > kPositive; };
  const bool at_lo = positive(lo);
  if (at_lo == positive(hi)) {
    throw std::invalid_argument("threshold: no sign change of " + to_string(kind) + " on [" + std::to_string(lo) +
                                ", " + std::to_string(hi) + "]");
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (positive(mid) == at_lo ? lo : hi) = mid;
  }
  return {kind, 0.5 * (lo + hi), lo, hi, tol};
}

}  // namespace sscap::depol
