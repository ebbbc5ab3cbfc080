#pragma once

// Depolarizing-channel bound curves: hashing, dephasing and no-cloning
// bounds, the amplitude-damping hull upper bound, the side-channel lower
// bound and its optimization over q, and threshold root finding.
//
// Rates are in bits. The depolarizing parameter p is the total Pauli error
// probability, so p = 3/4 is the completely depolarizing channel.

#include <array>
#include <span>
#include <string>
#include <vector>

#include "sscap/qmat.hpp"

namespace sscap::depol {

/// -x log2 x - (1-x) log2(1-x). Throws outside [0, 1].
double binary_entropy(double x);

double hashing(double p);       // 1 - H2(p) - p log2 3
double dephasing_ub(double p);  // 1 - H2(p)
double no_cloning(double p);    // (1 - 4p)_+

/// 4 sqrt(1-p) (1 - sqrt(1-p)), for p in [0, 3/4].
double gamma_p(double p);

struct AmpDampCapacity {
  double value = 0.0;
  double t_star = 0.0;  // maximizing input population
};

/// max over t of H2(t(1-g)) - H2(t g); zero for g >= 1/2.
AmpDampCapacity amp_damp_capacity(double gamma);

/// Minimum of the amplitude-damping and no-cloning bounds at p.
double hull_source(double p);

double eta(double p, double q);
double s_bf(double p, double q);
double s_ab(double p, double q);

/// (1/2)(1 - H2(p) - p log2 3) + (1/2)(s_bf - s_ab).
double ss_lower(double p, double q);

struct QOptimum {
  double q_star = 0.0;
  double value = 0.0;
  bool multimodal = false;  // more than one competitive local maximum in the pre-scan
};

/// Maximizes ss_lower(p, .) over q in [0, 3/4]: a 100-interval scan, then
/// golden-section refinement of every local maximum within 1e-6 of the best.
QOptimum optimize_q(double p, double tol = 1e-8);

/// Amplitudes of the ansatz sum_st sqrt(q_st) (X^s Z^t (x) 1)|Phi+> |st>_F
/// on registers (A, A', F) with q_st indexed 2s + t.
qmat::PureState ansatz_state(const std::array<double, 4>& q_st);

/// The ansatz with q_st = (1-q, q/3, q/3, q/3).
qmat::PureState ansatz_state(double q);

enum class Kind { hashing, dephasing_ub, no_cloning, amp_damp_ub, hull_ub, ss_lower, ss_lower_qopt };

std::string to_string(Kind kind);
Kind parse_kind(const std::string& name);  // throws on unknown names
std::vector<Kind> all_kinds();

/// True when the kind carries a per-point parameter column (t* or q*).
bool has_param(Kind kind);

struct CurveOptions {
  double q = 0.0;    // fixed q for Kind::ss_lower
  int threads = 1;
};

struct BoundCurve {
  Kind kind = Kind::hashing;
  std::vector<double> grid;
  std::vector<double> values;
  std::vector<double> params;  // empty unless has_param(kind)
};

/// Lower convex envelope of hull_source over [0, 1/4], sampled on 1001
/// uniform points together with `grid`, read off at the grid points.
BoundCurve hull_ub(std::span<const double> grid);

BoundCurve curve(Kind kind, std::span<const double> grid, const CurveOptions& opts = {});

/// n uniform points from lo to hi inclusive.
std::vector<double> linspace(double lo, double hi, int n);

/// Value of a single curve point (hull_ub builds the full envelope).
double curve_value(Kind kind, double p, const CurveOptions& opts = {});

struct Threshold {
  Kind kind = Kind::hashing;
  double p_star = 0.0;
  double lo = 0.0;  // final bracket
  double hi = 0.0;
  double tol = 0.0;
};

/// Values above this count as positive for root bracketing.
inline constexpr double kPositive = 1e-12;

/// Bisects the transition between positive and non-positive values of the
/// curve on [lo, hi] until the bracket is narrower than tol.
Threshold threshold(Kind kind, double lo, double hi, double tol = 1e-7, const CurveOptions& opts = {});

}  // namespace sscap::depol
