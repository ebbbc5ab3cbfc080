#include "sscap/verify.hpp"

#include <algorithm>
#include <cmath>

#include "sscap/channels.hpp"
#include "sscap/coherent.hpp"
#include "sscap/depol.hpp"
#include "sscap/random.hpp"

namespace sscap::verify {

namespace {

using channels::Channel;
using qmat::ComplexMatrix;
using qmat::DensityMatrix;

class Suite {
 public:
  explicit Suite(VerifyReport& report) : report_(report) {}
  void add(std::string name, double measured, double tol) {
    const bool ok = std::isfinite(measured) && measured <= tol;
    report_.checks.push_back({std::move(name), ok, measured, tol});
  }

 private:
  VerifyReport& report_;
};

double choi_gap(const Channel& a, const Channel& b) {
  return (channels::choi(a).op() - channels::choi(b).op()).cwiseAbs().maxCoeff();
}

std::vector<Channel> named_channels() {
  return {channels::identity(2),
          channels::depolarizing(0.1),
          channels::pauli_channel(0.05, 0.1, 0.2),
          channels::dephasing_axis(channels::Axis::X, 0.3),
          channels::dephasing_axis(channels::Axis::Y, 0.3),
          channels::dephasing_axis(channels::Axis::Z, 0.3),
          channels::amplitude_damping(0.3),
          channels::symmetric_side_channel(2),
          channels::symmetric_side_channel(3)};
}

void qmat_checks(Suite& s, Rng rng) {
  double fuchs = 0, fannes = 0, linear = 0, trace = 0;
  const double slack = std::log2(std::exp(1.0)) / std::exp(1.0);
  for (int t = 0; t < 100; ++t) {
    const int d = 2 + t % 3;
    const auto a = random::density({{"A", d}}, rng);
    const auto b = random::density({{"A", d}}, rng);
    const double f = qmat::fidelity(a, b);
    const double dist = qmat::trace_distance(a, b);
    fuchs = std::max({fuchs, (1 - f) - dist, dist - std::sqrt(std::max(0.0, 1 - f * f))});
    fannes = std::max(fannes, std::abs(coherent::entropy(a) - coherent::entropy(b)) - dist * std::log2(double(d)) - slack);
    trace = std::max(trace, std::abs(qmat::eigenvalues_hermitian(a.op()).sum() - 1.0));
  }
  for (int t = 0; t < 20; ++t) {
    const qmat::Layout layout{{"A", 2}, {"B", 3}};
    const auto r1 = random::density(layout, rng);
    const auto r2 = random::density(layout, rng);
    const double alpha = rng.uniform();
    const DensityMatrix mixed(alpha * r1.op() + (1 - alpha) * r2.op(), layout);
    const ComplexMatrix lhs = qmat::partial_trace(mixed, {"A"}).op();
    const ComplexMatrix rhs =
        alpha * qmat::partial_trace(r1, {"A"}).op() + (1 - alpha) * qmat::partial_trace(r2, {"A"}).op();
    linear = std::max(linear, (lhs - rhs).cwiseAbs().maxCoeff());
  }
  s.add("qmat.fuchs_van_de_graaf", fuchs, 1e-9);
  s.add("qmat.fannes", fannes, 0.0);
  s.add("qmat.partial_trace_linear", linear, 1e-12);
  s.add("qmat.eigenvalue_sum", trace, 1e-10);
}

void channel_checks(Suite& s, Rng rng) {
  auto list = named_channels();
  for (int t = 0; t < 5; ++t) list.push_back(random::channel(2 + t % 2, 2 + t % 3, 1 + t, rng));

  double tp = 0, cp = 0, marg = 0;
  for (const auto& ch : list) {
    ComplexMatrix sum = ComplexMatrix::Zero(ch.dim_in(), ch.dim_in());
    for (const auto& k : ch.kraus()) sum += k.adjoint() * k;
    tp = std::max(tp, (sum - ComplexMatrix::Identity(ch.dim_in(), ch.dim_in())).cwiseAbs().maxCoeff());
    cp = std::max(cp, -qmat::eigenvalues_hermitian(channels::choi(ch).op()).minCoeff());

    const auto u = channels::stinespring(ch);
    const Channel comp = channels::complementary(ch);
    for (int i = 0; i < 20; ++i) {
      const auto rho = random::density({{"A", ch.dim_in()}}, rng);
      const auto omega = qmat::apply_local(rho, "A", u.matrix, {{"B", u.dim_b}, {"E", u.dim_e}});
      marg = std::max(marg, (qmat::partial_trace(omega, {"B"}).op() - channels::apply(ch, rho).op()).norm());
      marg = std::max(marg, (qmat::partial_trace(omega, {"E"}).op() - channels::apply(comp, rho).op()).norm());
    }
  }
  s.add("channels.trace_preserving", tp, 1e-10);
  s.add("channels.choi_psd", cp, 1e-10);
  s.add("channels.stinespring_marginals", marg, 1e-9);

  double affine = 0;
  for (int t = 0; t < 10; ++t) {
    const Channel a = random::channel(2, 2, 2, rng);
    const Channel b = random::channel(2, 2, 3, rng);
    const double w = rng.uniform();
    const ComplexMatrix expect = w * channels::choi(a).op() + (1 - w) * channels::choi(b).op();
    affine = std::max(affine, (channels::choi(channels::mix({a, b}, {w, 1 - w})).op() - expect).cwiseAbs().maxCoeff());
  }
  s.add("channels.mix_affine", affine, 1e-12);

  double xyz = 0, twirl = 0, three = 0;
  for (double p : {0.05, 0.1, 0.2, 0.5}) {
    const Channel m = channels::mix({channels::dephasing_axis(channels::Axis::X, p),
                                     channels::dephasing_axis(channels::Axis::Y, p),
                                     channels::dephasing_axis(channels::Axis::Z, p)},
                                    {1.0 / 3, 1.0 / 3, 1.0 / 3});
    xyz = std::max(xyz, choi_gap(m, channels::depolarizing(p)));
  }
  const Channel y = channels::unitary(qmat::pauli_y(), "Y");
  for (double gamma : {0.1, 0.2, 0.3, 0.46}) {
    const double q = gamma / 4;
    const double pz = 0.5 * (1 - gamma / 2 - std::sqrt(1 - gamma));
    const Channel ad = channels::amplitude_damping(gamma);
    const Channel half = channels::mix({ad, channels::compose(y, channels::compose(ad, y))}, {0.5, 0.5});
    twirl = std::max(twirl, choi_gap(half, channels::pauli_channel(q, q, pz)));
    const Channel m = channels::mix({channels::pauli_channel(q, q, pz), channels::pauli_channel(q, pz, q),
                                     channels::pauli_channel(pz, q, q)},
                                    {1.0 / 3, 1.0 / 3, 1.0 / 3});
    three = std::max(three, choi_gap(m, channels::depolarizing(2 * q + pz)));
  }
  s.add("channels.decomposition.pauli_axes", xyz, 1e-10);
  s.add("channels.decomposition.amp_damp_twirl", twirl, 1e-10);
  s.add("channels.decomposition.three_way", three, 1e-10);

  double selfcomp = 0;
  for (int d : {2, 3}) {
    const Channel a = channels::symmetric_side_channel(d);
    selfcomp = std::max(selfcomp, channels::choi_distance(a, channels::complementary(a)));
  }
  s.add("channels.ssc_self_complementary", selfcomp, 1e-10);

  channels::DegradabilityOptions opts;
  opts.seed = rng.fork().uniform() * 0x1.0p53;
  for (double p : {0.1, 0.3}) {
    s.add("channels.degradable.dephasing_z(" + std::to_string(p).substr(0, 3) + ")",
          channels::degradability_residual(channels::dephasing_axis(channels::Axis::Z, p), opts).residual, 1e-6);
  }
  for (double g : {0.2, 0.3}) {
    s.add("channels.degradable.amp_damp(" + std::to_string(g).substr(0, 3) + ")",
          channels::degradability_residual(channels::amplitude_damping(g), opts).residual, 1e-6);
  }
}

void coherent_checks(Suite& s, Rng rng) {
  using namespace coherent;
  double split = 0;
  for (int t = 0; t < 10; ++t) {
    const auto rho = random::density({{kRef, 2 + t % 3}, {kInput1, 2}, {kInput2, 2}, {kSide, 1 + t % 2}}, rng);
    const auto terms =
        additivity_split_check(random::channel(2, 2, 1 + t % 3, rng), random::channel(2, 2, 2, rng), rho);
    split = std::max(split, std::abs(terms.lhs - terms.rhs1 - terms.rhs2));
  }
  s.add("coherent.split_identity", split, 1e-9);

  double dpi = 0;
  for (int t = 0; t < 50; ++t) {
    const auto rho = random::density({{"A", 2}, {"B", 2 + t % 2}}, rng);
    const Channel ch = random::channel(2 + t % 2, 2 + t % 3, 1 + t % 4, rng);
    const auto after = channels::apply_to(ch, rho, "B", "C");
    dpi = std::max(dpi, coherent_information(after, {"A"}, {"C"}) - coherent_information(rho, {"A"}, {"B"}));
  }
  s.add("coherent.data_processing", dpi, 1e-9);

  double convex = 0;
  for (int t = 0; t < 20; ++t) {
    const Channel c1 = random::channel(2, 2, 2, rng);
    const Channel c2 = random::channel(2, 2, 3, rng);
    const auto rho = random::density({{"A", 2}}, rng);
    const double alpha = 0.25 * (1 + t % 3);
    const double mixed = channel_coherent_information(channels::mix({c1, c2}, {alpha, 1 - alpha}), rho);
    convex = std::max(convex, mixed - alpha * channel_coherent_information(c1, rho) -
                                  (1 - alpha) * channel_coherent_information(c2, rho));
  }
  s.add("coherent.channel_convexity", convex, 1e-9);

  double duality = 0, trivial = 0;
  for (int t = 0; t < 10; ++t) {
    const Channel ch = random::channel(2, 2, 3, rng);
    const auto phi = random::pure_state({{kRef, 2}, {kInput, 2}, {kSide, 2}, {kSidePrime, 2}}, rng);
    const auto omega = dilate(phi, ch);
    duality = std::max(duality, std::abs(coherent_information(omega, {kRef}, {kEnv, kSide}) +
                                         coherent_information(omega, {kRef}, {kOut, kSidePrime})));
    const auto psi = random::pure_state({{kRef, 2}, {kInput, 2}, {kSide, 1}}, rng);
    trivial = std::max(trivial, std::abs(ss_rate({psi, ch}) -
                                         channel_coherent_information(ch, qmat::partial_trace(psi, {kInput}))));
  }
  s.add("coherent.purity_duality", duality, 1e-9);
  s.add("coherent.ss_rate_trivial_side", trivial, 1e-10);

  double swap = 0, halving = 0;
  for (int t = 0; t < 5; ++t) {
    const Channel ch = random::channel(2, 2, 2, rng);
    const auto phi = random::pure_state({{kRef, 2}, {kInput, 2}, {kSide, 2}, {kSidePrime, 2}}, rng);
    const auto sym = symmetrize(phi);
    swap = std::max(swap, qmat::trace_distance(sym.density(), swap_registers(sym, kTop, kBottom).density()));
    const auto omega = dilate(phi, ch);
    const double half = 0.5 * (coherent_information(omega, {kRef}, {kOut, kSide}) +
                               coherent_information(omega, {kRef}, {kOut, kSidePrime}));
    halving = std::max(halving, std::abs(coherent_information(dilate(sym, ch), {kRef}, {kOut, kTop}) - half));
  }
  s.add("coherent.symmetrize_swap_invariant", swap, 1e-10);
  s.add("coherent.symmetrize_halving", halving, 1e-9);

  double ssc_rate = -1.0;
  const Channel a2 = channels::symmetric_side_channel(2);
  for (int t = 0; t < 50; ++t) {
    const auto psi = random::pure_state({{kRef, 3}, {kInput, 3}, {kSide, 1 + t % 3}}, rng);
    ssc_rate = std::max(ssc_rate, ss_rate({psi, a2}));
  }
  s.add("coherent.ss_rate_ssc_nonpositive", ssc_rate, 1e-9);

  for (int d : {2, 3}) {
    s.add("coherent.q1_ssc(" + std::to_string(d) + ")", q1_optimize(channels::symmetric_side_channel(d)).value, 1e-6);
  }

  double repro = 0;
  Q1Options other;
  other.seed = static_cast<std::uint64_t>(rng.uniform() * 0x1.0p53);
  for (const Channel& ch : {channels::depolarizing(0.1), channels::amplitude_damping(0.25), channels::identity(2)}) {
    repro = std::max(repro, std::abs(q1_optimize(ch).value - q1_optimize(ch, other).value));
  }
  s.add("coherent.q1_reproducible", repro, 1e-8);
}

void depol_checks(Suite& s) {
  using namespace depol;
  const auto grid = linspace(0.0, 0.25, 200);
  const auto hull = hull_ub(grid);
  double below = 0, above = 0, lower = 0, convex = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double p = grid[i];
    below = std::max(below, std::max(0.0, hashing(p)) - hull.values[i]);
    above = std::max(above, hull.values[i] - std::min(amp_damp_capacity(gamma_p(p)).value, no_cloning(p)));
    lower = std::max(lower, hashing(p) - optimize_q(p).value);
    if (i > 0 && i + 1 < grid.size())
      convex = std::max(convex, -(hull.values[i - 1] - 2 * hull.values[i] + hull.values[i + 1]));
  }
  s.add("depol.hull_above_hashing", below, 1e-9);
  s.add("depol.hull_below_constituents", above, 1e-9);
  s.add("depol.ss_lower_above_hashing", lower, 1e-9);
  s.add("depol.hull_convex", convex, 1e-9);

  double bf = 0, ab = 0, rate = 0;
  const auto g5 = linspace(0.02, 0.7, 5);
  for (double p : g5)
    for (double q : g5) {
      const auto state = ansatz_state(q);
      const Channel ch = channels::depolarizing(p);
      const auto omega = coherent::dilate(state, ch);
      bf = std::max(bf, std::abs(s_bf(p, q) - coherent::entropy(omega, {coherent::kOut, coherent::kSide})));
      ab = std::max(ab, std::abs(s_ab(p, q) - coherent::entropy(omega, {coherent::kRef, coherent::kOut})));
      rate = std::max(rate, std::abs(ss_lower(p, q) - coherent::ss_rate({state, ch})));
    }
  s.add("depol.s_bf_numeric", bf, 1e-9);
  s.add("depol.s_ab_numeric", ab, 1e-9);
  s.add("depol.ss_lower_equals_ss_rate", rate, 1e-9);
}

}  // namespace

bool VerifyReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckRecord& c) { return c.passed; });
}

VerifyReport run(std::uint64_t seed) {
  VerifyReport report;
  report.seed = seed;
  Suite suite(report);
  Rng root(seed);
  qmat_checks(suite, root.fork());
  channel_checks(suite, root.fork());
  coherent_checks(suite, root.fork());
  depol_checks(suite);
  return report;
}

}  // namespace sscap::verify
