#include <cmath>

#include "doctest.h"
#include "sscap/channels.hpp"
#include "sscap/coherent.hpp"
#include "sscap/random.hpp"

using namespace sscap;
using namespace sscap::coherent;
using channels::Channel;
using qmat::ComplexMatrix;
using qmat::Layout;

namespace {

long double h2l(long double x) {
  if (x <= 0 || x >= 1) return 0;
  return -x * std::log2(x) - (1 - x) * std::log2(1 - x);
}

// Independent route: S(N(rho)) - S(N^(rho)) through Kraus sums, no purification.
double coherent_info_by_complement(const Channel& ch, const DensityMatrix& rho) {
  return entropy(channels::apply(ch, rho)) - entropy(channels::apply(channels::complementary(ch), rho));
}

DensityMatrix diag2(double t) {
  const double p[2] = {t, 1 - t};
  return DensityMatrix::diagonal(p, "A'");
}

// sqrt(q_st) (X^s Z^t (x) 1)|Phi+>_{AA'} |st>_F
PureState depolarizing_ansatz(const double q[4]) {
  const auto phi = PureState::max_entangled(2, kRef, kInput).amplitudes();
  const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
  qmat::ComplexVector out = qmat::ComplexVector::Zero(16);
  for (int s = 0; s < 2; ++s)
    for (int t = 0; t < 2; ++t) {
      const ComplexMatrix xs = s ? qmat::pauli_x() : id;
      const ComplexMatrix zt = t ? qmat::pauli_z() : id;
      const qmat::ComplexVector v = qmat::kron(ComplexMatrix(xs * zt), id) * phi;
      qmat::ComplexVector f = qmat::ComplexVector::Zero(4);
      f(2 * s + t) = 1.0;
      out += std::sqrt(q[2 * s + t]) * qmat::kron(v, f);
    }
  return PureState(out, {{kRef, 2}, {kInput, 2}, {kSide, 4}});
}

}  // namespace

TEST_CASE("entropy") {
  CHECK(entropy(DensityMatrix::maximally_mixed(2, "A")) == doctest::Approx(1.0));
  Rng rng(1);
  CHECK(std::abs(entropy(random::pure_state({{"A", 3}}, rng).density())) < 1e-10);
  for (double p : {0.1, 0.25}) {
    const double probs[4] = {1 - p, p / 3, p / 3, p / 3};
    const double expected = static_cast<double>(h2l(p) + p * std::log2(3.0L));
    CHECK(entropy(DensityMatrix::diagonal(probs, "X")) == doctest::Approx(expected).epsilon(1e-12));
  }
  // Bounds.
  for (int t = 0; t < 20; ++t) {
    const int d = 2 + t % 4;
    const double s = entropy(random::density({{"A", d}}, rng));
    CHECK(s >= -1e-9);
    CHECK(s <= std::log2(double(d)) + 1e-9);
  }
}

TEST_CASE("entropy_report keys") {
  const auto rho = PureState::max_entangled(2, "A", "B").density();
  const auto rep = entropy_report(rho, {{"A"}, {"B"}, {"A", "B"}});
  CHECK(rep.at("A") == doctest::Approx(1.0));
  CHECK(rep.at("B") == doctest::Approx(1.0));
  CHECK(std::abs(rep.at("AB")) < 1e-10);
}

TEST_CASE("Fannes-type continuity on random pairs") {
  Rng rng(2);
  const double slack = std::log2(std::exp(1.0)) / std::exp(1.0);
  for (int t = 0; t < 50; ++t) {
    const int d = 2 + t % 3;
    const auto a = random::density({{"A", d}}, rng);
    const auto b = (t % 4 == 0) ? random::pure_state({{"A", d}}, rng).density() : random::density({{"A", d}}, rng);
    CHECK(std::abs(entropy(a) - entropy(b)) <= qmat::trace_distance(a, b) * std::log2(double(d)) + slack);
  }
}

TEST_CASE("coherent and mutual information") {
  const auto bell = PureState::max_entangled(2, "A", "B").density();
  CHECK(coherent_information(bell, {"A"}, {"B"}) == doctest::Approx(1.0));
  CHECK(mutual_information(bell, {"A"}, {"B"}) == doctest::Approx(2.0));

  Rng rng(3);
  const auto a = random::density({{"A", 2}}, rng);
  const auto b = random::density({{"B", 3}}, rng);
  const auto prod = qmat::tensor(a, b);
  CHECK(coherent_information(prod, {"A"}, {"B"}) == doctest::Approx(-entropy(a)).epsilon(1e-10));
  CHECK(std::abs(mutual_information(prod, {"A"}, {"B"})) < 1e-10);

  CHECK_THROWS_AS(coherent_information(prod, {"Q"}, {"B"}), std::invalid_argument);

  for (int t = 0; t < 20; ++t) {
    const auto rho = random::density({{"A", 2}, {"B", 2 + t % 2}}, rng);
    const double ci = coherent_information(rho, {"A"}, {"B"});
    const double mi = mutual_information(rho, {"A"}, {"B"});
    CHECK(mi >= -1e-9);
    CHECK(mi >= ci - 1e-12);
    CHECK(ci >= -1.0 - 1e-9);
    CHECK(ci <= std::log2(2.0 + t % 2) + 1e-9);
  }

  const double p = 0.1;
  const auto out = channels::apply_to(channels::depolarizing(p), PureState::max_entangled(2, "A", "B").density(), "B");
  const double hashing = static_cast<double>(1.0L - h2l(p) - p * std::log2(3.0L));
  CHECK(coherent_information(out, {"A"}, {"B"}) == doctest::Approx(hashing).epsilon(1e-12));
}

TEST_CASE("channel_coherent_information") {
  CHECK(channel_coherent_information(channels::identity(2), DensityMatrix::maximally_mixed(2, "A")) ==
        doctest::Approx(1.0));
  CHECK(channel_coherent_information(channels::depolarizing(0.75), DensityMatrix::maximally_mixed(2, "A")) ==
        doctest::Approx(-1.0));
  Rng rng(4);
  for (int t = 0; t < 5; ++t) {
    const auto rho = random::density({{"A", 2}}, rng);
    CHECK(channel_coherent_information(channels::depolarizing(0.75), rho) ==
          doctest::Approx(-entropy(rho)).epsilon(1e-10));
  }

  const double gamma = 0.2, tt = 0.4;
  const double expected = static_cast<double>(h2l(tt * (1 - gamma)) - h2l(tt * gamma));
  const double probs[2] = {1 - tt, tt};
  CHECK(channel_coherent_information(channels::amplitude_damping(gamma), DensityMatrix::diagonal(probs, "A")) ==
        doctest::Approx(expected).epsilon(1e-12));

  // Purification route vs Kraus/complement route on random channels.
  for (int t = 0; t < 20; ++t) {
    const Channel ch = random::channel(2 + t % 2, 2, 3, rng);
    const auto rho = random::density({{"A", ch.dim_in()}}, rng);
    CHECK(channel_coherent_information(ch, rho) == doctest::Approx(coherent_info_by_complement(ch, rho)).epsilon(1e-9));
  }
  CHECK_THROWS_AS(channel_coherent_information(channels::identity(3), DensityMatrix::maximally_mixed(2, "A")),
                  std::invalid_argument);
}

TEST_CASE("data processing on random states and channels") {
  Rng rng(5);
  for (int t = 0; t < 50; ++t) {
    const auto rho = random::density({{"A", 2}, {"B", 2}}, rng);
    const Channel ch = random::channel(2, 2 + t % 2, 1 + t % 3, rng);
    const auto after = channels::apply_to(ch, rho, "B", "C");
    CHECK(coherent_information(rho, {"A"}, {"B"}) >= coherent_information(after, {"A"}, {"C"}) - 1e-9);
  }
}

TEST_CASE("coherent information is convex in the channel at fixed input") {
  Rng rng(6);
  for (int t = 0; t < 20; ++t) {
    const Channel c1 = random::channel(2, 2, 2, rng);
    const Channel c2 = random::channel(2, 2, 2, rng);
    const auto rho = random::density({{"A", 2}}, rng);
    const double alpha = 0.25 * (1 + t % 3);
    const double mixed = channel_coherent_information(channels::mix({c1, c2}, {alpha, 1 - alpha}), rho);
    CHECK(mixed <= alpha * channel_coherent_information(c1, rho) +
                       (1 - alpha) * channel_coherent_information(c2, rho) + 1e-9);
  }
}

TEST_CASE("q1_optimize") {
  SUBCASE("identity") {
    const auto r = q1_optimize(channels::identity(2));
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-9));
    CHECK((r.argmax.op() - ComplexMatrix::Identity(2, 2) / 2.0).norm() < 1e-3);
  }
  SUBCASE("completely depolarizing") {
    const auto r = q1_optimize(channels::depolarizing(0.75));
    CHECK(r.value <= 1e-9);
    CHECK(r.value >= -1e-3);
  }
  SUBCASE("depolarizing(0.05) against a dense diagonal sweep") {
    const double p = 0.05;
    const Channel ch = channels::depolarizing(p);
    double sweep = -1e9;
    for (int i = 0; i <= 10000; ++i) sweep = std::max(sweep, coherent_info_by_complement(ch, diag2(i * 1e-4)));
    const double hashing = static_cast<double>(1.0L - h2l(p) - p * std::log2(3.0L));
    const double oracle = std::max(hashing, sweep);
    CHECK(q1_optimize(ch).value == doctest::Approx(oracle).epsilon(1e-6));

    Q1Options plain;
    plain.pauli_sweep = false;
    CHECK(std::abs(q1_optimize(ch, plain).value - oracle) < 1e-6);
  }
  SUBCASE("value dominates the coherent information at the argmax") {
    const Channel ch = channels::amplitude_damping(0.3);
    Q1Options o;
    o.tol = 1e-10;
    const auto r = q1_optimize(ch, o);
    CHECK(r.value >= channel_coherent_information(ch, r.argmax) - 1e-9);
  }
  SUBCASE("reproducible across seeds") {
    Q1Options a, b;
    b.seed = 1234;
    for (const Channel& ch : {channels::amplitude_damping(0.25), channels::depolarizing(0.1)}) {
      CHECK(std::abs(q1_optimize(ch, a).value - q1_optimize(ch, b).value) < 1e-8);
    }
  }
  SUBCASE("symmetric side channels carry nothing") {
    CHECK(q1_optimize(channels::symmetric_side_channel(2)).value <= 1e-6);
  }
  SUBCASE("Pauli-diagonal detection") {
    CHECK(is_pauli_diagonal(channels::depolarizing(0.2)));
    CHECK(is_pauli_diagonal(channels::pauli_channel(0.1, 0.0, 0.3)));
    CHECK_FALSE(is_pauli_diagonal(channels::amplitude_damping(0.2)));
    CHECK_FALSE(is_pauli_diagonal(channels::identity(3)));
  }
}

TEST_CASE("ss_rate") {
  Rng rng(7);
  SUBCASE("trivial F reduces to the channel coherent information") {
    for (int t = 0; t < 10; ++t) {
      const Channel ch = random::channel(2, 2, 2 + t % 3, rng);
      const auto psi = random::pure_state({{kRef, 2}, {kInput, 2}, {kSide, 1}}, rng);
      const double direct = channel_coherent_information(ch, qmat::partial_trace(psi, {kInput}));
      CHECK(std::abs(ss_rate({psi, ch}) - direct) < 1e-10);
    }
  }
  SUBCASE("ansatz input reproduces the closed-form entropies") {
    const double p = 0.1, q = 0.2;
    const double qs[4] = {1 - q, q / 3, q / 3, q / 3};
    const auto phi = depolarizing_ansatz(qs);
    const auto omega = dilate(phi, channels::depolarizing(p));
    // S(B) = 1 and S(ABF) = H(p) + p log 3.
    CHECK(entropy(omega, {kOut}) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(entropy(omega, {kRef, kOut, kSide}) ==
          doctest::Approx(static_cast<double>(h2l(p) + p * std::log2(3.0L))).epsilon(1e-12));
  }
  SUBCASE("A_2 never yields positive rate") {
    const Channel a2 = channels::symmetric_side_channel(2);
    for (int t = 0; t < 50; ++t) {
      const auto psi = random::pure_state({{kRef, 3}, {kInput, 3}, {kSide, 1 + t % 3}}, rng);
      CHECK(ss_rate({psi, a2}) <= 1e-9);
    }
  }
  SUBCASE("dimension and label errors") {
    const auto psi = random::pure_state({{kRef, 2}, {kInput, 2}, {kSide, 2}}, rng);
    CHECK_THROWS_AS(ss_rate({psi, channels::identity(3)}), std::invalid_argument);
    const auto bad = random::pure_state({{kRef, 2}, {kInput, 2}}, rng);
    CHECK_THROWS_AS(ss_rate({bad, channels::identity(2)}), std::invalid_argument);
  }
}

TEST_CASE("purity duality I(A>EF) = -I(A>BF')") {
  Rng rng(8);
  for (int t = 0; t < 10; ++t) {
    const Channel ch = random::channel(2, 2, 3, rng);
    const auto phi = random::pure_state({{kRef, 2}, {kInput, 2}, {kSide, 2}, {kSidePrime, 2}}, rng);
    const auto omega = dilate(phi, ch);
    CHECK(coherent_information(omega, {kRef}, {kEnv, kSide}) ==
          doctest::Approx(-coherent_information(omega, {kRef}, {kOut, kSidePrime})).epsilon(1e-9));
  }
}

TEST_CASE("symmetrize") {
  Rng rng(9);
  auto swap_defect = [](const PureState& s) {
    const auto swapped = swap_registers(s, kTop, kBottom);
    return qmat::trace_distance(s.density(), swapped.density());
  };
  auto halves = [](const PureState& phi, const Channel& ch) {
    const auto omega = dilate(phi, ch);
    return 0.5 * (coherent_information(omega, {kRef}, {kOut, kSide}) +
                  coherent_information(omega, {kRef}, {kOut, kSidePrime}));
  };

  SUBCASE("random input, identity channel and a noisy channel") {
    for (const Channel& ch : {channels::identity(2), channels::amplitude_damping(0.3), random::channel(2, 2, 2, rng)}) {
      const auto phi = random::pure_state({{kRef, 2}, {kInput, 2}, {kSide, 2}, {kSidePrime, 2}}, rng);
      const auto sym = symmetrize(phi);
      CHECK(sym.layout()[2].label == kTop);
      CHECK(sym.layout()[2].dim == 4);
      CHECK(swap_defect(sym) < 1e-10);
      const auto out = dilate(sym, ch);
      CHECK(coherent_information(out, {kRef}, {kOut, kTop}) == doctest::Approx(halves(phi, ch)).epsilon(1e-9));
    }
  }
  SUBCASE("already symmetric input keeps its rate") {
    const auto half = random::pure_state({{kRef, 2}, {kInput, 2}, {kSide, 2}}, rng);
    // |chi>_{A A' F} (x) |0>_{F'} symmetrized by hand, then fed through symmetrize.
    const auto sym_part = qmat::tensor(half, PureState::basis(2, 0, kSidePrime));
    const auto phi = PureState::normalized(
        sym_part.amplitudes() + swap_registers(sym_part, kSide, kSidePrime).amplitudes(), sym_part.layout());
    const Channel ch = channels::depolarizing(0.1);
    const auto omega = dilate(phi, ch);
    const double direct = coherent_information(omega, {kRef}, {kOut, kSide});
    CHECK(halves(phi, ch) == doctest::Approx(direct).epsilon(1e-9));
    const auto out = dilate(symmetrize(phi), ch);
    CHECK(coherent_information(out, {kRef}, {kOut, kTop}) == doctest::Approx(direct).epsilon(1e-9));
  }
  SUBCASE("antisymmetric input still yields a symmetric state") {
    const auto base = random::pure_state({{kRef, 2}, {kInput, 2}, {kSide, 2}, {kSidePrime, 2}}, rng);
    const auto anti =
        PureState::normalized(base.amplitudes() - swap_registers(base, kSide, kSidePrime).amplitudes(), base.layout());
    CHECK(qmat::trace_distance(anti.density(), swap_registers(anti, kSide, kSidePrime).density()) < 1e-10);
    const auto sym = symmetrize(anti);
    CHECK(swap_defect(sym) < 1e-10);
    // The output vector itself is swap-even, not just its projector.
    CHECK((swap_registers(sym, kTop, kBottom).amplitudes() - sym.amplitudes()).norm() < 1e-12);
  }
  SUBCASE("mismatched F dimensions") {
    const auto phi = random::pure_state({{kRef, 2}, {kInput, 2}, {kSide, 2}, {kSidePrime, 3}}, rng);
    CHECK_THROWS_AS(symmetrize(phi), std::invalid_argument);
  }
}

TEST_CASE("additivity split identity") {
  Rng rng(10);
  SUBCASE("identity channels, product input") {
    const auto p1 = PureState::max_entangled(2, "A", kInput1).density();
    const auto p2 = random::density({{kInput2, 2}}, rng);
    const auto rho = qmat::tensor(qmat::tensor(p1, p2), DensityMatrix::maximally_mixed(1, kSide));
    const auto t = additivity_split_check(channels::identity(2), channels::identity(2), rho);
    CHECK(t.lhs == doctest::Approx(t.rhs1 + t.rhs2).epsilon(1e-9));
    // Trivial environments: I(A>E F) = -S(A) = -1, and the second input is unentangled.
    CHECK(std::abs(t.rhs2) < 1e-9);
    CHECK(t.lhs == doctest::Approx(2.0).epsilon(1e-9));
  }
  SUBCASE("random qubit channels, random 16-dimensional input") {
    for (int k = 0; k < 5; ++k) {
      const auto rho = random::density({{kRef, 4}, {kInput1, 2}, {kInput2, 2}, {kSide, 1}}, rng);
      const auto t = additivity_split_check(random::channel(2, 2, 2, rng), random::channel(2, 2, 3, rng), rho);
      CHECK(std::abs(t.lhs - (t.rhs1 + t.rhs2)) < 1e-9);
    }
  }
  SUBCASE("two depolarizing channels, maximally entangled input") {
    const auto phi = PureState::max_entangled(4, kRef, "X");
    const auto split = qmat::apply_local(phi, "X", ComplexMatrix::Identity(4, 4), {{kInput1, 2}, {kInput2, 2}});
    const auto rho = qmat::tensor(split.density(), DensityMatrix::maximally_mixed(1, kSide));
    const Channel d = channels::depolarizing(0.1);
    const auto t = additivity_split_check(d, d, rho);
    CHECK(std::abs(t.lhs - (t.rhs1 + t.rhs2)) < 1e-9);
  }
  SUBCASE("dimension mismatch") {
    const auto rho = random::density({{kRef, 2}, {kInput1, 2}, {kInput2, 2}, {kSide, 1}}, rng);
    CHECK_THROWS_AS(additivity_split_check(channels::identity(3), channels::identity(2), rho), std::invalid_argument);
  }
}

TEST_CASE("value_added_probe") {
  Q1Options o;
  o.restarts = 3;
  CHECK(value_added_probe(channels::identity(2), channels::identity(2), o) >= 1.0 - 1e-6);
  CHECK(value_added_probe(channels::identity(2), channels::depolarizing(0.75), o) <= 1e-6);
  // Exploratory: no reference value, only the sign.
  o.restarts = 2;
  const double probe = value_added_probe(channels::depolarizing(0.18), channels::symmetric_side_channel(2), o);
  MESSAGE("value added by A_2 to depolarizing(0.18): " << probe);
  CHECK(probe >= -1e-6);
}
