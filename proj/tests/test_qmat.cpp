#include <cmath>

#include "doctest.h"
#include "sscap/qmat.hpp"
#include "sscap/random.hpp"

using namespace sscap;
using namespace sscap::qmat;

namespace {

DensityMatrix ket0() { return PureState::basis(2, 0, "A").density(); }
DensityMatrix ket1() { return PureState::basis(2, 1, "A").density(); }

}  // namespace

TEST_CASE("kron") {
  const ComplexMatrix i2 = ComplexMatrix::Identity(2, 2);
  CHECK((kron(i2, i2) - ComplexMatrix::Identity(4, 4)).norm() == 0.0);

  ComplexVector ket00 = ComplexVector::Zero(4);
  ket00(0) = 1.0;
  const ComplexVector out = kron(pauli_x(), pauli_x()) * ket00;
  CHECK(std::abs(out(3) - Complex(1.0)) == 0.0);
  CHECK(out.head(3).norm() == 0.0);

  const ComplexMatrix k = kron(ComplexMatrix(ComplexMatrix::Ones(2, 2)), ComplexMatrix(ComplexMatrix::Ones(3, 3)));
  CHECK(k.rows() == 6);
  CHECK(k.cols() == 6);
}

TEST_CASE("eig_hermitian") {
  SUBCASE("scalar matrix") {
    const auto e = eig_hermitian(ComplexMatrix::Identity(2, 2) / 2.0);
    CHECK(e.values(0) == doctest::Approx(0.5));
    CHECK(e.values(1) == doctest::Approx(0.5));
  }
  SUBCASE("Pauli X, descending") {
    const auto e = eig_hermitian(pauli_x());
    CHECK(e.values(0) == doctest::Approx(1.0));
    CHECK(e.values(1) == doctest::Approx(-1.0));
  }
  SUBCASE("random Hermitian reconstruction") {
    Rng rng(11);
    for (int n : {2, 3, 5, 16, 64}) {
      const ComplexMatrix g = random::ginibre(n, n, rng);
      const ComplexMatrix h = g + g.adjoint();
      const auto e = eig_hermitian(h);
      const ComplexMatrix back = e.vectors * e.values.asDiagonal() * e.vectors.adjoint();
      CHECK((back - h).norm() < 1e-9);
      for (int i = 1; i < n; ++i) CHECK(e.values(i - 1) >= e.values(i));
    }
  }
  SUBCASE("non-Hermitian input names the asymmetry") {
    ComplexMatrix m = ComplexMatrix::Zero(3, 3);
    m(0, 2) = 1.0;
    try {
      (void)eig_hermitian(m);
      FAIL("expected an exception");
    } catch (const std::invalid_argument& err) {
      const std::string what = err.what();
      CHECK(what.find("not Hermitian") != std::string::npos);
      CHECK(what.find("= 1") != std::string::npos);
    }
  }
  SUBCASE("density spectra sum to one") {
    Rng rng(12);
    for (int t = 0; t < 20; ++t) {
      const auto rho = random::density({{"A", 2 + t % 4}}, rng);
      CHECK(std::abs(eig_hermitian(rho.op()).values.sum() - 1.0) < 1e-10);
    }
  }
}

TEST_CASE("DensityMatrix validation") {
  CHECK_THROWS_AS(DensityMatrix(ComplexMatrix::Identity(2, 2), "A"), std::invalid_argument);  // trace 2
  ComplexMatrix neg = ComplexMatrix::Zero(2, 2);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  CHECK_THROWS_AS(DensityMatrix(neg, "A"), std::invalid_argument);
  CHECK_THROWS_AS(DensityMatrix(ComplexMatrix::Identity(4, 4) / 4.0, Layout{{"A", 2}, {"B", 3}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(DensityMatrix(ComplexMatrix::Identity(4, 4) / 4.0, Layout{{"A", 2}, {"A", 2}}),
                  std::invalid_argument);
  CHECK_NOTHROW(DensityMatrix(ComplexMatrix::Identity(4, 4) / 4.0, Layout{{"A", 2}, {"B", 2}}));
}

TEST_CASE("partial_trace") {
  Rng rng(3);
  SUBCASE("product state") {
    const auto a = random::density({{"A", 2}}, rng);
    const auto b = random::density({{"B", 3}}, rng);
    const auto ab = tensor(a, b);
    CHECK((partial_trace(ab, {"A"}).op() - a.op()).norm() < 1e-12);
    CHECK((partial_trace(ab, {"B"}).op() - b.op()).norm() < 1e-12);
  }
  SUBCASE("maximally entangled marginal") {
    const auto phi = PureState::max_entangled(2, "A", "B");
    const ComplexMatrix half = ComplexMatrix::Identity(2, 2) / 2.0;
    CHECK((partial_trace(phi.density(), {"A"}).op() - half).norm() < 1e-12);
    CHECK((partial_trace(phi, {"A"}).op() - half).norm() < 1e-12);
  }
  SUBCASE("trace preserved, kept labels in original order") {
    const auto rho = random::density({{"A", 2}, {"B", 3}, {"C", 2}}, rng);
    const auto red = partial_trace(rho, {"C", "A"});
    CHECK(std::abs(red.op().trace() - Complex(1.0)) < 1e-12);
    REQUIRE(red.layout().size() == 2);
    CHECK(red.layout()[0].label == "A");
    CHECK(red.layout()[1].label == "C");
  }
  SUBCASE("pure and mixed routes agree") {
    const auto psi = random::pure_state({{"A", 2}, {"B", 3}, {"C", 2}}, rng);
    for (const auto& keep : std::vector<std::vector<std::string>>{{"A"}, {"B", "C"}, {"A", "C"}, {"C"}}) {
      CHECK((partial_trace(psi, keep).op() - partial_trace(psi.density(), keep).op()).norm() < 1e-12);
    }
  }
  SUBCASE("unknown label") {
    const auto rho = random::density({{"A", 2}, {"B", 2}}, rng);
    CHECK_THROWS_AS(partial_trace(rho, {"Q"}), std::invalid_argument);
  }
  SUBCASE("linearity") {
    for (int t = 0; t < 10; ++t) {
      const Layout l{{"A", 2}, {"B", 3}};
      const auto r1 = random::density(l, rng);
      const auto r2 = random::density(l, rng);
      const double a = rng.uniform();
      const auto mixed = DensityMatrix(a * r1.op() + (1 - a) * r2.op(), l);
      const ComplexMatrix lhs = partial_trace(mixed, {"A"}).op();
      const ComplexMatrix rhs = a * partial_trace(r1, {"A"}).op() + (1 - a) * partial_trace(r2, {"A"}).op();
      CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("permute and apply_local") {
  Rng rng(4);
  const auto psi = random::pure_state({{"A", 2}, {"B", 3}, {"C", 4}}, rng);
  const auto moved = permute(psi, {"C", "A", "B"});
  CHECK(moved.layout()[0].label == "C");
  CHECK(moved.layout()[0].dim == 4);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 4; ++c) CHECK(moved.amplitudes()(c * 6 + a * 3 + b) == psi.amplitudes()(a * 12 + b * 4 + c));
  const auto moved_rho = permute(psi.density(), {"C", "A", "B"});
  CHECK((moved_rho.op() - moved.density().op()).norm() < 1e-12);
  CHECK((partial_trace(moved, {"B"}).op() - partial_trace(psi, {"B"}).op()).norm() < 1e-12);
  CHECK((permute(moved, {"A", "B", "C"}).amplitudes() - psi.amplitudes()).norm() == 0.0);

  // An isometry on B splits it into two registers; other marginals unchanged.
  const ComplexMatrix v = random::isometry(6, 3, rng);
  const auto out = apply_local(psi, "B", v, {{"B1", 2}, {"B2", 3}});
  CHECK(out.layout().size() == 4);
  CHECK((partial_trace(out, {"A", "C"}).op() - partial_trace(psi, {"A", "C"}).op()).norm() < 1e-12);
  const auto mixed = apply_local(psi.density(), "B", v, {{"B1", 2}, {"B2", 3}});
  CHECK((mixed.op() - out.density().op()).norm() < 1e-12);
}

TEST_CASE("fidelity") {
  Rng rng(5);
  const auto rho = random::density({{"A", 3}}, rng);
  CHECK(fidelity(rho, rho) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(fidelity(ket0(), ket1()) == doctest::Approx(0.0));
  CHECK(fidelity(ket0(), DensityMatrix::maximally_mixed(2, "A")) ==
        doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
  CHECK_THROWS_AS(fidelity(rho, ket0()), std::invalid_argument);

  for (int t = 0; t < 20; ++t) {
    const auto a = random::density({{"A", 3}}, rng);
    const auto b = random::density({{"A", 3}}, rng);
    CHECK(std::abs(fidelity(a, b) - fidelity(b, a)) < 1e-9);
  }
}

TEST_CASE("trace_distance") {
  Rng rng(6);
  const auto rho = random::density({{"A", 3}}, rng);
  CHECK(trace_distance(rho, rho) == doctest::Approx(0.0));
  CHECK(trace_distance(ket0(), ket1()) == doctest::Approx(1.0));
  CHECK(trace_distance(ket0(), DensityMatrix::maximally_mixed(2, "A")) == doctest::Approx(0.5));
  CHECK_THROWS_AS(trace_distance(rho, ket0()), std::invalid_argument);

  for (int t = 0; t < 30; ++t) {
    const Layout l{{"A", 2 + t % 3}};
    const auto a = random::density(l, rng);
    const auto b = random::density(l, rng);
    const auto c = random::density(l, rng);
    CHECK(trace_distance(a, b) == trace_distance(b, a));
    CHECK(trace_distance(a, c) <= trace_distance(a, b) + trace_distance(b, c) + 1e-10);
  }
}

TEST_CASE("Fuchs-van de Graaf sandwich on random pairs") {
  Rng rng(7);
  for (int t = 0; t < 100; ++t) {
    const Layout l{{"A", 2 + t % 3}};
    const auto a = random::density(l, rng);
    const auto b = (t % 5 == 0) ? random::pure_state(l, rng).density() : random::density(l, rng);
    const double f = fidelity(a, b);
    const double d = trace_distance(a, b);
    CHECK(1.0 - f <= d + 1e-9);
    CHECK(d <= std::sqrt(1.0 - f * f) + 1e-9);
  }
}

TEST_CASE("purify") {
  Rng rng(8);
  SUBCASE("maximally mixed qubit") {
    const auto psi = purify(DensityMatrix::maximally_mixed(2, "A"), "R");
    CHECK((partial_trace(psi, {"A"}).op() - ComplexMatrix::Identity(2, 2) / 2.0).norm() < 1e-9);
    CHECK((partial_trace(psi, {"R"}).op() - ComplexMatrix::Identity(2, 2) / 2.0).norm() < 1e-9);
  }
  SUBCASE("pure input gives a product") {
    const auto pure = random::pure_state({{"A", 3}}, rng).density();
    const auto psi = purify(pure, "R");
    const auto ref = partial_trace(psi, {"R"});
    CHECK(std::abs(eig_hermitian(ref.op()).values(0) - 1.0) < 1e-9);
    CHECK((partial_trace(psi, {"A"}).op() - pure.op()).norm() < 1e-9);
  }
  SUBCASE("random qutrit and multipartite inputs") {
    for (int t = 0; t < 10; ++t) {
      const auto rho = random::density({{"A", 3}}, rng);
      CHECK((partial_trace(purify(rho, "R"), {"A"}).op() - rho.op()).norm() < 1e-9);
    }
    const auto rho = random::density({{"A", 2}, {"B", 2}}, rng);
    const auto psi = purify(rho, "R");
    CHECK(psi.layout().back().dim == 4);
    CHECK((partial_trace(psi, {"A", "B"}).op() - rho.op()).norm() < 1e-9);
  }
}
