#include "sscap/coherent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "sscap/optimize.hpp"
#include "sscap/random.hpp"

namespace sscap::coherent {

using qmat::Complex;
using qmat::ComplexMatrix;
using qmat::ComplexVector;
using qmat::Layout;

namespace {

Labels join(const Labels& a, const Labels& b) {
  Labels out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

void require_dim(const qmat::Layout& layout, const std::string& label, int dim, const char* what) {
  const auto& sub = layout[qmat::index_of(layout, label)];
  if (sub.dim != dim) {
    throw std::invalid_argument(std::string(what) + ": register '" + label + "' has dimension " +
                                std::to_string(sub.dim) + ", expected " + std::to_string(dim));
  }
}

}  // namespace

double entropy_of_spectrum(const qmat::RealVector& spectrum) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < spectrum.size(); ++i) {
    const double x = spectrum(i);
    if (x < kEigenClamp) continue;
    s -= x * std::log2(x);
  }
  return s;
}

double entropy(const DensityMatrix& rho) { return entropy_of_spectrum(qmat::eigenvalues_hermitian(rho.op())); }

double entropy(const DensityMatrix& rho, const Labels& labels) {
  if (labels.empty()) return entropy(rho);
  return entropy(qmat::partial_trace(rho, labels));
}

double entropy(const PureState& psi, const Labels& labels) {
  if (labels.empty()) return 0.0;
  return entropy(qmat::partial_trace(psi, labels));
}

EntropyReport entropy_report(const DensityMatrix& rho, const std::vector<Labels>& groups) {
  EntropyReport report;
  for (const auto& g : groups) {
    std::string key;
    for (const auto& l : g) key += l;
    report[key] = entropy(rho, g);
  }
  return report;
}

double coherent_information(const DensityMatrix& rho, const Labels& a, const Labels& b) {
  return entropy(rho, b) - entropy(rho, join(a, b));
}

double coherent_information(const PureState& psi, const Labels& a, const Labels& b) {
  return entropy(psi, b) - entropy(psi, join(a, b));
}

double mutual_information(const DensityMatrix& rho, const Labels& a, const Labels& b) {
  return entropy(rho, a) + entropy(rho, b) - entropy(rho, join(a, b));
}

PureState dilate(const PureState& state, const Channel& ch, const std::string& input_label,
                 const std::string& out_label, const std::string& env_label) {
  require_dim(state.layout(), input_label, ch.dim_in(), "dilate");
  const auto u = channels::stinespring(ch);
  return qmat::apply_local(state, input_label, u.matrix, {{out_label, u.dim_b}, {env_label, u.dim_e}});
}

double channel_coherent_information(const Channel& ch, const PureState& purification) {
  const PureState omega = dilate(purification, ch);
  return coherent_information(omega, {kRef}, {kOut});
}

double channel_coherent_information(const Channel& ch, const DensityMatrix& input) {
  if (input.dim() != ch.dim_in()) {
    throw std::invalid_argument("channel_coherent_information: input dimension " + std::to_string(input.dim()) +
                                " does not match channel input " + std::to_string(ch.dim_in()));
  }
  // purify() appends the reference last; the optimizer convention is (A, A').
  const auto flat = DensityMatrix::trusted(input.op(), {{kInput, input.dim()}});
  const auto psi = qmat::permute(qmat::purify(flat, kRef), {kRef, kInput});
  return channel_coherent_information(ch, psi);
}

// ---------------------------------------------------------------------------
// Q1 optimizer

bool is_pauli_diagonal(const Channel& ch, double tol) {
  if (ch.dim_in() != 2 || ch.dim_out() != 2) return false;
  const ComplexMatrix j = channels::choi(ch).op();
  const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
  const ComplexMatrix paulis[4] = {id, qmat::pauli_x(), qmat::pauli_y(), qmat::pauli_z()};
  const auto phi = PureState::max_entangled(2, "R", "B").amplitudes();
  ComplexMatrix bell(4, 4);
  for (int k = 0; k < 4; ++k) bell.col(k) = qmat::kron(id, paulis[k]) * phi;
  const ComplexMatrix in_bell = bell.adjoint() * j * bell;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      if (r != c && std::abs(in_bell(r, c)) > tol) return false;
  return true;
}

namespace {

PureState purification_from_params(const std::vector<double>& x, int d) {
  ComplexVector v(d * d);
  for (int k = 0; k < d * d; ++k) v(k) = Complex(x[2 * k], x[2 * k + 1]);
  return PureState::normalized(std::move(v), {{kRef, d}, {kInput, d}});
}

DensityMatrix input_of(const PureState& psi) {
  const auto rho = qmat::partial_trace(psi, {kInput});
  ComplexMatrix op = 0.5 * (rho.op() + rho.op().adjoint());
  op /= op.trace().real();
  return DensityMatrix::trusted(std::move(op), {{kInput, rho.dim()}});
}

DensityMatrix diagonal_input(double t) {
  ComplexMatrix op = ComplexMatrix::Zero(2, 2);
  op(0, 0) = t;
  op(1, 1) = 1.0 - t;
  return DensityMatrix::trusted(std::move(op), {{kInput, 2}});
}

}  // namespace

Q1Result q1_optimize(const Channel& ch, const Q1Options& opts) {
  const int d = ch.dim_in();
  const auto u = channels::stinespring(ch);
  const Layout be{{kOut, u.dim_b}, {kEnv, u.dim_e}};

  auto value_of = [&](const PureState& psi) {
    const PureState omega = qmat::apply_local(psi, kInput, u.matrix, be);
    return coherent_information(omega, {kRef}, {kOut});
  };
  auto objective = [&](const std::vector<double>& x) {
    double n2 = 0.0;
    for (double v : x) n2 += v * v;
    if (n2 < 1e-24) return std::numeric_limits<double>::max();
    return -value_of(purification_from_params(x, d));
  };

  Rng rng(opts.seed);
  double best_value = -std::numeric_limits<double>::infinity();
  PureState best_psi = PureState::max_entangled(d, kRef, kInput);

  optimize::NelderMeadOptions nm;
  nm.f_tol = opts.tol;
  nm.max_evaluations = opts.max_evaluations;

  for (int r = 0; r < std::max(opts.restarts, 1); ++r) {
    std::vector<double> start(static_cast<std::size_t>(2 * d * d));
    if (r == 0) {
      // Maximally entangled start: the optimum for every covariant channel.
      for (int i = 0; i < d; ++i) start[static_cast<std::size_t>(2 * (i * d + i))] = 1.0 / std::sqrt(double(d));
    } else {
      for (double& v : start) v = rng.normal() / std::sqrt(double(2 * d * d));
    }
    const auto res = optimize::nelder_mead(objective, start, nm);
    if (-res.value > best_value) {
      best_value = -res.value;
      best_psi = purification_from_params(res.x, d);
    }
  }

  Q1Result out{best_value, input_of(best_psi)};

  if (opts.pauli_sweep && is_pauli_diagonal(ch)) {
    auto along = [&](double t) { return channel_coherent_information(ch, diagonal_input(t)); };
    constexpr int kSteps = 10000;
    double t_best = 0.0, v_best = -std::numeric_limits<double>::infinity();
    for (int i = 0; i <= kSteps; ++i) {
      const double t = static_cast<double>(i) / kSteps;
      const double v = along(t);
      if (v > v_best) {
        v_best = v;
        t_best = t;
      }
    }
    const double lo = std::max(0.0, t_best - 1.0 / kSteps);
    const double hi = std::min(1.0, t_best + 1.0 / kSteps);
    const auto refined = optimize::golden_section_max(along, lo, hi, 1e-12);
    if (refined.value > v_best) {
      v_best = refined.value;
      t_best = refined.x;
    }
    if (v_best > out.value) out = Q1Result{v_best, diagonal_input(t_best)};
  }
  return out;
}

// ---------------------------------------------------------------------------
// Side-channel rate function

double ss_rate(const SsRateInput& input) {
  const auto& layout = input.state.layout();
  for (const auto& l : {kRef, kInput, kSide}) (void)qmat::index_of(layout, l);
  require_dim(layout, kInput, input.channel.dim_in(), "ss_rate");

  const PureState omega = dilate(input.state, input.channel);
  const double with_b = coherent_information(omega, {kRef}, {kOut, kSide});
  const double with_e = coherent_information(omega, {kRef}, {kEnv, kSide});
  return 0.5 * (with_b - with_e);
}

PureState swap_registers(const PureState& psi, const std::string& a, const std::string& b) {
  const auto& layout = psi.layout();
  const auto ia = qmat::index_of(layout, a);
  const auto ib = qmat::index_of(layout, b);
  if (layout[ia].dim != layout[ib].dim) {
    throw std::invalid_argument("swap_registers: '" + a + "' and '" + b + "' differ in dimension");
  }
  std::vector<std::string> order, names;
  for (const auto& s : layout) names.push_back(s.label);
  order = names;
  std::swap(order[ia], order[ib]);
  return qmat::permute(psi, order).relabeled(names);
}

PureState symmetrize(const PureState& phi) {
  const auto& layout = phi.layout();
  if (layout.size() != 4) {
    throw std::invalid_argument("symmetrize: expected registers A, A', F, F', got " + qmat::describe(layout));
  }
  const PureState ordered = qmat::permute(phi, {kRef, kInput, kSide, kSidePrime});
  const int df = ordered.layout()[2].dim;
  if (ordered.layout()[3].dim != df) {
    throw std::invalid_argument("symmetrize: F and F' must have equal dimension");
  }
  const PureState swapped = swap_registers(ordered, kSide, kSidePrime);

  const auto g01 = qmat::tensor(PureState::basis(2, 0, "G"), PureState::basis(2, 1, "G'"));
  const auto g10 = qmat::tensor(PureState::basis(2, 1, "G"), PureState::basis(2, 0, "G'"));
  const ComplexVector sum = (qmat::tensor(ordered, g01).amplitudes() + qmat::tensor(swapped, g10).amplitudes()) /
                            std::sqrt(2.0);
  Layout six = ordered.layout();
  six.push_back({"G", 2});
  six.push_back({"G'", 2});
  const PureState grouped = qmat::permute(PureState(sum, six), {kRef, kInput, kSide, "G", kSidePrime, "G'"});

  // Adjacent registers merge without reindexing.
  const Layout merged{ordered.layout()[0], ordered.layout()[1], {kTop, 2 * df}, {kBottom, 2 * df}};
  return PureState(grouped.amplitudes(), merged);
}

// ---------------------------------------------------------------------------
// Additivity split

SplitTerms additivity_split_check(const Channel& ch1, const Channel& ch2, const DensityMatrix& rho) {
  const auto& layout = rho.layout();
  for (const auto& l : {kRef, kInput1, kInput2, kSide}) (void)qmat::index_of(layout, l);
  require_dim(layout, kInput1, ch1.dim_in(), "additivity_split_check");
  require_dim(layout, kInput2, ch2.dim_in(), "additivity_split_check");

  const auto u1 = channels::stinespring(ch1);
  const auto u2 = channels::stinespring(ch2);
  auto omega = qmat::apply_local(rho, kInput1, u1.matrix, {{"B1", u1.dim_b}, {"E1", u1.dim_e}});
  omega = qmat::apply_local(omega, kInput2, u2.matrix, {{"B2", u2.dim_b}, {"E2", u2.dim_e}});

  const Labels a{kRef};
  SplitTerms t;
  t.lhs = coherent_information(omega, a, {"B1", "B2", kSide}) - coherent_information(omega, a, {"E1", "E2", kSide});
  t.rhs1 = coherent_information(omega, a, {"B1", "B2", kSide}) - coherent_information(omega, a, {"E1", "B2", kSide});
  t.rhs2 = coherent_information(omega, a, {"B2", "E1", kSide}) - coherent_information(omega, a, {"E2", "E1", kSide});
  return t;
}

double value_added_probe(const Channel& n, const Channel& m, const Q1Options& opts) {
  const double joint = q1_optimize(channels::tensor(n, m), opts).value;
  const double alone = q1_optimize(n, opts).value;
  return joint - alone;
}

}  // namespace sscap::coherent
