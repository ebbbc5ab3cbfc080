#include "sscap/channels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "sscap/random.hpp"

namespace sscap::channels {

using qmat::Complex;
using qmat::Layout;

namespace {

void require_probability(double x, const char* what) {
  if (!(x >= 0.0 && x <= 1.0)) {
    std::ostringstream os;
    os << what << " must lie in [0, 1], got " << x;
    throw std::invalid_argument(os.str());
  }
}

std::string fmt_param(const char* base, double x) {
  std::ostringstream os;
  os << base << '(' << x << ')';
  return os.str();
}

}  // namespace

Channel::Channel(std::vector<ComplexMatrix> kraus, int dim_in, int dim_out, std::string name)
    : kraus_(std::move(kraus)), dim_in_(dim_in), dim_out_(dim_out), name_(std::move(name)) {
  if (dim_in_ < 1 || dim_out_ < 1) throw std::invalid_argument("channel dimensions must be positive");
  if (kraus_.empty()) throw std::invalid_argument("channel needs at least one Kraus operator");
  ComplexMatrix sum = ComplexMatrix::Zero(dim_in_, dim_in_);
  for (std::size_t k = 0; k < kraus_.size(); ++k) {
    const auto& a = kraus_[k];
    if (a.rows() != dim_out_ || a.cols() != dim_in_) {
      std::ostringstream os;
      os << "Kraus operator " << k << " of '" << name_ << "' has shape " << a.rows() << 'x' << a.cols()
         << ", expected " << dim_out_ << 'x' << dim_in_;
      throw std::invalid_argument(os.str());
    }
    sum += a.adjoint() * a;
  }
  const double defect = (sum - ComplexMatrix::Identity(dim_in_, dim_in_)).cwiseAbs().maxCoeff();
  if (defect > kTraceTol) {
    std::ostringstream os;
    os << "channel '" << name_ << "' is not trace preserving (defect " << defect << ")";
    throw std::invalid_argument(os.str());
  }
}

Channel Channel::renamed(std::string name) const { return Channel(kraus_, dim_in_, dim_out_, std::move(name)); }

DensityMatrix apply(const Channel& ch, const DensityMatrix& rho, const std::string& out_label) {
  if (rho.dim() != ch.dim_in()) {
    throw std::invalid_argument("apply: state dimension " + std::to_string(rho.dim()) +
                                " does not match channel input " + std::to_string(ch.dim_in()));
  }
  ComplexMatrix out = ComplexMatrix::Zero(ch.dim_out(), ch.dim_out());
  for (const auto& a : ch.kraus()) out += a * rho.op() * a.adjoint();
  return DensityMatrix::trusted(std::move(out), Layout{{out_label, ch.dim_out()}});
}

DensityMatrix apply_to(const Channel& ch, const DensityMatrix& rho, const std::string& label,
                       const std::string& out_label) {
  const auto pos = qmat::index_of(rho.layout(), label);
  if (rho.layout()[pos].dim != ch.dim_in()) {
    throw std::invalid_argument("apply_to: subsystem '" + label + "' has dimension " +
                                std::to_string(rho.layout()[pos].dim) + ", channel expects " +
                                std::to_string(ch.dim_in()));
  }
  const Layout out{{out_label.empty() ? label : out_label, ch.dim_out()}};
  ComplexMatrix acc;
  Layout layout;
  for (const auto& a : ch.kraus()) {
    auto term = qmat::apply_local(rho, label, a, out);
    if (acc.size() == 0) {
      acc = term.op();
      layout = term.layout();
    } else {
      acc += term.op();
    }
  }
  return DensityMatrix::trusted(std::move(acc), std::move(layout));
}

Isometry stinespring(const Channel& ch) {
  const int de = ch.kraus_count();
  Isometry u;
  u.dim_b = ch.dim_out();
  u.dim_e = de;
  u.matrix = ComplexMatrix::Zero(static_cast<Eigen::Index>(u.dim_b) * de, ch.dim_in());
  for (int k = 0; k < de; ++k) {
    const auto& a = ch.kraus()[static_cast<std::size_t>(k)];
    for (int b = 0; b < u.dim_b; ++b) u.matrix.row(b * de + k) = a.row(b);
  }
  return u;
}

Channel complementary(const Channel& ch) {
  const int de = ch.kraus_count();
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(static_cast<std::size_t>(ch.dim_out()));
  for (int b = 0; b < ch.dim_out(); ++b) {
    ComplexMatrix e(de, ch.dim_in());
    for (int k = 0; k < de; ++k) e.row(k) = ch.kraus()[static_cast<std::size_t>(k)].row(b);
    kraus.push_back(std::move(e));
  }
  return Channel(std::move(kraus), ch.dim_in(), de, "complement(" + ch.name() + ")");
}

DensityMatrix choi(const Channel& ch) {
  const int din = ch.dim_in();
  const int dout = ch.dim_out();
  const double scale = 1.0 / std::sqrt(static_cast<double>(din));
  ComplexMatrix out = ComplexMatrix::Zero(din * dout, din * dout);
  qmat::ComplexVector v(din * dout);
  for (const auto& a : ch.kraus()) {
    for (int i = 0; i < din; ++i)
      for (int b = 0; b < dout; ++b) v(i * dout + b) = scale * a(b, i);
    out += v * v.adjoint();
  }
  return DensityMatrix::trusted(std::move(out), Layout{{"R", din}, {"B", dout}});
}

double choi_distance(const Channel& a, const Channel& b) {
  if (a.dim_in() != b.dim_in() || a.dim_out() != b.dim_out()) {
    throw std::invalid_argument("choi_distance: channel dimensions differ");
  }
  return (choi(a).op() - choi(b).op()).norm();
}

Channel tensor(const Channel& a, const Channel& b) {
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(a.kraus().size() * b.kraus().size());
  for (const auto& x : a.kraus())
    for (const auto& y : b.kraus()) kraus.push_back(qmat::kron(x, y));
  return Channel(std::move(kraus), a.dim_in() * b.dim_in(), a.dim_out() * b.dim_out(),
                 a.name() + " (x) " + b.name());
}

Channel compose(const Channel& a, const Channel& b) {
  if (a.dim_in() != b.dim_out()) {
    throw std::invalid_argument("compose: '" + a.name() + "' expects input dimension " +
                                std::to_string(a.dim_in()) + " but '" + b.name() + "' outputs " +
                                std::to_string(b.dim_out()));
  }
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(a.kraus().size() * b.kraus().size());
  for (const auto& x : a.kraus())
    for (const auto& y : b.kraus()) kraus.push_back(x * y);
  return Channel(std::move(kraus), b.dim_in(), a.dim_out(), a.name() + " o " + b.name());
}

Channel mix(const std::vector<Channel>& channels, const std::vector<double>& weights) {
  if (channels.empty() || channels.size() != weights.size()) {
    throw std::invalid_argument("mix: need one weight per channel");
  }
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw std::invalid_argument("mix: weights must be nonnegative");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("mix: weights must sum to 1");
  const int din = channels.front().dim_in();
  const int dout = channels.front().dim_out();
  std::vector<ComplexMatrix> kraus;
  std::string name = "mix(";
  for (std::size_t i = 0; i < channels.size(); ++i) {
    const auto& ch = channels[i];
    if (ch.dim_in() != din || ch.dim_out() != dout) {
      throw std::invalid_argument("mix: channel '" + ch.name() + "' has mismatched dimensions");
    }
    const double s = std::sqrt(weights[i]);
    for (const auto& a : ch.kraus()) kraus.push_back(s * a);
    name += (i ? ", " : "") + ch.name();
  }
  return Channel(std::move(kraus), din, dout, name + ")");
}

// ---------------------------------------------------------------------------
// Builders

Channel identity(int dim) {
  if (dim < 1) throw std::invalid_argument("identity: dimension must be positive");
  return Channel({ComplexMatrix::Identity(dim, dim)}, dim, dim, "id");
}

Channel unitary(const ComplexMatrix& u, std::string name) {
  if (u.rows() != u.cols()) throw std::invalid_argument("unitary: matrix must be square");
  const int d = static_cast<int>(u.rows());
  return Channel({u}, d, d, std::move(name));
}

Channel pauli_channel(double px, double py, double pz) {
  require_probability(px, "px");
  require_probability(py, "py");
  require_probability(pz, "pz");
  const double rest = 1.0 - px - py - pz;
  if (rest < -1e-12) throw std::invalid_argument("pauli_channel: weights sum to more than 1");
  std::vector<ComplexMatrix> kraus{
      std::sqrt(std::max(rest, 0.0)) * ComplexMatrix::Identity(2, 2),
      std::sqrt(px) * qmat::pauli_x(),
      std::sqrt(py) * qmat::pauli_y(),
      std::sqrt(pz) * qmat::pauli_z(),
  };
  std::ostringstream name;
  name << "pauli(" << px << ", " << py << ", " << pz << ')';
  return Channel(std::move(kraus), 2, 2, name.str());
}

Channel depolarizing(double p) {
  require_probability(p, "depolarizing probability");
  return pauli_channel(p / 3.0, p / 3.0, p / 3.0).renamed(fmt_param("depolarizing", p));
}

Channel dephasing_axis(Axis axis, double p) {
  require_probability(p, "dephasing probability");
  ComplexMatrix pauli;
  const char* base = "";
  switch (axis) {
    case Axis::X: pauli = qmat::pauli_x(); base = "X_p"; break;
    case Axis::Y: pauli = qmat::pauli_y(); base = "Y_p"; break;
    case Axis::Z: pauli = qmat::pauli_z(); base = "Z_p"; break;
  }
  std::vector<ComplexMatrix> kraus{std::sqrt(1.0 - p) * ComplexMatrix::Identity(2, 2), std::sqrt(p) * pauli};
  return Channel(std::move(kraus), 2, 2, fmt_param(base, p));
}

Channel amplitude_damping(double gamma) {
  require_probability(gamma, "damping parameter");
  ComplexMatrix a0 = ComplexMatrix::Zero(2, 2);
  a0(0, 0) = 1.0;
  a0(1, 1) = std::sqrt(1.0 - gamma);
  ComplexMatrix a1 = ComplexMatrix::Zero(2, 2);
  a1(0, 1) = std::sqrt(gamma);
  return Channel({a0, a1}, 2, 2, fmt_param("amp_damp", gamma));
}

Isometry symmetric_embedding(int d) {
  if (d < 1) throw std::invalid_argument("symmetric side channel needs d >= 1");
  const int n = d * (d + 1) / 2;
  Isometry v;
  v.dim_b = d;
  v.dim_e = d;
  v.matrix = ComplexMatrix::Zero(d * d, n);
  const double h = 1.0 / std::sqrt(2.0);
  int col = 0;
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j, ++col) {
      if (i == j) {
        v.matrix(i * d + i, col) = 1.0;
      } else {
        v.matrix(i * d + j, col) = h;
        v.matrix(j * d + i, col) = h;
      }
    }
  return v;
}

Channel symmetric_side_channel(int d) {
  const Isometry v = symmetric_embedding(d);
  const int n = v.dim_in();
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(static_cast<std::size_t>(d));
  for (int k = 0; k < d; ++k) {
    ComplexMatrix a(d, n);
    for (int t = 0; t < d; ++t) a.row(t) = v.matrix.row(t * d + k);
    kraus.push_back(std::move(a));
  }
  return Channel(std::move(kraus), n, d, "A_" + std::to_string(d));
}

// ---------------------------------------------------------------------------
// Degradability probe
//
// Unknown: the normalized Choi matrix J of D : B -> E, layout B (x) E.
// Feasible set: J >= 0 and Tr_E J = I_B / dB.
// choi(D o N) = (id_R (x) D)(choi(N)) is complex-linear in J:
//   L(J)[(r,e),(r',e')] = dB * sum_{i,j} C[(r,i),(r',j)] J[(i,e),(j,e')].

namespace {

class DegradingProblem {
 public:
  explicit DegradingProblem(const Channel& ch)
      : din_(ch.dim_in()),
        db_(ch.dim_out()),
        de_(ch.kraus_count()),
        c_(choi(ch).op()),
        target_(choi(complementary(ch)).op()) {}

  int n() const { return db_ * de_; }

  ComplexMatrix forward(const ComplexMatrix& j) const {
    ComplexMatrix out = ComplexMatrix::Zero(din_ * de_, din_ * de_);
    for (int r = 0; r < din_; ++r)
      for (int rp = 0; rp < din_; ++rp) {
        auto blk = out.block(r * de_, rp * de_, de_, de_);
        for (int i = 0; i < db_; ++i)
          for (int k = 0; k < db_; ++k) {
            const Complex c = c_(r * db_ + i, rp * db_ + k);
            if (c == Complex(0.0)) continue;
            blk += (static_cast<double>(db_) * c) * j.block(i * de_, k * de_, de_, de_);
          }
      }
    return out;
  }

  ComplexMatrix adjoint(const ComplexMatrix& y) const {
    ComplexMatrix out = ComplexMatrix::Zero(n(), n());
    for (int i = 0; i < db_; ++i)
      for (int k = 0; k < db_; ++k) {
        auto blk = out.block(i * de_, k * de_, de_, de_);
        for (int r = 0; r < din_; ++r)
          for (int rp = 0; rp < din_; ++rp) {
            const Complex c = c_(r * db_ + i, rp * db_ + k);
            if (c == Complex(0.0)) continue;
            blk += (static_cast<double>(db_) * std::conj(c)) * y.block(r * de_, rp * de_, de_, de_);
          }
      }
    return out;
  }

  double residual(const ComplexMatrix& j) const { return (forward(j) - target_).norm(); }

  ComplexMatrix gradient(const ComplexMatrix& j) const { return 2.0 * adjoint(forward(j) - target_); }

  // Largest eigenvalue of L*L by power iteration.
  double operator_norm_sq(Rng& rng) const {
    ComplexMatrix x = random::ginibre(n(), n(), rng);
    x = 0.5 * (x + x.adjoint()).eval();
    double lambda = 0.0;
    for (int it = 0; it < 100; ++it) {
      x /= x.norm();
      ComplexMatrix y = adjoint(forward(x));
      const double next = y.norm();
      x = std::move(y);
      if (std::abs(next - lambda) <= 1e-12 * next) {
        lambda = next;
        break;
      }
      lambda = next;
    }
    return lambda;
  }

  ComplexMatrix partial_trace_e(const ComplexMatrix& j) const {
    ComplexMatrix out(db_, db_);
    for (int i = 0; i < db_; ++i)
      for (int k = 0; k < db_; ++k) out(i, k) = j.block(i * de_, k * de_, de_, de_).trace();
    return out;
  }

  ComplexMatrix project_affine(const ComplexMatrix& j) const {
    const ComplexMatrix delta =
        partial_trace_e(j) - ComplexMatrix::Identity(db_, db_) / static_cast<double>(db_);
    return j - qmat::kron(delta, ComplexMatrix::Identity(de_, de_)) / static_cast<double>(de_);
  }

  static ComplexMatrix project_psd(const ComplexMatrix& j) {
    const auto e = qmat::eig_hermitian(0.5 * (j + j.adjoint()));
    const qmat::RealVector clipped = e.values.cwiseMax(0.0);
    return e.vectors * clipped.asDiagonal() * e.vectors.adjoint();
  }

  // Dykstra's alternating projection onto PSD cone and trace-preserving plane.
  ComplexMatrix project_cptp(const ComplexMatrix& j) const {
    ComplexMatrix x = j;
    ComplexMatrix p = ComplexMatrix::Zero(n(), n());
    for (int it = 0; it < 100; ++it) {
      const ComplexMatrix y = project_affine(x);
      const ComplexMatrix next = project_psd(y + p);
      p = y + p - next;
      const double change = (next - x).norm();
      x = next;
      if (change < 1e-14) break;
    }
    return x;
  }

  // Exactly feasible point near a PSD matrix: J' = (S^{-1/2} (x) I) J (S^{-1/2} (x) I)
  // with S = dB Tr_E J. Returns false if S is singular.
  bool normalize(const ComplexMatrix& psd, ComplexMatrix& out) const {
    const ComplexMatrix s = static_cast<double>(db_) * partial_trace_e(psd);
    const auto e = qmat::eig_hermitian(0.5 * (s + s.adjoint()));
    if (e.values.minCoeff() < 1e-12) return false;
    const qmat::RealVector inv_sqrt = e.values.cwiseSqrt().cwiseInverse();
    const ComplexMatrix s_inv_half = e.vectors * inv_sqrt.asDiagonal() * e.vectors.adjoint();
    const ComplexMatrix k = qmat::kron(s_inv_half, ComplexMatrix::Identity(de_, de_));
    out = k * psd * k.adjoint();
    out = 0.5 * (out + out.adjoint()).eval();
    return true;
  }

  ComplexMatrix random_feasible(Rng& rng) const {
    const ComplexMatrix g = random::ginibre(n(), n(), rng);
    ComplexMatrix j;
    if (!normalize(g * g.adjoint(), j)) {
      j = ComplexMatrix::Identity(n(), n()) / static_cast<double>(n());
    }
    return j;
  }

 private:
  int din_;
  int db_;
  int de_;
  ComplexMatrix c_;
  ComplexMatrix target_;
};

}  // namespace

DegradabilityResult degradability_residual(const Channel& ch, const DegradabilityOptions& opts) {
  const DegradingProblem problem(ch);
  Rng rng(opts.seed);

  const double lipschitz = 2.0 * problem.operator_norm_sq(rng);
  const double step = lipschitz > 0.0 ? 1.0 / lipschitz : 1.0;

  DegradabilityResult best;
  best.residual = std::numeric_limits<double>::infinity();
  bool converged = false;

  for (int restart = 0; restart < std::max(opts.restarts, 1) && !converged; ++restart) {
    ComplexMatrix x = problem.random_feasible(rng);
    ComplexMatrix y = x;
    double t = 1.0;
    double last_check = std::numeric_limits<double>::infinity();
    int stalled = 0;

    for (int it = 1; it <= opts.max_iters; ++it) {
      ++best.iterations;
      const ComplexMatrix next = problem.project_cptp(y - step * problem.gradient(y));
      const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
      // Gradient-based momentum restart keeps FISTA monotone in practice.
      if ((y - next).cwiseProduct((next - x).conjugate()).sum().real() > 0.0) {
        y = next;
        t = 1.0;
      } else {
        y = next + ((t - 1.0) / t_next) * (next - x);
        t = t_next;
      }
      x = next;

      if (it % 25 == 0 || it == opts.max_iters) {
        ComplexMatrix feasible;
        if (!problem.normalize(DegradingProblem::project_psd(x), feasible)) continue;
        const double r = problem.residual(feasible);
        if (r < best.residual) {
          best.residual = r;
          best.degrading_choi = feasible;
        }
        if (best.residual < opts.tol) {
          converged = true;
          break;
        }
        stalled = (last_check - r <= 1e-12 * std::max(r, 1e-300)) ? stalled + 1 : 0;
        last_check = std::min(last_check, r);
        if (stalled >= 8) break;
      }
    }
  }
  best.hit_iteration_limit = !converged;
  return best;
}

}  // namespace sscap::channels
