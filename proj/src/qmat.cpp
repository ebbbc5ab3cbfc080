#include "sscap/qmat.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace sscap::qmat {

namespace {

void check_layout(const Layout& layout) {
  for (std::size_t i = 0; i < layout.size(); ++i) {
    if (layout[i].dim < 1) {
      throw std::invalid_argument("subsystem '" + layout[i].label +
                                  "' has non-positive dimension");
    }
    for (std::size_t j = i + 1; j < layout.size(); ++j) {
      if (layout[i].label == layout[j].label) {
        throw std::invalid_argument("duplicate subsystem label '" + layout[i].label + "'");
      }
    }
  }
}

Layout concat(const Layout& a, const Layout& b) {
  Layout out = a;
  out.insert(out.end(), b.begin(), b.end());
  check_layout(out);
  return out;
}

// For each flat index in the permuted ordering, the flat index in the
// original ordering. `perm[k]` is the original position of new subsystem k.
std::vector<int> permutation_map(const Layout& layout, const std::vector<std::size_t>& perm) {
  const std::size_t n = layout.size();
  const int total = total_dim(layout);

  std::vector<int> old_stride(n, 1);
  for (std::size_t i = n; i-- > 1;) old_stride[i - 1] = old_stride[i] * layout[i].dim;

  std::vector<int> map(static_cast<std::size_t>(total));
  std::vector<int> digit(n, 0);  // digits in the new ordering
  for (int flat = 0; flat < total; ++flat) {
    int old = 0;
    for (std::size_t k = 0; k < n; ++k) old += digit[k] * old_stride[perm[k]];
    map[static_cast<std::size_t>(flat)] = old;
    for (std::size_t k = n; k-- > 0;) {
      if (++digit[k] < layout[perm[k]].dim) break;
      digit[k] = 0;
    }
  }
  return map;
}

// Kept subsystems (original order) followed by the traced ones.
std::vector<std::size_t> keep_first(const Layout& layout, const std::vector<std::string>& keep) {
  std::vector<bool> kept(layout.size(), false);
  for (const auto& l : keep) {
    const auto i = index_of(layout, l);
    if (kept[i]) throw std::invalid_argument("label '" + l + "' listed twice");
    kept[i] = true;
  }
  std::vector<std::size_t> perm;
  for (std::size_t i = 0; i < layout.size(); ++i)
    if (kept[i]) perm.push_back(i);
  for (std::size_t i = 0; i < layout.size(); ++i)
    if (!kept[i]) perm.push_back(i);
  return perm;
}

// Original positions in the order given.
std::vector<std::size_t> order_of(const Layout& layout, const std::vector<std::string>& order) {
  if (order.size() != layout.size()) throw std::invalid_argument("permute: order must name every subsystem");
  std::vector<bool> seen(layout.size(), false);
  std::vector<std::size_t> perm;
  for (const auto& l : order) {
    const auto i = index_of(layout, l);
    if (seen[i]) throw std::invalid_argument("label '" + l + "' listed twice");
    seen[i] = true;
    perm.push_back(i);
  }
  return perm;
}

Layout reorder(const Layout& layout, const std::vector<std::size_t>& perm) {
  Layout out;
  out.reserve(perm.size());
  for (auto i : perm) out.push_back(layout[i]);
  return out;
}

bool is_identity(const std::vector<std::size_t>& perm) {
  for (std::size_t i = 0; i < perm.size(); ++i)
    if (perm[i] != i) return false;
  return true;
}

ComplexMatrix permuted(const ComplexMatrix& m, const std::vector<int>& map) {
  const auto n = static_cast<Eigen::Index>(map.size());
  ComplexMatrix out(n, n);
  for (Eigen::Index c = 0; c < n; ++c)
    for (Eigen::Index r = 0; r < n; ++r) out(r, c) = m(map[r], map[c]);
  return out;
}

ComplexVector permuted(const ComplexVector& v, const std::vector<int>& map) {
  const auto n = static_cast<Eigen::Index>(map.size());
  ComplexVector out(n);
  for (Eigen::Index i = 0; i < n; ++i) out(i) = v(map[i]);
  return out;
}

Layout relabel(const Layout& layout, const std::vector<std::string>& labels) {
  if (labels.size() != layout.size()) {
    throw std::invalid_argument("relabel: expected " + std::to_string(layout.size()) +
                                " labels, got " + std::to_string(labels.size()));
  }
  Layout out = layout;
  for (std::size_t i = 0; i < labels.size(); ++i) out[i].label = labels[i];
  check_layout(out);
  return out;
}

struct Split {
  int before = 1;
  int local = 1;
  int after = 1;
  std::size_t pos = 0;
};

Split split_at(const Layout& layout, const std::string& label) {
  Split s;
  s.pos = index_of(layout, label);
  for (std::size_t i = 0; i < s.pos; ++i) s.before *= layout[i].dim;
  s.local = layout[s.pos].dim;
  for (std::size_t i = s.pos + 1; i < layout.size(); ++i) s.after *= layout[i].dim;
  return s;
}

Layout splice(const Layout& layout, std::size_t pos, const Layout& out) {
  Layout result(layout.begin(), layout.begin() + static_cast<std::ptrdiff_t>(pos));
  result.insert(result.end(), out.begin(), out.end());
  result.insert(result.end(), layout.begin() + static_cast<std::ptrdiff_t>(pos) + 1, layout.end());
  check_layout(result);
  return result;
}

}  // namespace

int total_dim(const Layout& layout) {
  int d = 1;
  for (const auto& s : layout) d *= s.dim;
  return d;
}

std::size_t index_of(const Layout& layout, const std::string& label) {
  for (std::size_t i = 0; i < layout.size(); ++i)
    if (layout[i].label == label) return i;
  throw std::invalid_argument("unknown subsystem label '" + label + "' in " + describe(layout));
}

std::string describe(const Layout& layout) {
  std::ostringstream os;
  for (std::size_t i = 0; i < layout.size(); ++i) {
    if (i) os << 'x';
    os << layout[i].label << '(' << layout[i].dim << ')';
  }
  return os.str();
}

double hermitian_defect(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("hermitian_defect: matrix is not square");
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix DensityMatrix::trusted(ComplexMatrix op, Layout layout) {
  check_layout(layout);
  if (op.rows() != op.cols() || op.rows() != total_dim(layout)) {
    throw std::invalid_argument("density matrix of order " + std::to_string(op.rows()) +
                                " does not match layout " + describe(layout));
  }
  return DensityMatrix(std::move(op), std::move(layout), 0);
}

DensityMatrix::DensityMatrix(ComplexMatrix op, Layout layout, int)
    : op_(std::move(op)), layout_(std::move(layout)) {}

DensityMatrix::DensityMatrix(ComplexMatrix op, Layout layout)
    : op_(std::move(op)), layout_(std::move(layout)) {
  check_layout(layout_);
  if (op_.rows() != op_.cols() || op_.rows() != total_dim(layout_)) {
    throw std::invalid_argument("density matrix of order " + std::to_string(op_.rows()) +
                                " does not match layout " + describe(layout_));
  }
  const double defect = hermitian_defect(op_);
  if (defect > kHermitianTol) {
    throw std::invalid_argument("density matrix is not Hermitian (defect " +
                                std::to_string(defect) + ")");
  }
  const double tr = op_.trace().real();
  if (std::abs(tr - 1.0) > kTraceTol) {
    throw std::invalid_argument("density matrix trace is " + std::to_string(tr));
  }
  const double min_eig = eigenvalues_hermitian(op_).minCoeff();
  if (min_eig < -kPsdTol) {
    throw std::invalid_argument("density matrix has negative eigenvalue " +
                                std::to_string(min_eig));
  }
}

DensityMatrix::DensityMatrix(ComplexMatrix op, std::string label)
    : DensityMatrix(op, Layout{{std::move(label), static_cast<int>(op.rows())}}) {}

DensityMatrix DensityMatrix::relabeled(const std::vector<std::string>& labels) const {
  return trusted(op_, relabel(layout_, labels));
}

DensityMatrix DensityMatrix::maximally_mixed(int dim, std::string label) {
  if (dim < 1) throw std::invalid_argument("maximally_mixed: dimension must be positive");
  return trusted(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim),
                 Layout{{std::move(label), dim}});
}

DensityMatrix DensityMatrix::diagonal(std::span<const double> probs, std::string label) {
  ComplexMatrix op = ComplexMatrix::Zero(static_cast<Eigen::Index>(probs.size()),
                                         static_cast<Eigen::Index>(probs.size()));
  for (std::size_t i = 0; i < probs.size(); ++i) op(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = probs[i];
  return DensityMatrix(std::move(op), std::move(label));
}

// ---------------------------------------------------------------------------
// PureState

PureState::PureState(ComplexVector amplitudes, Layout layout)
    : amps_(std::move(amplitudes)), layout_(std::move(layout)) {
  check_layout(layout_);
  if (amps_.size() != total_dim(layout_)) {
    throw std::invalid_argument("state vector of length " + std::to_string(amps_.size()) +
                                " does not match layout " + describe(layout_));
  }
  const double n2 = amps_.squaredNorm();
  if (std::abs(n2 - 1.0) > kNormTol) {
    throw std::invalid_argument("state vector squared norm is " + std::to_string(n2));
  }
}

PureState PureState::normalized(ComplexVector amplitudes, Layout layout) {
  const double n = amplitudes.norm();
  if (n == 0.0) throw std::invalid_argument("cannot normalize the zero vector");
  amplitudes /= n;
  return PureState(std::move(amplitudes), std::move(layout));
}

PureState PureState::max_entangled(int dim, std::string a_label, std::string b_label) {
  ComplexVector v = ComplexVector::Zero(dim * dim);
  for (int i = 0; i < dim; ++i) v(i * dim + i) = 1.0 / std::sqrt(static_cast<double>(dim));
  return PureState(std::move(v), Layout{{std::move(a_label), dim}, {std::move(b_label), dim}});
}

PureState PureState::basis(int dim, int index, std::string label) {
  if (index < 0 || index >= dim) throw std::invalid_argument("basis index out of range");
  ComplexVector v = ComplexVector::Zero(dim);
  v(index) = 1.0;
  return PureState(std::move(v), Layout{{std::move(label), dim}});
}

DensityMatrix PureState::density() const {
  return DensityMatrix::trusted(amps_ * amps_.adjoint(), layout_);
}

PureState PureState::relabeled(const std::vector<std::string>& labels) const {
  return PureState(amps_, relabel(layout_, labels));
}

// ---------------------------------------------------------------------------
// Products and decompositions

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix::trusted(kron(a.op(), b.op()), concat(a.layout(), b.layout()));
}

PureState tensor(const PureState& a, const PureState& b) {
  return PureState(kron(a.amplitudes(), b.amplitudes()), concat(a.layout(), b.layout()));
}

EigenDecomposition eig_hermitian(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("eig_hermitian: matrix is not square");
  Eigen::Index worst_r = 0, worst_c = 0;
  const double defect = (m - m.adjoint()).cwiseAbs().maxCoeff(&worst_r, &worst_c);
  if (defect > 1e-10) {
    std::ostringstream os;
    os << "eig_hermitian: matrix is not Hermitian, max |M - M^dagger| = " << defect
       << " at (" << worst_r << ", " << worst_c << ")";
    throw std::invalid_argument(os.str());
  }
  const ComplexMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eig_hermitian: solver failed");
  EigenDecomposition out;
  out.values = solver.eigenvalues().reverse();
  out.vectors = solver.eigenvectors().rowwise().reverse();
  return out;
}

RealVector eigenvalues_hermitian(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("eigenvalues_hermitian: matrix is not square");
  const ComplexMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigenvalues_hermitian: solver failed");
  return solver.eigenvalues().reverse();
}

// ---------------------------------------------------------------------------
// Subsystem operations

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<std::string>& keep) {
  const auto perm = keep_first(rho.layout(), keep);
  const Layout ordered = reorder(rho.layout(), perm);
  const Layout kept(ordered.begin(), ordered.begin() + static_cast<std::ptrdiff_t>(keep.size()));
  const int dk = total_dim(kept);
  const int dt = rho.dim() / dk;

  const ComplexMatrix m = is_identity(perm) ? rho.op() : permuted(rho.op(), permutation_map(rho.layout(), perm));
  ComplexMatrix out = ComplexMatrix::Zero(dk, dk);
  for (int j = 0; j < dk; ++j)
    for (int i = 0; i < dk; ++i) {
      Complex acc = 0.0;
      for (int t = 0; t < dt; ++t) acc += m(i * dt + t, j * dt + t);
      out(i, j) = acc;
    }
  return DensityMatrix::trusted(std::move(out), kept);
}

DensityMatrix partial_trace(const PureState& psi, const std::vector<std::string>& keep) {
  const auto perm = keep_first(psi.layout(), keep);
  const Layout ordered = reorder(psi.layout(), perm);
  const Layout kept(ordered.begin(), ordered.begin() + static_cast<std::ptrdiff_t>(keep.size()));
  const int dk = total_dim(kept);
  const int dt = psi.dim() / dk;

  const ComplexVector v = is_identity(perm) ? psi.amplitudes()
                                            : permuted(psi.amplitudes(), permutation_map(psi.layout(), perm));
  // Row-major reshape: v[k * dt + t] -> M(k, t).
  const Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> mat(
      v.data(), dk, dt);
  return DensityMatrix::trusted(mat * mat.adjoint(), kept);
}

DensityMatrix permute(const DensityMatrix& rho, const std::vector<std::string>& order) {
  const auto perm = order_of(rho.layout(), order);
  return DensityMatrix::trusted(permuted(rho.op(), permutation_map(rho.layout(), perm)),
                                reorder(rho.layout(), perm));
}

PureState permute(const PureState& psi, const std::vector<std::string>& order) {
  const auto perm = order_of(psi.layout(), order);
  return PureState(permuted(psi.amplitudes(), permutation_map(psi.layout(), perm)),
                   reorder(psi.layout(), perm));
}

PureState apply_local(const PureState& psi, const std::string& label, const ComplexMatrix& op,
                      const Layout& out) {
  const Split s = split_at(psi.layout(), label);
  const int dout = total_dim(out);
  if (op.cols() != s.local || op.rows() != dout) {
    throw std::invalid_argument("apply_local: operator shape " + std::to_string(op.rows()) + "x" +
                                std::to_string(op.cols()) + " does not map " + label + " to " +
                                describe(out));
  }
  const ComplexVector& v = psi.amplitudes();
  ComplexVector w = ComplexVector::Zero(static_cast<Eigen::Index>(s.before) * dout * s.after);
  for (int b = 0; b < s.before; ++b)
    for (int l = 0; l < s.local; ++l)
      for (int a = 0; a < s.after; ++a) {
        const Complex x = v((b * s.local + l) * s.after + a);
        if (x == Complex(0.0)) continue;
        for (int o = 0; o < dout; ++o) w((b * dout + o) * s.after + a) += op(o, l) * x;
      }
  return PureState(std::move(w), splice(psi.layout(), s.pos, out));
}

DensityMatrix apply_local(const DensityMatrix& rho, const std::string& label, const ComplexMatrix& op,
                          const Layout& out) {
  const Split s = split_at(rho.layout(), label);
  if (op.cols() != s.local || op.rows() != total_dim(out)) {
    throw std::invalid_argument("apply_local: operator shape " + std::to_string(op.rows()) + "x" +
                                std::to_string(op.cols()) + " does not map " + label + " to " +
                                describe(out));
  }
  const ComplexMatrix full =
      kron(kron(ComplexMatrix::Identity(s.before, s.before), op), ComplexMatrix::Identity(s.after, s.after));
  return DensityMatrix::trusted(full * rho.op() * full.adjoint(), splice(rho.layout(), s.pos, out));
}

// ---------------------------------------------------------------------------
// Distances

namespace {

void require_same_dim(const DensityMatrix& rho, const DensityMatrix& sigma, const char* what) {
  if (rho.dim() != sigma.dim()) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (" +
                                std::to_string(rho.dim()) + " vs " + std::to_string(sigma.dim()) + ")");
  }
}

ComplexMatrix psd_sqrt(const ComplexMatrix& m) {
  const auto e = eig_hermitian(m);
  RealVector s = e.values.cwiseMax(0.0).cwiseSqrt();
  return e.vectors * s.asDiagonal() * e.vectors.adjoint();
}

}  // namespace

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho, sigma, "fidelity");
  const ComplexMatrix root = psd_sqrt(sigma.op());
  const ComplexMatrix inner = root * rho.op() * root;
  const RealVector ev = eigenvalues_hermitian(inner);
  double f = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) f += std::sqrt(std::max(ev(i), 0.0));
  return std::clamp(f, 0.0, 1.0);
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho, sigma, "trace_distance");
  const ComplexMatrix diff = rho.op() - sigma.op();
  return 0.5 * eigenvalues_hermitian(diff).cwiseAbs().sum();
}

PureState purify(const DensityMatrix& rho, const std::string& ref_label) {
  const auto e = eig_hermitian(rho.op());
  const int n = rho.dim();
  ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(n) * n);
  for (int i = 0; i < n; ++i) {
    const double w = std::sqrt(std::max(e.values(i), 0.0));
    if (w == 0.0) continue;
    for (int r = 0; r < n; ++r) v(r * n + i) += w * e.vectors(r, i);
  }
  Layout layout = rho.layout();
  layout.push_back({ref_label, n});
  return PureState::normalized(std::move(v), std::move(layout));
}

ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

ComplexMatrix pauli_y() {
  ComplexMatrix m(2, 2);
  m << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
  return m;
}

ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

}  // namespace sscap::qmat
