#pragma once

// Dense complex linear algebra over labeled tensor-product spaces.
//
// A DensityMatrix or PureState carries an ordered list of (label, dimension)
// pairs; subsystems are addressed by label everywhere (partial traces,
// local isometries, permutations). All dimensions in this library are small
// (a few hundred at most), so storage is dense.

#include <complex>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace sscap::qmat {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

struct Subsystem {
  std::string label;
  int dim = 1;

  bool operator==(const Subsystem&) const = default;
};

using Layout = std::vector<Subsystem>;

/// Product of all subsystem dimensions.
int total_dim(const Layout& layout);

/// Position of `label` in `layout`; throws std::invalid_argument if absent.
std::size_t index_of(const Layout& layout, const std::string& label);

/// Human-readable "A(2)xB(4)" rendering, used in error messages.
std::string describe(const Layout& layout);

// Tolerances shared by the state invariants.
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kPsdTol = 1e-10;
inline constexpr double kNormTol = 1e-12;

/// Largest entrywise |M - M^dagger|.
double hermitian_defect(const ComplexMatrix& m);

class PureState;

/// Hermitian, PSD, unit-trace operator on a labeled product space.
class DensityMatrix {
 public:
  /// Validates every invariant; throws std::invalid_argument on violation.
  DensityMatrix(ComplexMatrix op, Layout layout);

  /// Single-subsystem convenience constructor.
  DensityMatrix(ComplexMatrix op, std::string label);

  const ComplexMatrix& op() const { return op_; }
  const Layout& layout() const { return layout_; }
  int dim() const { return static_cast<int>(op_.rows()); }

  /// Same operator, subsystems renamed in order.
  DensityMatrix relabeled(const std::vector<std::string>& labels) const;

  /// Skips the spectral checks (shape is still checked). For results of
  /// CPTP operations applied to states that were already validated.
  static DensityMatrix trusted(ComplexMatrix op, Layout layout);

  static DensityMatrix maximally_mixed(int dim, std::string label);
  static DensityMatrix diagonal(std::span<const double> probs, std::string label);

 private:
  DensityMatrix(ComplexMatrix op, Layout layout, int /*unchecked*/);

  ComplexMatrix op_;
  Layout layout_;
};

/// Unit vector on a labeled product space.
class PureState {
 public:
  PureState(ComplexVector amplitudes, Layout layout);

  /// Normalizes `amplitudes` first; throws if the norm is zero.
  static PureState normalized(ComplexVector amplitudes, Layout layout);

  /// |Phi+> = sum_i |ii> / sqrt(d) on (a_label, b_label).
  static PureState max_entangled(int dim, std::string a_label, std::string b_label);

  /// Computational basis vector |index> on a single subsystem.
  static PureState basis(int dim, int index, std::string label);

  const ComplexVector& amplitudes() const { return amps_; }
  const Layout& layout() const { return layout_; }
  int dim() const { return static_cast<int>(amps_.size()); }

  DensityMatrix density() const;
  PureState relabeled(const std::vector<std::string>& labels) const;

 private:
  ComplexVector amps_;
  Layout layout_;
};

struct EigenDecomposition {
  RealVector values;      // descending
  ComplexMatrix vectors;  // columns match `values`
};

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector kron(const ComplexVector& a, const ComplexVector& b);

/// Tensor product of states; layouts are concatenated and must not share labels.
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);
PureState tensor(const PureState& a, const PureState& b);

/// Spectral decomposition of a Hermitian matrix. Throws std::invalid_argument
/// naming the largest asymmetry when |M - M^dagger| exceeds 1e-10.
EigenDecomposition eig_hermitian(const ComplexMatrix& m);

/// Eigenvalues only, descending.
RealVector eigenvalues_hermitian(const ComplexMatrix& m);

/// Reduced state on `keep`; kept subsystems stay in their original order.
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<std::string>& keep);

/// Reduced state of a pure state, computed without forming the full projector.
DensityMatrix partial_trace(const PureState& psi, const std::vector<std::string>& keep);

/// Reorders subsystems to `order` (a permutation of the layout labels).
DensityMatrix permute(const DensityMatrix& rho, const std::vector<std::string>& order);
PureState permute(const PureState& psi, const std::vector<std::string>& order);

/// Applies `op` (rows = product of `out` dims, cols = dim of `label`) to the
/// subsystem `label`, replacing it in place by the subsystems `out`.
/// The operator must be an isometry for the result to remain normalized.
PureState apply_local(const PureState& psi, const std::string& label,
                      const ComplexMatrix& op, const Layout& out);
DensityMatrix apply_local(const DensityMatrix& rho, const std::string& label,
                          const ComplexMatrix& op, const Layout& out);

/// F = Tr sqrt(sqrt(sigma) rho sqrt(sigma)), clamped to [0, 1].
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

/// D = (1/2) Tr |rho - sigma|.
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Purification with a reference of full dimension, appended as `ref_label`.
PureState purify(const DensityMatrix& rho, const std::string& ref_label);

/// Pauli matrices.
ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

}  // namespace sscap::qmat
