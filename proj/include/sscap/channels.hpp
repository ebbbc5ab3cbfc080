#pragma once

// CPTP maps in Kraus form, their dilations, and the channel families used by
// the depolarizing-channel bounds.

#include <string>
#include <vector>

#include "sscap/qmat.hpp"

namespace sscap::channels {

using qmat::ComplexMatrix;
using qmat::DensityMatrix;

inline constexpr double kTraceTol = 1e-10;

/// A trace-preserving completely positive map N(rho) = sum_k A_k rho A_k^dagger.
/// Kraus families are not unique; compare channels through `choi`.
class Channel {
 public:
  /// Throws std::invalid_argument if a Kraus operator has the wrong shape or
  /// sum_k A_k^dagger A_k differs from the identity by more than 1e-10.
  Channel(std::vector<ComplexMatrix> kraus, int dim_in, int dim_out, std::string name);

  const std::vector<ComplexMatrix>& kraus() const { return kraus_; }
  int dim_in() const { return dim_in_; }
  int dim_out() const { return dim_out_; }
  int kraus_count() const { return static_cast<int>(kraus_.size()); }
  const std::string& name() const { return name_; }

  Channel renamed(std::string name) const;

 private:
  std::vector<ComplexMatrix> kraus_;
  int dim_in_;
  int dim_out_;
  std::string name_;
};

/// Isometry U : in -> B (x) E, rows ordered with B as the leading factor.
struct Isometry {
  ComplexMatrix matrix;
  int dim_b = 1;
  int dim_e = 1;

  int dim_in() const { return static_cast<int>(matrix.cols()); }
};

/// Output of a single-subsystem input is labeled `out_label`.
DensityMatrix apply(const Channel& ch, const DensityMatrix& rho, const std::string& out_label = "B");

/// Acts on subsystem `label` of a multipartite state; the output keeps the
/// position and takes `out_label` (defaults to `label`).
DensityMatrix apply_to(const Channel& ch, const DensityMatrix& rho, const std::string& label,
                       const std::string& out_label = "");

/// U = sum_k A_k (x) |k>_E, so dim_E equals the Kraus count.
Isometry stinespring(const Channel& ch);

/// The channel to the environment of `stinespring(ch)`.
Channel complementary(const Channel& ch);

/// Normalized Choi state (id (x) ch)(|Phi+><Phi+|) with layout R(dim_in) x B(dim_out).
DensityMatrix choi(const Channel& ch);

/// Frobenius distance between Choi states.
double choi_distance(const Channel& a, const Channel& b);

Channel tensor(const Channel& a, const Channel& b);

/// a o b (b acts first). Requires a.dim_in() == b.dim_out().
Channel compose(const Channel& a, const Channel& b);

/// sum_i w_i ch_i; Kraus family is the union of sqrt(w_i)-scaled families.
Channel mix(const std::vector<Channel>& channels, const std::vector<double>& weights);

// ---------------------------------------------------------------------------
// Builders

Channel identity(int dim);
Channel unitary(const ComplexMatrix& u, std::string name = "unitary");

/// (1-p) rho + (p/3)(X rho X + Y rho Y + Z rho Z).
Channel depolarizing(double p);

/// (1-px-py-pz) rho + px X rho X + py Y rho Y + pz Z rho Z.
Channel pauli_channel(double px, double py, double pz);

enum class Axis { X, Y, Z };

/// (1-p) rho + p P rho P for the Pauli P along `axis`.
Channel dephasing_axis(Axis axis, double p);

/// Kraus operators A0 = diag(1, sqrt(1-gamma)), A1 = sqrt(gamma)|0><1|.
Channel amplitude_damping(double gamma);

/// Input C^{d(d+1)/2} is mapped by V_d onto the symmetric subspace of
/// T (x) P (both d-dimensional), then P is traced out. Basis order: pairs
/// (i, j) with i <= j, lexicographic.
Channel symmetric_side_channel(int d);

/// The isometry V_d into T (x) P used by `symmetric_side_channel`.
Isometry symmetric_embedding(int d);

// ---------------------------------------------------------------------------
// Degradability probe

struct DegradabilityOptions {
  int max_iters = 5000;
  double tol = 1e-8;
  int restarts = 5;
  unsigned long long seed = 0x5eedULL;
};

struct DegradabilityResult {
  double residual = 0.0;        // best Frobenius distance found
  bool hit_iteration_limit = false;
  int iterations = 0;           // total over restarts
  ComplexMatrix degrading_choi;  // normalized Choi matrix of the best map B -> E
};

/// min over CPTP D of || choi(D o ch) - choi(complementary(ch)) ||_F,
/// approximated by projected gradient descent on D's Choi matrix. A value
/// near zero certifies approximate degradability; a large value is
/// inconclusive.
DegradabilityResult degradability_residual(const Channel& ch, const DegradabilityOptions& opts = {});

}  // namespace sscap::channels
