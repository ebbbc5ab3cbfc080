#pragma once

// Reproducible sampling of states and channels.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the
// standard. Standard-library distributions are implementation-defined, so
// uniform and Gaussian variates are derived here from the raw 64-bit words
// (53-bit mantissa uniforms, Box-Muller normals). A given seed therefore
// produces the same samples on every conforming toolchain.

#include <cstdint>
#include <random>
#include <string>

#include "sscap/channels.hpp"
#include "sscap/qmat.hpp"

namespace sscap {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal.
  double normal();

  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) { return engine_() % n; }

  /// Independent child stream, for restarts that must not share state.
  Rng fork() { return Rng(engine_()); }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

namespace random {

/// i.i.d. complex Gaussian entries (Ginibre ensemble).
qmat::ComplexMatrix ginibre(int rows, int cols, Rng& rng);

/// Haar-random unitary (QR of a Ginibre matrix with phase fix).
qmat::ComplexMatrix unitary(int dim, Rng& rng);

/// Random isometry dim_in -> dim_out (dim_out >= dim_in).
qmat::ComplexMatrix isometry(int dim_out, int dim_in, Rng& rng);

/// Random pure state on `layout`.
qmat::PureState pure_state(const qmat::Layout& layout, Rng& rng);

/// Full-rank mixed state G G^dagger / Tr(G G^dagger) on `layout`.
qmat::DensityMatrix density(const qmat::Layout& layout, Rng& rng);

/// Random channel from a random Stinespring isometry with `kraus_count` branches.
channels::Channel channel(int dim_in, int dim_out, int kraus_count, Rng& rng);

}  // namespace random
}  // namespace sscap
