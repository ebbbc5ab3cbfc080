#pragma once

// Entropic rate quantities: von Neumann entropy, coherent and mutual
// information, the single-letter coherent-information optimizer, and the
// symmetric-side-channel rate function with its supporting constructions.
//
// All entropies are in bits and are computed from eigenvalues of reduced
// states obtained by partial trace.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sscap/channels.hpp"
#include "sscap/qmat.hpp"

namespace sscap::coherent {

using channels::Channel;
using qmat::DensityMatrix;
using qmat::PureState;

using Labels = std::vector<std::string>;

// Register names used by the rate-function inputs and outputs.
inline const std::string kRef = "A";         // reference
inline const std::string kInput = "A'";      // channel input
inline const std::string kSide = "F";        // side register
inline const std::string kSidePrime = "F'";  // purifying partner of F
inline const std::string kOut = "B";
inline const std::string kEnv = "E";
inline const std::string kTop = "top";       // symmetric pair produced by `symmetrize`
inline const std::string kBottom = "bot";

/// Eigenvalues with |x| < 1e-12 count as zero.
inline constexpr double kEigenClamp = 1e-12;

/// -sum x log2 x over a spectrum, with clamping and 0 log 0 = 0.
double entropy_of_spectrum(const qmat::RealVector& spectrum);

double entropy(const DensityMatrix& rho);

/// S of the reduced state on `labels` (all of them if empty).
double entropy(const DensityMatrix& rho, const Labels& labels);
double entropy(const PureState& psi, const Labels& labels);

using EntropyReport = std::map<std::string, double>;

/// Entropy of each requested subsystem group, keyed by the concatenated labels.
EntropyReport entropy_report(const DensityMatrix& rho, const std::vector<Labels>& groups);

/// I(A>B) = S(B) - S(AB).
double coherent_information(const DensityMatrix& rho, const Labels& a, const Labels& b);
double coherent_information(const PureState& psi, const Labels& a, const Labels& b);

/// I(A;B) = S(A) + S(B) - S(AB).
double mutual_information(const DensityMatrix& rho, const Labels& a, const Labels& b);

/// I(A>B) of (id (x) U)|phi_rho>, with phi_rho a purification of `input`
/// and U the channel's Stinespring isometry.
double channel_coherent_information(const Channel& ch, const DensityMatrix& input);

/// I(A>B) of (id (x) U)|psi> for a purification |psi> on (kRef, kInput).
double channel_coherent_information(const Channel& ch, const PureState& purification);

struct Q1Options {
  int restarts = 8;
  double tol = 1e-10;          // simplex value spread
  int max_evaluations = 40000; // per restart
  std::uint64_t seed = 0x9e3779b97f4a7c15ULL;
  bool pauli_sweep = true;     // add the diagonal-input sweep for qubit Pauli channels
};

struct Q1Result {
  double value = 0.0;
  DensityMatrix argmax;
};

/// Multi-start maximization of the channel coherent information over input
/// states. Reports the best value found; no global optimality guarantee.
Q1Result q1_optimize(const Channel& ch, const Q1Options& opts = {});

/// True for qubit channels whose Choi state is diagonal in the Bell basis.
bool is_pauli_diagonal(const Channel& ch, double tol = 1e-12);

/// Pure state on (kRef, kInput, kSide) together with the channel on kInput.
struct SsRateInput {
  PureState state;
  Channel channel;
};

/// (1/2)[I(A>BF) - I(A>EF)] for omega = (1 (x) U_N) rho (1 (x) U_N)^dagger.
double ss_rate(const SsRateInput& input);

/// The state (1 (x) U_N)|phi> on A, B, E, F (and any extra registers of phi).
PureState dilate(const PureState& state, const Channel& ch, const std::string& input_label = kInput,
                 const std::string& out_label = kOut, const std::string& env_label = kEnv);

/// From |phi> on (A, A', F, F'), builds
///   (|phi>|01>_{GG'} + SWAP_{FF'}|phi>|10>_{GG'}) / sqrt(2)
/// on (A, A', top = FG, bot = F'G'), which is invariant under top <-> bot.
PureState symmetrize(const PureState& phi);

/// Exchanges two registers of equal dimension.
PureState swap_registers(const PureState& psi, const std::string& a, const std::string& b);

struct SplitTerms {
  double lhs = 0.0;   // I(A>B1B2F) - I(A>E1E2F)
  double rhs1 = 0.0;  // I(A>B1F1) - I(A>E1F1), F1 = B2F
  double rhs2 = 0.0;  // I(A>B2F2) - I(A>E2F2), F2 = E1F
};

// Registers for `additivity_split_check`.
inline const std::string kInput1 = "A1";
inline const std::string kInput2 = "A2";

/// Evaluates both sides of the telescoping split for rho on (A, A1, A2, F).
SplitTerms additivity_split_check(const Channel& ch1, const Channel& ch2, const DensityMatrix& rho);

/// q1(n (x) m) - q1(n): a lower bound on how much Q1 m can add to n.
/// Optimizer noise can make it negative; it is reported unclamped.
double value_added_probe(const Channel& n, const Channel& m, const Q1Options& opts = {});

}  // namespace sscap::coherent
