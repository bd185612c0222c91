#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "saff/linalg.hpp"
#include "saff/structure.hpp"
#include "saff/word_table.hpp"

namespace saff {

// ---- Lyapunov gap criterion ------------------------------------------------

enum class SeparationCase { i, ii };
enum class SeparationConclusion { gap_confirmed, hypotheses_fail, inconclusive };
std::string to_string(SeparationCase c);
std::string to_string(SeparationConclusion c);

struct Hypothesis {
  std::string name;  // e.g. "irreducible_2", "proximal_2", "strongly_irreducible_1"
  Verdict verdict = Verdict::unknown;
};

struct SeparationVerdict {
  SeparationCase which = SeparationCase::i;
  int k = 0;
  double s = 0.0;
  /// The gap is Lambda_j - Lambda_{j+1} with j = gap_index (one-based).
  int gap_index = 0;
  bool integer_s = false;
  std::vector<Hypothesis> hypotheses;
  /// Which strong-irreducibility alternative was accepted, e.g. "{1}" or "{2,3}"; empty if none.
  std::string strong_alternative;
  bool heuristic = false;
  bool gap_computed = false;
  double gap_estimate = 0.0;
  double gap_stderr = 0.0;
  /// n |gap_n - gap_{n-1}| for the single-block level-n estimates, a size for the truncation bias.
  double truncation_drift = 0.0;
  std::vector<double> exponents;
  int depth = 0;
  SeparationConclusion conclusion = SeparationConclusion::inconclusive;

  /// "GAP_CONFIRMED", "GAP_CONFIRMED(HEURISTIC)", "HYPOTHESES_FAIL" or "INCONCLUSIVE".
  [[nodiscard]] std::string label() const;
};

struct SeparationOptions {
  int depth = 10;
  int max_parts = 6;
  int strong_len = 4;
  int proximal_len = 6;
  double rel_tol = 1e-6;
  /// Monte-Carlo replicas, each a product of mc_blocks level-n Gibbs blocks.
  int mc_reps = 32;
  int mc_blocks = 64;
  std::uint64_t seed = 0;
  EnumerationOptions enumeration;
};

/// Checks the hypotheses of both cases of the Lyapunov-gap criterion that
/// apply at s and, where they hold, estimates the gap by Monte-Carlo under
/// i.i.d. concatenations of level-n Gibbs blocks of the phi^s-equilibrium
/// state. gap_stderr is the across-replica standard error; truncation_drift
/// reports the size of the O(1/n) truncation bias separately.
std::vector<SeparationVerdict> check_separation(const MatrixTuple& tuple, double s, const SeparationOptions& opts = {});

// ---- Max-of-three decomposition for block-diagonal tuples --------------------

struct Lemma3Report {
  double max_residual = 0.0;
  Word worst_word;
  std::size_t words = 0;
  /// How often each of the three potentials attained the maximum.
  std::array<std::size_t, 3> dominant{0, 0, 0};
};

/// For A_i = diag(b_i, C_i) and 1 < s < d-1, compares log phi^s(A_w) with the
/// maximum of log phi^s(C_w), log phi^{s-1}(|b_w|^{1/(s-1)} C_w) and
/// log || |b_w|^{s-floor(s)} (C_w)^{floor(s)} || over the given words.
Lemma3Report lemma3_identity(const std::vector<double>& b, const MatrixTuple& c, double s, const std::vector<Word>& words);

// ---- Spectral-radius fingerprints of similitudes ------------------------------

struct RhoMultiplicativityReport {
  double max_rel_defect = 0.0;
  Word worst_i;
  Word worst_j;
  std::size_t pairs = 0;
};

/// max |rho(A_i A_j) - rho(A_i) rho(A_j)| / (rho(A_i) rho(A_j)) over sampled word pairs.
RhoMultiplicativityReport rho_multiplicativity(const MatrixTuple& tuple, std::size_t pairs, int max_len,
                                               std::uint64_t seed);

/// log of rho(A^floor(s))^{1+floor(s)-s} rho(A^ceil(s))^{s-floor(s)}.
double log_rho_form(const Matrix& a, double s);

/// A_i / c_i^{1/s} with c_i the weighted spectral-radius form at s.
MatrixTuple fw_normalize(const MatrixTuple& tuple, double s);

struct FwConstancyReport {
  double max_log_deviation = 0.0;
  Word witness;
  std::size_t words = 0;
  bool exhaustive = false;
};

/// Normalises first, then max |log rho-form(A_w)| over all words up to max_len
/// (or `sample` random words when there are more).
FwConstancyReport fw_constancy(const MatrixTuple& tuple, double s, int max_len, std::size_t sample, std::uint64_t seed);

enum class SimilitudeVerdict { similitudes, not_similitudes, inconclusive };
std::string to_string(SimilitudeVerdict v);

struct SimilitudeCertificate {
  Matrix p;  // symmetric, trace d
  double residual = 0.0;
  double min_eigenvalue = 0.0;
  SimilitudeVerdict verdict = SimilitudeVerdict::inconclusive;
  int null_dim = 0;
  int iterations = 0;
  std::string method;  // "null-space" or "cesaro"
};

/// Looks for an inner product in which every |det A_i|^{-1/d} A_i is an isometry.
SimilitudeCertificate detect_similitude_structure(const MatrixTuple& tuple, int iters = 10000, double tol = 1e-8);

}  // namespace saff
