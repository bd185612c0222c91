#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "saff/linalg.hpp"
#include "saff/potentials.hpp"
#include "saff/word_table.hpp"

namespace saff {

struct PressureOptions {
  EnumerationOptions enumeration;
  /// Every word up to this length is a periodic candidate (shortened if the
  /// total would exceed max_periodic).
  int periodic_len = 6;
  std::uint64_t max_periodic = std::uint64_t{1} << 16;
  /// Extra random periodic candidates with lengths in (periodic_len, random_max_len].
  int random_words = 256;
  int random_max_len = 16;
  std::uint64_t seed = 0;
};

/// log rho((A_w)^k), k = 0..d, for a fixed list of periodic candidate words.
class PeriodicCandidates {
 public:
  PeriodicCandidates(const MatrixTuple& tuple, const PressureOptions& opts);

  struct Best {
    double value = 0.0;  // max over candidates of (1/|w|) log Phi_rho(w)
    Word witness;
  };
  [[nodiscard]] Best best(const CompiledPotential& pot) const;
  [[nodiscard]] std::size_t size() const { return words_.size(); }

 private:
  std::vector<Word> words_;
  std::vector<std::vector<double>> rho_log_;
};

struct PressureBracket {
  std::string potential;
  int depth = 0;
  double upper = 0.0;
  double lower = 0.0;
  Word lower_witness;
  /// (1/m) log sum_{|w|=m} Phi(w), m = 1..depth; upper is their minimum.
  std::vector<double> upper_by_depth;
  /// Lower bound from periodic orbits (lower_witness attains it).
  double lower_periodic = 0.0;
  /// Lower bound from the supermultiplicative minorant at the deepest level.
  double lower_minorant = 0.0;
  std::size_t periodic_candidates = 0;
};

/// Bracket for P(Phi) at truncation depth n. Upper bounds come from
/// subadditivity, lower bounds from periodic orbits and from the
/// supermultiplicative minorant in which every log ||(A_w)^k|| is replaced by
/// the log of the k smallest singular values.
PressureBracket pressure_bracket(const MatrixTuple& tuple, const PotentialSpec& spec, int depth,
                                 const PressureOptions& opts = {});
PressureBracket pressure_bracket(const WordTable& table, const PeriodicCandidates& candidates,
                                 const PotentialSpec& spec);

struct AffinityInterval {
  double s_lo = 0.0;
  double s_hi = 0.0;
  double width = 0.0;
  int depth = 0;
  double tol = 0.0;
  int iterations = 0;
};

/// Interval containing the zero of s -> P(A, phi^s), clamped to [0, d].
AffinityInterval affinity_dimension(const MatrixTuple& tuple, int depth, double tol, const PressureOptions& opts = {});

struct GibbsApprox {
  std::string potential;
  int depth = 0;
  /// Normalised log-weights of the words of length n, lexicographic order.
  std::vector<double> log_weights;
  double pressure = 0.0;  // (1/n) log sum Phi
  double entropy_estimate = 0.0;
  double lyapunov_estimate = 0.0;
  double pressure_defect = 0.0;
  /// Gibbs-ratio diagnostic: for m = 1..n, max_{|w|=m} |log nu_n([w]) - (log Phi(w) - m P)|.
  std::vector<double> gibbs_constant;
  /// max_{|w|=n-1} |log nu_n([w]) - log nu_{n-1}(w)|; 0 when n = 1.
  double marginal_defect = 0.0;
  /// Lyapunov exponents of A under nu_n: sum nu_n(w) log alpha_j(A_w) / n.
  std::vector<double> exponents;
};

GibbsApprox gibbs_approx(const MatrixTuple& tuple, const PotentialSpec& spec, int depth,
                         const EnumerationOptions& opts = {});
GibbsApprox gibbs_approx(const WordTable& table, const PotentialSpec& spec, int depth);

struct QuasimultOptions {
  int bridge_len = 2;
  std::size_t max_pairs = 4096;
  std::uint64_t seed = 0;
  double threshold = 1e-3;
};

struct QuasimultReport {
  double delta_hat = 0.0;
  Word worst_i;
  Word worst_j;
  /// Bridges that attain the maximum for at least one pair; an empty Word is the empty bridge.
  std::vector<Word> bridges_used;
  std::size_t bridge_count = 0;
  std::size_t pairs_tested = 0;
  bool exhaustive = false;
  /// Pairs whose best ratio falls below the threshold.
  std::size_t violations = 0;
  double threshold = 0.0;
};

/// Empirical quasimultiplicativity constant min_{i,j} max_{k in F} Phi(ikj) / (Phi(i) Phi(j)),
/// F = {empty word} plus all words up to bridge_len.
QuasimultReport quasimult_diagnostic(const MatrixTuple& tuple, const PotentialSpec& spec, int n_probe,
                                     const QuasimultOptions& opts = {});

}  // namespace saff
