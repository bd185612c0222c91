#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "saff/linalg.hpp"
#include "saff/pressure.hpp"

namespace saff {

/// Bernoulli measure on the full shift: i.i.d. symbols with probabilities p.
class BernoulliMeasure {
 public:
  /// Throws InputError unless p sums to 1 within 1e-12 with every entry
  /// positive (or non-negative when `allow_zero`, for degenerate sampling).
  explicit BernoulliMeasure(std::vector<double> p, bool allow_zero = false);
  static BernoulliMeasure uniform(int n);

  [[nodiscard]] int size() const { return static_cast<int>(p_.size()); }
  [[nodiscard]] const std::vector<double>& p() const { return p_; }
  [[nodiscard]] const std::vector<double>& cdf() const { return cdf_; }
  /// -sum p_i log p_i
  [[nodiscard]] double entropy() const;

 private:
  std::vector<double> p_;
  std::vector<double> cdf_;
};

enum class LyapunovMethod { exact_diagonal, monte_carlo, gibbs_level_n };
std::string to_string(LyapunovMethod m);

struct LyapunovSpectrum {
  std::vector<double> exponents;  // non-increasing
  std::vector<double> standard_error;  // per exponent
  LyapunovMethod method = LyapunovMethod::monte_carlo;
  int horizon = 0;
  int reps = 0;
};

struct LyapunovOptions {
  int threads = 1;
  /// Use the closed form when every generator is diagonal.
  bool allow_exact = true;
};

/// Lyapunov spectrum of A under a Bernoulli measure: exact for diagonal
/// tuples, otherwise Monte-Carlo over `reps` independent symbol sequences of
/// length `horizon`. Replica r draws from SplitMix64::stream(seed, r).
LyapunovSpectrum lyapunov_spectrum(const MatrixTuple& tuple, const BernoulliMeasure& mu, int horizon, int reps,
                                   std::uint64_t seed, const LyapunovOptions& opts = {});

/// Exponents under the level-n Gibbs approximation of an equilibrium state.
/// standard_error holds |Lambda_j(nu_n) - Lambda_j(nu_{n-1})| as a convergence proxy.
LyapunovSpectrum gibbs_lyapunov(const WordTable& table, const PotentialSpec& spec, int depth);

}  // namespace saff
