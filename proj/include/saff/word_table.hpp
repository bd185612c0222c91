#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "saff/linalg.hpp"
#include "saff/potentials.hpp"

namespace saff {

inline constexpr std::uint64_t kDefaultWordBudget = std::uint64_t{1} << 24;

struct EnumerationOptions {
  int threads = 1;
  std::uint64_t budget = kDefaultWordBudget;
};

/// N^m, or UINT64_MAX on overflow.
std::uint64_t word_count(int alphabet, int length);

/// Throws BudgetError if N^depth exceeds the budget.
void require_budget(int alphabet, int depth, std::uint64_t budget);

/// log ||(A_w)^k|| for every word of every length 1..depth.
///
/// Words of length m are stored in lexicographic order (index = base-N digits,
/// first symbol most significant), so the extensions of a word form one
/// contiguous block at every deeper level. The enumeration is split into
/// fixed prefix blocks that are processed independently; each entry is
/// produced by the same sequence of operations whatever the thread count.
class WordTable {
 public:
  WordTable(const MatrixTuple& tuple, int depth, const EnumerationOptions& opts = {});

  [[nodiscard]] int depth() const { return depth_; }
  [[nodiscard]] int alphabet() const { return alphabet_; }
  [[nodiscard]] int dim() const { return dim_; }
  [[nodiscard]] std::size_t count(int m) const;
  [[nodiscard]] int threads() const { return threads_; }

  /// log ||(A_w)^k|| over all words of length m, 1 <= k <= d.
  [[nodiscard]] std::span<const double> column(int m, int k) const;

  /// log Phi(w) for all words of length m.
  void potential(const CompiledPotential& pot, int m, std::vector<double>& out) const;
  /// One affine form (coefficients may be negative) for all words of length m.
  void form_values(const LinearForm& form, int m, std::vector<double>& out) const;

 private:
  int depth_;
  int alphabet_;
  int dim_;
  int threads_;
  // columns_[m][k-1], m = 1..depth (index 0 unused)
  std::vector<std::vector<std::vector<double>>> columns_;
};

/// Deterministic reductions over long vectors: fixed-size chunks reduced with
/// the active kernels and combined in chunk order.
double log_sum_exp(std::span<const double> x, int threads = 1);

struct Expectation {
  double log_partition = 0.0;  // log sum_i exp(x_i)
  double mean = 0.0;           // sum_i nu_i y_i with nu_i = exp(x_i - log_partition)
};
Expectation gibbs_expectation(std::span<const double> x, std::span<const double> y, int threads = 1);

}  // namespace saff
