#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "saff/word.hpp"

namespace saff {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Default floor on |det| (after scaling each row by its largest entry)
/// below which a matrix is treated as singular.
inline constexpr double kDeterminantFloor = 1e-300;

/// A tuple (A_1, ..., A_N) of invertible d x d real matrices.
class MatrixTuple {
 public:
  MatrixTuple() = default;
  explicit MatrixTuple(std::vector<Matrix> matrices, double det_floor = kDeterminantFloor);

  [[nodiscard]] int dim() const { return dim_; }
  [[nodiscard]] int size() const { return static_cast<int>(matrices_.size()); }
  [[nodiscard]] const Matrix& operator[](int i) const { return matrices_[static_cast<std::size_t>(i)]; }
  [[nodiscard]] const std::vector<Matrix>& matrices() const { return matrices_; }

  /// Tuple of k-th exterior powers.
  [[nodiscard]] MatrixTuple exterior(int k) const;
  /// X * A_i * X^{-1} for every generator.
  [[nodiscard]] MatrixTuple conjugated(const Matrix& x) const;

 private:
  int dim_ = 0;
  std::vector<Matrix> matrices_;
};

/// Log singular values of a (possibly astronomically scaled) matrix:
/// alpha_j = exp(logsv[j] + logscale), logsv non-increasing with logsv[0] = 0.
struct LogSVResult {
  std::vector<double> logsv;
  double logscale = 0.0;

  [[nodiscard]] double log_singular_value(std::size_t j) const { return logsv[j] + logscale; }
  /// log(alpha_1 ... alpha_k); k = 0 gives 0.
  [[nodiscard]] double log_exterior_norm(int k) const;
};

/// Singular values in decreasing order (two-sided Jacobi SVD).
std::vector<double> singular_values(const Matrix& a);
/// Largest singular value.
double top_singular_value(const Matrix& a);
double spectral_radius(const Matrix& a);
/// Absolute values of the eigenvalues, decreasing; complex pairs appear twice.
std::vector<double> eigen_moduli(const Matrix& a);

std::int64_t binomial(int n, int k);
/// All k-subsets of {0..d-1} in lexicographic order; this is the basis order
/// e_{i_1} ^ ... ^ e_{i_k} used for exterior powers throughout.
std::vector<std::vector<int>> index_subsets(int d, int k);
/// Matrix of A^k (k-th compound matrix) in the lexicographic basis; k = 0 gives [1].
Matrix exterior_power(const Matrix& a, int k);

/// log|det A|; -inf for a singular matrix.
double log_abs_det(const Matrix& a);

/// Throws InputError on non-finite entries or a non-square matrix.
void require_finite_square(const Matrix& a, const char* what);

/// Exterior powers of every generator, precomputed once per tuple.
class ExteriorTuple {
 public:
  explicit ExteriorTuple(const MatrixTuple& tuple);

  [[nodiscard]] int dim() const { return dim_; }
  [[nodiscard]] int size() const { return size_; }
  /// A_i^k for 1 <= k <= d-1.
  [[nodiscard]] const Matrix& power(int k, int i) const {
    return powers_[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)];
  }
  [[nodiscard]] double log_abs_det(int i) const { return log_abs_det_[static_cast<std::size_t>(i)]; }

 private:
  int dim_ = 0;
  int size_ = 0;
  std::vector<std::vector<Matrix>> powers_;
  std::vector<double> log_abs_det_;
};

/// Running product A_w of a word, kept as renormalised exterior powers.
///
/// For every 1 <= k <= d-1 the accumulator stores (A_w)^k scaled by an exact
/// power of two, so log ||(A_w)^k|| = log(alpha_1 ... alpha_k) is accurate to
/// working precision for arbitrarily long words, including the small singular
/// values that a plain product loses. log|det A_w| is summed directly.
class ProductAccumulator {
 public:
  explicit ProductAccumulator(const ExteriorTuple& ext);

  void reset();
  /// w <- w s, i.e. A_w <- A_s A_w.
  void push(int symbol);
  [[nodiscard]] int length() const { return length_; }

  /// log ||(A_w)^k||, 0 <= k <= d.
  [[nodiscard]] double log_exterior_norm(int k) const;
  /// log rho((A_w)^k) = log(lambda_1 ... lambda_k), 0 <= k <= d.
  [[nodiscard]] double log_exterior_spectral_radius(int k) const;
  [[nodiscard]] LogSVResult logsv() const;
  /// Normalised representative of (A_w)^k and its base-2 exponent.
  [[nodiscard]] const Matrix& scaled_power(int k) const { return prod_[static_cast<std::size_t>(k)]; }
  [[nodiscard]] std::int64_t exponent2(int k) const { return exp2_[static_cast<std::size_t>(k)]; }

 private:
  const ExteriorTuple* ext_;
  int length_ = 0;
  std::vector<Matrix> prod_;
  std::vector<Matrix> scratch_;
  std::vector<std::int64_t> exp2_;
  double log_det_ = 0.0;
};

/// Log singular values of A_w = A_{w_n} ... A_{w_1}.
LogSVResult word_product_logsv(const MatrixTuple& tuple, const Word& w);
LogSVResult word_product_logsv(const ExteriorTuple& ext, const Word& w);

/// A_w with the overall scale split off: A_w = 2^exponent2 * matrix.
struct ScaledMatrix {
  Matrix matrix;
  std::int64_t exponent2 = 0;
};
ScaledMatrix word_product(const MatrixTuple& tuple, const Word& w);

}  // namespace saff
