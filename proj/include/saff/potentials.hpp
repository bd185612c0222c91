#pragma once

#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "saff/linalg.hpp"
#include "saff/word.hpp"

namespace saff {

// Potential vocabulary. Every variant is submultiplicative by construction.

/// phi^s(A_w).
struct SVF {
  double s = 0.0;
};
/// ||(A_w)^k||^t.
struct NormPower {
  double t = 1.0;
  int k = 1;
};
/// prod_m ||(A_w)^{k_m}||^{e_m}, all e_m > 0.
struct WeightedProduct {
  std::vector<std::pair<int, double>> terms;  // (k, exponent)
};
/// (prod_{symbols of w} weight_i) * phi^s(A_w).
struct ScaledSVF {
  double s = 0.0;
  std::vector<double> weights;
};
class PotentialSpec;
/// Pointwise maximum of the member potentials.
struct MaxOf {
  std::vector<PotentialSpec> members;
};

class PotentialSpec {
 public:
  using Variant = std::variant<SVF, NormPower, WeightedProduct, MaxOf, ScaledSVF>;

  /// Validating constructors; each throws InputError on an invalid parameter.
  static PotentialSpec svf(double s);
  static PotentialSpec norm_power(double t, int k);
  static PotentialSpec weighted_product(std::vector<std::pair<int, double>> terms);
  static PotentialSpec max_of(std::vector<PotentialSpec> members);
  static PotentialSpec scaled_svf(double s, std::vector<double> weights);

  [[nodiscard]] const Variant& variant() const { return v_; }
  [[nodiscard]] std::string describe() const;

 private:
  explicit PotentialSpec(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

/// log Phi(w) as max over affine forms in log ||(A_w)^k||, k = 0..d, plus an
/// optional per-symbol log weight. All variants compile to this shape.
struct LinearForm {
  std::vector<double> coeff;              // size d+1
  std::vector<double> symbol_log_weight;  // empty, or size N
};

class CompiledPotential {
 public:
  CompiledPotential(const PotentialSpec& spec, int dim, int alphabet);

  [[nodiscard]] int dim() const { return dim_; }
  [[nodiscard]] const std::vector<LinearForm>& forms() const { return forms_; }
  [[nodiscard]] bool has_symbol_weights() const;

  /// `ext_log` holds log ||(A_w)^k|| (or log rho((A_w)^k)) for k = 0..d.
  [[nodiscard]] double evaluate(std::span<const double> ext_log, const Word& w) const;

 private:
  int dim_;
  std::vector<LinearForm> forms_;
};

/// Coefficients c_k with log phi^s(A) = sum_k c_k log ||A^k||, k = 0..d.
std::vector<double> svf_coefficients(double s, int dim);

/// phi^s(A) from the singular values.
double svf(const Matrix& a, double s);
double log_svf(const Matrix& a, double s);
/// phi^s(A) = ||A^floor(s)||^{1+floor(s)-s} ||A^ceil(s)||^{s-floor(s)}, 0 < s <= d.
double svf_via_exterior(const Matrix& a, double s);

/// log Phi(w), computed through the stabilised word product.
double eval_potential(const PotentialSpec& spec, const MatrixTuple& tuple, const Word& w);

struct DualityTransformResult {
  MatrixTuple tuple;
  double s_dual = 0.0;
};

/// A_i' = |det A_i|^{1/(d-s)} (A_i^{-1})^T, so that phi^{d-s}(A'_w) = phi^s(A_w).
DualityTransformResult dualize(const MatrixTuple& tuple, double s);

}  // namespace saff
