#include "saff/potentials.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "saff/error.hpp"

namespace saff {

namespace {

void require_nonnegative_s(double s, const char* what) {
  if (!std::isfinite(s) || s < 0.0) throw InputError(std::string(what) + ": s must be finite and >= 0");
}

void append_forms(const PotentialSpec& spec, int dim, int alphabet, std::vector<LinearForm>& out) {
  const auto check_k = [dim](int k) {
    if (k < 1 || k > dim) {
      throw InputError("potential: exterior degree k=" + std::to_string(k) + " does not fit dimension d=" +
                       std::to_string(dim));
    }
  };
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        LinearForm form;
        form.coeff.assign(static_cast<std::size_t>(dim) + 1, 0.0);
        if constexpr (std::is_same_v<T, SVF>) {
          form.coeff = svf_coefficients(v.s, dim);
          out.push_back(std::move(form));
        } else if constexpr (std::is_same_v<T, NormPower>) {
          check_k(v.k);
          form.coeff[static_cast<std::size_t>(v.k)] = v.t;
          out.push_back(std::move(form));
        } else if constexpr (std::is_same_v<T, WeightedProduct>) {
          for (const auto& [k, e] : v.terms) {
            check_k(k);
            form.coeff[static_cast<std::size_t>(k)] += e;
          }
          out.push_back(std::move(form));
        } else if constexpr (std::is_same_v<T, ScaledSVF>) {
          if (static_cast<int>(v.weights.size()) != alphabet) {
            throw InputError("potential: ScaledSVF has " + std::to_string(v.weights.size()) + " weights for " +
                             std::to_string(alphabet) + " maps");
          }
          form.coeff = svf_coefficients(v.s, dim);
          form.symbol_log_weight.reserve(v.weights.size());
          for (double w : v.weights) form.symbol_log_weight.push_back(std::log(w));
          out.push_back(std::move(form));
        } else {
          for (const PotentialSpec& m : v.members) append_forms(m, dim, alphabet, out);
        }
      },
      spec.variant());
}

}  // namespace

PotentialSpec PotentialSpec::svf(double s) {
  require_nonnegative_s(s, "SVF");
  return PotentialSpec(SVF{s});
}

PotentialSpec PotentialSpec::norm_power(double t, int k) {
  if (!std::isfinite(t) || t <= 0.0) throw InputError("NormPower: t must be > 0");
  if (k < 1) throw InputError("NormPower: exterior degree k must be >= 1");
  return PotentialSpec(NormPower{t, k});
}

PotentialSpec PotentialSpec::weighted_product(std::vector<std::pair<int, double>> terms) {
  if (terms.empty()) throw InputError("WeightedProduct: term list is empty");
  for (const auto& [k, e] : terms) {
    if (k < 1) throw InputError("WeightedProduct: exterior degree k must be >= 1");
    if (!std::isfinite(e) || e <= 0.0) throw InputError("WeightedProduct: exponents must be > 0");
  }
  return PotentialSpec(WeightedProduct{std::move(terms)});
}

PotentialSpec PotentialSpec::max_of(std::vector<PotentialSpec> members) {
  if (members.empty()) throw InputError("MaxOf: member list is empty");
  return PotentialSpec(MaxOf{std::move(members)});
}

PotentialSpec PotentialSpec::scaled_svf(double s, std::vector<double> weights) {
  require_nonnegative_s(s, "ScaledSVF");
  if (weights.empty()) throw InputError("ScaledSVF: weight list is empty");
  for (double w : weights) {
    if (!std::isfinite(w) || w <= 0.0) throw InputError("ScaledSVF: weights must be finite and > 0");
  }
  return PotentialSpec(ScaledSVF{s, std::move(weights)});
}

std::string PotentialSpec::describe() const {
  std::ostringstream os;
  os.precision(17);
  std::visit(
      [&os](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, SVF>) {
          os << "SVF(s=" << v.s << ")";
        } else if constexpr (std::is_same_v<T, NormPower>) {
          os << "NormPower(t=" << v.t << ",k=" << v.k << ")";
        } else if constexpr (std::is_same_v<T, WeightedProduct>) {
          os << "WeightedProduct(";
          for (std::size_t i = 0; i < v.terms.size(); ++i) {
            os << (i ? "," : "") << "k" << v.terms[i].first << "^" << v.terms[i].second;
          }
          os << ")";
        } else if constexpr (std::is_same_v<T, ScaledSVF>) {
          os << "ScaledSVF(s=" << v.s << ",weights=[";
          for (std::size_t i = 0; i < v.weights.size(); ++i) os << (i ? "," : "") << v.weights[i];
          os << "])";
        } else {
          os << "MaxOf(";
          for (std::size_t i = 0; i < v.members.size(); ++i) os << (i ? "," : "") << v.members[i].describe();
          os << ")";
        }
      },
      v_);
  return os.str();
}

std::vector<double> svf_coefficients(double s, int dim) {
  require_nonnegative_s(s, "svf");
  std::vector<double> c(static_cast<std::size_t>(dim) + 1, 0.0);
  if (s >= dim) {
    c[static_cast<std::size_t>(dim)] = s / dim;
    return c;
  }
  const double f = std::floor(s);
  const auto k = static_cast<std::size_t>(f);
  c[k] = 1.0 + f - s;
  if (s > f) c[k + 1] = s - f;
  return c;
}

CompiledPotential::CompiledPotential(const PotentialSpec& spec, int dim, int alphabet) : dim_(dim) {
  if (dim < 1) throw InputError("potential: dimension must be >= 1");
  append_forms(spec, dim, alphabet, forms_);
}

bool CompiledPotential::has_symbol_weights() const {
  for (const LinearForm& f : forms_) {
    if (!f.symbol_log_weight.empty()) return true;
  }
  return false;
}

double CompiledPotential::evaluate(std::span<const double> ext_log, const Word& w) const {
  double best = -std::numeric_limits<double>::infinity();
  for (const LinearForm& f : forms_) {
    double v = 0.0;
    for (std::size_t k = 1; k < f.coeff.size(); ++k) {
      if (f.coeff[k] != 0.0) v += f.coeff[k] * ext_log[k];
    }
    if (!f.symbol_log_weight.empty()) {
      for (std::size_t i = 0; i < w.size(); ++i) v += f.symbol_log_weight[static_cast<std::size_t>(w[i])];
    }
    best = std::max(best, v);
  }
  return best;
}

double log_svf(const Matrix& a, double s) {
  require_finite_square(a, "svf");
  require_nonnegative_s(s, "svf");
  const int d = static_cast<int>(a.rows());
  if (s == 0.0) return 0.0;
  if (s >= d) {
    const double ld = log_abs_det(a);
    if (!std::isfinite(ld)) throw DegenerateError("svf: matrix is singular, phi^s undefined");
    return s / d * ld;
  }
  const std::vector<double> alpha = singular_values(a);
  const double f = std::floor(s);
  const auto k = static_cast<std::size_t>(f);
  double out = 0.0;
  for (std::size_t j = 0; j < k; ++j) out += std::log(alpha[j]);
  if (s > f) out += (s - f) * std::log(alpha[k]);
  if (!std::isfinite(out)) throw DegenerateError("svf: singular value vanishes, phi^s undefined");
  return out;
}

double svf(const Matrix& a, double s) { return std::exp(log_svf(a, s)); }

double svf_via_exterior(const Matrix& a, double s) {
  require_finite_square(a, "svf_via_exterior");
  const int d = static_cast<int>(a.rows());
  if (!(s > 0.0) || s > d) throw InputError("svf_via_exterior: s must lie in (0, d]");
  const double f = std::floor(s);
  const int lo = static_cast<int>(f);
  const double norm_lo = lo == 0 ? 1.0 : top_singular_value(exterior_power(a, lo));
  if (s == f) return norm_lo;
  const double norm_hi = top_singular_value(exterior_power(a, lo + 1));
  if (norm_hi == 0.0) throw DegenerateError("svf_via_exterior: exterior power vanishes, phi^s undefined");
  return std::pow(norm_lo, 1.0 + f - s) * std::pow(norm_hi, s - f);
}

double eval_potential(const PotentialSpec& spec, const MatrixTuple& tuple, const Word& w) {
  w.validate(tuple.size());
  const CompiledPotential pot(spec, tuple.dim(), tuple.size());
  const ExteriorTuple ext(tuple);
  ProductAccumulator acc(ext);
  for (std::size_t i = 0; i < w.size(); ++i) acc.push(w[i]);
  std::vector<double> ext_log(static_cast<std::size_t>(tuple.dim()) + 1);
  for (int k = 0; k <= tuple.dim(); ++k) ext_log[static_cast<std::size_t>(k)] = acc.log_exterior_norm(k);
  return pot.evaluate(ext_log, w);
}

DualityTransformResult dualize(const MatrixTuple& tuple, double s) {
  const int d = tuple.dim();
  if (!(s > 0.0) || !(s < d)) throw InputError("dualize: s must lie in (0, d)");
  std::vector<Matrix> out;
  out.reserve(static_cast<std::size_t>(tuple.size()));
  for (const Matrix& a : tuple.matrices()) {
    const double scale = std::exp(log_abs_det(a) / (d - s));
    out.emplace_back(scale * a.inverse().transpose());
  }
  return {MatrixTuple(std::move(out)), d - s};
}

}  // namespace saff
