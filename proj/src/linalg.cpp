#include "saff/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>

#include "saff/error.hpp"

namespace saff {

namespace {

constexpr double kLn2 = std::numbers::ln2;

// Scale m by an exact power of two so that its largest entry lies in [0.5, 1).
std::int64_t renormalize(Matrix& m) {
  const double peak = m.cwiseAbs().maxCoeff();
  if (!(peak > 0.0) || !std::isfinite(peak)) {
    throw DegenerateError("product accumulator: matrix product vanished or overflowed");
  }
  int e = 0;
  std::frexp(peak, &e);
  m *= std::ldexp(1.0, -e);
  return e;
}

double row_scaled_abs_det(const Matrix& a) {
  Matrix scaled = a;
  for (Eigen::Index r = 0; r < scaled.rows(); ++r) {
    const double peak = scaled.row(r).cwiseAbs().maxCoeff();
    if (peak == 0.0) return 0.0;
    scaled.row(r) /= peak;
  }
  return std::abs(scaled.partialPivLu().determinant());
}

}  // namespace

void require_finite_square(const Matrix& a, const char* what) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    throw InputError(std::string(what) + ": matrix must be square and non-empty");
  }
  if (!a.allFinite()) throw InputError(std::string(what) + ": matrix has non-finite entries");
}

double log_abs_det(const Matrix& a) {
  require_finite_square(a, "log_abs_det");
  // LU on the row-scaled matrix keeps the log finite for tiny or huge entries.
  Matrix scaled = a;
  double log_scale = 0.0;
  for (Eigen::Index r = 0; r < scaled.rows(); ++r) {
    const double peak = scaled.row(r).cwiseAbs().maxCoeff();
    if (peak == 0.0) return -std::numeric_limits<double>::infinity();
    scaled.row(r) /= peak;
    log_scale += std::log(peak);
  }
  return log_scale + std::log(std::abs(scaled.partialPivLu().determinant()));
}

MatrixTuple::MatrixTuple(std::vector<Matrix> matrices, double det_floor) : matrices_(std::move(matrices)) {
  if (matrices_.empty()) throw InputError("matrices: tuple must contain at least one matrix");
  dim_ = static_cast<int>(matrices_.front().rows());
  for (std::size_t i = 0; i < matrices_.size(); ++i) {
    const Matrix& a = matrices_[i];
    require_finite_square(a, "matrices");
    if (a.rows() != dim_) {
      throw InputError("matrices: matrix " + std::to_string(i + 1) + " has dimension " + std::to_string(a.rows()) +
                       ", expected " + std::to_string(dim_));
    }
    if (row_scaled_abs_det(a) < det_floor) {
      throw DegenerateError("matrices: matrix " + std::to_string(i + 1) + " is singular (|det| below floor)");
    }
  }
}

MatrixTuple MatrixTuple::exterior(int k) const {
  std::vector<Matrix> out;
  out.reserve(matrices_.size());
  for (const Matrix& a : matrices_) out.push_back(exterior_power(a, k));
  return MatrixTuple(std::move(out), 0.0);
}

MatrixTuple MatrixTuple::conjugated(const Matrix& x) const {
  const Matrix x_inv = x.inverse();
  std::vector<Matrix> out;
  out.reserve(matrices_.size());
  for (const Matrix& a : matrices_) out.push_back(x * a * x_inv);
  return MatrixTuple(std::move(out));
}

double LogSVResult::log_exterior_norm(int k) const {
  double acc = 0.0;
  for (int j = 0; j < k; ++j) acc += log_singular_value(static_cast<std::size_t>(j));
  return acc;
}

std::vector<double> singular_values(const Matrix& a) {
  if (!a.allFinite()) throw InputError("singular_values: matrix has non-finite entries");
  Eigen::JacobiSVD<Matrix> svd(a);
  const Vector& s = svd.singularValues();
  return {s.data(), s.data() + s.size()};
}

double top_singular_value(const Matrix& a) {
  if (a.rows() == 1 && a.cols() == 1) return std::abs(a(0, 0));
  if (a.rows() == 2 && a.cols() == 2) {
    // sigma_{1,2} = (sqrt(p) +- sqrt(q)) / 2, free of cancellation.
    const double p = std::hypot(a(0, 0) + a(1, 1), a(0, 1) - a(1, 0));
    const double q = std::hypot(a(0, 0) - a(1, 1), a(0, 1) + a(1, 0));
    return 0.5 * (p + q);
  }
  Eigen::JacobiSVD<Matrix> svd(a);
  return svd.singularValues()(0);
}

std::vector<double> eigen_moduli(const Matrix& a) {
  require_finite_square(a, "eigen_moduli");
  std::vector<double> out;
  if (a.rows() == 1) {
    out.push_back(std::abs(a(0, 0)));
    return out;
  }
  Eigen::EigenSolver<Matrix> es(a, false);
  if (es.info() != Eigen::Success) throw DegenerateError("eigen_moduli: eigenvalue iteration failed");
  const auto& ev = es.eigenvalues();
  out.reserve(static_cast<std::size_t>(ev.size()));
  for (Eigen::Index i = 0; i < ev.size(); ++i) out.push_back(std::abs(ev(i)));
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

double spectral_radius(const Matrix& a) { return eigen_moduli(a).front(); }

std::int64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::vector<std::vector<int>> index_subsets(int d, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > d) return out;
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
  while (true) {
    out.push_back(idx);
    int pos = k - 1;
    while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == d - k + pos) --pos;
    if (pos < 0) break;
    ++idx[static_cast<std::size_t>(pos)];
    for (int j = pos + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

Matrix exterior_power(const Matrix& a, int k) {
  require_finite_square(a, "exterior_power");
  const int d = static_cast<int>(a.rows());
  if (k < 0 || k > d) {
    throw InputError("exterior_power: degree k=" + std::to_string(k) + " outside 0.." + std::to_string(d));
  }
  if (k == 0) return Matrix::Ones(1, 1);
  const auto subsets = index_subsets(d, k);
  const auto m = static_cast<Eigen::Index>(subsets.size());
  Matrix out(m, m);
  Matrix minor(k, k);
  for (Eigen::Index r = 0; r < m; ++r) {
    for (Eigen::Index c = 0; c < m; ++c) {
      const auto& rows = subsets[static_cast<std::size_t>(r)];
      const auto& cols = subsets[static_cast<std::size_t>(c)];
      for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) minor(i, j) = a(rows[static_cast<std::size_t>(i)], cols[static_cast<std::size_t>(j)]);
      }
      out(r, c) = k == 1 ? minor(0, 0) : minor.determinant();
    }
  }
  return out;
}

ExteriorTuple::ExteriorTuple(const MatrixTuple& tuple) : dim_(tuple.dim()), size_(tuple.size()) {
  powers_.resize(static_cast<std::size_t>(dim_));
  for (int k = 1; k < dim_; ++k) {
    auto& level = powers_[static_cast<std::size_t>(k)];
    level.reserve(static_cast<std::size_t>(size_));
    for (int i = 0; i < size_; ++i) level.push_back(exterior_power(tuple[i], k));
  }
  log_abs_det_.reserve(static_cast<std::size_t>(size_));
  for (int i = 0; i < size_; ++i) log_abs_det_.push_back(saff::log_abs_det(tuple[i]));
}

ProductAccumulator::ProductAccumulator(const ExteriorTuple& ext) : ext_(&ext) {
  const int d = ext.dim();
  prod_.resize(static_cast<std::size_t>(d));
  scratch_.resize(static_cast<std::size_t>(d));
  exp2_.assign(static_cast<std::size_t>(d), 0);
  for (int k = 1; k < d; ++k) {
    const auto m = static_cast<Eigen::Index>(binomial(d, k));
    prod_[static_cast<std::size_t>(k)].resize(m, m);
    scratch_[static_cast<std::size_t>(k)].resize(m, m);
  }
  reset();
}

void ProductAccumulator::reset() {
  for (int k = 1; k < ext_->dim(); ++k) prod_[static_cast<std::size_t>(k)].setIdentity();
  std::fill(exp2_.begin(), exp2_.end(), 0);
  log_det_ = 0.0;
  length_ = 0;
}

void ProductAccumulator::push(int symbol) {
  if (symbol < 0 || symbol >= ext_->size()) {
    throw InputError("word: symbol " + std::to_string(symbol + 1) + " out of range 1.." + std::to_string(ext_->size()));
  }
  for (int k = 1; k < ext_->dim(); ++k) {
    const auto kk = static_cast<std::size_t>(k);
    scratch_[kk].noalias() = ext_->power(k, symbol) * prod_[kk];
    prod_[kk].swap(scratch_[kk]);
    exp2_[kk] += renormalize(prod_[kk]);
  }
  log_det_ += ext_->log_abs_det(symbol);
  ++length_;
}

double ProductAccumulator::log_exterior_norm(int k) const {
  if (k == 0) return 0.0;
  if (k == ext_->dim()) return log_det_;
  const auto kk = static_cast<std::size_t>(k);
  return std::log(top_singular_value(prod_[kk])) + static_cast<double>(exp2_[kk]) * kLn2;
}

double ProductAccumulator::log_exterior_spectral_radius(int k) const {
  if (k == 0) return 0.0;
  if (k == ext_->dim()) return log_det_;
  const auto kk = static_cast<std::size_t>(k);
  return std::log(spectral_radius(prod_[kk])) + static_cast<double>(exp2_[kk]) * kLn2;
}

LogSVResult ProductAccumulator::logsv() const {
  const int d = ext_->dim();
  LogSVResult out;
  out.logsv.resize(static_cast<std::size_t>(d));
  double prev_norm = 0.0;
  for (int k = 1; k <= d; ++k) {
    const double norm = log_exterior_norm(k);
    out.logsv[static_cast<std::size_t>(k - 1)] = norm - prev_norm;
    prev_norm = norm;
  }
  for (std::size_t j = 1; j < out.logsv.size(); ++j) out.logsv[j] = std::min(out.logsv[j], out.logsv[j - 1]);
  out.logscale = out.logsv.front();
  for (double& v : out.logsv) v -= out.logscale;
  return out;
}

LogSVResult word_product_logsv(const ExteriorTuple& ext, const Word& w) {
  w.validate(ext.size());
  ProductAccumulator acc(ext);
  for (std::size_t i = 0; i < w.size(); ++i) acc.push(w[i]);
  return acc.logsv();
}

LogSVResult word_product_logsv(const MatrixTuple& tuple, const Word& w) {
  w.validate(tuple.size());
  return word_product_logsv(ExteriorTuple(tuple), w);
}

ScaledMatrix word_product(const MatrixTuple& tuple, const Word& w) {
  w.validate(tuple.size());
  ScaledMatrix out{Matrix::Identity(tuple.dim(), tuple.dim()), 0};
  Matrix tmp(tuple.dim(), tuple.dim());
  for (std::size_t i = 0; i < w.size(); ++i) {
    tmp.noalias() = tuple[w[i]] * out.matrix;
    out.matrix.swap(tmp);
    out.exponent2 += renormalize(out.matrix);
  }
  return out;
}

}  // namespace saff
