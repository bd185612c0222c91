#include <cmath>
#include <limits>

#include "saff/kernels.hpp"

namespace saff::kernels::detail {

namespace {

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void max_into_scalar(const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = x[i] > y[i] ? x[i] : y[i];
}

double reduce_max_scalar(const double* x, std::size_t n) {
  double m = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) m = x[i] > m ? x[i] : m;
  return m;
}

double sum_exp_scalar(const double* x, double shift, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += std::exp(x[i] - shift);
  return s;
}

WeightedSum sum_exp_weighted_scalar(const double* x, double shift, const double* y, std::size_t n) {
  WeightedSum out;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = std::exp(x[i] - shift);
    out.weight += e;
    out.weighted += e * y[i];
  }
  return out;
}

}  // namespace

const KernelTable scalar_table{axpy_scalar, max_into_scalar, reduce_max_scalar, sum_exp_scalar,
                               sum_exp_weighted_scalar};

}  // namespace saff::kernels::detail
