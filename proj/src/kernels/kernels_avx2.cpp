#include "saff/kernels.hpp"

#if defined(SAFF_BUILD_AVX2)

#include <immintrin.h>

#include <cmath>
#include <limits>

namespace saff::kernels::detail {

namespace {

// exp(x), intended for x <= 0: Cody-Waite reduction x = n ln2 + r, |r| <= ln2/2, then the
// Cephes rational approximation exp(r) = 1 + 2r P(r^2) / (Q(r^2) - r P(r^2)).
// Inputs below -708 flush to 0; they never matter next to the exp(0) = 1 term.
inline __m256d exp_pd(__m256d x) {
  const __m256d lower = _mm256_set1_pd(-708.0);
  const __m256d underflow = _mm256_cmp_pd(x, lower, _CMP_LT_OQ);
  x = _mm256_min_pd(_mm256_max_pd(x, lower), _mm256_set1_pd(709.0));

  const __m256d n = _mm256_round_pd(_mm256_mul_pd(x, _mm256_set1_pd(1.4426950408889634073599)),
                                    _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(n, _mm256_set1_pd(6.93145751953125E-1), x);
  r = _mm256_fnmadd_pd(n, _mm256_set1_pd(1.42860682030941723212E-6), r);

  const __m256d rr = _mm256_mul_pd(r, r);
  __m256d p = _mm256_set1_pd(1.26177193074810590878E-4);
  p = _mm256_fmadd_pd(p, rr, _mm256_set1_pd(3.02994407707441961300E-2));
  p = _mm256_fmadd_pd(p, rr, _mm256_set1_pd(9.99999999999999999910E-1));
  p = _mm256_mul_pd(p, r);
  __m256d q = _mm256_set1_pd(3.00198505138664455042E-6);
  q = _mm256_fmadd_pd(q, rr, _mm256_set1_pd(2.52448340349684104192E-3));
  q = _mm256_fmadd_pd(q, rr, _mm256_set1_pd(2.27265548208155028766E-1));
  q = _mm256_fmadd_pd(q, rr, _mm256_set1_pd(2.00000000000000000009E0));
  __m256d e = _mm256_div_pd(p, _mm256_sub_pd(q, p));
  e = _mm256_fmadd_pd(_mm256_set1_pd(2.0), e, _mm256_set1_pd(1.0));

  // 2^n through the exponent field; n is in [-1022, 1023] here.
  const __m256d magic = _mm256_set1_pd(6755399441055744.0);  // 2^52 + 2^51
  __m256i ni = _mm256_castpd_si256(_mm256_add_pd(n, magic));
  ni = _mm256_sub_epi64(ni, _mm256_castpd_si256(magic));
  ni = _mm256_slli_epi64(_mm256_add_epi64(ni, _mm256_set1_epi64x(1023)), 52);
  e = _mm256_mul_pd(e, _mm256_castsi256_pd(ni));
  return _mm256_andnot_pd(underflow, e);
}

// Lanes are summed as (l0 + l1) + (l2 + l3).
inline double hsum(__m256d v) {
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, v);
  return (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
}

inline double hmax(__m256d v) {
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, v);
  const double a = lanes[0] > lanes[1] ? lanes[0] : lanes[1];
  const double b = lanes[2] > lanes[3] ? lanes[2] : lanes[3];
  return a > b ? a : b;
}

void axpy_avx2(double alpha, const double* x, double* y, std::size_t n) {
  const __m256d a = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(a, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  }
  for (; i < n; ++i) y[i] = std::fma(alpha, x[i], y[i]);
}

void max_into_avx2(const double* x, double* y, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(y + i, _mm256_max_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  }
  for (; i < n; ++i) y[i] = x[i] > y[i] ? x[i] : y[i];
}

double reduce_max_avx2(const double* x, std::size_t n) {
  const double ninf = -std::numeric_limits<double>::infinity();
  __m256d m = _mm256_set1_pd(ninf);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) m = _mm256_max_pd(m, _mm256_loadu_pd(x + i));
  double out = hmax(m);
  for (; i < n; ++i) out = x[i] > out ? x[i] : out;
  return out;
}

double sum_exp_avx2(const double* x, double shift, std::size_t n) {
  const __m256d s = _mm256_set1_pd(shift);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, exp_pd(_mm256_sub_pd(_mm256_loadu_pd(x + i), s)));
  double out = hsum(acc);
  for (; i < n; ++i) out += std::exp(x[i] - shift);
  return out;
}

WeightedSum sum_exp_weighted_avx2(const double* x, double shift, const double* y, std::size_t n) {
  const __m256d s = _mm256_set1_pd(shift);
  __m256d w = _mm256_setzero_pd();
  __m256d wy = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d e = exp_pd(_mm256_sub_pd(_mm256_loadu_pd(x + i), s));
    w = _mm256_add_pd(w, e);
    wy = _mm256_fmadd_pd(e, _mm256_loadu_pd(y + i), wy);
  }
  WeightedSum out{hsum(w), hsum(wy)};
  for (; i < n; ++i) {
    const double e = std::exp(x[i] - shift);
    out.weight += e;
    out.weighted += e * y[i];
  }
  return out;
}

const KernelTable avx2{axpy_avx2, max_into_avx2, reduce_max_avx2, sum_exp_avx2, sum_exp_weighted_avx2};

}  // namespace

const KernelTable* avx2_table() { return &avx2; }

}  // namespace saff::kernels::detail

#else

namespace saff::kernels::detail {
const KernelTable* avx2_table() { return nullptr; }
}  // namespace saff::kernels::detail

#endif
