#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "saff/kernels.hpp"
#include "saff/rng.hpp"
#include "saff/word_table.hpp"

using namespace saff;
namespace k = saff::kernels;

namespace {

std::vector<double> random_vec(std::size_t n, std::uint64_t seed, double scale) {
  SplitMix64 rng(seed);
  std::vector<double> v(n);
  for (double& x : v) x = scale * rng.normal();
  return v;
}

// Plain loops, no shared code with either kernel table.
double ref_sum_exp(const std::vector<double>& x, double shift) {
  long double s = 0;
  for (double v : x) s += std::exp(static_cast<long double>(v) - shift);
  return static_cast<double>(s);
}

struct IsaGuard {
  k::Isa saved = k::active_isa();
  ~IsaGuard() { k::set_isa(saved); }
};

}  // namespace

TEST_SUITE("kernels") {
  TEST_CASE("scalar kernels match plain loops") {
    const auto& t = k::table(k::Isa::scalar);
    for (std::size_t n : {0u, 1u, 3u, 4u, 7u, 8u, 33u, 1000u}) {
      const auto x = random_vec(n, 1 + n, 3.0);
      auto y = random_vec(n, 100 + n, 1.0);
      const double shift = n ? *std::max_element(x.begin(), x.end()) : 0.0;
      CHECK(t.sum_exp(x.data(), shift, n) == doctest::Approx(ref_sum_exp(x, shift)).epsilon(1e-13));
      double mx = -std::numeric_limits<double>::infinity();
      for (double v : x) mx = std::max(mx, v);
      CHECK(t.reduce_max(x.data(), n) == mx);
      auto z = y;
      t.axpy(0.5, x.data(), z.data(), n);
      for (std::size_t i = 0; i < n; ++i) CHECK(z[i] == doctest::Approx(y[i] + 0.5 * x[i]));
    }
  }

  TEST_CASE("avx2 kernels agree with the scalar reference") {
    const k::KernelTable* avx = k::detail::avx2_table();
    if (!avx || !k::isa_supported(k::Isa::avx2)) {
      MESSAGE("AVX2 not available; equivalence test skipped");
      return;
    }
    const auto& ref = k::table(k::Isa::scalar);
    for (std::size_t n : {0u, 1u, 2u, 3u, 4u, 5u, 7u, 8u, 9u, 15u, 16u, 17u, 63u, 1024u, 8193u}) {
      for (double scale : {0.1, 5.0, 300.0}) {
        const auto x = random_vec(n, 7 * n + 1, scale);
        const auto y = random_vec(n, 9 * n + 2, 2.0);
        const double shift = n ? *std::max_element(x.begin(), x.end()) : 0.0;
        CHECK(avx->reduce_max(x.data(), n) == ref.reduce_max(x.data(), n));
        const double a = avx->sum_exp(x.data(), shift, n), b = ref.sum_exp(x.data(), shift, n);
        CHECK(std::abs(a - b) <= 1e-14 * std::max(1.0, b) * std::max<double>(1.0, static_cast<double>(n)));
        const k::WeightedSum wa = avx->sum_exp_weighted(x.data(), shift, y.data(), n);
        const k::WeightedSum wb = ref.sum_exp_weighted(x.data(), shift, y.data(), n);
        CHECK(std::abs(wa.weight - wb.weight) <= 1e-13 * std::max(1.0, wb.weight));
        CHECK(std::abs(wa.weighted - wb.weighted) <= 1e-13 * std::max(1.0, std::abs(wb.weight) * 10));
        auto za = y, zb = y;
        avx->axpy(-1.25, x.data(), za.data(), n);
        ref.axpy(-1.25, x.data(), zb.data(), n);
        for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(za[i] - zb[i]) <= 1e-15 * (std::abs(zb[i]) + 1));
        za = y;
        zb = y;
        avx->max_into(x.data(), za.data(), n);
        ref.max_into(x.data(), zb.data(), n);
        CHECK(za == zb);
      }
    }
  }

  TEST_CASE("exp underflow and -inf entries") {
    std::vector<double> x{-1e308, -800.0, 0.0, -std::numeric_limits<double>::infinity(), -745.0};
    for (k::Isa isa : {k::Isa::scalar, k::Isa::avx2}) {
      if (!k::isa_supported(isa)) continue;
      const double s = k::table(isa).sum_exp(x.data(), 0.0, x.size());
      CHECK(s == doctest::Approx(1.0 + std::exp(-745.0) + std::exp(-800.0)));
    }
  }

  TEST_CASE("reductions are deterministic within one ISA and close across ISAs") {
    IsaGuard guard;
    const auto x = random_vec(100000, 3, 10.0);
    const auto y = random_vec(100000, 4, 1.0);
    k::set_isa(k::Isa::scalar);
    const double ls = log_sum_exp(x, 1);
    const Expectation es = gibbs_expectation(x, y, 1);
    CHECK(log_sum_exp(x, 4) == ls);
    CHECK(gibbs_expectation(x, y, 3).mean == es.mean);
    if (k::isa_supported(k::Isa::avx2)) {
      k::set_isa(k::Isa::avx2);
      const double la = log_sum_exp(x, 1);
      CHECK(log_sum_exp(x, 4) == la);
      CHECK(std::abs(la - ls) <= 1e-12);
      CHECK(std::abs(gibbs_expectation(x, y, 2).mean - es.mean) <= 1e-12);
    }
  }

  TEST_CASE("ISA selection") {
    CHECK(k::isa_supported(k::Isa::scalar));
    CHECK(k::isa_name(k::Isa::scalar) == "scalar");
    if (!k::isa_supported(k::Isa::avx2)) CHECK_THROWS(k::set_isa(k::Isa::avx2));
  }
}
