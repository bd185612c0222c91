#include <doctest.h>

#include <cmath>
#include <numbers>

#include "../oracle.hpp"
#include "saff/error.hpp"
#include "saff/pressure.hpp"

using namespace saff;

namespace {

Matrix scaled_identity(int d, double r) { return r * Matrix::Identity(d, d); }

Matrix diag2(double a, double b) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

MatrixTuple irreducible_pair() { return MatrixTuple({0.5 * oracle::rotation(1.0), diag2(0.6, 0.3)}); }

}  // namespace

TEST_SUITE("pressure") {
  TEST_CASE("equal similitudes give the closed form at every depth") {
    const MatrixTuple t({scaled_identity(2, 0.5), scaled_identity(2, 0.5)});
    for (double s : {0.0, 0.5, 1.0, 1.7, 2.0}) {
      for (int n : {1, 3, 8}) {
        const PressureBracket b = pressure_bracket(t, PotentialSpec::svf(s), n);
        const double want = std::log(2.0) - s * std::log(2.0);
        CHECK(b.upper == doctest::Approx(want).epsilon(1e-12));
        CHECK(b.lower == doctest::Approx(want).epsilon(1e-12));
      }
    }
  }

  TEST_CASE("one-dimensional systems are exact") {
    const MatrixTuple t({Matrix::Constant(1, 1, 0.5), Matrix::Constant(1, 1, -0.3), Matrix::Constant(1, 1, 0.2)});
    for (double s : {0.3, 1.0, 2.5}) {
      const double want = std::log(std::pow(0.5, s) + std::pow(0.3, s) + std::pow(0.2, s));
      const PressureBracket b = pressure_bracket(t, PotentialSpec::svf(s), 9);
      for (double u : b.upper_by_depth) CHECK(std::abs(u - want) <= 1e-10);
      CHECK(std::abs(b.upper - want) <= 1e-10);
      CHECK(b.lower <= b.upper);
    }
  }

  TEST_CASE("single generator brackets collapse onto the rho form") {
    SplitMix64 rng(31);
    const Matrix a = oracle::random_matrix(rng, 3, 0.5);
    const MatrixTuple t({a});
    const auto mod = eigen_moduli(a);
    const double s = 1.6;
    const double want = std::log(mod[0]) + 0.6 * std::log(mod[1]);
    const PressureBracket b = pressure_bracket(t, PotentialSpec::svf(s), 40);
    CHECK(b.lower == doctest::Approx(want).epsilon(1e-9));
    CHECK(b.upper >= want - 1e-12);
    CHECK(b.upper - want <= 0.1);
  }

  TEST_CASE("upper estimate matches brute force and brackets are ordered") {
    SplitMix64 rng(32);
    std::vector<Matrix> gens{oracle::random_matrix(rng, 3, 0.4), oracle::random_matrix(rng, 3, 0.4)};
    const MatrixTuple t(gens);
    for (double s : {0.7, 1.5, 2.4}) {
      const PressureBracket b = pressure_bracket(t, PotentialSpec::svf(s), 7);
      for (int m = 1; m <= 7; ++m) {
        CHECK(std::abs(b.upper_by_depth[static_cast<std::size_t>(m - 1)] - oracle::brute_pressure(gens, s, m)) <= 1e-10);
      }
      CHECK(b.lower <= b.upper);
      // a_{n+m} <= a_n + a_m
      for (int n = 1; n <= 7; ++n) {
        for (int m = 1; n + m <= 7; ++m) {
          const double an = n * b.upper_by_depth[n - 1], am = m * b.upper_by_depth[m - 1];
          CHECK((n + m) * b.upper_by_depth[n + m - 1] <= an + am + 1e-10);
        }
      }
    }
  }

  TEST_CASE("bracket width shrinks with depth") {
    const MatrixTuple t = irreducible_pair();
    double prev = INFINITY;
    for (int n = 2; n <= 12; n += 2) {
      const PressureBracket b = pressure_bracket(t, PotentialSpec::svf(1.0), n);
      CHECK(b.upper - b.lower <= prev + 1e-12);
      prev = b.upper - b.lower;
    }
  }

  TEST_CASE("results do not depend on the thread count") {
    const MatrixTuple t({oracle::rotation(0.3) * 0.7, diag2(0.8, 0.2), diag2(0.3, 0.5)});
    PressureOptions o1, o4;
    o4.enumeration.threads = 4;
    const PressureBracket a = pressure_bracket(t, PotentialSpec::svf(1.3), 9, o1);
    const PressureBracket b = pressure_bracket(t, PotentialSpec::svf(1.3), 9, o4);
    CHECK(a.upper == b.upper);
    CHECK(a.lower == b.lower);
    CHECK(a.upper_by_depth == b.upper_by_depth);
    const GibbsApprox g1 = gibbs_approx(t, PotentialSpec::svf(1.3), 8, o1.enumeration);
    const GibbsApprox g4 = gibbs_approx(t, PotentialSpec::svf(1.3), 8, o4.enumeration);
    CHECK(g1.log_weights == g4.log_weights);
    CHECK(g1.entropy_estimate == g4.entropy_estimate);
  }

  TEST_CASE("budget is enforced") {
    const MatrixTuple t({diag2(0.5, 0.4), diag2(0.3, 0.2)});
    PressureOptions o;
    o.enumeration.budget = 1000;
    CHECK_THROWS_AS(pressure_bracket(t, PotentialSpec::svf(1.0), 10, o), BudgetError);
    try {
      pressure_bracket(t, PotentialSpec::svf(1.0), 10, o);
    } catch (const BudgetError& e) {
      CHECK(std::string(e.what()).find("budget") != std::string::npos);
    }
  }

  TEST_CASE("affinity dimension of closed-form examples") {
    PressureOptions o;
    const AffinityInterval a =
        affinity_dimension(MatrixTuple({scaled_identity(2, 0.5), scaled_identity(2, 0.5)}), 10, 1e-4, o);
    CHECK(a.s_lo <= 1.0);
    CHECK(a.s_hi >= 1.0);
    CHECK(a.width <= 1e-4);
    const AffinityInterval b = affinity_dimension(MatrixTuple(std::vector<Matrix>(4, scaled_identity(2, 0.5))), 6, 1e-4, o);
    CHECK(b.s_lo == 2.0);
    CHECK(b.s_hi == 2.0);
    const AffinityInterval c = affinity_dimension(MatrixTuple(std::vector<Matrix>(3, scaled_identity(2, 1.0 / 3))), 8, 1e-4, o);
    CHECK(c.s_lo <= 1.0);
    CHECK(c.s_hi >= 1.0);
    CHECK(c.width <= 1e-4);
    CHECK_THROWS_AS(affinity_dimension(MatrixTuple({scaled_identity(2, 1.0)}), 4, 1e-3, o), PreconditionError);
  }

  TEST_CASE("affinity interval brackets a brute-force zero") {
    SplitMix64 rng(33);
    std::vector<Matrix> gens;
    for (int i = 0; i < 3; ++i) {
      Matrix a = oracle::random_matrix(rng, 2);
      gens.push_back(a * (0.6 / singular_values(a)[0]));
    }
    const AffinityInterval r = affinity_dimension(MatrixTuple(gens), 7, 1e-6);
    auto upper = [&](double s) {
      double u = INFINITY;
      for (int m = 1; m <= 7; ++m) u = std::min(u, oracle::brute_pressure(gens, s, m));
      return u;
    };
    CHECK(r.s_lo <= r.s_hi);
    CHECK(upper(r.s_hi - 1e-5) > 0.0);
    CHECK(upper(r.s_hi + 1e-5) < 0.0);
    CHECK(r.s_lo > 0.0);
  }

  TEST_CASE("Gibbs weights in dimension one are Bernoulli") {
    const std::vector<double> a{0.5, 0.3, 0.2};
    const MatrixTuple t({Matrix::Constant(1, 1, a[0]), Matrix::Constant(1, 1, -a[1]), Matrix::Constant(1, 1, a[2])});
    const double s = 0.8;
    double z = 0;
    for (double x : a) z += std::pow(x, s);
    const int n = 6;
    const GibbsApprox g = gibbs_approx(t, PotentialSpec::svf(s), n);
    for (std::size_t idx = 0; idx < g.log_weights.size(); ++idx) {
      const Word w = Word::from_index(idx, n, 3);
      double lw = 0;
      for (int x : w.symbols()) lw += s * std::log(a[static_cast<std::size_t>(x)]) - std::log(z);
      CHECK(std::abs(g.log_weights[idx] - lw) <= 1e-10);
    }
    CHECK(g.pressure_defect <= 1e-10);
    double h = 0;
    for (double x : a) h -= std::pow(x, s) / z * std::log(std::pow(x, s) / z);
    CHECK(g.entropy_estimate == doctest::Approx(h).epsilon(1e-10));
  }

  TEST_CASE("Gibbs weights for symmetric and single-generator tuples") {
    const GibbsApprox g = gibbs_approx(MatrixTuple({scaled_identity(2, 0.4), scaled_identity(2, 0.4)}),
                                       PotentialSpec::svf(1.2), 7);
    for (double lw : g.log_weights) CHECK(lw == doctest::Approx(-7 * std::log(2.0)));
    CHECK(g.entropy_estimate == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(g.pressure_defect <= 1e-10);
    const GibbsApprox one = gibbs_approx(MatrixTuple({diag2(0.5, 0.2)}), PotentialSpec::svf(1.5), 5);
    CHECK(one.log_weights.size() == 1);
    CHECK(std::abs(one.entropy_estimate) <= 1e-15);
  }

  TEST_CASE("Gibbs approximation on a positive irreducible pair") {
    Matrix a(2, 2), b(2, 2);
    a << 0.5, 0.2, 0.1, 0.3;
    b << 0.3, 0.1, 0.25, 0.45;
    const MatrixTuple t({a, b});
    double prev = INFINITY;
    std::vector<double> cmax;
    for (int n = 5; n <= 12; ++n) {
      const GibbsApprox g = gibbs_approx(t, PotentialSpec::svf(1.0), n);
      double total = 0;
      for (double lw : g.log_weights) total += std::exp(lw);
      CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(g.pressure_defect <= prev + 1e-12);
      prev = g.pressure_defect;
      cmax.push_back(*std::max_element(g.gibbs_constant.begin(), g.gibbs_constant.end()));
    }
    CHECK(prev <= 0.05);
    // Gibbs constant does not grow with n.
    const double slope = (cmax.back() - cmax[cmax.size() / 2]) / static_cast<double>(cmax.size() - cmax.size() / 2 - 1);
    CHECK(slope < 0.01);
  }

  TEST_CASE("quasimultiplicativity diagnostic") {
    const MatrixTuple scalars({Matrix::Constant(1, 1, 0.5), Matrix::Constant(1, 1, 0.3)});
    const QuasimultReport q = quasimult_diagnostic(scalars, PotentialSpec::svf(1.0), 4);
    CHECK(q.delta_hat == doctest::Approx(1.0).epsilon(1e-12));
    const double eps = 1e-3;
    const QuasimultReport r =
        quasimult_diagnostic(MatrixTuple({diag2(1, eps), diag2(eps, 1)}), PotentialSpec::svf(1.0), 4);
    CHECK(r.delta_hat < 1e-2);
    CHECK(r.violations > 0);
    double lo = INFINITY;
    for (int n : {2, 4, 6}) lo = std::min(lo, quasimult_diagnostic(irreducible_pair(), PotentialSpec::svf(1.0), n).delta_hat);
    CHECK(lo > 0.05);
  }
}
