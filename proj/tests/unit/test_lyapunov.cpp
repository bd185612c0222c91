#include <doctest.h>

#include <cmath>
#include <sstream>

#include "../oracle.hpp"
#include "saff/error.hpp"
#include "saff/ifs.hpp"
#include "saff/lyapunov.hpp"

using namespace saff;

namespace {

Matrix diag2(double a, double b) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

}  // namespace

TEST_SUITE("lyapunov") {
  TEST_CASE("Bernoulli measure validation") {
    CHECK_THROWS_AS(BernoulliMeasure({0.5, 0.4}), InputError);
    CHECK_THROWS_AS(BernoulliMeasure({1.0, 0.0}), InputError);
    CHECK_NOTHROW(BernoulliMeasure({1.0, 0.0}, true));
    CHECK(BernoulliMeasure::uniform(4).entropy() == doctest::Approx(std::log(4.0)));
  }

  TEST_CASE("diagonal tuples use the exact formula") {
    const MatrixTuple t({diag2(0.5, 1.0 / 3), diag2(0.25, 0.2)});
    const LyapunovSpectrum l = lyapunov_spectrum(t, BernoulliMeasure::uniform(2), 100, 4, 1);
    CHECK(l.method == LyapunovMethod::exact_diagonal);
    CHECK(l.exponents[0] == doctest::Approx(-0.5 * std::log(8.0)).epsilon(1e-14));
    CHECK(l.exponents[1] == doctest::Approx(-0.5 * std::log(15.0)).epsilon(1e-14));
  }

  TEST_CASE("Monte-Carlo on diagonal tuples agrees with the exact values") {
    const MatrixTuple t({diag2(0.5, 1.0 / 3), diag2(0.25, 0.2)});
    LyapunovOptions o;
    o.allow_exact = false;
    const LyapunovSpectrum l = lyapunov_spectrum(t, BernoulliMeasure::uniform(2), 2000, 64, 7, o);
    CHECK(l.method == LyapunovMethod::monte_carlo);
    const double want[2] = {-0.5 * std::log(8.0), -0.5 * std::log(15.0)};
    for (int j = 0; j < 2; ++j) CHECK(std::abs(l.exponents[j] - want[j]) <= 3 * l.standard_error[j]);
  }

  TEST_CASE("orthogonal and single-matrix spectra") {
    const LyapunovSpectrum o = lyapunov_spectrum(MatrixTuple({oracle::rotation(0.4)}), BernoulliMeasure({1.0}), 500, 4, 2);
    for (double x : o.exponents) CHECK(std::abs(x) <= 1e-12);
    SplitMix64 rng(41);
    const Matrix a = oracle::random_matrix(rng, 3);
    const LyapunovSpectrum l = lyapunov_spectrum(MatrixTuple({a}), BernoulliMeasure({1.0}), 10000, 2, 3);
    const auto mod = eigen_moduli(a);
    for (int j = 0; j < 3; ++j) CHECK(std::abs(l.exponents[j] - std::log(mod[j])) <= 1e-3);
  }

  TEST_CASE("partial sums match the exterior-power top exponent") {
    SplitMix64 rng(42);
    const MatrixTuple t({oracle::random_matrix(rng, 3, 0.5), oracle::random_matrix(rng, 3, 0.5)});
    const BernoulliMeasure mu({0.3, 0.7});
    const LyapunovSpectrum l = lyapunov_spectrum(t, mu, 400, 48, 9);
    for (int k = 1; k <= 2; ++k) {
      const LyapunovSpectrum e = lyapunov_spectrum(t.exterior(k), mu, 400, 48, 10);
      double sum = 0, err = 0;
      for (int j = 0; j < k; ++j) {
        sum += l.exponents[j];
        err += l.standard_error[j];
      }
      CHECK(std::abs(sum - e.exponents[0]) <= 3 * (err + e.standard_error[0]) + 1e-3);
    }
  }

  TEST_CASE("same seed gives the same spectrum for any thread count") {
    SplitMix64 rng(43);
    const MatrixTuple t({oracle::random_matrix(rng, 3, 0.5), oracle::random_matrix(rng, 3, 0.5)});
    LyapunovOptions one, four;
    four.threads = 4;
    const auto a = lyapunov_spectrum(t, BernoulliMeasure::uniform(2), 200, 16, 5, one);
    const auto b = lyapunov_spectrum(t, BernoulliMeasure::uniform(2), 200, 16, 5, four);
    CHECK(a.exponents == b.exponents);
    CHECK(a.standard_error == b.standard_error);
  }
}

TEST_SUITE("ifs") {
  TEST_CASE("contraction check") {
    CHECK_THROWS_AS(AffineIFS(MatrixTuple({Matrix::Identity(2, 2)}), {Vector::Zero(2)}), PreconditionError);
    CHECK_NOTHROW(AffineIFS(MatrixTuple({Matrix::Identity(2, 2)}), {Vector::Zero(2)}, false));
    CHECK_THROWS_AS(AffineIFS(MatrixTuple({0.5 * Matrix::Identity(2, 2)}), {Vector::Zero(3)}), InputError);
  }

  TEST_CASE("single map collapses to its fixed point") {
    Vector c(2);
    c << 0.3, -1.2;
    const AffineIFS ifs(MatrixTuple({0.5 * Matrix::Identity(2, 2)}), {c});
    for (const Vector& p : sample_self_affine(ifs, BernoulliMeasure({1.0}), 100, 100, 1)) {
      CHECK((p - 2 * c).norm() <= 1e-9);
    }
  }

  TEST_CASE("degenerate weights stay on the first map's fixed point") {
    Vector a(2), b(2);
    a << 0, 0;
    b << 1, 1;
    const AffineIFS ifs(MatrixTuple({0.5 * Matrix::Identity(2, 2), 0.5 * Matrix::Identity(2, 2)}), {a, b});
    for (const Vector& p : sample_self_affine(ifs, BernoulliMeasure({1.0, 0.0}, true), 50, 60, 2)) {
      CHECK(p.norm() <= 1e-9);
    }
  }

  TEST_CASE("Sierpinski samples lie in the hull of the fixed points") {
    std::vector<Vector> v(3, Vector::Zero(2));
    v[1] << 0.5, 0;
    v[2] << 0.25, 0.5;
    const AffineIFS ifs(MatrixTuple(std::vector<Matrix>(3, 0.5 * Matrix::Identity(2, 2))), v);
    const Vector p0 = ifs.fixed_point(0), p1 = ifs.fixed_point(1), p2 = ifs.fixed_point(2);
    auto cross = [](const Vector& a, const Vector& b, const Vector& c) {
      return (b(0) - a(0)) * (c(1) - a(1)) - (b(1) - a(1)) * (c(0) - a(0));
    };
    const double orient = cross(p0, p1, p2);
    for (const Vector& p : sample_self_affine(ifs, BernoulliMeasure::uniform(3), 5000, 50, 3)) {
      CHECK(cross(p0, p1, p) * orient >= -1e-12);
      CHECK(cross(p1, p2, p) * orient >= -1e-12);
      CHECK(cross(p2, p0, p) * orient >= -1e-12);
    }
  }

  TEST_CASE("sampling is deterministic and the CSV format is fixed") {
    std::vector<Vector> v(2, Vector::Zero(2));
    v[1] << 1, 0.5;
    const AffineIFS ifs(MatrixTuple({0.4 * oracle::rotation(0.5), Matrix(Vector::Constant(2, 0.5).asDiagonal())}), v);
    const auto a = sample_self_affine(ifs, BernoulliMeasure::uniform(2), 20, 10, 99);
    const auto b = sample_self_affine(ifs, BernoulliMeasure::uniform(2), 20, 10, 99);
    std::ostringstream sa, sb;
    write_point_csv(sa, a, 2);
    write_point_csv(sb, b, 2);
    CHECK(sa.str() == sb.str());
    CHECK(sa.str().rfind("x1,x2\n", 0) == 0);
    CHECK(sa.str().find('\r') == std::string::npos);
    std::istringstream in(sa.str());
    std::string line;
    std::getline(in, line);
    std::getline(in, line);
    const auto comma = line.find(',');
    CHECK(std::stod(line.substr(0, comma)) == a[0](0));
    CHECK(std::stod(line.substr(comma + 1)) == a[0](1));
  }
}
