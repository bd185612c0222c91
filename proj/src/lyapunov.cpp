#include "saff/lyapunov.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "parallel.hpp"
#include "saff/error.hpp"
#include "saff/rng.hpp"

namespace saff {

namespace {

bool all_diagonal(const MatrixTuple& tuple) {
  for (const Matrix& a : tuple.matrices()) {
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
      for (Eigen::Index c = 0; c < a.cols(); ++c) {
        if (r != c && a(r, c) != 0.0) return false;
      }
    }
  }
  return true;
}

}  // namespace

BernoulliMeasure::BernoulliMeasure(std::vector<double> p, bool allow_zero) : p_(std::move(p)) {
  if (p_.empty()) throw InputError("weights: probability vector is empty");
  double total = 0.0;
  for (double v : p_) {
    if (!std::isfinite(v) || v < 0.0 || (v == 0.0 && !allow_zero)) {
      throw InputError("weights: probabilities must be positive");
    }
    total += v;
  }
  if (std::abs(total - 1.0) > 1e-12) throw InputError("weights: probabilities must sum to 1");
  double acc = 0.0;
  for (double v : p_) {
    acc += v;
    cdf_.push_back(acc);
  }
  cdf_.back() = 1.0;
}

BernoulliMeasure BernoulliMeasure::uniform(int n) {
  if (n < 1) throw InputError("weights: need at least one symbol");
  std::vector<double> p(static_cast<std::size_t>(n), 1.0 / n);
  double rest = 1.0;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) rest -= p[i];
  p.back() = rest;
  return BernoulliMeasure(std::move(p));
}

double BernoulliMeasure::entropy() const {
  double h = 0.0;
  for (double v : p_) {
    if (v > 0.0) h -= v * std::log(v);
  }
  return h;
}

std::string to_string(LyapunovMethod m) {
  switch (m) {
    case LyapunovMethod::exact_diagonal:
      return "exact-diagonal";
    case LyapunovMethod::monte_carlo:
      return "monte-carlo";
    case LyapunovMethod::gibbs_level_n:
      return "gibbs-level-n";
  }
  return "unknown";
}

LyapunovSpectrum lyapunov_spectrum(const MatrixTuple& tuple, const BernoulliMeasure& mu, int horizon, int reps,
                                   std::uint64_t seed, const LyapunovOptions& opts) {
  if (mu.size() != tuple.size()) {
    throw InputError("weights: " + std::to_string(mu.size()) + " probabilities for " + std::to_string(tuple.size()) +
                     " maps");
  }
  if (horizon < 1) throw InputError("depth (horizon) must be >= 1");
  if (reps < 1) throw InputError("reps must be >= 1");
  const int d = tuple.dim();
  const auto du = static_cast<std::size_t>(d);

  LyapunovSpectrum out;
  out.horizon = horizon;
  out.reps = reps;
  if (opts.allow_exact && all_diagonal(tuple)) {
    out.method = LyapunovMethod::exact_diagonal;
    out.exponents.assign(du, 0.0);
    for (int i = 0; i < tuple.size(); ++i) {
      for (int j = 0; j < d; ++j) {
        out.exponents[static_cast<std::size_t>(j)] += mu.p()[static_cast<std::size_t>(i)] * std::log(std::abs(tuple[i](j, j)));
      }
    }
    std::sort(out.exponents.begin(), out.exponents.end(), std::greater<>());
    out.standard_error.assign(du, 0.0);
    return out;
  }

  out.method = LyapunovMethod::monte_carlo;
  const ExteriorTuple ext(tuple);
  std::vector<std::vector<double>> samples(static_cast<std::size_t>(reps));
  detail::parallel_for(static_cast<std::size_t>(reps), opts.threads, [&](std::size_t r) {
    SplitMix64 rng = SplitMix64::stream(seed, r);
    ProductAccumulator acc(ext);
    for (int t = 0; t < horizon; ++t) acc.push(rng.categorical(mu.cdf()));
    const LogSVResult sv = acc.logsv();
    auto& row = samples[r];
    row.resize(du);
    for (std::size_t j = 0; j < du; ++j) row[j] = sv.log_singular_value(j) / horizon;
  });

  out.exponents.assign(du, 0.0);
  out.standard_error.assign(du, 0.0);
  for (const auto& row : samples) {
    for (std::size_t j = 0; j < du; ++j) out.exponents[j] += row[j];
  }
  for (double& v : out.exponents) v /= reps;
  if (reps > 1) {
    for (std::size_t j = 0; j < du; ++j) {
      double ss = 0.0;
      for (const auto& row : samples) ss += (row[j] - out.exponents[j]) * (row[j] - out.exponents[j]);
      out.standard_error[j] = std::sqrt(ss / (reps - 1) / reps);
    }
  }
  return out;
}

LyapunovSpectrum gibbs_lyapunov(const WordTable& table, const PotentialSpec& spec, int depth) {
  LyapunovSpectrum out;
  out.method = LyapunovMethod::gibbs_level_n;
  out.horizon = depth;
  out.reps = 1;
  out.exponents = gibbs_approx(table, spec, depth).exponents;
  out.standard_error.assign(out.exponents.size(), 0.0);
  if (depth >= 2) {
    const auto prev = gibbs_approx(table, spec, depth - 1).exponents;
    for (std::size_t j = 0; j < prev.size(); ++j) out.standard_error[j] = std::abs(out.exponents[j] - prev[j]);
  }
  return out;
}

}  // namespace saff
