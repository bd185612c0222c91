#include "saff/pressure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "saff/error.hpp"
#include "saff/rng.hpp"

namespace saff {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
// Pressure values this close to zero at s = d are treated as vanishing there.
constexpr double kZeroAtEnd = 1e-12;

// Form in which each log ||(A_w)^k|| is replaced by log(alpha_{d-k+1} ... alpha_d)
// = log|det A_w| - log ||(A_w)^{d-k}||. The result is superadditive.
LinearForm minorant(const LinearForm& f, int dim) {
  LinearForm out;
  out.coeff.assign(static_cast<std::size_t>(dim) + 1, 0.0);
  out.symbol_log_weight = f.symbol_log_weight;
  for (int k = 1; k <= dim; ++k) {
    const double c = f.coeff[static_cast<std::size_t>(k)];
    if (c == 0.0) continue;
    out.coeff[static_cast<std::size_t>(dim)] += c;
    if (k < dim) out.coeff[static_cast<std::size_t>(dim - k)] -= c;
  }
  return out;
}

struct LevelBounds {
  std::vector<double> upper_by_depth;
  double upper = std::numeric_limits<double>::infinity();
  double minorant = kNegInf;
};

LevelBounds level_bounds(const WordTable& table, const CompiledPotential& pot, int depth, bool want_upper,
                         bool want_minorant) {
  LevelBounds out;
  std::vector<double> values;
  std::vector<LinearForm> minorants;
  if (want_minorant) {
    for (const LinearForm& f : pot.forms()) minorants.push_back(minorant(f, table.dim()));
  }
  for (int m = 1; m <= depth; ++m) {
    if (want_upper) {
      table.potential(pot, m, values);
      const double a = log_sum_exp(values, table.threads()) / m;
      out.upper_by_depth.push_back(a);
      out.upper = std::min(out.upper, a);
    }
    for (const LinearForm& f : minorants) {
      table.form_values(f, m, values);
      out.minorant = std::max(out.minorant, log_sum_exp(values, table.threads()) / m);
    }
  }
  return out;
}

// Closes a tiny rounding inversion of the bracket; genuine inversions are left visible.
void reconcile(double& lower, double upper) {
  if (lower > upper && lower - upper <= 1e-12 * std::max(1.0, std::abs(upper))) lower = upper;
}

void require_contractions(const MatrixTuple& tuple) {
  for (int i = 0; i < tuple.size(); ++i) {
    if (!(top_singular_value(tuple[i]) < 1.0)) {
      throw PreconditionError("matrices: map " + std::to_string(i + 1) + " is not a strict contraction (||A|| >= 1)");
    }
  }
}

}  // namespace

PeriodicCandidates::PeriodicCandidates(const MatrixTuple& tuple, const PressureOptions& opts) {
  const int n = tuple.size();
  int len = std::max(1, opts.periodic_len);
  const auto total = [n](int l) {
    std::uint64_t t = 0;
    for (int m = 1; m <= l; ++m) t += word_count(n, m);
    return t;
  };
  while (len > 1 && total(len) > opts.max_periodic) --len;

  for_each_word_shortlex(n, len, [this](const Word& w) {
    words_.push_back(w);
    return true;
  });
  if (opts.random_words > 0 && opts.random_max_len > len) {
    SplitMix64 rng = SplitMix64::stream(opts.seed, 0x70657269ULL);
    for (int r = 0; r < opts.random_words; ++r) {
      const int l = len + 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(opts.random_max_len - len)));
      std::vector<int> sym(static_cast<std::size_t>(l));
      for (int& s : sym) s = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
      words_.emplace_back(std::move(sym));
    }
  }

  const ExteriorTuple ext(tuple);
  ProductAccumulator acc(ext);
  rho_log_.reserve(words_.size());
  for (const Word& w : words_) {
    acc.reset();
    for (std::size_t i = 0; i < w.size(); ++i) acc.push(w[i]);
    std::vector<double> row(static_cast<std::size_t>(tuple.dim()) + 1);
    for (int k = 0; k <= tuple.dim(); ++k) row[static_cast<std::size_t>(k)] = acc.log_exterior_spectral_radius(k);
    rho_log_.push_back(std::move(row));
  }
}

PeriodicCandidates::Best PeriodicCandidates::best(const CompiledPotential& pot) const {
  Best out{kNegInf, {}};
  for (std::size_t i = 0; i < words_.size(); ++i) {
    const double v = pot.evaluate(rho_log_[i], words_[i]) / static_cast<double>(words_[i].size());
    if (v > out.value) {
      out.value = v;
      out.witness = words_[i];
    }
  }
  return out;
}

PressureBracket pressure_bracket(const WordTable& table, const PeriodicCandidates& candidates,
                                 const PotentialSpec& spec) {
  const CompiledPotential pot(spec, table.dim(), table.alphabet());
  const LevelBounds levels = level_bounds(table, pot, table.depth(), true, true);
  const auto periodic = candidates.best(pot);

  PressureBracket out;
  out.potential = spec.describe();
  out.depth = table.depth();
  out.upper_by_depth = levels.upper_by_depth;
  out.upper = levels.upper;
  out.lower_periodic = periodic.value;
  out.lower_witness = periodic.witness;
  out.lower_minorant = levels.minorant;
  out.lower = std::max(periodic.value, levels.minorant);
  out.periodic_candidates = candidates.size();
  reconcile(out.lower, out.upper);
  return out;
}

PressureBracket pressure_bracket(const MatrixTuple& tuple, const PotentialSpec& spec, int depth,
                                 const PressureOptions& opts) {
  const WordTable table(tuple, depth, opts.enumeration);
  const PeriodicCandidates candidates(tuple, opts);
  return pressure_bracket(table, candidates, spec);
}

AffinityInterval affinity_dimension(const MatrixTuple& tuple, int depth, double tol, const PressureOptions& opts) {
  if (!(tol > 0.0) || !std::isfinite(tol)) throw InputError("tol must be a positive finite number");
  require_contractions(tuple);
  const WordTable table(tuple, depth, opts.enumeration);
  const PeriodicCandidates candidates(tuple, opts);
  const int d = tuple.dim();

  const auto upper = [&](double s) {
    const CompiledPotential pot(PotentialSpec::svf(s), d, tuple.size());
    return level_bounds(table, pot, depth, true, false).upper;
  };
  const auto lower = [&](double s) {
    const CompiledPotential pot(PotentialSpec::svf(s), d, tuple.size());
    double v = std::max(candidates.best(pot).value, level_bounds(table, pot, depth, false, true).minorant);
    reconcile(v, upper(s));
    return v;
  };

  AffinityInterval out;
  out.depth = depth;
  out.tol = tol;
  // Returns [a, b] with f(a) > 0 >= f(b), narrowed to width <= tol / 2.
  const auto bracket_zero = [&](const auto& f) -> std::pair<double, double> {
    if (f(static_cast<double>(d)) >= -kZeroAtEnd) return {d, d};
    if (f(0.0) <= 0.0) return {0.0, 0.0};
    double a = 0.0;
    double b = d;
    while (b - a > 0.5 * tol) {
      const double mid = 0.5 * (a + b);
      (f(mid) > 0.0 ? a : b) = mid;
      ++out.iterations;
    }
    return {a, b};
  };
  out.s_hi = bracket_zero(upper).second;
  out.s_lo = std::min(bracket_zero(lower).first, out.s_hi);
  out.width = out.s_hi - out.s_lo;
  return out;
}

GibbsApprox gibbs_approx(const WordTable& table, const PotentialSpec& spec, int depth) {
  if (depth < 1 || depth > table.depth()) throw InputError("depth must lie in 1..table depth");
  const CompiledPotential pot(spec, table.dim(), table.alphabet());
  const int n = depth;
  const int threads = table.threads();
  const auto base = static_cast<std::size_t>(table.alphabet());

  GibbsApprox out;
  out.potential = spec.describe();
  out.depth = n;

  std::vector<double> x;
  table.potential(pot, n, x);
  const Expectation top = gibbs_expectation(x, x, threads);
  const double a_n = top.log_partition;
  const double h_n = a_n - top.mean;
  out.pressure = a_n / n;
  out.lyapunov_estimate = top.mean / n;

  // Log-masses of prefixes under nu_n, level by level towards the root.
  std::vector<std::vector<double>> marginal(static_cast<std::size_t>(n) + 1);
  marginal[static_cast<std::size_t>(n)].resize(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) marginal[static_cast<std::size_t>(n)][i] = x[i] - a_n;
  for (int m = n - 1; m >= 1; --m) {
    const auto& deeper = marginal[static_cast<std::size_t>(m) + 1];
    auto& level = marginal[static_cast<std::size_t>(m)];
    level.resize(deeper.size() / base);
    for (std::size_t u = 0; u < level.size(); ++u) {
      level[u] = log_sum_exp(std::span<const double>(deeper.data() + u * base, base));
    }
  }

  double h_prev = 0.0;
  std::vector<double> xm;
  for (int m = 1; m <= n; ++m) {
    if (m < n) {
      table.potential(pot, m, xm);
    } else {
      xm = x;
    }
    const auto& level = marginal[static_cast<std::size_t>(m)];
    double worst = 0.0;
    for (std::size_t u = 0; u < xm.size(); ++u) worst = std::max(worst, std::abs(level[u] - (xm[u] - m * out.pressure)));
    out.gibbs_constant.push_back(worst);
    if (m == n - 1) {
      const Expectation e = gibbs_expectation(xm, xm, threads);
      h_prev = e.log_partition - e.mean;
      for (std::size_t u = 0; u < xm.size(); ++u) {
        out.marginal_defect = std::max(out.marginal_defect, std::abs(level[u] - (xm[u] - e.log_partition)));
      }
    }
  }
  out.entropy_estimate = h_n - h_prev;
  out.pressure_defect = std::abs(out.entropy_estimate + out.lyapunov_estimate - out.pressure);

  std::vector<double> y(x.size());
  for (int j = 1; j <= table.dim(); ++j) {
    const auto hi = table.column(n, j);
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = j == 1 ? hi[i] : hi[i] - table.column(n, j - 1)[i];
    out.exponents.push_back(gibbs_expectation(x, y, threads).mean / n);
  }

  out.log_weights = std::move(marginal[static_cast<std::size_t>(n)]);
  return out;
}

GibbsApprox gibbs_approx(const MatrixTuple& tuple, const PotentialSpec& spec, int depth,
                         const EnumerationOptions& opts) {
  const WordTable table(tuple, depth, opts);
  return gibbs_approx(table, spec, depth);
}

QuasimultReport quasimult_diagnostic(const MatrixTuple& tuple, const PotentialSpec& spec, int n_probe,
                                     const QuasimultOptions& opts) {
  if (n_probe < 1) throw InputError("depth must be >= 1");
  if (opts.bridge_len < 0) throw InputError("bridge length must be >= 0");
  const int n = tuple.size();
  const int d = tuple.dim();
  const CompiledPotential pot(spec, d, n);
  const ExteriorTuple ext(tuple);

  std::vector<Word> bridges{Word()};
  for_each_word_shortlex(n, opts.bridge_len, [&](const Word& w) {
    bridges.push_back(w);
    return true;
  });

  std::uint64_t words_total = 0;
  for (int m = 1; m <= n_probe; ++m) words_total += word_count(n, m);
  std::vector<std::pair<Word, Word>> pairs;
  QuasimultReport out;
  out.threshold = opts.threshold;
  out.bridge_count = bridges.size();
  if (words_total <= opts.max_pairs && words_total * words_total <= opts.max_pairs) {
    std::vector<Word> all;
    for_each_word_shortlex(n, n_probe, [&](const Word& w) {
      all.push_back(w);
      return true;
    });
    for (const Word& i : all) {
      for (const Word& j : all) pairs.emplace_back(i, j);
    }
    out.exhaustive = true;
  } else {
    SplitMix64 rng = SplitMix64::stream(opts.seed, 0x7175617369ULL);
    const auto random_word = [&] {
      const int l = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n_probe)));
      std::vector<int> sym(static_cast<std::size_t>(l));
      for (int& s : sym) s = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
      return Word(std::move(sym));
    };
    for (std::size_t p = 0; p < opts.max_pairs; ++p) {
      Word i = random_word();
      Word j = random_word();
      pairs.emplace_back(std::move(i), std::move(j));
    }
  }

  std::vector<double> ext_log(static_cast<std::size_t>(d) + 1);
  const auto log_phi = [&](const ProductAccumulator& acc, const Word& w) {
    for (int k = 0; k <= d; ++k) ext_log[static_cast<std::size_t>(k)] = acc.log_exterior_norm(k);
    return pot.evaluate(ext_log, w);
  };
  const auto push_all = [](ProductAccumulator& acc, const Word& w) {
    for (std::size_t i = 0; i < w.size(); ++i) acc.push(w[i]);
  };

  std::set<std::size_t> used;
  double worst = std::numeric_limits<double>::infinity();
  ProductAccumulator acc_i(ext);
  ProductAccumulator acc_j(ext);
  ProductAccumulator acc(ext);
  const double log_threshold = std::log(opts.threshold);
  for (const auto& [i, j] : pairs) {
    acc_i.reset();
    push_all(acc_i, i);
    acc_j.reset();
    push_all(acc_j, j);
    const double base = log_phi(acc_i, i) + log_phi(acc_j, j);
    double best = kNegInf;
    std::size_t best_bridge = 0;
    for (std::size_t b = 0; b < bridges.size(); ++b) {
      acc = acc_i;
      push_all(acc, bridges[b]);
      push_all(acc, j);
      const Word ikj = bridges[b].empty() ? i.concat(j) : i.concat(bridges[b]).concat(j);
      const double r = log_phi(acc, ikj) - base;
      if (r > best) {
        best = r;
        best_bridge = b;
      }
    }
    used.insert(best_bridge);
    if (best < log_threshold) ++out.violations;
    if (best < worst) {
      worst = best;
      out.worst_i = i;
      out.worst_j = j;
    }
  }
  out.pairs_tested = pairs.size();
  out.delta_hat = std::exp(worst);
  for (std::size_t b : used) out.bridges_used.push_back(bridges[b]);
  return out;
}

}  // namespace saff
