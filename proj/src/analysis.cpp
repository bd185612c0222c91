#include "saff/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

#include "parallel.hpp"
#include "saff/error.hpp"
#include "saff/potentials.hpp"
#include "saff/pressure.hpp"
#include "saff/rng.hpp"

namespace saff {

std::string to_string(SeparationCase c) { return c == SeparationCase::i ? "i" : "ii"; }

std::string to_string(SeparationConclusion c) {
  switch (c) {
    case SeparationConclusion::gap_confirmed: return "GAP_CONFIRMED";
    case SeparationConclusion::hypotheses_fail: return "HYPOTHESES_FAIL";
    case SeparationConclusion::inconclusive: return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

std::string SeparationVerdict::label() const {
  if (conclusion == SeparationConclusion::gap_confirmed && heuristic) return "GAP_CONFIRMED(HEURISTIC)";
  return to_string(conclusion);
}

namespace {

bool passes(Verdict v) { return v == Verdict::yes || v == Verdict::yes_heuristic; }
bool fails(Verdict v) { return v == Verdict::no || v == Verdict::no_up_to; }

// Structure verdicts for one tuple, computed on demand.
class StructureCache {
 public:
  StructureCache(const MatrixTuple& tuple, const SeparationOptions& opts) : tuple_(tuple), opts_(opts) {}

  Verdict irreducible(int l) {
    if (l <= 0 || l >= tuple_.dim()) return Verdict::yes;
    auto it = irr_.find(l);
    if (it == irr_.end()) it = irr_.emplace(l, irreducibility_report(tuple_, l).verdict).first;
    return it->second;
  }

  Verdict strong(int l) {
    if (l <= 0 || l >= tuple_.dim()) return Verdict::yes;
    auto it = strong_.find(l);
    if (it == strong_.end()) {
      it = strong_.emplace(l, strong_irreducibility_heuristic(tuple_, l, opts_.max_parts, opts_.strong_len).verdict)
               .first;
    }
    return it->second;
  }

  Verdict proximal(int l) {
    if (l <= 0 || l >= tuple_.dim()) return Verdict::yes;
    auto it = prox_.find(l);
    if (it == prox_.end()) it = prox_.emplace(l, proximality(tuple_, l, opts_.proximal_len, opts_.rel_tol).verdict).first;
    return it->second;
  }

 private:
  const MatrixTuple& tuple_;
  const SeparationOptions& opts_;
  std::map<int, Verdict> irr_, strong_, prox_;
};

std::string set_label(const std::vector<int>& ls) {
  std::string out = "{";
  for (std::size_t i = 0; i < ls.size(); ++i) out += (i ? "," : "") + std::to_string(ls[i]);
  return out + "}";
}

SeparationVerdict evaluate_case(StructureCache& cache, SeparationCase which, int k, double s, int d) {
  SeparationVerdict v;
  v.which = which;
  v.k = k;
  v.s = s;
  v.integer_s = s == std::floor(s);
  std::vector<int> irr;
  int prox = 0;
  std::vector<std::vector<int>> alternatives;
  if (which == SeparationCase::i) {
    irr = {k, k + 1, k + 2};
    prox = k + 1;
    v.gap_index = k + 1;
    if (v.integer_s) alternatives = {{k}, {k + 2}};
    else alternatives = {{k}, {k + 1, k + 2}};
  } else {
    irr = {k - 1, k, k + 1};
    prox = k;
    v.gap_index = k;
    if (v.integer_s) alternatives = {{k - 1}, {k + 1}};
    else alternatives = {{k + 1}, {k - 1, k}};
  }

  bool failed = false;
  bool unknown = false;
  auto record = [&](const std::string& name, Verdict verdict) {
    v.hypotheses.push_back({name, verdict});
    if (fails(verdict)) failed = true;
    else if (!passes(verdict)) unknown = true;
  };
  for (int l : irr) {
    if (l > d) continue;
    record("irreducible_" + std::to_string(l), cache.irreducible(l));
  }
  record("proximal_" + std::to_string(prox), cache.proximal(prox));

  // Strong irreducibility: any one alternative suffices; prefer one without heuristics.
  std::map<int, bool> listed;
  int best = -1;
  bool best_heuristic = true;
  bool any_unknown = false;
  for (std::size_t a = 0; a < alternatives.size(); ++a) {
    bool ok = true;
    bool heuristic = false;
    for (int l : alternatives[a]) {
      const Verdict sv = cache.strong(l);
      if (!listed[l]) {
        v.hypotheses.push_back({"strongly_irreducible_" + std::to_string(l), sv});
        listed[l] = true;
      }
      if (!passes(sv)) {
        ok = false;
        if (!fails(sv)) any_unknown = true;
      }
      if (sv == Verdict::yes_heuristic) heuristic = true;
    }
    if (ok && (best < 0 || (best_heuristic && !heuristic))) {
      best = static_cast<int>(a);
      best_heuristic = heuristic;
    }
  }
  if (best >= 0) {
    v.strong_alternative = set_label(alternatives[static_cast<std::size_t>(best)]);
    v.heuristic = best_heuristic;
  } else if (any_unknown) {
    unknown = true;
  } else {
    failed = true;
  }
  for (const Hypothesis& h : v.hypotheses) {
    if (h.verdict == Verdict::yes_heuristic && h.name.rfind("strongly", 0) != 0) v.heuristic = true;
  }

  if (failed) v.conclusion = SeparationConclusion::hypotheses_fail;
  else if (unknown) v.conclusion = SeparationConclusion::inconclusive;
  return v;
}

}  // namespace

std::vector<SeparationVerdict> check_separation(const MatrixTuple& tuple, double s, const SeparationOptions& opts) {
  const int d = tuple.dim();
  if (d < 2) throw InputError("check_separation: dimension must be at least 2");
  if (!(s > 0.0) || !(s < d)) throw InputError("check_separation: s must lie in (0, d)");
  if (opts.depth < 2) throw InputError("check_separation: depth must be at least 2");
  if (opts.mc_reps < 2 || opts.mc_blocks < 1) throw InputError("check_separation: need at least 2 replicas and 1 block");

  StructureCache cache(tuple, opts);
  std::vector<SeparationVerdict> out;
  // Case (i): k < s <= k+1 < d.
  const int ki = static_cast<int>(std::ceil(s)) - 1;
  if (ki + 1 < d) out.push_back(evaluate_case(cache, SeparationCase::i, ki, s, d));
  // Case (ii): k <= s < k+1 <= d with k >= 1.
  const int kii = static_cast<int>(std::floor(s));
  if (kii >= 1) out.push_back(evaluate_case(cache, SeparationCase::ii, kii, s, d));

  auto ready = [](const SeparationVerdict& v) {
    if (v.strong_alternative.empty()) return false;
    return std::all_of(v.hypotheses.begin(), v.hypotheses.end(), [](const Hypothesis& h) {
      return passes(h.verdict) || h.name.rfind("strongly", 0) == 0;
    });
  };
  if (std::none_of(out.begin(), out.end(), ready)) return out;

  const WordTable table(tuple, opts.depth, opts.enumeration);
  const PotentialSpec spec = PotentialSpec::svf(s);
  const GibbsApprox hi = gibbs_approx(table, spec, opts.depth);
  const GibbsApprox lo = gibbs_approx(table, spec, opts.depth - 1);

  // Monte-Carlo under i.i.d. concatenations of level-n Gibbs blocks.
  std::vector<double> cdf(hi.log_weights.size());
  double acc_p = 0.0;
  for (std::size_t w = 0; w < cdf.size(); ++w) cdf[w] = acc_p += std::exp(hi.log_weights[w]);
  for (double& c : cdf) c /= acc_p;
  const ExteriorTuple ext(tuple);
  const auto du = static_cast<std::size_t>(d);
  const int horizon = opts.mc_blocks * opts.depth;
  std::vector<std::vector<double>> samples(static_cast<std::size_t>(opts.mc_reps));
  detail::parallel_for(samples.size(), opts.enumeration.threads, [&](std::size_t r) {
    SplitMix64 rng = SplitMix64::stream(opts.seed, r);
    ProductAccumulator acc(ext);
    for (int b = 0; b < opts.mc_blocks; ++b) {
      const Word w = Word::from_index(static_cast<std::uint64_t>(rng.categorical(cdf)), opts.depth, tuple.size());
      for (int x : w.symbols()) acc.push(x);
    }
    const LogSVResult sv = acc.logsv();
    samples[r].resize(du);
    for (std::size_t j = 0; j < du; ++j) samples[r][j] = sv.log_singular_value(j) / horizon;
  });
  std::vector<double> mean(du, 0.0);
  for (const auto& row : samples) {
    for (std::size_t j = 0; j < du; ++j) mean[j] += row[j] / static_cast<double>(samples.size());
  }

  for (SeparationVerdict& v : out) {
    if (!ready(v)) continue;
    const auto j = static_cast<std::size_t>(v.gap_index - 1);
    const double gap_n = hi.exponents[j] - hi.exponents[j + 1];
    const double gap_m = lo.exponents[j] - lo.exponents[j + 1];
    double ss = 0.0;
    const double gap = mean[j] - mean[j + 1];
    for (const auto& row : samples) ss += (row[j] - row[j + 1] - gap) * (row[j] - row[j + 1] - gap);
    v.gap_computed = true;
    v.depth = opts.depth;
    v.exponents = mean;
    v.gap_estimate = gap;
    v.gap_stderr = samples.size() > 1 ? std::sqrt(ss / static_cast<double>(samples.size() - 1) / static_cast<double>(samples.size())) : 0.0;
    v.truncation_drift = opts.depth * std::abs(gap_n - gap_m);
    if (gap > 3.0 * v.gap_stderr && gap > 0.0) v.conclusion = SeparationConclusion::gap_confirmed;
  }
  return out;
}

// ---------------------------------------------------------------------------

Lemma3Report lemma3_identity(const std::vector<double>& b, const MatrixTuple& c, double s,
                             const std::vector<Word>& words) {
  const int d = c.dim() + 1;
  if (static_cast<int>(b.size()) != c.size()) throw InputError("lemma3: b and C must have the same length");
  if (!(s > 1.0) || !(s < d - 1)) throw InputError("lemma3: s must lie in (1, d-1)");
  std::vector<double> abs_b;
  std::vector<Matrix> full;
  for (int i = 0; i < c.size(); ++i) {
    const double bi = b[static_cast<std::size_t>(i)];
    if (!std::isfinite(bi) || bi == 0.0) throw InputError("lemma3: every b_i must be finite and non-zero");
    abs_b.push_back(std::abs(bi));
    Matrix a = Matrix::Zero(d, d);
    a(0, 0) = bi;
    a.bottomRightCorner(d - 1, d - 1) = c[i];
    full.push_back(a);
  }
  const MatrixTuple tuple(full);
  const int f = static_cast<int>(std::floor(s));
  std::vector<double> scaled;
  for (double x : abs_b) scaled.push_back(std::pow(x, s - f));

  const CompiledPotential lhs(PotentialSpec::svf(s), d, c.size());
  const CompiledPotential phi1(PotentialSpec::svf(s), d - 1, c.size());
  const CompiledPotential phi2(PotentialSpec::scaled_svf(s - 1.0, abs_b), d - 1, c.size());
  const CompiledPotential phi3(PotentialSpec::scaled_svf(f, scaled), d - 1, c.size());
  const ExteriorTuple ext_full(tuple);
  const ExteriorTuple ext_c(c);

  Lemma3Report rep;
  for (const Word& w : words) {
    w.validate(c.size());
    ProductAccumulator acc_full(ext_full);
    ProductAccumulator acc_c(ext_c);
    for (std::size_t i = 0; i < w.size(); ++i) {
      acc_full.push(w[i]);
      acc_c.push(w[i]);
    }
    std::vector<double> lf(static_cast<std::size_t>(d) + 1), lc(static_cast<std::size_t>(d));
    for (int k = 0; k <= d; ++k) lf[static_cast<std::size_t>(k)] = acc_full.log_exterior_norm(k);
    for (int k = 0; k < d; ++k) lc[static_cast<std::size_t>(k)] = acc_c.log_exterior_norm(k);
    const double left = lhs.evaluate(lf, w);
    const std::array<double, 3> terms{phi1.evaluate(lc, w), phi2.evaluate(lc, w), phi3.evaluate(lc, w)};
    const auto top = std::max_element(terms.begin(), terms.end());
    ++rep.dominant[static_cast<std::size_t>(top - terms.begin())];
    const double r = std::abs(left - *top) / std::max(1.0, std::abs(left));
    if (rep.words == 0 || r > rep.max_residual) {
      rep.max_residual = r;
      rep.worst_word = w;
    }
    ++rep.words;
  }
  return rep;
}

// ---------------------------------------------------------------------------

namespace {

Word random_word(SplitMix64& rng, int alphabet, int max_len) {
  const int len = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_len)));
  std::vector<int> sym(static_cast<std::size_t>(len));
  for (int& x : sym) x = static_cast<int>(rng.below(static_cast<std::uint64_t>(alphabet)));
  return Word(sym);
}

double log_rho_word(const ExteriorTuple& ext, const Word& w, int k) {
  ProductAccumulator acc(ext);
  for (std::size_t i = 0; i < w.size(); ++i) acc.push(w[i]);
  return acc.log_exterior_spectral_radius(k);
}

double log_rho_form_word(const ExteriorTuple& ext, const Word& w, const std::vector<double>& coeff) {
  ProductAccumulator acc(ext);
  for (std::size_t i = 0; i < w.size(); ++i) acc.push(w[i]);
  double out = 0.0;
  for (std::size_t k = 0; k < coeff.size(); ++k) {
    if (coeff[k] != 0.0) out += coeff[k] * acc.log_exterior_spectral_radius(static_cast<int>(k));
  }
  return out;
}

}  // namespace

RhoMultiplicativityReport rho_multiplicativity(const MatrixTuple& tuple, std::size_t pairs, int max_len,
                                               std::uint64_t seed) {
  if (max_len < 1) throw InputError("rho_multiplicativity: max_len must be >= 1");
  const ExteriorTuple ext(tuple);
  SplitMix64 rng = SplitMix64::stream(seed, 0);
  RhoMultiplicativityReport rep;
  for (std::size_t p = 0; p < pairs; ++p) {
    const Word wi = random_word(rng, tuple.size(), max_len);
    const Word wj = random_word(rng, tuple.size(), max_len);
    // A_i A_j is the product of the word j followed by i.
    const double joint = log_rho_word(ext, wj.concat(wi), 1);
    const double sep = log_rho_word(ext, wi, 1) + log_rho_word(ext, wj, 1);
    const double defect = std::abs(std::expm1(joint - sep));
    if (p == 0 || defect > rep.max_rel_defect) {
      rep.max_rel_defect = defect;
      rep.worst_i = wi;
      rep.worst_j = wj;
    }
    ++rep.pairs;
  }
  return rep;
}

double log_rho_form(const Matrix& a, double s) {
  const int d = static_cast<int>(a.rows());
  const std::vector<double> coeff = svf_coefficients(s, d);
  const std::vector<double> mod = eigen_moduli(a);
  double out = 0.0;
  double partial = 0.0;
  for (int k = 1; k <= d; ++k) {
    const double m = mod[static_cast<std::size_t>(k - 1)];
    partial += std::log(m);
    if (coeff[static_cast<std::size_t>(k)] == 0.0) continue;
    if (!(m > 0.0)) throw DegenerateError("rho form: a needed eigenvalue vanishes");
    out += coeff[static_cast<std::size_t>(k)] * partial;
  }
  return out;
}

MatrixTuple fw_normalize(const MatrixTuple& tuple, double s) {
  if (!(s > 0.0) || !(s <= tuple.dim())) throw InputError("fw_normalize: s must lie in (0, d]");
  std::vector<Matrix> out;
  for (int i = 0; i < tuple.size(); ++i) out.push_back(tuple[i] * std::exp(-log_rho_form(tuple[i], s) / s));
  return MatrixTuple(out);
}

FwConstancyReport fw_constancy(const MatrixTuple& tuple, double s, int max_len, std::size_t sample,
                               std::uint64_t seed) {
  if (max_len < 1) throw InputError("fw_constancy: max_len must be >= 1");
  const MatrixTuple norm = fw_normalize(tuple, s);
  const ExteriorTuple ext(norm);
  const std::vector<double> coeff = svf_coefficients(s, tuple.dim());
  FwConstancyReport rep;
  auto visit = [&](const Word& w) {
    const double dev = std::abs(log_rho_form_word(ext, w, coeff));
    if (rep.words == 0 || dev > rep.max_log_deviation) {
      rep.max_log_deviation = dev;
      rep.witness = w;
    }
    ++rep.words;
  };
  std::uint64_t total = 0;
  for (int m = 1; m <= max_len && total <= sample; ++m) total += std::min<std::uint64_t>(word_count(tuple.size(), m), sample + 1);
  if (total <= sample) {
    rep.exhaustive = true;
    for_each_word_shortlex(tuple.size(), max_len, [&](const Word& w) {
      visit(w);
      return true;
    });
  } else {
    SplitMix64 rng = SplitMix64::stream(seed, 0);
    for (std::size_t t = 0; t < sample; ++t) visit(random_word(rng, tuple.size(), max_len));
  }
  return rep;
}

// ---------------------------------------------------------------------------

std::string to_string(SimilitudeVerdict v) {
  switch (v) {
    case SimilitudeVerdict::similitudes: return "SIMILITUDES";
    case SimilitudeVerdict::not_similitudes: return "NOT_SIMILITUDES";
    case SimilitudeVerdict::inconclusive: return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

namespace {

// Orthonormal coordinates on symmetric matrices.
Matrix sym_from_vec(const Vector& v, int d) {
  Matrix p = Matrix::Zero(d, d);
  int idx = 0;
  const double r = 1.0 / std::sqrt(2.0);
  for (int a = 0; a < d; ++a) {
    for (int b = a; b < d; ++b, ++idx) {
      if (a == b) {
        p(a, a) = v(idx);
      } else {
        p(a, b) = v(idx) * r;
        p(b, a) = v(idx) * r;
      }
    }
  }
  return p;
}

Vector vec_from_sym(const Matrix& p) {
  const int d = static_cast<int>(p.rows());
  Vector v(d * (d + 1) / 2);
  int idx = 0;
  const double r = std::sqrt(2.0);
  for (int a = 0; a < d; ++a) {
    for (int b = a; b < d; ++b, ++idx) v(idx) = a == b ? p(a, a) : 0.5 * (p(a, b) + p(b, a)) * r;
  }
  return v;
}

double form_residual(const std::vector<Matrix>& gens, const Matrix& p) {
  const double scale = top_singular_value(p);
  double r = 0.0;
  for (const Matrix& a : gens) r = std::max(r, top_singular_value(a.transpose() * p * a - p) / scale);
  return r;
}

double min_eigenvalue(const Matrix& p) {
  return Eigen::SelfAdjointEigenSolver<Matrix>(p, Eigen::EigenvaluesOnly).eigenvalues()(0);
}

void finish(SimilitudeCertificate& cert, const std::vector<Matrix>& gens, Matrix p, double tol) {
  p = 0.5 * (p + p.transpose());
  if (p.trace() < 0.0) p = -p;
  p *= static_cast<double>(p.rows()) / p.trace();
  cert.p = p;
  cert.residual = form_residual(gens, p);
  cert.min_eigenvalue = min_eigenvalue(p);
  const bool spd = cert.min_eigenvalue > 1e-10 * top_singular_value(p);
  cert.verdict = spd && cert.residual <= tol ? SimilitudeVerdict::similitudes : SimilitudeVerdict::not_similitudes;
}

}  // namespace

SimilitudeCertificate detect_similitude_structure(const MatrixTuple& tuple, int iters, double tol) {
  const int d = tuple.dim();
  const int n = d * (d + 1) / 2;
  std::vector<Matrix> gens;
  for (int i = 0; i < tuple.size(); ++i) gens.push_back(tuple[i] * std::exp(-log_abs_det(tuple[i]) / d));

  Matrix stacked(n * tuple.size(), n);
  for (std::size_t g = 0; g < gens.size(); ++g) {
    for (int c = 0; c < n; ++c) {
      const Matrix p = sym_from_vec(Vector::Unit(n, c), d);
      stacked.block(static_cast<Eigen::Index>(g) * n, c, n, 1) = vec_from_sym(gens[g].transpose() * p * gens[g] - p);
    }
  }
  const Eigen::JacobiSVD<Matrix> svd(stacked, Eigen::ComputeFullV);
  const Vector& sv = svd.singularValues();
  const double thresh = 1e-8 * std::max(1.0, sv(0));
  int null_dim = 0;
  for (int i = 0; i < n; ++i) {
    if (sv(i) <= thresh) ++null_dim;
  }
  SimilitudeCertificate cert;
  cert.null_dim = null_dim;
  const Matrix& v = svd.matrixV();
  if (null_dim == 0) {
    cert.method = "null-space";
    cert.p = sym_from_vec(v.col(n - 1), d);
    cert.residual = form_residual(gens, cert.p);
    cert.min_eigenvalue = min_eigenvalue(cert.p);
    cert.verdict = SimilitudeVerdict::not_similitudes;
    return cert;
  }
  if (null_dim == 1) {
    cert.method = "null-space";
    finish(cert, gens, sym_from_vec(v.col(n - 1), d), tol);
    return cert;
  }
  if (null_dim == 2) {
    cert.method = "null-space";
    const Matrix p1 = sym_from_vec(v.col(n - 1), d);
    const Matrix p2 = sym_from_vec(v.col(n - 2), d);
    Matrix best = p1;
    double best_score = -std::numeric_limits<double>::infinity();
    constexpr int kSteps = 3600;
    for (int t = 0; t < kSteps; ++t) {
      const double th = 2.0 * std::numbers::pi * t / kSteps;
      const Matrix p = std::cos(th) * p1 + std::sin(th) * p2;
      const double score = min_eigenvalue(p) / top_singular_value(p);
      if (score > best_score) {
        best_score = score;
        best = p;
      }
    }
    finish(cert, gens, best, tol);
    return cert;
  }

  cert.method = "cesaro";
  Matrix p = Matrix::Identity(d, d);
  double window_min = std::numeric_limits<double>::infinity();
  for (int t = 0; t <= iters; ++t) {
    const double r = form_residual(gens, p);
    cert.iterations = t;
    if (r <= tol) break;
    window_min = std::min(window_min, r);
    if (t % 100 == 99) {
      if (r > 10.0 * window_min) break;
      window_min = std::numeric_limits<double>::infinity();
    }
    Matrix next = Matrix::Zero(d, d);
    for (const Matrix& a : gens) next += a.transpose() * p * a;
    p = next * (static_cast<double>(d) / next.trace());
  }
  finish(cert, gens, p, tol);
  if (cert.verdict == SimilitudeVerdict::not_similitudes && cert.min_eigenvalue > 0.0 &&
      cert.iterations >= iters) {
    cert.verdict = SimilitudeVerdict::inconclusive;
  }
  return cert;
}

}  // namespace saff
