#include "saff/cli.hpp"

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "saff/analysis.hpp"
#include "saff/error.hpp"
#include "saff/ifs.hpp"
#include "saff/lyapunov.hpp"
#include "saff/potentials.hpp"
#include "saff/pressure.hpp"
#include "saff/structure.hpp"

namespace saff::cli {

using nlohmann::json;

const std::vector<std::string>& commands() {
  static const std::vector<std::string> list{"svf",        "pressure",         "affdim",     "lyapunov", "gibbs",
                                             "structure",  "check-sep",        "check-similitude",       "check-mult",
                                             "fw-check",   "dualize",          "sample-attractor",       "lemma3"};
  return list;
}

namespace {

json num(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

json nums(const std::vector<double>& v) {
  json out = json::array();
  for (double x : v) out.push_back(num(x));
  return out;
}

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(num(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

json word_json(const Word& w) { return w.empty() ? json("") : json(w.to_string()); }

json subspace_json(const Subspace& v) {
  json cols = json::array();
  for (Eigen::Index j = 0; j < v.basis.cols(); ++j) {
    std::vector<double> c(v.basis.col(j).data(), v.basis.col(j).data() + v.basis.rows());
    cols.push_back(nums(c));
  }
  return {{"dim", v.dim()}, {"basis", cols}};
}

[[noreturn]] void bad(const std::string& field, const std::string& what) { throw InputError(field + ": " + what); }

double number_at(const json& j, const std::string& field) {
  if (!j.is_number()) bad(field, "expected a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) bad(field, "must be finite");
  return x;
}

template <typename T>
T need(const std::optional<T>& v, const char* flag) {
  if (!v) bad(flag, "required for this command");
  return *v;
}

double s_in(const JobSpec& job, double lo, double hi, bool lo_open, bool hi_open) {
  const double s = need(job.s, "--s");
  const bool ok = (lo_open ? s > lo : s >= lo) && (hi_open ? s < hi : s <= hi);
  if (!ok) {
    std::ostringstream msg;
    msg << "must lie in " << (lo_open ? "(" : "[") << lo << ", " << hi << (hi_open ? ")" : "]");
    bad("--s", msg.str());
  }
  return s;
}

EnumerationOptions enumeration(const JobSpec& job) {
  EnumerationOptions e;
  e.threads = job.threads;
  if (job.budget) e.budget = *job.budget;
  return e;
}

PressureOptions pressure_options(const JobSpec& job) {
  PressureOptions p;
  p.enumeration = enumeration(job);
  p.seed = job.seed;
  return p;
}

json bracket_json(const PressureBracket& b) {
  return {{"potential", b.potential},
          {"depth", b.depth},
          {"upper", num(b.upper)},
          {"lower", num(b.lower)},
          {"lower_witness", word_json(b.lower_witness)},
          {"lower_periodic", num(b.lower_periodic)},
          {"lower_minorant", num(b.lower_minorant)},
          {"upper_by_depth", nums(b.upper_by_depth)},
          {"periodic_candidates", b.periodic_candidates}};
}

json spectrum_json(const LyapunovSpectrum& l) {
  return {{"exponents", nums(l.exponents)},
          {"standard_error", nums(l.standard_error)},
          {"method", to_string(l.method)},
          {"horizon", l.horizon},
          {"reps", l.reps}};
}

BernoulliMeasure measure(const TupleInput& in, bool allow_zero) {
  if (in.weights.empty()) return BernoulliMeasure::uniform(static_cast<int>(in.matrices.size()));
  try {
    return BernoulliMeasure(in.weights, allow_zero);
  } catch (const InputError& e) {
    bad("weights", e.what());
  }
}

json cmd_svf(const JobSpec& job, const MatrixTuple& t) {
  const double s = s_in(job, 0.0, 1e300, false, true);
  json maps = json::array();
  for (int i = 0; i < t.size(); ++i) {
    json m = {{"index", i + 1}, {"singular_values", nums(singular_values(t[i]))}};
    try {
      m["log_svf"] = num(log_svf(t[i], s));
      m["svf"] = num(svf(t[i], s));
      if (s > 0.0 && s <= t.dim()) m["svf_via_exterior"] = num(svf_via_exterior(t[i], s));
    } catch (const DegenerateError& e) {
      throw DegenerateError("matrices[" + std::to_string(i) + "]: " + e.what());
    }
    maps.push_back(m);
  }
  return {{"s", s}, {"maps", maps}};
}

json cmd_pressure(const JobSpec& job, const MatrixTuple& t) {
  const double s = s_in(job, 0.0, 1e300, false, true);
  const int depth = need(job.depth, "--depth");
  return bracket_json(pressure_bracket(t, PotentialSpec::svf(s), depth, pressure_options(job)));
}

json cmd_affdim(const JobSpec& job, const MatrixTuple& t) {
  const int depth = need(job.depth, "--depth");
  const double tol = job.tol.value_or(1e-3);
  const AffinityInterval a = affinity_dimension(t, depth, tol, pressure_options(job));
  return {{"s_lo", num(a.s_lo)},   {"s_hi", num(a.s_hi)}, {"width", num(a.width)},
          {"depth", a.depth},      {"tol", num(a.tol)},   {"iterations", a.iterations}};
}

json cmd_lyapunov(const JobSpec& job, const TupleInput& in, const MatrixTuple& t) {
  const BernoulliMeasure mu = measure(in, false);
  const int horizon = job.n.value_or(1000);
  const int reps = job.reps.value_or(32);
  LyapunovOptions opts;
  opts.threads = job.threads;
  json out = {{"measure", nums(mu.p())}, {"spectrum", spectrum_json(lyapunov_spectrum(t, mu, horizon, reps, job.seed, opts))}};
  if (job.s && job.depth) {
    const WordTable table(t, *job.depth, enumeration(job));
    out["gibbs"] = spectrum_json(gibbs_lyapunov(table, PotentialSpec::svf(s_in(job, 0.0, t.dim(), false, false)),
                                                *job.depth));
  }
  return out;
}

json cmd_gibbs(const JobSpec& job, const MatrixTuple& t) {
  const double s = s_in(job, 0.0, 1e300, false, true);
  const int depth = need(job.depth, "--depth");
  const GibbsApprox g = gibbs_approx(t, PotentialSpec::svf(s), depth, enumeration(job));
  json out = {{"potential", g.potential},
              {"depth", g.depth},
              {"pressure", num(g.pressure)},
              {"entropy_estimate", num(g.entropy_estimate)},
              {"lyapunov_estimate", num(g.lyapunov_estimate)},
              {"pressure_defect", num(g.pressure_defect)},
              {"gibbs_constant", nums(g.gibbs_constant)},
              {"marginal_defect", num(g.marginal_defect)},
              {"exponents", nums(g.exponents)}};
  constexpr std::size_t kMaxListed = 4096;
  if (g.log_weights.size() <= kMaxListed) out["log_weights"] = nums(g.log_weights);
  return out;
}

json cmd_structure(const JobSpec& job, const MatrixTuple& t) {
  StructureOptions opts;
  if (job.max_len) opts.strong_len = *job.max_len;
  if (job.max_len) opts.proximal_len = *job.max_len;
  const StructureReport r = structure_report(t, opts);
  json irr = json::object(), strong = json::object(), prox = json::object();
  for (const IrreducibilityResult& x : r.irreducible) {
    json e = {{"verdict", to_string(x.verdict)}, {"residual", num(x.residual)}};
    if (x.witness) e["witness"] = subspace_json(*x.witness);
    irr[std::to_string(x.k)] = e;
  }
  for (const StrongIrreducibilityResult& x : r.strongly_irreducible) {
    json parts = json::array();
    for (const Subspace& v : x.witness) parts.push_back(subspace_json(v));
    strong[std::to_string(x.k)] = {{"verdict", to_string(x.verdict)}, {"residual", num(x.residual)},
                                   {"witness", parts},                 {"max_parts", x.max_parts},
                                   {"max_len", x.max_len},             {"candidates_tried", x.candidates_tried}};
  }
  for (const ProximalityResult& x : r.proximal) {
    prox[std::to_string(x.k)] = {{"verdict", to_string(x.verdict)},
                                 {"witness", word_json(x.witness)},
                                 {"ratio", num(x.ratio)},
                                 {"max_len", x.max_len}};
  }
  json tri = {{"verdict", to_string(r.triangularizable.verdict)}, {"residual", num(r.triangularizable.residual)}};
  if (r.triangularizable.verdict == Verdict::yes) tri["basis"] = matrix_json(r.triangularizable.basis);
  return {{"dim", r.dim},
          {"irreducible", irr},
          {"strongly_irreducible", strong},
          {"proximal", prox},
          {"triangularizable", tri}};
}

json cmd_check_sep(const JobSpec& job, const MatrixTuple& t) {
  const double s = s_in(job, 0.0, t.dim(), true, true);
  SeparationOptions opts;
  if (job.depth) opts.depth = *job.depth;
  if (job.max_len) opts.strong_len = opts.proximal_len = *job.max_len;
  if (job.reps) opts.mc_reps = *job.reps;
  opts.seed = job.seed;
  opts.enumeration = enumeration(job);
  json cases = json::array();
  for (const SeparationVerdict& v : check_separation(t, s, opts)) {
    json hyp = json::object();
    for (const Hypothesis& h : v.hypotheses) hyp[h.name] = to_string(h.verdict);
    json c = {{"case", to_string(v.which)},
              {"k", v.k},
              {"gap", "Lambda_" + std::to_string(v.gap_index) + " - Lambda_" + std::to_string(v.gap_index + 1)},
              {"hypotheses", hyp},
              {"strong_alternative", v.strong_alternative},
              {"heuristic", v.heuristic},
              {"conclusion", v.label()}};
    if (v.gap_computed) {
      c["gap_estimate"] = num(v.gap_estimate);
      c["gap_stderr"] = num(v.gap_stderr);
      c["truncation_drift"] = num(v.truncation_drift);
      c["mc_reps"] = opts.mc_reps;
      c["mc_blocks"] = opts.mc_blocks;
      if (v.truncation_drift >= std::abs(v.gap_estimate)) {
        c["warning"] = "truncation drift is not small against the gap; increase --depth";
      }
      c["exponents"] = nums(v.exponents);
      c["depth"] = v.depth;
    }
    cases.push_back(c);
  }
  return {{"s", s}, {"cases", cases}};
}

json cmd_check_similitude(const JobSpec& job, const MatrixTuple& t) {
  const SimilitudeCertificate c = detect_similitude_structure(t, job.n.value_or(10000), job.tol.value_or(1e-8));
  return {{"verdict", to_string(c.verdict)}, {"p", matrix_json(c.p)},           {"residual", num(c.residual)},
          {"min_eigenvalue", num(c.min_eigenvalue)}, {"null_dim", c.null_dim}, {"iterations", c.iterations},
          {"method", c.method}};
}

json cmd_check_mult(const JobSpec& job, const MatrixTuple& t) {
  const RhoMultiplicativityReport r =
      rho_multiplicativity(t, static_cast<std::size_t>(job.reps.value_or(1000)), job.max_len.value_or(6), job.seed);
  json out = {{"rho_multiplicativity",
               {{"max_rel_defect", num(r.max_rel_defect)},
                {"worst_i", word_json(r.worst_i)},
                {"worst_j", word_json(r.worst_j)},
                {"pairs", r.pairs}}}};
  if (job.s) {
    QuasimultOptions q;
    q.seed = job.seed;
    const QuasimultReport qr =
        quasimult_diagnostic(t, PotentialSpec::svf(s_in(job, 0.0, 1e300, false, true)), job.depth.value_or(4), q);
    json bridges = json::array();
    for (const Word& w : qr.bridges_used) bridges.push_back(word_json(w));
    out["quasimultiplicativity"] = {{"delta_hat", num(qr.delta_hat)},     {"worst_i", word_json(qr.worst_i)},
                                    {"worst_j", word_json(qr.worst_j)},   {"bridges_used", bridges},
                                    {"bridge_count", qr.bridge_count},    {"pairs_tested", qr.pairs_tested},
                                    {"exhaustive", qr.exhaustive},        {"violations", qr.violations},
                                    {"threshold", num(qr.threshold)}};
  }
  return out;
}

json cmd_fw_check(const JobSpec& job, const MatrixTuple& t) {
  const double s = s_in(job, 0.0, t.dim(), true, false);
  const MatrixTuple norm = fw_normalize(t, s);
  json gens = json::array();
  for (int i = 0; i < norm.size(); ++i) gens.push_back(matrix_json(norm[i]));
  const FwConstancyReport r = fw_constancy(t, s, job.max_len.value_or(6),
                                           static_cast<std::size_t>(job.reps.value_or(4096)), job.seed);
  return {{"s", s},
          {"normalized", gens},
          {"max_log_deviation", num(r.max_log_deviation)},
          {"witness", word_json(r.witness)},
          {"words", r.words},
          {"exhaustive", r.exhaustive}};
}

json cmd_dualize(const JobSpec& job, const MatrixTuple& t) {
  const double s = s_in(job, 0.0, t.dim(), true, true);
  const DualityTransformResult r = dualize(t, s);
  json gens = json::array();
  for (int i = 0; i < r.tuple.size(); ++i) gens.push_back(matrix_json(r.tuple[i]));
  return {{"s", s}, {"s_dual", num(r.s_dual)}, {"d", r.tuple.dim()}, {"matrices", gens}};
}

json cmd_sample(const JobSpec& job, const TupleInput& in, const MatrixTuple& t) {
  if (in.translations.empty()) bad("translations", "required for sample-attractor");
  const AffineIFS ifs(t, in.translations);
  const BernoulliMeasure mu = measure(in, true);
  const std::size_t points = static_cast<std::size_t>(job.n.value_or(10000));
  const std::size_t burn = static_cast<std::size_t>(job.reps.value_or(1000));
  const std::vector<Vector> cloud = sample_self_affine(ifs, mu, points, burn, job.seed);
  std::string path = job.csv;
  if (path.empty()) {
    if (job.output.empty()) bad("--csv", "required when the report goes to stdout");
    path = job.output + ".csv";
  }
  std::ostringstream csv;
  write_point_csv(csv, cloud, t.dim());
  write_atomic(path, csv.str());
  std::vector<double> lo(static_cast<std::size_t>(t.dim()), INFINITY), hi(static_cast<std::size_t>(t.dim()), -INFINITY);
  for (const Vector& p : cloud) {
    for (int j = 0; j < t.dim(); ++j) {
      lo[static_cast<std::size_t>(j)] = std::min(lo[static_cast<std::size_t>(j)], p(j));
      hi[static_cast<std::size_t>(j)] = std::max(hi[static_cast<std::size_t>(j)], p(j));
    }
  }
  return {{"csv", path}, {"points", points}, {"burn", burn}, {"measure", nums(mu.p())},
          {"bbox_min", nums(lo)}, {"bbox_max", nums(hi)}};
}

json cmd_lemma3(const JobSpec& job, const MatrixTuple& t) {
  const int d = t.dim();
  if (d < 3) bad("d", "lemma3 needs d >= 3");
  const double s = s_in(job, 1.0, d - 1.0, true, true);
  std::vector<double> b;
  std::vector<Matrix> c;
  for (int i = 0; i < t.size(); ++i) {
    const Matrix& a = t[i];
    if (a.row(0).tail(d - 1).cwiseAbs().maxCoeff() != 0.0 || a.col(0).tail(d - 1).cwiseAbs().maxCoeff() != 0.0) {
      bad("matrices[" + std::to_string(i) + "]", "must be block diagonal diag(b, C) with a 1x1 leading block");
    }
    b.push_back(a(0, 0));
    c.push_back(a.bottomRightCorner(d - 1, d - 1));
  }
  const int max_len = job.max_len.value_or(6);
  std::uint64_t total = 0;
  for (int m = 1; m <= max_len; ++m) total += word_count(t.size(), m);
  if (total > job.budget.value_or(kDefaultWordBudget)) {
    throw BudgetError("word budget exceeded: " + std::to_string(total) + " words up to length " +
                      std::to_string(max_len) + ", budget is " +
                      std::to_string(job.budget.value_or(kDefaultWordBudget)));
  }
  std::vector<Word> words;
  for_each_word_shortlex(t.size(), max_len, [&](const Word& w) {
    words.push_back(w);
    return true;
  });
  const Lemma3Report r = lemma3_identity(b, MatrixTuple(c), s, words);
  return {{"s", s},
          {"max_residual", num(r.max_residual)},
          {"worst_word", word_json(r.worst_word)},
          {"words", r.words},
          {"dominant", {r.dominant[0], r.dominant[1], r.dominant[2]}}};
}

void validate(const JobSpec& job) {
  if (std::find(commands().begin(), commands().end(), job.command) == commands().end()) {
    bad("command", "unknown command '" + job.command + "'");
  }
  if (job.input.empty()) bad("--input", "required");
  if (job.depth && (*job.depth < 1 || *job.depth > 64)) bad("--depth", "must lie in [1, 64]");
  if (job.n && *job.n < 1) bad("--n", "must be >= 1");
  if (job.max_len && (*job.max_len < 1 || *job.max_len > 64)) bad("--max-len", "must lie in [1, 64]");
  if (job.reps && *job.reps < 1) bad("--reps", "must be >= 1");
  if (job.tol && !(*job.tol > 0.0)) bad("--tol", "must be > 0");
  if (job.threads < 1) bad("--threads", "must be >= 1");
  if (job.budget && *job.budget < 1) bad("--budget", "must be >= 1");
  if (job.s && !std::isfinite(*job.s)) bad("--s", "must be finite");
}

}  // namespace

TupleInput parse_tuple(const json& j) {
  static const std::set<std::string> known{"d", "matrices", "labels", "translations", "weights"};
  if (!j.is_object()) bad("input", "expected a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!known.count(it.key())) bad(it.key(), "unknown field");
  }
  TupleInput in;
  in.raw = j;
  if (!j.contains("d")) bad("d", "missing required field");
  if (!j["d"].is_number_integer() || j["d"].get<long long>() < 1 || j["d"].get<long long>() > 64) {
    bad("d", "expected an integer in [1, 64]");
  }
  in.d = j["d"].get<int>();
  if (!j.contains("matrices")) bad("matrices", "missing required field");
  const json& ms = j["matrices"];
  if (!ms.is_array() || ms.empty()) bad("matrices", "expected a non-empty array");
  for (std::size_t i = 0; i < ms.size(); ++i) {
    const std::string field = "matrices[" + std::to_string(i) + "]";
    const json& m = ms[i];
    if (!m.is_array() || static_cast<int>(m.size()) != in.d) bad(field, "expected " + std::to_string(in.d) + " rows");
    Matrix a(in.d, in.d);
    for (int r = 0; r < in.d; ++r) {
      const json& row = m[static_cast<std::size_t>(r)];
      const std::string rf = field + "[" + std::to_string(r) + "]";
      if (!row.is_array() || static_cast<int>(row.size()) != in.d) bad(rf, "expected " + std::to_string(in.d) + " entries");
      for (int c = 0; c < in.d; ++c) a(r, c) = number_at(row[static_cast<std::size_t>(c)], rf + "[" + std::to_string(c) + "]");
    }
    in.matrices.push_back(a);
  }
  const std::size_t n = in.matrices.size();
  if (j.contains("labels")) {
    const json& l = j["labels"];
    if (!l.is_array() || l.size() != n) bad("labels", "expected " + std::to_string(n) + " strings");
    for (const json& x : l) {
      if (!x.is_string()) bad("labels", "expected strings");
      in.labels.push_back(x.get<std::string>());
    }
  }
  if (j.contains("translations")) {
    const json& t = j["translations"];
    if (!t.is_array() || t.size() != n) bad("translations", "expected " + std::to_string(n) + " vectors");
    for (std::size_t i = 0; i < n; ++i) {
      const std::string field = "translations[" + std::to_string(i) + "]";
      if (!t[i].is_array() || static_cast<int>(t[i].size()) != in.d) bad(field, "expected " + std::to_string(in.d) + " entries");
      Vector v(in.d);
      for (int c = 0; c < in.d; ++c) v(c) = number_at(t[i][static_cast<std::size_t>(c)], field);
      in.translations.push_back(v);
    }
  }
  if (j.contains("weights")) {
    const json& w = j["weights"];
    if (!w.is_array() || w.size() != n) bad("weights", "expected " + std::to_string(n) + " probabilities");
    for (const json& x : w) in.weights.push_back(number_at(x, "weights"));
  }
  return in;
}

TupleInput read_tuple_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) bad("--input", "cannot open '" + path + "'");
  json j;
  try {
    j = json::parse(f);
  } catch (const json::parse_error& e) {
    bad("--input", std::string("malformed JSON: ") + e.what());
  }
  return parse_tuple(j);
}

json execute(const JobSpec& job, const TupleInput& in) {
  const MatrixTuple t(in.matrices);
  const std::string& c = job.command;
  if (c == "svf") return cmd_svf(job, t);
  if (c == "pressure") return cmd_pressure(job, t);
  if (c == "affdim") return cmd_affdim(job, t);
  if (c == "lyapunov") return cmd_lyapunov(job, in, t);
  if (c == "gibbs") return cmd_gibbs(job, t);
  if (c == "structure") return cmd_structure(job, t);
  if (c == "check-sep") return cmd_check_sep(job, t);
  if (c == "check-similitude") return cmd_check_similitude(job, t);
  if (c == "check-mult") return cmd_check_mult(job, t);
  if (c == "fw-check") return cmd_fw_check(job, t);
  if (c == "dualize") return cmd_dualize(job, t);
  if (c == "sample-attractor") return cmd_sample(job, in, t);
  if (c == "lemma3") return cmd_lemma3(job, t);
  bad("command", "unknown command '" + c + "'");
}

json build_report(const JobSpec& job, const TupleInput& in, const json& result, double wall_clock) {
  json params = json::object();
  if (job.s) params["s"] = *job.s;
  if (job.depth) params["depth"] = *job.depth;
  if (job.n) params["n"] = *job.n;
  if (job.max_len) params["max_len"] = *job.max_len;
  if (job.reps) params["reps"] = *job.reps;
  if (job.tol) params["tol"] = *job.tol;
  if (job.budget) params["budget"] = *job.budget;
  params["threads"] = job.threads;
  json report = {{"command", job.command},
                 {"library_version", kLibraryVersion},
                 {"seed", job.seed},
                 {"input", {{"path", job.input}, {"tuple", in.raw}}},
                 {"parameters", params},
                 {"result", result}};
  if (!job.no_timing) report["wall_clock_seconds"] = wall_clock;
  return report;
}

void write_atomic(const std::string& path, const std::string& content) {
  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw InputError("--output: cannot write '" + tmp.string() + "'");
    f << content;
    f.flush();
    if (!f) throw InputError("--output: write failed for '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw InputError("--output: cannot rename onto '" + path + "'");
  }
}

int run(const JobSpec& job, std::ostream& out, std::ostream& err) {
  try {
    validate(job);
    const auto start = std::chrono::steady_clock::now();
    const TupleInput in = read_tuple_file(job.input);
    const json result = execute(job, in);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const std::string text = build_report(job, in, result, wall).dump(2) + "\n";
    if (job.output.empty()) out << text;
    else write_atomic(job.output, text);
    return kExitOk;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const BudgetError& e) {
    err << "error: " << e.what() << '\n';
    return kExitBudget;
  } catch (const DegenerateError& e) {
    err << "error: " << e.what() << '\n';
    return kExitDegenerate;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace saff::cli
