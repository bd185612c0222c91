#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "saff/cli.hpp"

using namespace saff::cli;
using nlohmann::json;

namespace {

std::filesystem::path corpus(const std::string& name) {
  return std::filesystem::path(SAFF_CORPUS_DIR) / (name + ".json");
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "saff_cli_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

struct Outcome {
  int code;
  json report;
  std::string err;
};

Outcome run_job(JobSpec job) {
  std::ostringstream out, err;
  job.no_timing = true;
  const int code = run(job, out, err);
  Outcome o{code, json(), err.str()};
  if (code == 0 && job.output.empty()) o.report = json::parse(out.str());
  if (code == 0 && !job.output.empty()) o.report = json::parse(slurp(job.output));
  return o;
}

JobSpec job(const std::string& cmd, const std::string& input) {
  JobSpec j;
  j.command = cmd;
  j.input = corpus(input).string();
  return j;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("affdim on equal similitudes") {
    JobSpec j = job("affdim", "half_identity_n2");
    j.depth = 12;
    j.tol = 1e-3;
    const Outcome o = run_job(j);
    REQUIRE(o.code == 0);
    const json& r = o.report["result"];
    CHECK(r["s_lo"].get<double>() <= 1.0);
    CHECK(r["s_hi"].get<double>() >= 1.0);
    CHECK(r["width"].get<double>() <= 1e-3);
    CHECK(o.report["library_version"] == kLibraryVersion);
    CHECK(o.report["command"] == "affdim");
    CHECK(o.report.contains("seed"));
    CHECK(o.report["input"]["tuple"]["d"] == 2);
  }

  TEST_CASE("structure on the quarter rotation") {
    const Outcome o = run_job(job("structure", "rotation_quarter"));
    REQUIRE(o.code == 0);
    const json& r = o.report["result"];
    CHECK(r["triangularizable"]["verdict"] == "NO");
    CHECK(r["strongly_irreducible"]["1"]["verdict"] == "NO");
    CHECK(r["strongly_irreducible"]["1"]["witness"].size() == 2);
  }

  TEST_CASE("input errors name the field") {
    const auto bad = scratch("missing_d.json");
    std::ofstream(bad) << R"({"matrices": [[[0.5]]]})";
    JobSpec j;
    j.command = "svf";
    j.input = bad.string();
    j.s = 1.0;
    Outcome o = run_job(j);
    CHECK(o.code == kExitInput);
    CHECK(o.err.find("d:") != std::string::npos);

    std::ofstream(bad) << R"({"d": 1, "matrices": [[[0.5]]], "extra": 1})";
    o = run_job(j);
    CHECK(o.code == kExitInput);
    CHECK(o.err.find("extra") != std::string::npos);

    std::ofstream(bad) << R"({"d": 2, "matrices": [[[0.5, 0], [0]]]})";
    o = run_job(j);
    CHECK(o.code == kExitInput);
    CHECK(o.err.find("matrices[0][1]") != std::string::npos);

    std::ofstream(bad) << R"({"d": 2, "matrices": )";
    o = run_job(j);
    CHECK(o.code == kExitInput);

    JobSpec k = job("pressure", "generic_3d");
    k.s = 1.0;
    o = run_job(k);
    CHECK(o.code == kExitInput);
    CHECK(o.err.find("--depth") != std::string::npos);
    k.depth = 2;
    k.s = -1.0;
    o = run_job(k);
    CHECK(o.code == kExitInput);
    CHECK(o.err.find("--s") != std::string::npos);
  }

  TEST_CASE("budget and degeneracy exit codes") {
    JobSpec j = job("pressure", "generic_3d");
    j.s = 1.0;
    j.depth = 30;
    const Outcome o = run_job(j);
    CHECK(o.code == kExitBudget);
    CHECK(o.err.find("budget") != std::string::npos);

    const auto sing = scratch("singular.json");
    std::ofstream(sing) << R"({"d": 2, "matrices": [[[1, 0], [0, 0]]]})";
    JobSpec k;
    k.command = "svf";
    k.input = sing.string();
    k.s = 1.0;
    CHECK(run_job(k).code == kExitDegenerate);
  }

  TEST_CASE("precondition failures exit with the input code") {
    JobSpec j = job("affdim", "axis_swap");
    j.depth = 4;
    CHECK(run_job(j).code == kExitInput);
  }

  TEST_CASE("reports are byte-identical across runs and thread counts") {
    JobSpec j = job("gibbs", "irreducible_generic_2d");
    j.s = 1.2;
    j.depth = 8;
    j.output = scratch("g1.json").string();
    REQUIRE(run_job(j).code == 0);
    j.output = scratch("g2.json").string();
    j.threads = 4;
    REQUIRE(run_job(j).code == 0);
    json a = json::parse(slurp(scratch("g1.json"))), b = json::parse(slurp(scratch("g2.json")));
    a["parameters"].erase("threads");
    b["parameters"].erase("threads");
    CHECK(a.dump() == b.dump());
    j.output = scratch("g3.json").string();
    REQUIRE(run_job(j).code == 0);
    CHECK(slurp(scratch("g2.json")) == slurp(scratch("g3.json")));
  }

  TEST_CASE("numbers round-trip through the report") {
    JobSpec j = job("dualize", "generic_3d");
    j.s = 1.4;
    const Outcome o = run_job(j);
    REQUIRE(o.code == 0);
    const json again = json::parse(o.report.dump());
    CHECK(again == o.report);
    CHECK(o.report["result"]["s_dual"].get<double>() == doctest::Approx(1.6));
  }

  TEST_CASE("every command runs on a suitable corpus file") {
    struct Case {
      std::string cmd, input;
    };
    const std::vector<Case> cases{
        {"svf", "generic_3d"},          {"pressure", "irreducible_rotation_diag"}, {"affdim", "third_similitudes_n3"},
        {"lyapunov", "diagonal_pair"},  {"gibbs", "scalar_1d"},                    {"structure", "unipotent_pair"},
        {"check-sep", "generic_3d"},    {"check-similitude", "conjugated_similitudes"},
        {"check-mult", "irreducible_generic_2d"},                                  {"fw-check", "conjugated_similitudes"},
        {"dualize", "generic_3d"},      {"sample-attractor", "third_similitudes_n3"},
        {"lemma3", "block_diagonal_4d"}};
    for (const Case& c : cases) {
      JobSpec j = job(c.cmd, c.input);
      j.s = c.cmd == "lemma3" ? 1.5 : 1.0;
      j.depth = 6;
      j.n = 200;
      j.reps = 8;
      j.max_len = 3;
      j.output = scratch(c.cmd + ".json").string();
      const Outcome o = run_job(j);
      INFO(c.cmd << ": " << o.err);
      CHECK(o.code == 0);
      CHECK(o.report.contains("result"));
    }
    const std::string csv = slurp(scratch("sample-attractor.json").string() + ".csv");
    CHECK(csv.rfind("x1,x2\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 201);
  }

  TEST_CASE("atomic write replaces the target") {
    const auto p = scratch("atomic.txt");
    write_atomic(p.string(), "one");
    write_atomic(p.string(), "two");
    CHECK(slurp(p) == "two");
    for (const auto& e : std::filesystem::directory_iterator(p.parent_path())) {
      CHECK(e.path().filename().string().find(".tmp.") == std::string::npos);
    }
  }
}
