#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "saff/linalg.hpp"

namespace saff::cli {

inline constexpr const char* kLibraryVersion = "saff 0.1.0";

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitBudget = 3;
inline constexpr int kExitDegenerate = 4;
inline constexpr int kExitInternal = 1;

const std::vector<std::string>& commands();

struct JobSpec {
  std::string command;
  std::string input;
  std::string output;  // empty: report on stdout
  std::optional<double> s;
  std::optional<int> depth;
  std::optional<int> n;  // horizon / point count
  std::optional<int> max_len;
  std::optional<int> reps;
  std::uint64_t seed = 0;
  std::optional<double> tol;
  int threads = 1;
  std::optional<std::uint64_t> budget;
  std::string csv;  // sample-attractor point cloud path
  /// Leave wall_clock_seconds out of the report (byte-for-byte comparisons).
  bool no_timing = false;
};

/// Parsed input file: {"d", "matrices", "labels"?, "translations"?, "weights"?}.
struct TupleInput {
  int d = 0;
  std::vector<Matrix> matrices;
  std::vector<std::string> labels;
  std::vector<Vector> translations;
  std::vector<double> weights;
  nlohmann::json raw;
};

/// Strict schema: unknown keys and missing or malformed fields raise InputError naming the field.
TupleInput parse_tuple(const nlohmann::json& j);
TupleInput read_tuple_file(const std::string& path);

/// The operation's result object.
nlohmann::json execute(const JobSpec& job, const TupleInput& input);

/// Full report: inputs, version, seed, wall-clock and result.
nlohmann::json build_report(const JobSpec& job, const TupleInput& input, const nlohmann::json& result,
                            double wall_clock);

/// Writes via a temporary file in the same directory, then renames.
void write_atomic(const std::string& path, const std::string& content);

/// Runs one job; errors go to `err` and map to the exit codes above.
int run(const JobSpec& job, std::ostream& out, std::ostream& err);

}  // namespace saff::cli
