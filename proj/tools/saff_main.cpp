#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "saff/cli.hpp"

int main(int argc, char** argv) {
  saff::cli::JobSpec job;
  CLI::App app{"Thermodynamic formalism for affine iterated function systems"};
  app.set_version_flag("--version", saff::cli::kLibraryVersion);
  app.add_option("command", job.command, "Operation to run")
      ->required()
      ->check(CLI::IsMember(saff::cli::commands()));
  app.add_option("--input", job.input, "Tuple description (JSON)")->required();
  app.add_option("--output", job.output, "Report path (default: stdout)");
  app.add_option("--s", job.s, "Singular value function exponent");
  app.add_option("--depth", job.depth, "Word length n");
  app.add_option("--n", job.n, "Horizon, point count or iteration cap");
  app.add_option("--max-len", job.max_len, "Maximum word length for searches and samples");
  app.add_option("--reps", job.reps, "Replicas, sampled pairs or burn-in length");
  app.add_option("--seed", job.seed, "PRNG seed");
  app.add_option("--tol", job.tol, "Tolerance");
  app.add_option("--threads", job.threads, "Worker threads");
  app.add_option("--budget", job.budget, "Word budget for enumerations");
  app.add_option("--csv", job.csv, "Point cloud output (sample-attractor)");
  app.add_flag("--no-timing", job.no_timing, "Omit wall_clock_seconds from the report");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return saff::cli::kExitInput;
  }
  return saff::cli::run(job, std::cout, std::cerr);
}
