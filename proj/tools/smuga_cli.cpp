// Command-line experiment runner.
//
//   smuga run --config exp.toml --out results/ [--runs N] [--seed S] [--jobs J]
//   smuga scale --family f3 --sizes 10,20,40 --config exp.toml --out results/
//   smuga list-problems
//
// Exit status: 0 on completion, 2 on configuration errors, 3 on I/O errors.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <thread>

#include <CLI11.hpp>

#include "smuga/error.hpp"
#include "smuga/harness.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

void printSummary(const smuga::ExperimentResult& r) {
  const auto& s = r.stats;
  std::cout << r.config.problemId << " [" << smuga::toString(r.config.algorithm) << "] runs=" << r.records.size()
            << " success=" << smuga::formatNumber(s.successRatePercent) << "% mean_evals="
            << smuga::formatNumber(s.meanEvals) << " std_evals=" << smuga::formatNumber(s.stdEvals)
            << " mean_best=" << smuga::formatNumber(s.meanBest) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multiset and symbiogenetic genetic algorithms on deceptive benchmarks"};
  app.require_subcommand(1);

  std::string configPath;
  std::string outDir;
  std::optional<std::size_t> runs;
  std::optional<std::uint64_t> seed;
  std::size_t jobs = std::max(1U, std::thread::hardware_concurrency());
  bool wallTime = false;

  auto* run = app.add_subcommand("run", "Run a batch of seeded experiments");
  run->add_option("--config", configPath, "TOML experiment file")->required();
  run->add_option("--out", outDir, "Output directory")->required();
  run->add_option("--runs", runs, "Override the number of runs");
  run->add_option("--seed", seed, "Override the base seed");
  run->add_option("--jobs", jobs, "Parallel runs")->check(CLI::PositiveNumber);
  run->add_flag("--wall-time", wallTime, "Record wall-clock milliseconds per run");

  std::string family;
  std::vector<std::size_t> sizes;
  auto* scale = app.add_subcommand("scale", "Run one experiment per problem size of a family");
  scale->add_option("--family", family, "Problem family (f3, f3s, trap-l, d4pi, d4pi01, onesmax)")->required();
  scale->add_option("--sizes", sizes, "Comma separated sizes")->required()->delimiter(',');
  scale->add_option("--config", configPath, "TOML experiment file")->required();
  scale->add_option("--out", outDir, "Output directory")->required();
  scale->add_option("--runs", runs, "Override the number of runs");
  scale->add_option("--seed", seed, "Override the base seed");
  scale->add_option("--jobs", jobs, "Parallel runs")->check(CLI::PositiveNumber);
  scale->add_flag("--wall-time", wallTime, "Record wall-clock milliseconds per run");

  auto* list = app.add_subcommand("list-problems", "List the benchmark problem identifiers");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  if (list->parsed()) {
    for (const auto& f : smuga::problemFamilies()) {
      std::printf("%-10s %-10s %s\n", f.family.c_str(), f.pattern.c_str(), f.description.c_str());
    }
    return 0;
  }

  const smuga::RunOptions options{.jobs = jobs, .recordWallTime = wallTime};
  try {
    smuga::ExperimentConfig cfg = smuga::loadConfig(configPath);
    if (runs) cfg.runs = *runs;
    if (seed) cfg.baseSeed = *seed;

    if (run->parsed()) {
      cfg.resolve(smuga::makeProblem(cfg.problemId).length);
      const auto result = smuga::runExperiment(cfg, options);
      smuga::emitOutputs(result, outDir);
      printSummary(result);
      return 0;
    }

    std::vector<smuga::ExperimentResult> details;
    const auto rows = smuga::scalingSuite(family, sizes, cfg, options, &details);
    for (const auto& r : details) {
      smuga::emitOutputs(r, std::filesystem::path(outDir) / r.config.problemId);
      printSummary(r);
    }
    std::filesystem::create_directories(outDir);
    std::ofstream table(std::filesystem::path(outDir) / "scale.csv", std::ios::binary);
    table << smuga::formatScaleCsv(rows);
    if (!table) throw smuga::IoError("cannot write scale.csv");
    return 0;
  } catch (const smuga::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const smuga::StructuralError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const smuga::IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kExitIo;
  }
}
