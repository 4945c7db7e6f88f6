#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "smuga/muga.hpp"
#include "smuga/symbiosis.hpp"

namespace smuga {

enum class Algorithm { Muga, Smuga };

std::string_view toString(Algorithm a);
std::string_view toString(CrossoverKind k);
std::string_view toString(Presence p);

struct ExperimentConfig {
  std::string problemId = "f3x10";
  Algorithm algorithm = Algorithm::Smuga;
  std::size_t runs = 32;
  std::uint64_t maxEvaluations = 30000;
  std::uint64_t baseSeed = 1;
  std::uint64_t curveSampleInterval = 100;
  MugaConfig muga;
  SmugaConfig smuga;
  /// MWM floor; unset means 1/L of the problem.
  std::optional<double> minProb;
  /// Rescale cap; unset means twice the population size.
  std::optional<std::size_t> rescaleMaxTotalCopies;

  /// Validates and fills every derived field for problem length `length`.
  void resolve(std::size_t length);
};

/// Named reference presets: "muga-table1" and "smuga-table1".
ExperimentConfig presetConfig(std::string_view name);
std::vector<std::string> presetNames();

/// Parses a TOML experiment description. Throws ConfigError.
ExperimentConfig parseConfig(std::string_view tomlText);
ExperimentConfig loadConfig(const std::filesystem::path& file);

struct ExperimentRecord {
  std::uint64_t seed = 0;
  std::uint64_t evalsToBest = 0;
  double bestValue = 0.0;
  bool success = false;
  std::uint64_t wallTimeMs = 0;
};

struct AggregateStats {
  double meanEvals = 0, stdEvals = 0;
  double meanBest = 0, stdBest = 0;
  double successRatePercent = 0;
  double minEvals = 0, q1Evals = 0, medianEvals = 0, q3Evals = 0, maxEvals = 0;
};

struct CurvePoint {
  std::uint64_t evaluations = 0;
  double successRate = 0;
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<ExperimentRecord> records;
  AggregateStats stats;
  std::vector<CurvePoint> curve;
};

struct RunOptions {
  std::size_t jobs = 1;
  /// Record wall-clock time per run; off keeps outputs byte-reproducible.
  bool recordWallTime = false;
};

/// One run with the given seed. `cfg` must be resolved.
ExperimentRecord runOnce(const ExperimentConfig& cfg, const Problem& problem, std::uint64_t seed,
                         bool recordWallTime = false);

ExperimentResult runExperiment(ExperimentConfig cfg, const RunOptions& options = {});

AggregateStats aggregate(const std::vector<ExperimentRecord>& records);
std::vector<CurvePoint> successCurve(const std::vector<ExperimentRecord>& records,
                                     std::uint64_t maxEvaluations, std::uint64_t interval);

/// Writes runs.csv, summary.json and curve.tsv into `outDir`. Nothing is
/// left behind on failure. Throws IoError.
void emitOutputs(const ExperimentResult& result, const std::filesystem::path& outDir);

std::string formatRunsCsv(const std::vector<ExperimentRecord>& records);
std::string formatCurveTsv(const std::vector<CurvePoint>& curve);
std::string formatSummaryJson(const ExperimentResult& result);

struct ScaleRow {
  std::size_t size = 0;
  std::string problemId;
  std::size_t bits = 0;
  AggregateStats stats;
};

/// Runs the template config over members of a problem family.
std::vector<ScaleRow> scalingSuite(std::string_view family, const std::vector<std::size_t>& sizes,
                                   const ExperimentConfig& base, const RunOptions& options = {},
                                   std::vector<ExperimentResult>* details = nullptr);
std::string formatScaleCsv(const std::vector<ScaleRow>& rows);

/// Locale-independent shortest round-trip decimal.
std::string formatNumber(double value);

}  // namespace smuga
