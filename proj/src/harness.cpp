#include "smuga/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <thread>

#include <json.hpp>

#include "smuga/error.hpp"

namespace smuga {

namespace {

// A run whose generations stop producing unseen genotypes can never finish
// its budget; give up after this many in a row.
constexpr std::size_t kMaxIdleGenerations = 10000;

}  // namespace

std::string formatNumber(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return ec == std::errc{} ? std::string(buf, ptr) : std::string("nan");
}

ExperimentRecord runOnce(const ExperimentConfig& cfg, const Problem& problem, std::uint64_t seed,
                         bool recordWallTime) {
  const auto start = std::chrono::steady_clock::now();
  Evaluator evaluate(problem, cfg.maxEvaluations);
  RandomStreams streams = RandomStreams::fromSeed(seed);
  std::size_t idle = 0;
  auto madeProgress = [&](std::uint64_t before) {
    idle = evaluate.evaluations() == before ? idle + 1 : 0;
    return idle < kMaxIdleGenerations;
  };

  try {
    if (cfg.algorithm == Algorithm::Muga) {
      MultiPopulation pop =
          initialPopulation(cfg.muga.populationSize, problem.length, evaluate, streams.hostInit);
      while (!evaluate.solved()) {
        const auto before = evaluate.evaluations();
        auto out = mugaStep(pop, cfg.muga, evaluate, streams);
        if (out.exhausted) break;
        pop = std::move(out.population);
        if (!madeProgress(before)) break;
      }
    } else {
      SmugaState state = smugaInit(cfg.smuga, evaluate, streams);
      while (!evaluate.solved()) {
        const auto before = evaluate.evaluations();
        auto out = smugaStep(std::move(state), cfg.smuga, evaluate, streams);
        if (out.exhausted) break;
        state = std::move(out.state);
        if (!madeProgress(before)) break;
      }
    }
  } catch (const BudgetExhausted&) {
    // Initial population did not fit the budget.
  }

  ExperimentRecord rec;
  rec.seed = seed;
  rec.success = evaluate.solved();
  rec.evalsToBest = rec.success ? *evaluate.evaluationsToOptimum() : cfg.maxEvaluations;
  rec.bestValue = evaluate.bestValue();
  if (recordWallTime) {
    rec.wallTimeMs = static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::milliseconds>(
                                                    std::chrono::steady_clock::now() - start)
                                                    .count());
  }
  return rec;
}

namespace {

double quantile(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) return 0;
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

std::pair<double, double> meanStd(const std::vector<double>& xs) {
  if (xs.empty()) return {0, 0};
  double sum = 0;
  for (double x : xs) sum += x;
  const double mean = sum / static_cast<double>(xs.size());
  if (xs.size() < 2) return {mean, 0};
  double ss = 0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / static_cast<double>(xs.size() - 1))};
}

}  // namespace

AggregateStats aggregate(const std::vector<ExperimentRecord>& records) {
  AggregateStats s;
  if (records.empty()) return s;
  std::vector<double> evals;
  std::vector<double> best;
  std::size_t successes = 0;
  for (const auto& r : records) {
    evals.push_back(static_cast<double>(r.evalsToBest));
    best.push_back(r.bestValue);
    successes += r.success;
  }
  std::tie(s.meanEvals, s.stdEvals) = meanStd(evals);
  std::tie(s.meanBest, s.stdBest) = meanStd(best);
  s.successRatePercent = 100.0 * static_cast<double>(successes) / static_cast<double>(records.size());
  std::sort(evals.begin(), evals.end());
  s.minEvals = evals.front();
  s.q1Evals = quantile(evals, 0.25);
  s.medianEvals = quantile(evals, 0.5);
  s.q3Evals = quantile(evals, 0.75);
  s.maxEvals = evals.back();
  return s;
}

std::vector<CurvePoint> successCurve(const std::vector<ExperimentRecord>& records,
                                     std::uint64_t maxEvaluations, std::uint64_t interval) {
  std::vector<std::uint64_t> hits;
  for (const auto& r : records) {
    if (r.success) hits.push_back(r.evalsToBest);
  }
  std::sort(hits.begin(), hits.end());
  const double n = records.empty() ? 1.0 : static_cast<double>(records.size());
  std::vector<CurvePoint> curve;
  for (std::uint64_t t = std::min(interval, maxEvaluations);; t = std::min(t + interval, maxEvaluations)) {
    const auto reached = std::upper_bound(hits.begin(), hits.end(), t) - hits.begin();
    curve.push_back({t, static_cast<double>(reached) / n});
    if (t == maxEvaluations) break;
  }
  return curve;
}

ExperimentResult runExperiment(ExperimentConfig cfg, const RunOptions& options) {
  const Problem problem = makeProblem(cfg.problemId);
  cfg.resolve(problem.length);

  ExperimentResult result;
  result.records.resize(cfg.runs);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cfg.runs; i = next++) {
      result.records[i] = runOnce(cfg, problem, cfg.baseSeed + i, options.recordWallTime);
    }
  };
  const std::size_t jobs = std::clamp<std::size_t>(options.jobs, 1, cfg.runs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }

  result.stats = aggregate(result.records);
  result.curve = successCurve(result.records, cfg.maxEvaluations, cfg.curveSampleInterval);
  result.config = std::move(cfg);
  return result;
}

std::string formatRunsCsv(const std::vector<ExperimentRecord>& records) {
  std::string out = "seed,evals_to_best,best_value,success,wall_time_ms\n";
  for (const auto& r : records) {
    out += std::to_string(r.seed) + ',' + std::to_string(r.evalsToBest) + ',' + formatNumber(r.bestValue) +
           ',' + (r.success ? "true" : "false") + ',' + std::to_string(r.wallTimeMs) + '\n';
  }
  return out;
}

std::string formatCurveTsv(const std::vector<CurvePoint>& curve) {
  std::string out = "evaluations\tsuccess_rate\n";
  for (const auto& p : curve) out += std::to_string(p.evaluations) + '\t' + formatNumber(p.successRate) + '\n';
  return out;
}

namespace {

using Json = nlohmann::ordered_json;

Json statsJson(const AggregateStats& s) {
  return Json{{"mean_evals", s.meanEvals},     {"std_evals", s.stdEvals},
              {"mean_best", s.meanBest},       {"std_best", s.stdBest},
              {"success_rate_percent", s.successRatePercent},
              {"evals_quartiles", {{"min", s.minEvals}, {"q1", s.q1Evals}, {"median", s.medianEvals},
                                   {"q3", s.q3Evals}, {"max", s.maxEvals}}}};
}

Json mugaJson(const MugaConfig& m) {
  return Json{{"population_size", m.populationSize},
              {"mating_pool_size", m.matingPoolSize},
              {"tournament_size", m.tournamentSize},
              {"crossover", std::string(toString(m.crossoverKind))},
              {"crossover_probability", m.crossoverProbability},
              {"roughness", m.mwm.roughness},
              {"thinness", m.mwm.thinness},
              {"min_prob", m.mwm.minProb},
              {"decimation_tournament_size", m.decimationTournamentSize},
              {"rescale_max_total_copies", m.rescaleMaxTotalCopies}};
}

Json configJson(const ExperimentConfig& c) {
  Json j{{"problem", c.problemId},
         {"algorithm", std::string(toString(c.algorithm))},
         {"runs", c.runs},
         {"max_evaluations", c.maxEvaluations},
         {"seed", c.baseSeed},
         {"curve_interval", c.curveSampleInterval},
         {"muga", mugaJson(c.muga)}};
  if (c.algorithm == Algorithm::Smuga) {
    const auto& s = c.smuga;
    const auto& p = s.parasites;
    j["smuga"] = Json{{"hosts", s.hostCount},
                      {"parasites", s.parasiteCount},
                      {"iterations", s.evolutionIterations},
                      {"collaboration_hosts", s.collaborationHostCount},
                      {"infection_shape", s.infectionShape}};
    j["parasites"] = Json{{"selection_tournament_size", p.selectionTournamentSize},
                          {"recombination_pool", p.recombinationPoolSize},
                          {"distinct_offspring", p.distinctOffspring},
                          {"presence", std::string(toString(p.presence))},
                          {"split_k", p.splitK},
                          {"split_n", p.splitN},
                          {"genome_mutation_rate", p.genomeMutationRate},
                          {"initial_length_min", p.initialLengthMin},
                          {"initial_length_max", p.initialLengthMax},
                          {"replacement_tournament_size", p.replacementTournamentSize}};
  }
  return j;
}

void writeFile(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << content;
  out.close();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

// Stages every file under a temporary name and renames them only after all
// were written, so a failure leaves no partial output.
void writeAll(const std::filesystem::path& outDir,
              const std::vector<std::pair<std::string, std::string>>& files) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(outDir, ec);
  if (ec || !fs::is_directory(outDir)) throw IoError("cannot create output directory '" + outDir.string() + "'");

  std::vector<fs::path> staged;
  std::vector<fs::path> placed;
  auto cleanup = [&] {
    for (const auto& p : staged) fs::remove(p, ec);
    for (const auto& p : placed) fs::remove(p, ec);
  };
  try {
    for (const auto& [name, content] : files) {
      staged.push_back(outDir / (name + ".partial"));
      writeFile(staged.back(), content);
    }
    for (std::size_t i = 0; i < files.size(); ++i) {
      fs::rename(staged[i], outDir / files[i].first);
      placed.push_back(outDir / files[i].first);
    }
  } catch (const fs::filesystem_error& e) {
    cleanup();
    throw IoError(e.what());
  } catch (...) {
    cleanup();
    throw;
  }
}

}  // namespace

std::string formatSummaryJson(const ExperimentResult& result) {
  Json j{{"problem", result.config.problemId},
         {"algorithm", std::string(toString(result.config.algorithm))},
         {"stats", statsJson(result.stats)},
         {"config", configJson(result.config)}};
  return j.dump(2) + "\n";
}

void emitOutputs(const ExperimentResult& result, const std::filesystem::path& outDir) {
  writeAll(outDir, {{"runs.csv", formatRunsCsv(result.records)},
                    {"summary.json", formatSummaryJson(result)},
                    {"curve.tsv", formatCurveTsv(result.curve)}});
}

std::vector<ScaleRow> scalingSuite(std::string_view family, const std::vector<std::size_t>& sizes,
                                   const ExperimentConfig& base, const RunOptions& options,
                                   std::vector<ExperimentResult>* details) {
  if (sizes.empty()) throw ConfigError("scaling suite needs at least one size");
  std::vector<ExperimentConfig> configs;
  for (std::size_t size : sizes) {
    ExperimentConfig cfg = base;
    cfg.problemId = familyMember(family, size);
    cfg.resolve(makeProblem(cfg.problemId).length);
    configs.push_back(std::move(cfg));
  }
  std::vector<ScaleRow> rows;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    auto result = runExperiment(configs[i], options);
    rows.push_back({sizes[i], result.config.problemId, makeProblem(result.config.problemId).length, result.stats});
    if (details) details->push_back(std::move(result));
  }
  return rows;
}

std::string formatScaleCsv(const std::vector<ScaleRow>& rows) {
  std::string out =
      "size,problem,bits,mean_evals,std_evals,mean_best,std_best,success_rate_percent,q1_evals,median_evals,"
      "q3_evals\n";
  for (const auto& r : rows) {
    const auto& s = r.stats;
    out += std::to_string(r.size) + ',' + r.problemId + ',' + std::to_string(r.bits) + ',' +
           formatNumber(s.meanEvals) + ',' + formatNumber(s.stdEvals) + ',' + formatNumber(s.meanBest) + ',' +
           formatNumber(s.stdBest) + ',' + formatNumber(s.successRatePercent) + ',' + formatNumber(s.q1Evals) +
           ',' + formatNumber(s.medianEvals) + ',' + formatNumber(s.q3Evals) + '\n';
  }
  return out;
}

}  // namespace smuga
