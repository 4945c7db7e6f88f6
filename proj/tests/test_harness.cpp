#include <doctest.h>

#include <clocale>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "smuga/error.hpp"
#include "smuga/harness.hpp"

using namespace smuga;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::filesystem::path scratchDir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("smuga_test_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

ExperimentConfig quick(const char* toml) { return parseConfig(toml); }

}  // namespace

TEST_CASE("presets carry the reference settings") {
  const auto m = presetConfig("muga-table1");
  CHECK((m.algorithm == Algorithm::Muga));
  CHECK(m.muga.populationSize == 128);
  CHECK(m.muga.matingPoolSize == 256);
  CHECK(m.muga.tournamentSize == 3);
  CHECK((m.muga.crossoverKind == CrossoverKind::OnePoint));
  CHECK(m.muga.crossoverProbability == 0.6);
  CHECK(m.muga.mwm.roughness == 2);
  CHECK(m.muga.mwm.thinness == 3);

  const auto s = presetConfig("smuga-table1");
  CHECK((s.algorithm == Algorithm::Smuga));
  CHECK(s.muga.populationSize == 32);
  CHECK((s.muga.crossoverKind == CrossoverKind::Uniform));
  CHECK(s.smuga.parasiteCount == 32);
  CHECK(s.smuga.collaborationHostCount == 16);
  CHECK(s.smuga.infectionShape == 1.0);
  CHECK(s.smuga.evolutionIterations == 16);
  CHECK_THROWS_AS(presetConfig("table9"), ConfigError);
}

TEST_CASE("resolve fills the length-dependent settings") {
  auto c = presetConfig("muga-table1");
  c.resolve(30);
  CHECK(c.muga.mwm.minProb == doctest::Approx(1.0 / 30));
  CHECK(c.muga.rescaleMaxTotalCopies == 256);
  auto s = presetConfig("smuga-table1");
  s.muga.populationSize = 40;
  s.smuga.parasiteCount = 12;
  s.resolve(30);
  CHECK(s.smuga.hostCount == 40);
  CHECK(s.smuga.muga.populationSize == 40);
  CHECK(s.smuga.parasites.populationSize == 12);
}

TEST_CASE("config parsing overrides presets") {
  const auto c = quick(R"(
preset = "smuga-table1"
problem = "trap-4-16"
runs = 5
max_evaluations = 1234
seed = 77
curve_interval = 10
[muga]
tournament_size = 4
crossover = "one-point"
min_prob = 0.01
[smuga]
hosts = 16
collaboration_hosts = 8
infection_shape = 2.5
[parasites]
split_k = 1.5
recombination_pool = 4
distinct_offspring = false
presence = "anchored"
)");
  CHECK(c.problemId == "trap-4-16");
  CHECK(c.runs == 5);
  CHECK(c.maxEvaluations == 1234);
  CHECK(c.baseSeed == 77);
  CHECK(c.curveSampleInterval == 10);
  CHECK(c.muga.tournamentSize == 4);
  CHECK((c.muga.crossoverKind == CrossoverKind::OnePoint));
  CHECK(c.minProb == 0.01);
  CHECK(c.muga.populationSize == 16);
  CHECK(c.smuga.collaborationHostCount == 8);
  CHECK(c.smuga.infectionShape == 2.5);
  CHECK(c.smuga.parasites.splitK == 1.5);
  CHECK(c.smuga.parasites.recombinationPoolSize == 4);
  CHECK_FALSE(c.smuga.parasites.distinctOffspring);
  CHECK((c.smuga.parasites.presence == Presence::Anchored));
}

TEST_CASE("the algorithm key picks its preset") {
  CHECK(quick("algorithm = \"muga\"").muga.populationSize == 128);
  CHECK((quick("").algorithm == Algorithm::Smuga));
}

TEST_CASE("config errors") {
  for (const char* bad : {
           "runs = ",                        // syntax
           "runz = 3",                       // unknown key
           "runs = -1",                      // negative
           "runs = 2.5",                     // not an integer
           "problem = 3",                    // wrong type
           "algorithm = \"ga\"",             // unknown algorithm
           "preset = \"nope\"",              // unknown preset
           "[muga]\ncrossover = \"two\"",    // unknown crossover
           "[muga]\nbogus = 1",              // unknown nested key
           "muga = 3",                       // not a table
           "[parasites]\npresence = \"x\"",  // unknown presence
           "[parasites]\ndistinct_offspring = 1",
       }) {
    INFO(std::string(bad));
    CHECK_THROWS_AS(parseConfig(bad), ConfigError);
  }
  CHECK_THROWS_AS(loadConfig("/nonexistent/dir/x.toml"), ConfigError);
}

TEST_CASE("semantic config errors surface when resolving") {
  auto c = quick("runs = 0");
  CHECK_THROWS_AS(c.resolve(30), ConfigError);
  c = quick("[smuga]\ncollaboration_hosts = 99");
  CHECK_THROWS_AS(c.resolve(30), ConfigError);
  c = quick("[parasites]\ninitial_length_max = 40");
  CHECK_THROWS_AS(c.resolve(30), ConfigError);
  CHECK_THROWS_AS(runExperiment(quick("problem = \"zzz\"")), ConfigError);
}

TEST_CASE("a trivial instance is solved") {
  auto c = quick("algorithm = \"muga\"\nproblem = \"onesmax-4\"\nmax_evaluations = 1000\n[muga]\npopulation_size = 4\nmating_pool_size = 4");
  const Problem p = makeProblem("onesmax-4");
  c.resolve(p.length);
  const auto r = runOnce(c, p, 1);
  CHECK(r.success);
  CHECK(r.bestValue == 4);
  CHECK(r.evalsToBest <= 16);
}

TEST_CASE("an exhausted budget is censored at the maximum") {
  for (const char* alg : {"muga", "smuga"}) {
    auto c = quick("problem = \"f3x10\"\nmax_evaluations = 1");
    c.algorithm = std::string(alg) == "muga" ? Algorithm::Muga : Algorithm::Smuga;
    if (c.algorithm == Algorithm::Muga) c.muga = presetConfig("muga-table1").muga;
    const Problem p = makeProblem("f3x10");
    c.resolve(p.length);
    const auto r = runOnce(c, p, 3);
    CHECK_FALSE(r.success);
    CHECK(r.evalsToBest == 1);
  }
}

TEST_CASE("aggregate statistics") {
  std::vector<ExperimentRecord> recs{{1, 10, 5, true, 0}, {2, 20, 7, true, 0}, {3, 30, 6, false, 0},
                                     {4, 40, 2, false, 0}};
  const auto s = aggregate(recs);
  CHECK(s.meanEvals == 25);
  CHECK(s.stdEvals == doctest::Approx(12.909944487358056));
  CHECK(s.meanBest == 5);
  CHECK(s.successRatePercent == 50);
  CHECK(s.minEvals == 10);
  CHECK(s.q1Evals == 17.5);
  CHECK(s.medianEvals == 25);
  CHECK(s.q3Evals == 32.5);
  CHECK(s.maxEvals == 40);
  const auto one = aggregate({{1, 10, 5, true, 0}});
  CHECK(one.stdEvals == 0);
  CHECK(one.medianEvals == 10);
}

TEST_CASE("success curve") {
  std::vector<ExperimentRecord> recs{{1, 10, 1, true, 0}, {2, 25, 1, true, 0}, {3, 100, 0, false, 0},
                                     {4, 30, 1, true, 0}};
  const auto curve = successCurve(recs, 100, 30);
  REQUIRE(curve.size() == 4);
  CHECK(curve[0].evaluations == 30);
  CHECK(curve[0].successRate == 0.75);
  CHECK(curve[1].evaluations == 60);
  CHECK(curve[3].evaluations == 100);
  CHECK(curve[3].successRate == 0.75);
  const auto fine = successCurve(recs, 100, 1);
  CHECK(fine.size() == 100);
  CHECK(fine[8].successRate == 0);
  CHECK(fine[9].successRate == 0.25);
  for (std::size_t i = 1; i < fine.size(); ++i) CHECK(fine[i].successRate >= fine[i - 1].successRate);
  CHECK(fine.back().successRate == aggregate(recs).successRatePercent / 100);
}

TEST_CASE("output formats") {
  CHECK(formatRunsCsv({{5, 120, 299.5, false, 0}}) ==
        "seed,evals_to_best,best_value,success,wall_time_ms\n5,120,299.5,false,0\n");
  CHECK(formatCurveTsv({{100, 0.5}, {200, 1}}) == "evaluations\tsuccess_rate\n100\t0.5\n200\t1\n");
  CHECK(formatNumber(0.1) == "0.1");
  CHECK(formatNumber(3309.79) == "3309.79");
  CHECK(formatNumber(300) == "300");
}

TEST_CASE("outputs ignore the C locale") {
  // Only takes effect where such a locale is installed.
  const char* old = std::setlocale(LC_NUMERIC, nullptr);
  const std::string saved = old ? old : "C";
  if (std::setlocale(LC_NUMERIC, "de_DE.UTF-8")) {
    CHECK(formatNumber(2.5) == "2.5");
    CHECK(formatCurveTsv({{1, 0.25}}).find("0.25") != std::string::npos);
  }
  std::setlocale(LC_NUMERIC, saved.c_str());
}

TEST_CASE("experiments are reproducible to the byte") {
  const char* toml = "problem = \"f3x4\"\nruns = 3\nmax_evaluations = 3000\ncurve_interval = 250\n";
  const auto a = runExperiment(quick(toml), {.jobs = 1});
  const auto b = runExperiment(quick(toml), {.jobs = 3});
  CHECK(formatRunsCsv(a.records) == formatRunsCsv(b.records));
  CHECK(formatSummaryJson(a) == formatSummaryJson(b));
  CHECK(formatCurveTsv(a.curve) == formatCurveTsv(b.curve));
  std::size_t i = 0;
  for (const auto& r : a.records) {
    CHECK(r.seed == 1 + i++);
    CHECK(r.evalsToBest <= 3000);
    if (r.success) CHECK(r.bestValue == 120);
  }

  const auto dir = scratchDir("emit");
  emitOutputs(a, dir);
  CHECK(slurp(dir / "runs.csv") == formatRunsCsv(a.records));
  const auto summary = nlohmann::json::parse(slurp(dir / "summary.json"));
  CHECK(summary["stats"]["success_rate_percent"].get<double>() == a.stats.successRatePercent);
  CHECK(summary["config"]["problem"].get<std::string>() == "f3x4");
  CHECK(summary["config"]["parasites"]["presence"].get<std::string>() == "anywhere");
  CHECK(slurp(dir / "curve.tsv").rfind("evaluations\tsuccess_rate\n", 0) == 0);
  std::filesystem::remove_all(dir);
}

TEST_CASE("an unwritable output leaves nothing behind") {
  const auto dir = scratchDir("blocked");
  std::filesystem::create_directories(dir);
  // A directory where a file must go makes the final rename fail.
  std::filesystem::create_directories(dir / "curve.tsv" / "x");
  const auto r = runExperiment(quick("problem = \"f3x2\"\nruns = 1\nmax_evaluations = 100"));
  CHECK_THROWS_AS(emitOutputs(r, dir), IoError);
  CHECK_FALSE(std::filesystem::exists(dir / "runs.csv"));
  CHECK_FALSE(std::filesystem::exists(dir / "runs.csv.partial"));
  CHECK_FALSE(std::filesystem::exists(dir / "summary.json.partial"));
  CHECK_THROWS_AS(emitOutputs(r, "/proc/definitely/not/here"), IoError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("scaling suite") {
  const auto rows = scalingSuite("f3", {2, 4}, quick("runs = 2\nmax_evaluations = 2000"));
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].problemId == "f3x2");
  CHECK(rows[1].bits == 12);
  const auto csv = formatScaleCsv(rows);
  CHECK(csv.rfind("size,problem,bits,", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
  CHECK(scalingSuite("f3", {3}, quick("runs = 1\nmax_evaluations = 500")).size() == 1);
  CHECK_THROWS_AS(scalingSuite("f3", {}, quick("")), ConfigError);
  CHECK_THROWS_AS(scalingSuite("nope", {2}, quick("")), ConfigError);
}
