#include <algorithm>
#include <fstream>
#include <sstream>

#include <toml.hpp>

#include "smuga/error.hpp"
#include "smuga/harness.hpp"

namespace smuga {

std::string_view toString(Algorithm a) { return a == Algorithm::Muga ? "muga" : "smuga"; }
std::string_view toString(CrossoverKind k) { return k == CrossoverKind::OnePoint ? "one-point" : "uniform"; }

ExperimentConfig presetConfig(std::string_view name) {
  ExperimentConfig cfg;
  if (name == "muga-table1") {
    cfg.algorithm = Algorithm::Muga;
    cfg.muga = MugaConfig{};
    return cfg;
  }
  if (name == "smuga-table1") {
    cfg.algorithm = Algorithm::Smuga;
    cfg.smuga = SmugaConfig{};
    cfg.muga = cfg.smuga.muga;
    return cfg;
  }
  throw ConfigError("unknown preset '" + std::string(name) + "'");
}

std::vector<std::string> presetNames() { return {"muga-table1", "smuga-table1"}; }

void ExperimentConfig::resolve(std::size_t length) {
  if (runs < 1) throw ConfigError("runs must be at least 1");
  if (maxEvaluations < 1) throw ConfigError("max_evaluations must be at least 1");
  if (curveSampleInterval < 1) throw ConfigError("curve_interval must be at least 1");
  if (length == 0) throw ConfigError("problem length must be positive");
  muga.mwm.minProb = minProb.value_or(1.0 / static_cast<double>(length));
  muga.rescaleMaxTotalCopies = rescaleMaxTotalCopies.value_or(2 * muga.populationSize);
  if (algorithm == Algorithm::Muga) {
    muga.validate();
    return;
  }
  smuga.hostCount = muga.populationSize;
  smuga.muga = muga;
  smuga.parasites.populationSize = smuga.parasiteCount;
  smuga.validate(length);
}

namespace {

class TableReader {
 public:
  TableReader(const toml::table& table, std::string section) : table_(table), section_(std::move(section)) {}

  template <typename T>
  void read(std::string_view key, T& out) {
    seen_.emplace_back(key);
    const auto node = table_[key];
    if (!node) return;
    if constexpr (std::is_same_v<T, std::string>) {
      auto v = node.template value<std::string>();
      if (!v || !node.is_string()) fail(key, "a string");
      out = *v;
    } else if constexpr (std::is_same_v<T, bool>) {
      auto v = node.template value<bool>();
      if (!v || !node.is_boolean()) fail(key, "a boolean");
      out = *v;
    } else if constexpr (std::is_same_v<T, double>) {
      auto v = node.template value<double>();
      if (!v) fail(key, "a number");
      out = *v;
    } else if constexpr (std::is_same_v<T, std::optional<double>>) {
      auto v = node.template value<double>();
      if (!v) fail(key, "a number");
      out = *v;
    } else if constexpr (std::is_same_v<T, std::optional<std::size_t>>) {
      std::size_t v = 0;
      readInteger(key, node, v);
      out = v;
    } else {
      readInteger(key, node, out);
    }
  }

  const toml::table* subtable(std::string_view key) {
    seen_.emplace_back(key);
    const auto node = table_[key];
    if (!node) return nullptr;
    if (!node.is_table()) fail(key, "a table");
    return node.as_table();
  }

  void rejectUnknown() const {
    for (const auto& [key, value] : table_) {
      if (std::find(seen_.begin(), seen_.end(), key.str()) == seen_.end()) {
        throw ConfigError("unknown key '" + qualified(key.str()) + "'");
      }
    }
  }

 private:
  template <typename Int>
  void readInteger(std::string_view key, toml::node_view<const toml::node> node, Int& out) {
    auto v = node.template value<std::int64_t>();
    if (!v || !node.is_integer() || *v < 0) fail(key, "a non-negative integer");
    out = static_cast<Int>(*v);
  }

  std::string qualified(std::string_view key) const {
    return section_.empty() ? std::string(key) : section_ + "." + std::string(key);
  }

  [[noreturn]] void fail(std::string_view key, const char* expected) const {
    throw ConfigError("'" + qualified(key) + "' must be " + expected);
  }

  const toml::table& table_;
  std::string section_;
  std::vector<std::string> seen_;
};

CrossoverKind parseCrossover(const std::string& s) {
  if (s == "one-point") return CrossoverKind::OnePoint;
  if (s == "uniform") return CrossoverKind::Uniform;
  throw ConfigError("crossover must be 'one-point' or 'uniform', got '" + s + "'");
}

Presence parsePresence(const std::string& s) {
  if (s == "anchored") return Presence::Anchored;
  if (s == "anywhere") return Presence::Anywhere;
  throw ConfigError("presence must be 'anchored' or 'anywhere', got '" + s + "'");
}

}  // namespace

std::string_view toString(Presence p) { return p == Presence::Anchored ? "anchored" : "anywhere"; }

ExperimentConfig parseConfig(std::string_view tomlText) {
  toml::table root;
  try {
    root = toml::parse(tomlText);
  } catch (const toml::parse_error& e) {
    std::ostringstream msg;
    msg << "config parse error: " << e.description() << " at line " << e.source().begin.line;
    throw ConfigError(msg.str());
  }

  TableReader top(root, "");
  std::string preset;
  std::string algorithm;
  top.read("preset", preset);
  top.read("algorithm", algorithm);
  if (preset.empty()) preset = algorithm == "muga" ? "muga-table1" : "smuga-table1";
  ExperimentConfig cfg = presetConfig(preset);
  if (!algorithm.empty()) {
    if (algorithm == "muga") {
      cfg.algorithm = Algorithm::Muga;
    } else if (algorithm == "smuga") {
      cfg.algorithm = Algorithm::Smuga;
    } else {
      throw ConfigError("algorithm must be 'muga' or 'smuga', got '" + algorithm + "'");
    }
  }

  top.read("problem", cfg.problemId);
  top.read("runs", cfg.runs);
  top.read("max_evaluations", cfg.maxEvaluations);
  top.read("seed", cfg.baseSeed);
  top.read("curve_interval", cfg.curveSampleInterval);

  if (const auto* t = top.subtable("muga")) {
    TableReader r(*t, "muga");
    std::string crossover(toString(cfg.muga.crossoverKind));
    r.read("population_size", cfg.muga.populationSize);
    r.read("mating_pool_size", cfg.muga.matingPoolSize);
    r.read("tournament_size", cfg.muga.tournamentSize);
    r.read("crossover", crossover);
    r.read("crossover_probability", cfg.muga.crossoverProbability);
    r.read("roughness", cfg.muga.mwm.roughness);
    r.read("thinness", cfg.muga.mwm.thinness);
    r.read("min_prob", cfg.minProb);
    r.read("decimation_tournament_size", cfg.muga.decimationTournamentSize);
    r.read("rescale_max_total_copies", cfg.rescaleMaxTotalCopies);
    r.rejectUnknown();
    cfg.muga.crossoverKind = parseCrossover(crossover);
  }
  if (const auto* t = top.subtable("smuga")) {
    TableReader r(*t, "smuga");
    r.read("hosts", cfg.muga.populationSize);
    r.read("parasites", cfg.smuga.parasiteCount);
    r.read("iterations", cfg.smuga.evolutionIterations);
    r.read("collaboration_hosts", cfg.smuga.collaborationHostCount);
    r.read("infection_shape", cfg.smuga.infectionShape);
    r.rejectUnknown();
  }
  if (const auto* t = top.subtable("parasites")) {
    TableReader r(*t, "parasites");
    auto& p = cfg.smuga.parasites;
    std::string presence(toString(p.presence));
    r.read("selection_tournament_size", p.selectionTournamentSize);
    r.read("recombination_pool", p.recombinationPoolSize);
    r.read("distinct_offspring", p.distinctOffspring);
    r.read("presence", presence);
    r.read("split_k", p.splitK);
    r.read("split_n", p.splitN);
    r.read("genome_mutation_rate", p.genomeMutationRate);
    r.read("initial_length_min", p.initialLengthMin);
    r.read("initial_length_max", p.initialLengthMax);
    r.read("replacement_tournament_size", p.replacementTournamentSize);
    r.rejectUnknown();
    p.presence = parsePresence(presence);
  }
  top.rejectUnknown();
  return cfg;
}

ExperimentConfig loadConfig(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file '" + file.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parseConfig(text.str());
}

}  // namespace smuga
