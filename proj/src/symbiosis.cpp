#include "smuga/symbiosis.hpp"

#include <cmath>

#include "smuga/error.hpp"

namespace smuga {

void SmugaConfig::validate(std::size_t hostLength) const {
  if (hostCount < 2) throw ConfigError("smuga host count must be at least 2");
  if (parasiteCount < 2) throw ConfigError("smuga parasite count must be at least 2");
  if (evolutionIterations < 1) throw ConfigError("smuga iterations must be at least 1");
  if (collaborationHostCount < 1 || collaborationHostCount > hostCount) {
    throw ConfigError("collaboration host count must lie in [1, hosts]");
  }
  if (!(infectionShape > 0)) throw ConfigError("infection shape must be positive");
  if (muga.populationSize != hostCount) throw ConfigError("host engine population size must equal the host count");
  if (parasites.populationSize != parasiteCount) {
    throw ConfigError("parasite engine population size must equal the parasite count");
  }
  muga.validate();
  parasites.validate(hostLength);
}

Genotype applyParasite(Genotype host, const Parasite& par) {
  const std::size_t hostLength = host.size();
  for (std::size_t i = 0; i < par.size(); ++i) host.set(par.hostIndex(i, hostLength), par.genome[i]);
  return host;
}

bool admissible(const Genotype& host, const Parasite& par) { return !presentIn(par, host); }

bool compatible(std::span<const Parasite> applied, const Parasite& candidate, std::size_t hostLength) {
  for (const auto& other : applied) {
    for (std::size_t i = 0; i < candidate.size(); ++i) {
      const std::size_t d = (candidate.hostIndex(i, hostLength) + hostLength - other.position) % hostLength;
      if (d < other.size() && other.genome[d] != candidate.genome[i]) return false;
    }
  }
  return true;
}

double infectionProbability(std::size_t rankIndex, std::size_t popSize, double n) {
  return std::pow(static_cast<double>(rankIndex) / static_cast<double>(popSize), n);
}

MultiPopulation collaborate(const std::vector<Parasite>& parasites, const MultiPopulation& hosts,
                            double n, Evaluator& evaluate, Rng& rng,
                            std::vector<Collaboration>* trace) {
  MultiPopulation symbionts;
  const auto ranked = hosts.ranked();
  const std::size_t hostLength = hosts.genomeLength();
  std::vector<const Parasite*> order;
  order.reserve(parasites.size());
  std::vector<Parasite> applied;

  for (std::size_t index = 1; index <= ranked.size(); ++index) {
    const MultiIndividual& host = *ranked[index - 1];
    const double pInfection = infectionProbability(index, ranked.size(), n);
    for (std::size_t copy = 0; copy < host.copies; ++copy) {
      Genotype symbiosis = host.genotype;
      applied.clear();
      order.clear();
      for (const auto& p : parasites) order.push_back(&p);
      shuffle(order, rng);
      for (const Parasite* par : order) {
        if (!compatible(applied, *par, hostLength) || !admissible(symbiosis, *par)) continue;
        if (!bernoulli(rng, pInfection)) continue;
        symbiosis = applyParasite(std::move(symbiosis), *par);
        applied.push_back(*par);
        symbionts.insert(symbiosis, 1, evaluate(symbiosis));
        if (trace) trace->push_back(Collaboration{host.genotype, applied, symbiosis});
      }
    }
  }
  return symbionts;
}

SmugaState smugaInit(const SmugaConfig& cfg, Evaluator& evaluate, RandomStreams& streams) {
  const std::size_t length = evaluate.problem().length;
  SmugaState state{initialPopulation(cfg.hostCount, length, evaluate, streams.hostInit),
                   initialParasites(cfg.parasites, length, streams.parasiteInit)};
  evaluateParasites(state.parasites, state.hosts, cfg.parasites.presence);
  return state;
}

SmugaStepOutcome smugaStep(SmugaState state, const SmugaConfig& cfg, Evaluator& evaluate,
                           RandomStreams& streams) {
  const std::uint64_t before = evaluate.evaluations();
  try {
    const MultiPopulation selected = tournamentSelect(state.hosts, cfg.collaborationHostCount,
                                                      cfg.muga.tournamentSize, streams.selection);
    const MultiPopulation symbionts =
        collaborate(state.parasites, selected, cfg.infectionShape, evaluate, streams.infection);
    state.hosts = multisetDecimation(std::move(state.hosts), symbionts,
                                     cfg.muga.decimationTournamentSize, streams.replacement);
  } catch (const BudgetExhausted&) {
    return {std::move(state), true, evaluate.evaluations() - before};
  }
  const std::uint64_t collaborationEvaluations = evaluate.evaluations() - before;

  for (std::size_t it = 0; it < cfg.evolutionIterations && !evaluate.solved(); ++it) {
    auto outcome = mugaStep(state.hosts, cfg.muga, evaluate, streams);
    if (outcome.exhausted) return {std::move(state), true, collaborationEvaluations};
    state.hosts = std::move(outcome.population);
    state.parasites = evolveParasites(std::move(state.parasites), state.hosts, cfg.parasites,
                                      streams.parasiteEvolution);
  }
  return {std::move(state), false, collaborationEvaluations};
}

}  // namespace smuga
