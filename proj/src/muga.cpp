#include "smuga/muga.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "smuga/error.hpp"

namespace smuga {

void MwmConfig::validate() const {
  if (!(roughness > 0)) throw ConfigError("mwm roughness must be positive");
  if (!(thinness > 0)) throw ConfigError("mwm thinness must be positive");
  if (!(minProb >= 0 && minProb <= 1)) throw ConfigError("mwm min_prob must lie in [0, 1]");
}

void MugaConfig::validate() const {
  if (populationSize < 2) throw ConfigError("muga population size must be at least 2");
  if (matingPoolSize < 2) throw ConfigError("muga mating pool size must be at least 2");
  if (tournamentSize < 1) throw ConfigError("muga tournament size must be at least 1");
  if (decimationTournamentSize < 1) throw ConfigError("decimation tournament size must be at least 1");
  if (!(crossoverProbability >= 0 && crossoverProbability <= 1)) {
    throw ConfigError("crossover probability must lie in [0, 1]");
  }
  if (rescaleMaxTotalCopies < populationSize) {
    throw ConfigError("rescale cap must be at least the population size");
  }
  mwm.validate();
}

MultiPopulation tournamentSelect(const MultiPopulation& pop, std::size_t count,
                                 std::size_t tournamentSize, Rng& rng) {
  MultiPopulation selected;
  if (pop.empty()) return selected;
  const auto pool = pop.expand();
  for (std::size_t t = 0; t < count; ++t) {
    const MultiIndividual* best = pool[uniformIndex(rng, pool.size())];
    for (std::size_t k = 1; k < tournamentSize; ++k) {
      const MultiIndividual* challenger = pool[uniformIndex(rng, pool.size())];
      if (rankedBefore(*challenger, *best)) best = challenger;
    }
    selected.insert(best->genotype, 1, best->fitness);
  }
  return selected;
}

std::pair<Genotype, Genotype> onePointCrossover(const Genotype& a, const Genotype& b,
                                                std::size_t cut) {
  if (a.size() != b.size()) throw StructuralError("crossover parents differ in length");
  Genotype c1 = a;
  Genotype c2 = b;
  for (std::size_t i = cut; i < a.size(); ++i) {
    c1.set(i, b[i]);
    c2.set(i, a[i]);
  }
  return {std::move(c1), std::move(c2)};
}

std::pair<Genotype, Genotype> crossover(const Genotype& a, const Genotype& b, CrossoverKind kind,
                                        double probability, Rng& rng) {
  if (a.size() != b.size()) throw StructuralError("crossover parents differ in length");
  if (a.size() < 2 || !bernoulli(rng, probability)) return {a, b};
  if (kind == CrossoverKind::OnePoint) {
    return onePointCrossover(a, b, 1 + uniformIndex(rng, a.size() - 1));
  }
  Genotype c1 = a;
  Genotype c2 = b;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (bernoulli(rng, 0.5)) {
      c1.set(i, b[i]);
      c2.set(i, a[i]);
    }
  }
  return {std::move(c1), std::move(c2)};
}

double waveFunction(std::size_t copy, const MwmConfig& cfg) {
  const double phase = std::numbers::pi / 2 + static_cast<double>(copy - 1) / cfg.roughness;
  const double base = std::clamp((std::sin(phase) + 1.0) / 2.0, 0.0, 1.0);
  return std::pow(base, cfg.thinness);
}

void bitFlipMutation(Genotype& genotype, double p, Rng& rng) {
  if (p >= 1.0) {
    genotype.flipAll();
    return;
  }
  if (p <= 0.0) return;
  for (std::size_t i = 0; i < genotype.size(); ++i) {
    if (bernoulli(rng, p)) genotype.flip(i);
  }
}

MultiPopulation multisetWaveMutation(const MultiIndividual& mi, const MwmConfig& cfg, Rng& rng) {
  MultiPopulation mutants;
  for (std::size_t copy = 1; copy <= mi.copies; ++copy) {
    const double p = std::min(cfg.minProb + waveFunction(copy, cfg), 1.0);
    Genotype g = mi.genotype;
    bitFlipMutation(g, p, rng);
    mutants.insert(g);
  }
  return mutants;
}

MultiPopulation multisetDecimation(MultiPopulation parents, const MultiPopulation& offspring,
                                   std::size_t tournamentSize, Rng& rng) {
  const std::size_t target = parents.size();
  parents.merge(offspring);
  std::vector<std::size_t> picks;
  while (parents.size() > target) {
    const std::size_t n = parents.size();
    const std::size_t k = std::min(tournamentSize, n);
    picks.clear();
    if (k == n) {
      for (std::size_t i = 0; i < n; ++i) picks.push_back(i);
    } else {
      while (picks.size() < k) {
        const std::size_t i = uniformIndex(rng, n);
        if (std::find(picks.begin(), picks.end(), i) == picks.end()) picks.push_back(i);
      }
    }
    std::size_t weakest = picks.front();
    for (std::size_t i : picks) {
      if (rankedBefore(parents.at(weakest), parents.at(i))) weakest = i;
    }
    parents.eraseAt(weakest);
  }
  return parents;
}

std::size_t rescaleFactor(const MultiPopulation& pop, std::size_t maxTotalCopies) {
  if (pop.totalCopies() <= maxTotalCopies) return 1;
  std::size_t maxCopies = 1;
  for (const auto& mi : pop.storage()) maxCopies = std::max(maxCopies, mi.copies);
  for (std::size_t f = 2; f <= maxCopies; ++f) {
    std::size_t total = 0;
    for (const auto& mi : pop.storage()) total += std::max<std::size_t>(1, mi.copies / f);
    if (total <= maxTotalCopies) return f;
  }
  return maxCopies + 1;
}

MultiPopulation adaptiveRescale(MultiPopulation pop, std::size_t maxTotalCopies) {
  pop.divideCopies(rescaleFactor(pop, maxTotalCopies));
  return pop;
}

MultiPopulation initialPopulation(std::size_t n, std::size_t length, Evaluator& evaluate, Rng& rng) {
  MultiPopulation pop;
  std::size_t failures = 0;
  while (pop.size() < n) {
    Genotype g(length);
    for (std::size_t i = 0; i < length; ++i) g.set(i, bernoulli(rng, 0.5));
    if (pop.contains(g)) {
      if (++failures > 100 * n) {
        throw StructuralError("cannot draw " + std::to_string(n) + " distinct genotypes of length " +
                              std::to_string(length));
      }
      continue;
    }
    pop.insert(g, 1, evaluate(g));
  }
  return pop;
}

StepOutcome mugaStep(const MultiPopulation& pop, const MugaConfig& cfg, Evaluator& evaluate,
                     RandomStreams& streams) {
  const MultiPopulation mating =
      tournamentSelect(pop, cfg.matingPoolSize, cfg.tournamentSize, streams.selection);

  const auto pool = mating.expand();
  MultiPopulation children;
  for (std::size_t i = 0; i + 1 < pool.size(); i += 2) {
    auto [c1, c2] = crossover(pool[i]->genotype, pool[i + 1]->genotype, cfg.crossoverKind,
                              cfg.crossoverProbability, streams.crossover);
    children.insert(c1);
    children.insert(c2);
  }

  MultiPopulation mutants;
  for (const auto& mi : children.storage()) {
    mutants.merge(multisetWaveMutation(mi, cfg.mwm, streams.mutation));
  }

  try {
    mutants.evaluateMissing([&](const Genotype& g) {
      if (const auto* known = pop.find(g)) return known->fitness;
      return evaluate(g);
    });
  } catch (const BudgetExhausted&) {
    return {pop, true};
  }

  auto next = multisetDecimation(pop, mutants, cfg.decimationTournamentSize, streams.replacement);
  return {adaptiveRescale(std::move(next), cfg.rescaleMaxTotalCopies), false};
}

}  // namespace smuga
