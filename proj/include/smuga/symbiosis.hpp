#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "smuga/evaluator.hpp"
#include "smuga/muga.hpp"
#include "smuga/multiset.hpp"
#include "smuga/parasite.hpp"
#include "smuga/random.hpp"

namespace smuga {

struct SmugaConfig {
  std::size_t hostCount = 32;
  std::size_t parasiteCount = 32;
  std::size_t evolutionIterations = 16;
  std::size_t collaborationHostCount = 16;
  double infectionShape = 1.0;
  MugaConfig muga{
      .populationSize = 32,
      .matingPoolSize = 32,
      .tournamentSize = 3,
      .crossoverKind = CrossoverKind::Uniform,
      .crossoverProbability = 0.6,
      .mwm = {},
      .decimationTournamentSize = 2,
      .rescaleMaxTotalCopies = 64,
  };
  ParasiteConfig parasites;

  void validate(std::size_t hostLength) const;
};

/// A host genotype overwritten by one or more parasites, applied in order.
struct Collaboration {
  Genotype baseHost;
  std::vector<Parasite> appliedParasites;
  Genotype result;
};

/// Copies the parasite alleles over the host at the parasite's footprint.
Genotype applyParasite(Genotype host, const Parasite& par);
/// Applying the parasite would change at least one host bit.
bool admissible(const Genotype& host, const Parasite& par);
/// The candidate agrees with every applied parasite wherever they overlap.
bool compatible(std::span<const Parasite> applied, const Parasite& candidate, std::size_t hostLength);

/// (rankIndex / popSize)^n with rankIndex 1 for the fittest host.
double infectionProbability(std::size_t rankIndex, std::size_t popSize, double n);

/// Infects every clone of every host (canonical order, fittest first) with a
/// shuffled sequence of compatible, admissible parasites, keeping a snapshot
/// after each application. Snapshots are evaluated through `evaluate`.
/// When `trace` is given, one entry per snapshot is appended to it.
MultiPopulation collaborate(const std::vector<Parasite>& parasites, const MultiPopulation& hosts,
                            double n, Evaluator& evaluate, Rng& rng,
                            std::vector<Collaboration>* trace = nullptr);

struct SmugaState {
  MultiPopulation hosts;
  std::vector<Parasite> parasites;
};

SmugaState smugaInit(const SmugaConfig& cfg, Evaluator& evaluate, RandomStreams& streams);

struct SmugaStepOutcome {
  SmugaState state;
  bool exhausted = false;
  /// Evaluations charged by the collaboration phase alone.
  std::uint64_t collaborationEvaluations = 0;
};

/// Collaboration phase followed by `evolutionIterations` rounds of
/// independent host and parasite evolution. Stops early once the optimum is
/// found or the budget runs out.
SmugaStepOutcome smugaStep(SmugaState state, const SmugaConfig& cfg, Evaluator& evaluate,
                           RandomStreams& streams);

}  // namespace smuga
