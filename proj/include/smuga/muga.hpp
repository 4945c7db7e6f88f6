#pragma once

#include <cstddef>
#include <utility>

#include "smuga/evaluator.hpp"
#include "smuga/multiset.hpp"
#include "smuga/random.hpp"

namespace smuga {

enum class CrossoverKind { OnePoint, Uniform };

/// Multiset Wave Mutation parameters.
struct MwmConfig {
  double roughness = 2.0;
  double thinness = 3.0;
  /// Floor added to the wave value; Table-1 runs use 1/L.
  double minProb = 0.0;

  void validate() const;
};

struct MugaConfig {
  std::size_t populationSize = 128;
  std::size_t matingPoolSize = 256;
  std::size_t tournamentSize = 3;
  CrossoverKind crossoverKind = CrossoverKind::OnePoint;
  double crossoverProbability = 0.6;
  MwmConfig mwm;
  std::size_t decimationTournamentSize = 2;
  std::size_t rescaleMaxTotalCopies = 256;

  void validate() const;
};

/// `count` tournaments, each drawing `tournamentSize` entries with
/// replacement from the expanded population and keeping the best.
MultiPopulation tournamentSelect(const MultiPopulation& pop, std::size_t count,
                                 std::size_t tournamentSize, Rng& rng);

/// Children of a single cut at `cut` in [1, L-1].
std::pair<Genotype, Genotype> onePointCrossover(const Genotype& a, const Genotype& b,
                                                std::size_t cut);

std::pair<Genotype, Genotype> crossover(const Genotype& a, const Genotype& b, CrossoverKind kind,
                                        double probability, Rng& rng);

/// ((sin(pi/2 + (copy-1)/roughness) + 1) / 2) ^ thinness, in [0, 1].
double waveFunction(std::size_t copy, const MwmConfig& cfg);

/// Flips every bit of `genotype` independently with probability `p`.
void bitFlipMutation(Genotype& genotype, double p, Rng& rng);

/// One mutant per clone; clone k mutates with min(minProb + wave(k), 1).
/// The result is unevaluated.
MultiPopulation multisetWaveMutation(const MultiIndividual& mi, const MwmConfig& cfg, Rng& rng);

/// Merges `offspring` into `parents`, then removes whole members (weakest of
/// a random tournament of distinct members) until the original number of
/// distinct genotypes remains. Both inputs must be evaluated.
MultiPopulation multisetDecimation(MultiPopulation parents, const MultiPopulation& offspring,
                                   std::size_t tournamentSize, Rng& rng);

/// Smallest integer factor f with sum(max(1, copies / f)) <= maxTotalCopies.
std::size_t rescaleFactor(const MultiPopulation& pop, std::size_t maxTotalCopies);

/// Divides copy counts by `rescaleFactor`; never removes a member.
MultiPopulation adaptiveRescale(MultiPopulation pop, std::size_t maxTotalCopies);

/// `n` distinct random genotypes, evaluated. Throws StructuralError when the
/// search space cannot supply them within 100n draws.
MultiPopulation initialPopulation(std::size_t n, std::size_t length, Evaluator& evaluate, Rng& rng);

struct StepOutcome {
  MultiPopulation population;
  bool exhausted = false;
};

/// One MuGA generation: select, recombine, wave-mutate, evaluate, decimate,
/// rescale. On budget exhaustion the input population is returned and the
/// outcome is flagged.
StepOutcome mugaStep(const MultiPopulation& pop, const MugaConfig& cfg, Evaluator& evaluate,
                     RandomStreams& streams);

}  // namespace smuga
