#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "smuga/bitstring.hpp"
#include "smuga/multiset.hpp"
#include "smuga/random.hpp"

namespace smuga {

/// A gene fragment anchored at `position` of a circular host genome.
struct Parasite {
  std::size_t position = 0;
  BitString genome;
  double fitness = 0.0;

  std::size_t size() const noexcept { return genome.size(); }
  /// Host index of genome bit `i`.
  std::size_t hostIndex(std::size_t i, std::size_t hostLength) const noexcept {
    return (position + i) % hostLength;
  }
  bool validFor(std::size_t hostLength) const noexcept {
    return hostLength > 0 && position < hostLength && !genome.empty() && genome.size() <= hostLength;
  }

  /// Same anchor and genome; fitness is not part of identity.
  friend bool operator==(const Parasite& a, const Parasite& b) noexcept {
    return a.position == b.position && a.genome == b.genome;
  }
};

/// How a parasite is matched against a host during proxy evaluation.
enum class Presence {
  Anchored,  ///< only at the parasite's own position
  Anywhere,  ///< at any circular offset of the host
};

struct ParasiteConfig {
  std::size_t populationSize = 32;
  std::size_t selectionTournamentSize = 2;
  /// Parasites drawn per generation for pairwise recombination.
  std::size_t recombinationPoolSize = 8;
  /// Drop recombinants identical to one already in the offspring pool, so the
  /// mutation fill always contributes.
  bool distinctOffspring = true;
  Presence presence = Presence::Anywhere;
  /// Exponents of the split probability min((len^k / L)^n, 1).
  double splitK = 1.0;
  double splitN = 2.0;
  double genomeMutationRate = 0.25;
  std::size_t initialLengthMin = 1;
  std::size_t initialLengthMax = 4;
  std::size_t replacementTournamentSize = 2;

  void validate(std::size_t hostLength) const;
};

/// Host indices covered by the parasite, in genome order.
std::vector<std::size_t> occupiedIndices(const Parasite& par, std::size_t hostLength);

enum class RecombinationCase {
  Disjoint,     ///< footprints neither touch nor overlap: no offspring
  Adjacent,     ///< one footprint ends where the other starts: concatenation
  Overlap,      ///< partial overlap: union and intersection offspring
  Containment,  ///< one footprint covers the other
};

RecombinationCase classifyRecombination(const Parasite& a, const Parasite& b,
                                        std::size_t hostLength);

/// Number of mask bits the recombination of `a` and `b` consumes (0 for the
/// disjoint and adjacent cases).
std::size_t recombinationMaskLength(const Parasite& a, const Parasite& b, std::size_t hostLength);

/// Recombination with an explicit exchange mask over the shared region
/// (mask bit 1 swaps the parents' alleles). Offspring longer than the host
/// are rejected, in which case the parents are returned.
std::vector<Parasite> recombineParasites(const Parasite& a, const Parasite& b,
                                         std::size_t hostLength, const BitString& mask);
std::vector<Parasite> recombineParasites(const Parasite& a, const Parasite& b,
                                         std::size_t hostLength, Rng& rng);

Parasite mutatePosition(Parasite par, std::size_t hostLength, Rng& rng);
Parasite mutateGenome(Parasite par, double rate, Rng& rng);

double splitProbability(std::size_t parasiteLength, std::size_t hostLength, double k, double n);

/// Split at genome offset `cut` in [1, len-1]; the second part is anchored at
/// the host index where the cut falls.
std::vector<Parasite> splitAt(const Parasite& par, std::size_t cut, std::size_t hostLength);
std::vector<Parasite> mutateSplit(const Parasite& par, std::size_t hostLength, double k, double n,
                                  Rng& rng);

/// Zero-sum shift of rank r in [1, n] (n = fittest): r - (n + 1) / 2.
double shiftedRank(std::size_t rank, std::size_t n) noexcept;

/// True when the host carries the parasite genome at the parasite's anchor.
bool presentIn(const Parasite& par, const Genotype& host);
/// True when the parasite genome occurs at any circular offset of the host.
bool presentAnywhere(const Parasite& par, const Genotype& host);

/// Proxy fitness: length times the summed shifted ranks of the distinct host
/// genotypes carrying the parasite. No problem evaluations are made.
void evaluateParasites(std::span<Parasite> parasites, const MultiPopulation& hosts,
                       Presence presence = Presence::Anchored);

Parasite randomParasite(std::size_t hostLength, std::size_t minLength, std::size_t maxLength,
                        Rng& rng);
std::vector<Parasite> initialParasites(const ParasiteConfig& cfg, std::size_t hostLength, Rng& rng);

/// One parasite generation: select a recombination pool, recombine pairwise,
/// fill by mutating clones, proxy-evaluate, and reduce the union back to the
/// population size.
std::vector<Parasite> evolveParasites(std::vector<Parasite> population, const MultiPopulation& hosts,
                                      const ParasiteConfig& cfg, Rng& rng);

}  // namespace smuga
