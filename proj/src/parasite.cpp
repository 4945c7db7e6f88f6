#include "smuga/parasite.hpp"

#include <algorithm>
#include <cmath>

#include "smuga/error.hpp"

namespace smuga {

void ParasiteConfig::validate(std::size_t hostLength) const {
  if (populationSize < 2) throw ConfigError("parasite population size must be at least 2");
  if (selectionTournamentSize < 1) throw ConfigError("parasite selection tournament size must be at least 1");
  if (recombinationPoolSize < 2) throw ConfigError("parasite recombination pool must hold at least 2");
  if (replacementTournamentSize < 1) throw ConfigError("parasite replacement tournament size must be at least 1");
  if (!(splitK > 0) || !(splitN > 0)) throw ConfigError("split exponents must be positive");
  if (!(genomeMutationRate >= 0 && genomeMutationRate <= 1)) {
    throw ConfigError("parasite genome mutation rate must lie in [0, 1]");
  }
  if (initialLengthMin < 1 || initialLengthMin > initialLengthMax ||
      (hostLength > 0 && initialLengthMax > hostLength)) {
    throw ConfigError("initial parasite length range must lie within [1, host length]");
  }
}

std::vector<std::size_t> occupiedIndices(const Parasite& par, std::size_t hostLength) {
  std::vector<std::size_t> out(par.size());
  for (std::size_t i = 0; i < par.size(); ++i) out[i] = par.hostIndex(i, hostLength);
  return out;
}

namespace {

std::size_t offset(std::size_t from, std::size_t to, std::size_t hostLength) {
  return (to + hostLength - from) % hostLength;
}

bool covers(const Parasite& p, std::size_t index, std::size_t hostLength) {
  return offset(p.position, index, hostLength) < p.size();
}

std::size_t sharedCount(const Parasite& a, const Parasite& b, std::size_t hostLength) {
  std::size_t shared = 0;
  for (std::size_t i = 0; i < b.size(); ++i) shared += covers(a, b.hostIndex(i, hostLength), hostLength);
  return shared;
}

// Rotates a full-circle parasite so that it starts at `position`.
Parasite reanchor(const Parasite& full, std::size_t position, std::size_t hostLength) {
  const std::size_t d = offset(full.position, position, hostLength);
  Parasite out{position, BitString(full.size())};
  for (std::size_t i = 0; i < full.size(); ++i) out.genome.set(i, full.genome[(d + i) % full.size()]);
  return out;
}

struct Layout {
  RecombinationCase kind;
  const Parasite* first;   // earlier fragment, or container
  const Parasite* second;  // later fragment, or contained
};

Layout layout(const Parasite& a, const Parasite& b, std::size_t hostLength) {
  const std::size_t shared = sharedCount(a, b, hostLength);
  if (shared == 0) {
    if ((a.position + a.size()) % hostLength == b.position) return {RecombinationCase::Adjacent, &a, &b};
    if ((b.position + b.size()) % hostLength == a.position) return {RecombinationCase::Adjacent, &b, &a};
    return {RecombinationCase::Disjoint, &a, &b};
  }
  if (shared == b.size()) return {RecombinationCase::Containment, &a, &b};
  if (shared == a.size()) return {RecombinationCase::Containment, &b, &a};
  if (covers(a, b.position, hostLength)) return {RecombinationCase::Overlap, &a, &b};
  return {RecombinationCase::Overlap, &b, &a};
}

void requireValid(const Parasite& p, std::size_t hostLength) {
  if (!p.validFor(hostLength)) throw StructuralError("parasite is not valid for host length " + std::to_string(hostLength));
}

}  // namespace

RecombinationCase classifyRecombination(const Parasite& a, const Parasite& b, std::size_t hostLength) {
  requireValid(a, hostLength);
  requireValid(b, hostLength);
  return layout(a, b, hostLength).kind;
}

std::size_t recombinationMaskLength(const Parasite& a, const Parasite& b, std::size_t hostLength) {
  const auto [kind, first, second] = layout(a, b, hostLength);
  switch (kind) {
    case RecombinationCase::Overlap:
      return first->size() - offset(first->position, second->position, hostLength);
    case RecombinationCase::Containment:
      return second->size();
    default:
      return 0;
  }
}

std::vector<Parasite> recombineParasites(const Parasite& a, const Parasite& b,
                                         std::size_t hostLength, const BitString& mask) {
  requireValid(a, hostLength);
  requireValid(b, hostLength);
  const Layout lay = layout(a, b, hostLength);
  if (mask.size() != recombinationMaskLength(a, b, hostLength)) {
    throw StructuralError("recombination mask has the wrong length");
  }

  switch (lay.kind) {
    case RecombinationCase::Disjoint:
      return {};

    case RecombinationCase::Adjacent:
      return {Parasite{lay.first->position, lay.first->genome.concat(lay.second->genome)}};

    case RecombinationCase::Overlap: {
      const Parasite& early = *lay.first;
      const Parasite& late = *lay.second;
      const std::size_t d = offset(early.position, late.position, hostLength);
      const std::size_t shared = early.size() - d;
      if (d + late.size() > hostLength) {
        // The union would wrap onto itself.
        return {Parasite{a.position, a.genome}, Parasite{b.position, b.genome}};
      }
      BitString kept(shared);
      BitString dual(shared);
      for (std::size_t i = 0; i < shared; ++i) {
        const bool e = early.genome[d + i];
        const bool l = late.genome[i];
        kept.set(i, mask[i] ? l : e);
        dual.set(i, mask[i] ? e : l);
      }
      BitString longer = early.genome.slice(0, d)
                             .concat(kept)
                             .concat(late.genome.slice(shared, late.size() - shared));
      return {Parasite{early.position, std::move(longer)}, Parasite{late.position, std::move(dual)}};
    }

    case RecombinationCase::Containment: {
      Parasite outer = *lay.first;
      const Parasite& inner = *lay.second;
      std::size_t d = offset(outer.position, inner.position, hostLength);
      if (d + inner.size() > outer.size()) {
        // Only a full-circle container can wrap around its content.
        outer = reanchor(outer, inner.position, hostLength);
        d = 0;
      }
      BitString kept(inner.size());
      BitString dual(inner.size());
      for (std::size_t i = 0; i < inner.size(); ++i) {
        const bool o = outer.genome[d + i];
        const bool n = inner.genome[i];
        kept.set(i, mask[i] ? n : o);
        dual.set(i, mask[i] ? o : n);
      }
      const std::size_t tail = d + inner.size();
      BitString head = outer.genome.slice(0, d).concat(kept);
      BitString rest = dual.concat(outer.genome.slice(tail, outer.size() - tail));
      return {Parasite{outer.position, std::move(head)}, Parasite{inner.position, std::move(rest)}};
    }
  }
  return {};
}

std::vector<Parasite> recombineParasites(const Parasite& a, const Parasite& b,
                                         std::size_t hostLength, Rng& rng) {
  requireValid(a, hostLength);
  requireValid(b, hostLength);
  BitString mask(recombinationMaskLength(a, b, hostLength));
  for (std::size_t i = 0; i < mask.size(); ++i) mask.set(i, bernoulli(rng, 0.5));
  return recombineParasites(a, b, hostLength, mask);
}

Parasite mutatePosition(Parasite par, std::size_t hostLength, Rng& rng) {
  par.position = uniformIndex(rng, hostLength);
  return par;
}

Parasite mutateGenome(Parasite par, double rate, Rng& rng) {
  for (std::size_t i = 0; i < par.size(); ++i) {
    if (bernoulli(rng, rate)) par.genome.flip(i);
  }
  return par;
}

double splitProbability(std::size_t parasiteLength, std::size_t hostLength, double k, double n) {
  const double ratio = std::pow(static_cast<double>(parasiteLength), k) / static_cast<double>(hostLength);
  return std::min(std::pow(ratio, n), 1.0);
}

std::vector<Parasite> splitAt(const Parasite& par, std::size_t cut, std::size_t hostLength) {
  if (cut == 0 || cut >= par.size()) throw StructuralError("split point must lie inside the genome");
  return {Parasite{par.position, par.genome.slice(0, cut)},
          Parasite{(par.position + cut) % hostLength, par.genome.slice(cut, par.size() - cut)}};
}

std::vector<Parasite> mutateSplit(const Parasite& par, std::size_t hostLength, double k, double n,
                                  Rng& rng) {
  if (par.size() < 2) return {par};
  if (!bernoulli(rng, splitProbability(par.size(), hostLength, k, n))) return {par};
  return splitAt(par, 1 + uniformIndex(rng, par.size() - 1), hostLength);
}

double shiftedRank(std::size_t rank, std::size_t n) noexcept {
  return static_cast<double>(rank) - (static_cast<double>(n) + 1.0) / 2.0;
}

bool presentIn(const Parasite& par, const Genotype& host) {
  const std::size_t hostLength = host.size();
  for (std::size_t i = 0; i < par.size(); ++i) {
    if (host[par.hostIndex(i, hostLength)] != par.genome[i]) return false;
  }
  return true;
}

bool presentAnywhere(const Parasite& par, const Genotype& host) {
  const std::size_t L = host.size();
  for (std::size_t s = 0; s < L; ++s) {
    std::size_t i = 0;
    while (i < par.size() && host[(s + i) % L] == par.genome[i]) ++i;
    if (i == par.size()) return true;
  }
  return false;
}

void evaluateParasites(std::span<Parasite> parasites, const MultiPopulation& hosts, Presence presence) {
  const auto present = presence == Presence::Anywhere ? presentAnywhere : presentIn;
  const auto ranked = hosts.ranked();
  const std::size_t n = ranked.size();
  for (auto& par : parasites) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (present(par, ranked[i]->genotype)) sum += shiftedRank(n - i, n);
    }
    par.fitness = static_cast<double>(par.size()) * sum;
  }
}

Parasite randomParasite(std::size_t hostLength, std::size_t minLength, std::size_t maxLength, Rng& rng) {
  const std::size_t hi = std::min(maxLength, hostLength);
  const std::size_t lo = std::min(minLength, hi);
  Parasite par{uniformIndex(rng, hostLength), BitString(lo + uniformIndex(rng, hi - lo + 1))};
  for (std::size_t i = 0; i < par.size(); ++i) par.genome.set(i, bernoulli(rng, 0.5));
  return par;
}

std::vector<Parasite> initialParasites(const ParasiteConfig& cfg, std::size_t hostLength, Rng& rng) {
  std::vector<Parasite> out;
  out.reserve(cfg.populationSize);
  for (std::size_t i = 0; i < cfg.populationSize; ++i) {
    out.push_back(randomParasite(hostLength, cfg.initialLengthMin, cfg.initialLengthMax, rng));
  }
  return out;
}

std::vector<Parasite> evolveParasites(std::vector<Parasite> population, const MultiPopulation& hosts,
                                      const ParasiteConfig& cfg, Rng& rng) {
  const std::size_t hostLength = hosts.genomeLength();
  if (population.empty() || hostLength == 0) return population;
  evaluateParasites(population, hosts, cfg.presence);

  std::vector<Parasite> selected;
  selected.reserve(cfg.recombinationPoolSize);
  for (std::size_t t = 0; t < cfg.recombinationPoolSize; ++t) {
    std::size_t best = uniformIndex(rng, population.size());
    for (std::size_t k = 1; k < cfg.selectionTournamentSize; ++k) {
      const std::size_t c = uniformIndex(rng, population.size());
      if (population[c].fitness > population[best].fitness) best = c;
    }
    selected.push_back(population[best]);
  }

  std::vector<Parasite> offspring;
  for (std::size_t i = 0; i + 1 < selected.size(); i += 2) {
    for (auto& child : recombineParasites(selected[i], selected[i + 1], hostLength, rng)) {
      const bool repeat = std::any_of(offspring.begin(), offspring.end(),
                                      [&](const Parasite& m) { return m == child; });
      if (cfg.distinctOffspring && repeat) continue;
      offspring.push_back(std::move(child));
    }
  }

  // With no recombinant to clone from, the fill draws on the selected pool.
  const bool fromSelected = offspring.empty();
  while (offspring.size() < cfg.populationSize) {
    const auto& source = fromSelected ? selected : offspring;
    Parasite clone = source[uniformIndex(rng, source.size())];
    switch (uniformIndex(rng, 3)) {
      case 0:
        offspring.push_back(mutatePosition(std::move(clone), hostLength, rng));
        break;
      case 1:
        offspring.push_back(mutateGenome(std::move(clone), cfg.genomeMutationRate, rng));
        break;
      default:
        for (auto& part : mutateSplit(clone, hostLength, cfg.splitK, cfg.splitN, rng)) {
          offspring.push_back(std::move(part));
        }
        break;
    }
  }
  evaluateParasites(offspring, hosts, cfg.presence);

  // Identical parasites are held once, as in a multiset; duplicates only
  // pad the population when too few distinct ones exist.
  std::vector<Parasite> merged;
  std::vector<Parasite> duplicates;
  merged.reserve(population.size() + offspring.size());
  for (auto* group : {&population, &offspring}) {
    for (auto& par : *group) {
      const bool seen = std::any_of(merged.begin(), merged.end(), [&](const Parasite& m) { return m == par; });
      (seen ? duplicates : merged).push_back(std::move(par));
    }
  }
  for (std::size_t i = 0; merged.size() < cfg.populationSize && i < duplicates.size(); ++i) {
    merged.push_back(std::move(duplicates[i]));
  }
  std::vector<std::size_t> picks;
  while (merged.size() > cfg.populationSize) {
    const std::size_t n = merged.size();
    const std::size_t k = std::min(cfg.replacementTournamentSize, n);
    picks.clear();
    while (picks.size() < k) {
      const std::size_t i = uniformIndex(rng, n);
      if (std::find(picks.begin(), picks.end(), i) == picks.end()) picks.push_back(i);
    }
    std::size_t weakest = picks.front();
    for (std::size_t i : picks) {
      if (merged[i].fitness < merged[weakest].fitness) weakest = i;
    }
    merged[weakest] = std::move(merged.back());
    merged.pop_back();
  }
  return merged;
}

}  // namespace smuga
