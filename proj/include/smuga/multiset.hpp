#pragma once

#include <cstddef>
#include <limits>
#include <unordered_map>
#include <vector>

#include "smuga/bitstring.hpp"

namespace smuga {

/// A genotype together with the number of identical clones it stands for.
struct MultiIndividual {
  std::size_t copies = 1;
  Genotype genotype;
  double fitness = std::numeric_limits<double>::quiet_NaN();
  bool evaluated = false;
};

/// Canonical member order: descending fitness, ties by ascending genotype.
/// Unevaluated members sort after evaluated ones.
bool rankedBefore(const MultiIndividual& a, const MultiIndividual& b) noexcept;

/// Multiset of genotypes. Each distinct genotype is held once with a copy
/// count; inserting an existing genotype only raises its count, and a cached
/// fitness is never recomputed.
///
/// Storage order (`at`) reflects insertion/removal history and is
/// deterministic; `ranked` gives the canonical order used wherever rank
/// matters.
class MultiPopulation {
 public:
  MultiPopulation() = default;

  /// Number of distinct genotypes.
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  std::size_t totalCopies() const noexcept { return totalCopies_; }
  /// Genome length shared by every member, 0 while the population is empty.
  std::size_t genomeLength() const noexcept { return length_; }

  /// Adds `count` clones. Returns true when the genotype was not yet present.
  bool insert(const Genotype& genotype, std::size_t count = 1);
  /// As above, caching `fitness` if the genotype is new.
  bool insert(const Genotype& genotype, std::size_t count, double fitness);
  /// Adds all copies of `mi`, keeping its fitness when it is new here.
  bool insert(const MultiIndividual& mi);
  void merge(const MultiPopulation& other);

  /// Drops one copy; the member disappears with its last copy.
  void remove(const Genotype& genotype);
  /// Drops the member with all its copies.
  void erase(const Genotype& genotype);
  void eraseAt(std::size_t storageIndex);

  const MultiIndividual* find(const Genotype& genotype) const;
  bool contains(const Genotype& genotype) const { return find(genotype) != nullptr; }
  std::size_t copiesOf(const Genotype& genotype) const;

  const MultiIndividual& at(std::size_t storageIndex) const { return members_[storageIndex]; }
  const std::vector<MultiIndividual>& storage() const noexcept { return members_; }

  std::vector<const MultiIndividual*> ranked() const;
  /// Every member repeated `copies` times, in canonical order.
  std::vector<const MultiIndividual*> expand() const;

  /// Fills the fitness of unevaluated members in storage order.
  template <typename Fn>
  void evaluateMissing(Fn&& fitness) {
    for (auto& mi : members_) {
      if (!mi.evaluated) {
        mi.fitness = fitness(mi.genotype);
        mi.evaluated = true;
      }
    }
  }

  /// copies <- max(1, floor(copies / factor)) for every member.
  void divideCopies(std::size_t factor);

  /// Same genotypes with the same copy counts.
  friend bool operator==(const MultiPopulation& a, const MultiPopulation& b);

 private:
  MultiIndividual& addNew(const Genotype& genotype, std::size_t count);

  std::vector<MultiIndividual> members_;
  std::unordered_map<Genotype, std::size_t, BitStringHash> index_;
  std::size_t totalCopies_ = 0;
  std::size_t length_ = 0;
};

}  // namespace smuga
