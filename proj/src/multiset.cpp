#include "smuga/multiset.hpp"

#include <algorithm>
#include <cassert>

namespace smuga {

bool rankedBefore(const MultiIndividual& a, const MultiIndividual& b) noexcept {
  if (a.evaluated != b.evaluated) return a.evaluated;
  if (a.evaluated && a.fitness != b.fitness) return a.fitness > b.fitness;
  return a.genotype < b.genotype;
}

MultiIndividual& MultiPopulation::addNew(const Genotype& genotype, std::size_t count) {
  if (members_.empty() && index_.empty()) {
    length_ = genotype.size();
  } else if (genotype.size() != length_) {
    throw StructuralError("genotype length " + std::to_string(genotype.size()) +
                          " does not match population length " + std::to_string(length_));
  }
  index_.emplace(genotype, members_.size());
  members_.push_back(MultiIndividual{.copies = count, .genotype = genotype});
  totalCopies_ += count;
  return members_.back();
}

bool MultiPopulation::insert(const Genotype& genotype, std::size_t count) {
  if (count == 0) throw StructuralError("insert count must be positive");
  if (auto it = index_.find(genotype); it != index_.end()) {
    members_[it->second].copies += count;
    totalCopies_ += count;
    return false;
  }
  addNew(genotype, count);
  return true;
}

bool MultiPopulation::insert(const Genotype& genotype, std::size_t count, double fitness) {
  if (count == 0) throw StructuralError("insert count must be positive");
  if (auto it = index_.find(genotype); it != index_.end()) {
    auto& mi = members_[it->second];
    mi.copies += count;
    totalCopies_ += count;
    if (!mi.evaluated) {
      mi.fitness = fitness;
      mi.evaluated = true;
    }
    return false;
  }
  auto& mi = addNew(genotype, count);
  mi.fitness = fitness;
  mi.evaluated = true;
  return true;
}

bool MultiPopulation::insert(const MultiIndividual& mi) {
  if (mi.evaluated) return insert(mi.genotype, mi.copies, mi.fitness);
  return insert(mi.genotype, mi.copies);
}

void MultiPopulation::merge(const MultiPopulation& other) {
  for (const auto& mi : other.members_) insert(mi);
}

void MultiPopulation::remove(const Genotype& genotype) {
  auto it = index_.find(genotype);
  assert(it != index_.end() && "remove of absent genotype");
  if (it == index_.end()) return;
  auto& mi = members_[it->second];
  if (mi.copies > 1) {
    --mi.copies;
    --totalCopies_;
  } else {
    eraseAt(it->second);
  }
}

void MultiPopulation::erase(const Genotype& genotype) {
  auto it = index_.find(genotype);
  assert(it != index_.end() && "erase of absent genotype");
  if (it != index_.end()) eraseAt(it->second);
}

void MultiPopulation::eraseAt(std::size_t storageIndex) {
  totalCopies_ -= members_[storageIndex].copies;
  index_.erase(members_[storageIndex].genotype);
  const std::size_t last = members_.size() - 1;
  if (storageIndex != last) {
    members_[storageIndex] = std::move(members_[last]);
    index_[members_[storageIndex].genotype] = storageIndex;
  }
  members_.pop_back();
}

const MultiIndividual* MultiPopulation::find(const Genotype& genotype) const {
  auto it = index_.find(genotype);
  return it == index_.end() ? nullptr : &members_[it->second];
}

std::size_t MultiPopulation::copiesOf(const Genotype& genotype) const {
  const auto* mi = find(genotype);
  return mi ? mi->copies : 0;
}

std::vector<const MultiIndividual*> MultiPopulation::ranked() const {
  std::vector<const MultiIndividual*> out;
  out.reserve(members_.size());
  for (const auto& mi : members_) out.push_back(&mi);
  std::sort(out.begin(), out.end(),
            [](const MultiIndividual* a, const MultiIndividual* b) { return rankedBefore(*a, *b); });
  return out;
}

std::vector<const MultiIndividual*> MultiPopulation::expand() const {
  std::vector<const MultiIndividual*> out;
  out.reserve(totalCopies_);
  for (const auto* mi : ranked()) out.insert(out.end(), mi->copies, mi);
  return out;
}

void MultiPopulation::divideCopies(std::size_t factor) {
  if (factor <= 1) return;
  totalCopies_ = 0;
  for (auto& mi : members_) {
    mi.copies = std::max<std::size_t>(1, mi.copies / factor);
    totalCopies_ += mi.copies;
  }
}

bool operator==(const MultiPopulation& a, const MultiPopulation& b) {
  if (a.size() != b.size() || a.totalCopies() != b.totalCopies()) return false;
  for (const auto& mi : a.members_) {
    if (b.copiesOf(mi.genotype) != mi.copies) return false;
  }
  return true;
}

}  // namespace smuga
