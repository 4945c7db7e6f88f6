#include "smuga/evaluator.hpp"

#include "smuga/error.hpp"

namespace smuga {

Evaluator::Evaluator(const Problem& problem, std::uint64_t maxEvaluations)
    : problem_(&problem), maxEvaluations_(maxEvaluations) {}

double Evaluator::operator()(const Genotype& genotype) {
  if (auto it = cache_.find(genotype); it != cache_.end()) return it->second;
  if (genotype.size() != problem_->length) {
    throw StructuralError("genotype length does not match problem " + problem_->name);
  }
  if (evaluations_ >= maxEvaluations_) throw BudgetExhausted();
  const double value = problem_->fitness(genotype);
  ++evaluations_;
  cache_.emplace(genotype, value);
  if (value > bestValue_) {
    bestValue_ = value;
    bestGenotype_ = genotype;
    evalsToBest_ = evaluations_;
  }
  if (!evalsToOptimum_ && value >= problem_->optimumValue) evalsToOptimum_ = evaluations_;
  return value;
}

}  // namespace smuga
