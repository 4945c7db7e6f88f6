#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <unordered_map>

#include "smuga/problems.hpp"

namespace smuga {

/// Budgeted, caching front to a problem's fitness function.
///
/// Only the first evaluation of a genotype within a run is charged; repeats
/// are served from the cache. A charge that would exceed the budget throws
/// BudgetExhausted before the fitness function is called.
class Evaluator {
 public:
  Evaluator(const Problem& problem, std::uint64_t maxEvaluations);

  double operator()(const Genotype& genotype);

  const Problem& problem() const noexcept { return *problem_; }
  std::uint64_t evaluations() const noexcept { return evaluations_; }
  std::uint64_t maxEvaluations() const noexcept { return maxEvaluations_; }
  bool exhausted() const noexcept { return evaluations_ >= maxEvaluations_; }

  double bestValue() const noexcept { return bestValue_; }
  const Genotype& bestGenotype() const noexcept { return bestGenotype_; }
  /// Evaluation count at which the optimum value was first returned.
  std::optional<std::uint64_t> evaluationsToOptimum() const noexcept { return evalsToOptimum_; }
  bool solved() const noexcept { return evalsToOptimum_.has_value(); }
  /// Evaluation count at which `bestValue` was first reached.
  std::uint64_t evaluationsToBest() const noexcept { return evalsToBest_; }

 private:
  const Problem* problem_;
  std::uint64_t maxEvaluations_;
  std::uint64_t evaluations_ = 0;
  std::unordered_map<Genotype, double, BitStringHash> cache_;
  double bestValue_ = -std::numeric_limits<double>::infinity();
  Genotype bestGenotype_;
  std::uint64_t evalsToBest_ = 0;
  std::optional<std::uint64_t> evalsToOptimum_;
};

}  // namespace smuga
