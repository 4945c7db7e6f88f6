#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "smuga/bitstring.hpp"

namespace smuga {

/// A pseudo-boolean maximisation problem with a known optimum.
struct Problem {
  std::string name;
  std::size_t length = 0;
  double optimumValue = 0.0;
  /// One genotype attaining `optimumValue`.
  Genotype optimum;
  std::function<double(const Genotype&)> fitness;

  double operator()(const Genotype& x) const { return fitness(x); }
};

namespace problems {

/// Fully deceptive 3-bit function on bits (b0, b1, b2).
double f3(bool b0, bool b1, bool b2) noexcept;
double f3(const BitString& block);

/// Sum of f3 over consecutive 3-bit blocks.
double f3Concat(const Genotype& x);
/// Block j reads bits j, j+N, j+2N where N = L/3.
double f3Separated(const Genotype& x);

/// Unitation trap: number of ones, or l+1 for the all-zeros block.
double trap(std::size_t ones, std::size_t length) noexcept;
double trap(const BitString& block);
/// Zero-mirrored trap: number of zeros, or l+1 for the all-ones block.
double trapZ(std::size_t zeros, std::size_t length) noexcept;
double trapZ(const BitString& block);

double trapConcat(const Genotype& x, std::size_t blockLength);

/// Each 8-bit block interleaves two 4-bit traps: even offsets feed the
/// first, odd offsets the second.
double d4pi(const Genotype& x);
/// As d4pi, but the odd offsets feed trapZ. Block optimum 01010101.
double d4pi01(const Genotype& x);

double onesMax(const Genotype& x);

Problem makeF3(std::size_t copies);
Problem makeF3Separated(std::size_t copies);
Problem makeTrap(std::size_t blockLength, std::size_t copies);
Problem makeD4pi(std::size_t copies);
Problem makeD4pi01(std::size_t copies);
Problem makeOnesMax(std::size_t length);

}  // namespace problems

/// Builds a problem from its identifier: f3xN, f3sxN, trap-l-N, d4pi-N,
/// d4pi01-N or onesmax-L. Throws ConfigError for anything else.
Problem makeProblem(std::string_view id);

struct ProblemFamily {
  std::string family;
  std::string pattern;
  std::string description;
};
std::vector<ProblemFamily> problemFamilies();

/// Identifier of member `size` of a family, e.g. ("trap-4", 16) -> "trap-4-16".
std::string familyMember(std::string_view family, std::size_t size);

}  // namespace smuga
