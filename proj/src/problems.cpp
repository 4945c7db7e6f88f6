#include "smuga/problems.hpp"

#include <array>
#include <charconv>

#include "smuga/error.hpp"

namespace smuga {

namespace problems {

namespace {

constexpr std::array<double, 8> kF3Table = {28, 26, 22, 0, 14, 0, 0, 30};

void requireMultiple(const Genotype& x, std::size_t block, const char* what) {
  if (x.size() == 0 || x.size() % block != 0) {
    throw StructuralError(std::string(what) + ": length " + std::to_string(x.size()) +
                          " is not a positive multiple of " + std::to_string(block));
  }
}

}  // namespace

double f3(bool b0, bool b1, bool b2) noexcept {
  return kF3Table[(static_cast<unsigned>(b0) << 2) | (static_cast<unsigned>(b1) << 1) |
                  static_cast<unsigned>(b2)];
}

double f3(const BitString& block) {
  if (block.size() != 3) throw StructuralError("f3 takes exactly 3 bits");
  return f3(block[0], block[1], block[2]);
}

double f3Concat(const Genotype& x) {
  requireMultiple(x, 3, "f3");
  double sum = 0;
  for (std::size_t i = 0; i < x.size(); i += 3) sum += f3(x[i], x[i + 1], x[i + 2]);
  return sum;
}

double f3Separated(const Genotype& x) {
  requireMultiple(x, 3, "f3s");
  const std::size_t n = x.size() / 3;
  double sum = 0;
  for (std::size_t j = 0; j < n; ++j) sum += f3(x[j], x[j + n], x[j + 2 * n]);
  return sum;
}

double trap(std::size_t ones, std::size_t length) noexcept {
  return ones > 0 ? static_cast<double>(ones) : static_cast<double>(length + 1);
}

double trap(const BitString& block) {
  if (block.empty()) throw StructuralError("trap block must not be empty");
  return trap(block.count(), block.size());
}

double trapZ(std::size_t zeros, std::size_t length) noexcept { return trap(zeros, length); }

double trapZ(const BitString& block) {
  if (block.empty()) throw StructuralError("trapZ block must not be empty");
  return trapZ(block.size() - block.count(), block.size());
}

double trapConcat(const Genotype& x, std::size_t blockLength) {
  if (blockLength == 0) throw StructuralError("trap block length must be positive");
  requireMultiple(x, blockLength, "trap");
  double sum = 0;
  for (std::size_t i = 0; i < x.size(); i += blockLength) {
    std::size_t ones = 0;
    for (std::size_t j = 0; j < blockLength; ++j) ones += x[i + j];
    sum += trap(ones, blockLength);
  }
  return sum;
}

namespace {

template <bool SecondIsZeroTrap>
double intertwined(const Genotype& x) {
  requireMultiple(x, 8, SecondIsZeroTrap ? "d4pi01" : "d4pi");
  double sum = 0;
  for (std::size_t i = 0; i < x.size(); i += 8) {
    std::size_t evenOnes = 0;
    std::size_t oddOnes = 0;
    for (std::size_t j = 0; j < 8; j += 2) {
      evenOnes += x[i + j];
      oddOnes += x[i + j + 1];
    }
    sum += trap(evenOnes, 4);
    sum += SecondIsZeroTrap ? trapZ(4 - oddOnes, 4) : trap(oddOnes, 4);
  }
  return sum;
}

}  // namespace

double d4pi(const Genotype& x) { return intertwined<false>(x); }
double d4pi01(const Genotype& x) { return intertwined<true>(x); }

double onesMax(const Genotype& x) { return static_cast<double>(x.count()); }

Problem makeF3(std::size_t copies) {
  Genotype opt(3 * copies);
  opt.flipAll();
  return Problem{"f3x" + std::to_string(copies), 3 * copies, 30.0 * static_cast<double>(copies),
                 opt, f3Concat};
}

Problem makeF3Separated(std::size_t copies) {
  Genotype opt(3 * copies);
  opt.flipAll();
  return Problem{"f3sx" + std::to_string(copies), 3 * copies,
                 30.0 * static_cast<double>(copies), opt, f3Separated};
}

Problem makeTrap(std::size_t blockLength, std::size_t copies) {
  return Problem{"trap-" + std::to_string(blockLength) + "-" + std::to_string(copies),
                 blockLength * copies, static_cast<double>((blockLength + 1) * copies),
                 Genotype(blockLength * copies),
                 [blockLength](const Genotype& x) { return trapConcat(x, blockLength); }};
}

Problem makeD4pi(std::size_t copies) {
  return Problem{"d4pi-" + std::to_string(copies), 8 * copies,
                 10.0 * static_cast<double>(copies), Genotype(8 * copies), d4pi};
}

Problem makeD4pi01(std::size_t copies) {
  Genotype opt(8 * copies);
  for (std::size_t i = 1; i < opt.size(); i += 2) opt.set(i, true);
  return Problem{"d4pi01-" + std::to_string(copies), 8 * copies,
                 10.0 * static_cast<double>(copies), opt, d4pi01};
}

Problem makeOnesMax(std::size_t length) {
  Genotype opt(length);
  opt.flipAll();
  return Problem{"onesmax-" + std::to_string(length), length, static_cast<double>(length), opt,
                 onesMax};
}

}  // namespace problems

namespace {

std::size_t parseCount(std::string_view text, std::string_view id) {
  std::size_t value = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc{} || ptr != end || value == 0) {
    throw ConfigError("malformed problem id '" + std::string(id) + "'");
  }
  return value;
}

bool consumePrefix(std::string_view& s, std::string_view prefix) {
  if (!s.starts_with(prefix)) return false;
  s.remove_prefix(prefix.size());
  return true;
}

}  // namespace

Problem makeProblem(std::string_view id) {
  std::string_view rest = id;
  if (consumePrefix(rest, "f3sx")) return problems::makeF3Separated(parseCount(rest, id));
  if (consumePrefix(rest, "f3x")) return problems::makeF3(parseCount(rest, id));
  if (consumePrefix(rest, "d4pi01-")) return problems::makeD4pi01(parseCount(rest, id));
  if (consumePrefix(rest, "d4pi-")) return problems::makeD4pi(parseCount(rest, id));
  if (consumePrefix(rest, "onesmax-")) return problems::makeOnesMax(parseCount(rest, id));
  if (consumePrefix(rest, "trap-")) {
    const auto dash = rest.find('-');
    if (dash == std::string_view::npos) throw ConfigError("malformed problem id '" + std::string(id) + "'");
    return problems::makeTrap(parseCount(rest.substr(0, dash), id), parseCount(rest.substr(dash + 1), id));
  }
  throw ConfigError("unknown problem id '" + std::string(id) + "'");
}

std::vector<ProblemFamily> problemFamilies() {
  return {
      {"f3", "f3xN", "N concatenated copies of the deceptive 3-bit F3 (3N bits)"},
      {"f3s", "f3sxN", "N maximally separated F3 copies; copy j reads bits j, j+N, j+2N"},
      {"trap-l", "trap-l-N", "N concatenated l-bit unitation traps (lN bits)"},
      {"d4pi", "d4pi-N", "N 8-bit blocks of two intertwined 4-bit traps"},
      {"d4pi01", "d4pi01-N", "as d4pi with the odd bits scored by the zero trap"},
      {"onesmax", "onesmax-L", "count of ones over L bits"},
  };
}

std::string familyMember(std::string_view family, std::size_t size) {
  const std::string n = std::to_string(size);
  if (family == "f3") return "f3x" + n;
  if (family == "f3s") return "f3sx" + n;
  if (family == "d4pi") return "d4pi-" + n;
  if (family == "d4pi01") return "d4pi01-" + n;
  if (family == "onesmax") return "onesmax-" + n;
  if (family.starts_with("trap-")) {
    const auto l = family.substr(5);
    std::size_t block = 0;
    auto [ptr, ec] = std::from_chars(l.data(), l.data() + l.size(), block);
    if (!l.empty() && ec == std::errc{} && ptr == l.data() + l.size() && block > 0) {
      return std::string(family) + "-" + n;
    }
  }
  throw ConfigError("unknown problem family '" + std::string(family) + "'");
}

}  // namespace smuga
