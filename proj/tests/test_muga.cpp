#include <doctest.h>

#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <string>

#include "smuga/evaluator.hpp"
#include "smuga/muga.hpp"
#include "smuga/problems.hpp"

using namespace smuga;

namespace {

BitString bits(const char* s) { return BitString::fromString(s); }

// Binomial tolerance for a frequency estimate.
double threeSigma(double p, double n) { return 3.0 * std::sqrt(p * (1.0 - p) / n); }

MugaConfig frozenConfig(std::size_t n) {
  MugaConfig cfg;
  cfg.populationSize = n;
  cfg.matingPoolSize = 2 * n;
  cfg.rescaleMaxTotalCopies = 2 * n;
  return cfg;
}

}  // namespace

TEST_CASE("tournament from a single genotype") {
  MultiPopulation pop;
  pop.insert(bits("0101"), 1, 3.0);
  Rng rng(1);
  const auto sel = tournamentSelect(pop, 5, 3, rng);
  CHECK(sel.size() == 1);
  CHECK(sel.copiesOf(bits("0101")) == 5);
}

TEST_CASE("tournament of size one samples expanded entries uniformly") {
  MultiPopulation pop;
  pop.insert(bits("00"), 5, 1.0);
  pop.insert(bits("01"), 3, 2.0);
  pop.insert(bits("10"), 2, 3.0);
  Rng rng(2);
  const double draws = 10000;
  const auto sel = tournamentSelect(pop, static_cast<std::size_t>(draws), 1, rng);
  CHECK(sel.totalCopies() == 10000);
  for (const auto& [g, share] : std::map<std::string, double>{{"00", 0.5}, {"01", 0.3}, {"10", 0.2}}) {
    const double freq = static_cast<double>(sel.copiesOf(bits(g.c_str()))) / draws;
    CHECK(std::abs(freq - share) <= threeSigma(share, draws));
  }
}

TEST_CASE("binary tournament picks the better of two with probability 3/4") {
  MultiPopulation pop;
  pop.insert(bits("1"), 1, 7.0);
  pop.insert(bits("0"), 1, 1.0);
  Rng rng(3);
  const auto sel = tournamentSelect(pop, 10000, 2, rng);
  const double expected = 1.0 - 0.5 * 0.5;
  const double freq = static_cast<double>(sel.copiesOf(bits("1"))) / 10000.0;
  CHECK(std::abs(freq - expected) <= threeSigma(expected, 10000));
}

TEST_CASE("crossover") {
  Rng rng(4);
  const auto a = bits("0000");
  const auto b = bits("1111");
  SUBCASE("probability zero copies the parents") {
    for (auto kind : {CrossoverKind::OnePoint, CrossoverKind::Uniform}) {
      const auto [c1, c2] = crossover(a, b, kind, 0.0, rng);
      CHECK(c1 == a);
      CHECK(c2 == b);
    }
  }
  SUBCASE("one cut at 2") {
    const auto [c1, c2] = onePointCrossover(a, b, 2);
    CHECK(c1 == bits("0011"));
    CHECK(c2 == bits("1100"));
  }
  SUBCASE("identical parents reproduce themselves") {
    const auto p = bits("10110");
    for (auto kind : {CrossoverKind::OnePoint, CrossoverKind::Uniform}) {
      for (int i = 0; i < 50; ++i) {
        const auto [c1, c2] = crossover(p, p, kind, 1.0, rng);
        CHECK(c1 == p);
        CHECK(c2 == p);
      }
    }
  }
  SUBCASE("children conserve alleles at every locus") {
    Rng r(9);
    const auto x = bits("1100101001");
    const auto y = bits("0110011100");
    for (int i = 0; i < 100; ++i) {
      const auto [c1, c2] = crossover(x, y, CrossoverKind::Uniform, 1.0, r);
      for (std::size_t j = 0; j < x.size(); ++j) CHECK(c1[j] + c2[j] == x[j] + y[j]);
    }
  }
  SUBCASE("length mismatch") {
    CHECK_THROWS_AS(crossover(bits("01"), bits("011"), CrossoverKind::Uniform, 1.0, rng), StructuralError);
  }
}

TEST_CASE("wave function") {
  const MwmConfig cfg{2.0, 3.0, 0.0};
  CHECK(waveFunction(1, cfg) == doctest::Approx(1.0));
  CHECK(waveFunction(1, MwmConfig{0.7, 11.0, 0.0}) == doctest::Approx(1.0));
  const auto trough = static_cast<std::size_t>(std::lround(1 + std::numbers::pi * 2.0));
  CHECK(waveFunction(trough, cfg) <= 0.02);
  CHECK(waveFunction(3, MwmConfig{2.0, 400.0, 0.0}) < 1e-9);

  // Periodic with period 2*pi*roughness, checked where the period is integral.
  const MwmConfig unitPeriod{1.0 / (2.0 * std::numbers::pi), 3.0, 0.0};
  for (std::size_t c = 1; c < 20; ++c) {
    CHECK(waveFunction(c + 1, unitPeriod) == doctest::Approx(waveFunction(c, unitPeriod)));
  }

  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> r(0.05, 20.0);
  for (int i = 0; i < 10000; ++i) {
    const double w = waveFunction(1 + gen() % 1000, MwmConfig{r(gen), r(gen), 0.0});
    CHECK((w >= 0.0 && w <= 1.0));
  }
}

TEST_CASE("wave mutation") {
  Rng rng(6);
  SUBCASE("the first clone is the bitwise complement") {
    const MultiIndividual mi{1, bits("110100111"), 1.0, true};
    const auto out = multisetWaveMutation(mi, MwmConfig{2.0, 3.0, 0.1}, rng);
    CHECK(out.totalCopies() == 1);
    CHECK(out.contains(bits("001011000")));
  }
  SUBCASE("a clone at the trough with zero floor is almost always unchanged") {
    // wave(7) with roughness 2, thinness 3 is about 1e-5.
    int unchanged = 0;
    for (int t = 0; t < 200; ++t) {
      const MultiIndividual mi{7, bits("1010101010"), 0.0, true};
      const auto out = multisetWaveMutation(mi, MwmConfig{2.0, 3.0, 0.0}, rng);
      unchanged += out.contains(mi.genotype);
    }
    CHECK(unchanged >= 195);
  }
  SUBCASE("one mutant per clone") {
    for (std::size_t copies : {1U, 2U, 9U, 40U}) {
      const MultiIndividual mi{copies, bits("0011"), 0.0, true};
      CHECK(multisetWaveMutation(mi, MwmConfig{2.0, 3.0, 0.25}, rng).totalCopies() == copies);
    }
  }
  SUBCASE("mutants are unevaluated") {
    const MultiIndividual mi{3, bits("0011"), 5.0, true};
    for (const auto& m : multisetWaveMutation(mi, MwmConfig{}, rng).storage()) CHECK_FALSE(m.evaluated);
  }
}

TEST_CASE("decimation") {
  Rng rng(7);
  MultiPopulation parents;
  parents.insert(bits("00"), 1, 5.0);
  parents.insert(bits("01"), 1, 1.0);

  SUBCASE("empty offspring") {
    CHECK(multisetDecimation(parents, MultiPopulation{}, 2, rng) == parents);
  }
  SUBCASE("duplicate offspring only add copies") {
    MultiPopulation off;
    off.insert(bits("00"), 2, 5.0);
    const auto out = multisetDecimation(parents, off, 2, rng);
    CHECK(out.size() == 2);
    CHECK(out.copiesOf(bits("00")) == 3);
  }
  SUBCASE("the new best always survives; the worst goes in 2 of 3 draws") {
    MultiPopulation off;
    off.insert(bits("10"), 1, 9.0);
    // Draws {A,B}, {A,C}, {B,C} are equally likely; B is removed in two.
    int bRemoved = 0;
    const int trials = 3000;
    for (int t = 0; t < trials; ++t) {
      const auto out = multisetDecimation(parents, off, 2, rng);
      CHECK(out.size() == 2);
      CHECK(out.contains(bits("10")));
      bRemoved += !out.contains(bits("01"));
    }
    const double expected = 2.0 / 3.0;
    CHECK(std::abs(bRemoved / static_cast<double>(trials) - expected) <= threeSigma(expected, trials));
  }
  SUBCASE("oversized tournaments use every member") {
    MultiPopulation off;
    off.insert(bits("10"), 1, 9.0);
    const auto out = multisetDecimation(parents, off, 10, rng);
    CHECK(out.size() == 2);
    CHECK_FALSE(out.contains(bits("01")));
  }
}

TEST_CASE("property: decimation keeps the strict maximum") {
  std::mt19937 gen(13);
  Rng rng(13);
  for (int trial = 0; trial < 300; ++trial) {
    MultiPopulation parents;
    MultiPopulation offspring;
    for (int i = 0; i < 12; ++i) {
      BitString g(6);
      for (std::size_t b = 0; b < 6; ++b) g.set(b, gen() & 1);
      auto& target = (i % 2 == 0) ? parents : offspring;
      target.insert(g, 1 + gen() % 3, static_cast<double>(gen() % 1000));
    }
    double best = -1;
    std::size_t ties = 0;
    BitString bestGenotype;
    MultiPopulation all = parents;
    all.merge(offspring);
    for (const auto& mi : all.storage()) {
      if (mi.fitness > best) {
        best = mi.fitness;
        bestGenotype = mi.genotype;
        ties = 1;
      } else if (mi.fitness == best) {
        ++ties;
      }
    }
    const auto out = multisetDecimation(parents, offspring, 2 + gen() % 3, rng);
    CHECK(out.size() == parents.size());
    if (ties == 1) CHECK(out.contains(bestGenotype));
  }
}

TEST_CASE("rescale") {
  SUBCASE("already under the cap") {
    MultiPopulation pop;
    pop.insert(bits("00"), 3);
    pop.insert(bits("01"), 2);
    CHECK(adaptiveRescale(pop, 5) == pop);
  }
  SUBCASE("single copies stay") {
    MultiPopulation pop;
    for (const char* g : {"00", "01", "10"}) pop.insert(bits(g));
    CHECK(adaptiveRescale(pop, 3) == pop);
  }
  SUBCASE("{8,4,1} with cap 7") {
    MultiPopulation pop;
    pop.insert(bits("00"), 8);
    pop.insert(bits("01"), 4);
    pop.insert(bits("10"), 1);
    CHECK(rescaleFactor(pop, 7) == 2);
    const auto out = adaptiveRescale(pop, 7);
    CHECK(out.copiesOf(bits("00")) == 4);
    CHECK(out.copiesOf(bits("01")) == 2);
    CHECK(out.copiesOf(bits("10")) == 1);
    CHECK(out.totalCopies() == 7);
  }
}

TEST_CASE("property: rescale bounds") {
  std::mt19937 gen(17);
  for (int trial = 0; trial < 500; ++trial) {
    MultiPopulation pop;
    const std::size_t n = 1 + gen() % 12;
    for (std::size_t i = 0; i < n; ++i) {
      BitString g(4);
      for (std::size_t b = 0; b < 4; ++b) g.set(b, (i >> b) & 1);
      pop.insert(g, 1 + gen() % 50);
    }
    const std::size_t cap = pop.size() + gen() % 60;
    const auto out = adaptiveRescale(pop, cap);
    CHECK(out.size() == pop.size());
    CHECK(out.totalCopies() >= out.size());
    CHECK(out.totalCopies() <= std::max(cap, pop.size()));
    for (const auto& mi : pop.storage()) CHECK(out.copiesOf(mi.genotype) <= mi.copies);
    // The chosen factor is the smallest that meets the cap.
    const std::size_t f = rescaleFactor(pop, cap);
    if (f > 1) {
      std::size_t total = 0;
      for (const auto& mi : pop.storage()) total += std::max<std::size_t>(1, mi.copies / (f - 1));
      CHECK(total > cap);
    }
  }
}

TEST_CASE("initial population has distinct evaluated genotypes") {
  const auto problem = problems::makeOnesMax(6);
  Evaluator ev(problem, 1000);
  Rng rng(8);
  const auto pop = initialPopulation(20, 6, ev, rng);
  CHECK(pop.size() == 20);
  CHECK(pop.totalCopies() == 20);
  CHECK(ev.evaluations() == 20);
  for (const auto& mi : pop.storage()) CHECK(mi.evaluated);
  CHECK_THROWS_AS(initialPopulation(5, 2, ev, rng), StructuralError);
}

TEST_CASE("muga step on OnesMax") {
  const auto problem = problems::makeOnesMax(8);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto cfg = frozenConfig(16);
    cfg.mwm.minProb = 1.0 / 8;
    Evaluator ev(problem, 1000000);
    auto streams = RandomStreams::fromSeed(seed);
    auto pop = initialPopulation(16, 8, ev, streams.hostInit);
    double best = pop.ranked().front()->fitness;
    for (int g = 0; g < 50; ++g) {
      const auto before = ev.evaluations();
      auto out = mugaStep(pop, cfg, ev, streams);
      REQUIRE_FALSE(out.exhausted);
      pop = std::move(out.population);
      CHECK(pop.size() == 16);
      CHECK(pop.totalCopies() <= cfg.rescaleMaxTotalCopies);
      const double now = pop.ranked().front()->fitness;
      CHECK(now >= best);
      best = now;
      CHECK(ev.evaluations() >= before);
    }
  }
}

TEST_CASE("muga step keeps size on F3 x 10") {
  const auto problem = problems::makeF3(10);
  MugaConfig cfg;
  cfg.mwm.minProb = 1.0 / 30;
  Evaluator ev(problem, 10000000);
  auto streams = RandomStreams::fromSeed(3);
  auto pop = initialPopulation(cfg.populationSize, 30, ev, streams.hostInit);
  for (int g = 0; g < 100; ++g) {
    const auto before = ev.evaluations();
    auto out = mugaStep(pop, cfg, ev, streams);
    pop = std::move(out.population);
    CHECK(pop.size() == cfg.populationSize);
    CHECK(ev.evaluations() - before <= cfg.matingPoolSize);
  }
}

TEST_CASE("muga step with no variation changes nothing") {
  const auto problem = problems::makeOnesMax(4);
  MugaConfig cfg = frozenConfig(2);
  cfg.crossoverProbability = 0.0;
  cfg.mwm = MwmConfig{2.0, 1e9, 0.0};
  Evaluator ev(problem, 1000);
  MultiPopulation pop;
  pop.insert(bits("1111"), 1, ev(bits("1111")));
  pop.insert(bits("1110"), 1, ev(bits("1110")));
  auto streams = RandomStreams::fromSeed(1);
  // thinness huge makes every clone after the first mutation-free, but the
  // first clone of each member is still complemented; put those in the cache.
  ev(bits("0000"));
  ev(bits("0001"));
  const auto before = ev.evaluations();
  const auto out = mugaStep(pop, cfg, ev, streams);
  CHECK(ev.evaluations() == before);
  CHECK(out.population.contains(bits("1111")));
}

TEST_CASE("muga solves F3 x 10 with the default settings") {
  const auto problem = problems::makeF3(10);
  int solved = 0;
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    MugaConfig cfg;
    cfg.mwm.minProb = 1.0 / 30;
    Evaluator ev(problem, 30000);
    auto streams = RandomStreams::fromSeed(seed);
    auto pop = initialPopulation(cfg.populationSize, 30, ev, streams.hostInit);
    while (!ev.solved()) {
      auto out = mugaStep(pop, cfg, ev, streams);
      if (out.exhausted) break;
      pop = std::move(out.population);
    }
    solved += ev.solved();
  }
  CHECK(solved >= 7);
}
