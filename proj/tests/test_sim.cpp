#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hms/quantum.hpp"
#include "hms/sim.hpp"
#include "test_util.hpp"

#include <cmath>

using namespace hms;

namespace {

ProbabilityMeasure row(std::initializer_list<std::pair<const char*, const char*>> ws) {
  std::vector<Atom> atoms;
  for (const auto& [name, w] : ws) atoms.push_back({name, parse_rational(w)});
  return ProbabilityMeasure::make(std::move(atoms));
}

HiddenRepresentation coin_rep() {
  return build(MeasurementSystem::validate(
      {"p"}, {{"coin", {{"h", Rational(0)}, {"t", Rational(1)}}}},
      {{{"p", "coin"}, row({{"h", "1/2"}, {"t", "1/2"}})}}));
}

const OutcomeStat& stat(const SampleReport& r, const std::string& name) {
  for (const auto& s : r.stats)
    if (s.outcome == name) return s;
  REQUIRE(false);
  return r.stats.front();
}

}  // namespace

TEST_CASE("uniform01 is a pure function of (seed, index)") {
  CHECK(uniform01(42, 0) == uniform01(42, 0));
  CHECK(uniform01(42, 0) != uniform01(42, 1));
  CHECK(uniform01(42, 7) != uniform01(43, 7));
  for (std::uint64_t i = 0; i < 1000; ++i) {
    double u = uniform01(42, i);
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("deterministic representation yields a single outcome") {
  auto rep = build(MeasurementSystem::validate(
      {"p"}, {{"m", {{"only", Rational(0)}, {"never", Rational(1)}}}},
      {{{"p", "m"}, row({{"only", "1"}})}}));
  auto r = sample(rep, "p", "m", 1000, 7);
  CHECK(stat(r, "only").count == 1000);
  CHECK(stat(r, "never").count == 0);
  CHECK(stat(r, "never").expected == 0);
  CHECK_FALSE(stat(r, "only").z.has_value());
  CHECK_FALSE(stat(r, "never").z.has_value());
}

TEST_CASE("coin frequencies stay within the 4-sigma binomial bound") {
  auto r = sample(coin_rep(), "p", "coin", 100000, 42);
  double bound = 4 * std::sqrt(0.25 / 100000.0);
  CHECK(std::abs(stat(r, "h").frequency - 0.5) <= bound);
  CHECK(std::abs(stat(r, "t").frequency - 0.5) <= bound);
  REQUIRE(stat(r, "h").z.has_value());
  CHECK(std::abs(*stat(r, "h").z) <= 4.0);
  CHECK(stat(r, "h").count + stat(r, "t").count == 100000);
}

TEST_CASE("identical inputs give identical reports") {
  auto rep = coin_rep();
  auto a = sample(rep, "p", "coin", 5000, 99);
  auto b = sample(rep, "p", "coin", 5000, 99);
  REQUIRE(a.stats.size() == b.stats.size());
  for (std::size_t i = 0; i < a.stats.size(); ++i)
    CHECK(a.stats[i].count == b.stats[i].count);
  auto c = sample(rep, "p", "coin", 5000, 100);
  bool same = true;
  for (std::size_t i = 0; i < a.stats.size(); ++i)
    if (a.stats[i].count != c.stats[i].count) same = false;
  CHECK_FALSE(same);
}

TEST_CASE("shard decomposition cannot change the tallies") {
  auto rep = coin_rep();
  auto one = sample(rep, "p", "coin", 100000, 42, 1);
  for (unsigned shards : {2u, 8u}) {
    auto r = sample(rep, "p", "coin", 100000, 42, shards);
    REQUIRE(r.stats.size() == one.stats.size());
    for (std::size_t i = 0; i < r.stats.size(); ++i)
      CHECK(r.stats[i].count == one.stats[i].count);
  }
}

TEST_CASE("continuous outcomes are tallied under the support label") {
  auto m = ProbabilityMeasure::make(
      {{"atom", Rational(1, 2)}},
      ContinuousPart{Rational(1, 2), PiecewiseLinearCdf::uniform(), "range"});
  auto rep = build(MeasurementSystem::validate(
      {"p"}, {{"e", {{"atom", Rational(0)}}}}, {{{"p", "e"}, m}}));
  auto r = sample(rep, "p", "e", 100000, 5);
  CHECK(stat(r, "atom").count + stat(r, "range").count == 100000);
  CHECK(stat(r, "range").expected == Rational(1, 2));
  double bound = 4 * std::sqrt(0.25 / 100000.0);
  CHECK(std::abs(stat(r, "range").frequency - 0.5) <= bound);
}

TEST_CASE("sweep is deterministic and per-pair seeded") {
  auto rep = coin_rep();
  CHECK(sweep(rep, {}, 100, 1).empty());
  auto a = sweep(rep, {{"p", "coin"}, {"p", "coin"}}, 5000, 42);
  auto b = sweep(rep, {{"p", "coin"}, {"p", "coin"}}, 5000, 42);
  REQUIRE(a.size() == 2);
  CHECK(stat(a[0], "h").count == stat(b[0], "h").count);
  CHECK(stat(a[1], "h").count == stat(b[1], "h").count);
  // distinct subseeds: the two identical pairs should not tally identically
  CHECK(stat(a[0], "h").count != stat(a[1], "h").count);
}

TEST_CASE("spin sweep stays within statistical bounds") {
  auto [ms, rep] = aerts_sphere({Rational(0), Rational(1, 3), Rational(1, 2)}, {});
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const auto& st : ms.states()) pairs.push_back({st, ms.measurements()[0].name});
  for (const auto& r : sweep(rep, pairs, 100000, 42))
    for (const auto& s : r.stats)
      if (s.z) CHECK(std::abs(*s.z) <= 4.0);
}
