#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hms/interval.hpp"
#include "test_util.hpp"

using hms::IntervalSet;
using hms::Rational;

namespace {

IntervalSet make(std::initializer_list<std::pair<const char*, const char*>> cells) {
  std::vector<IntervalSet::Cell> v;
  for (const auto& [a, b] : cells)
    v.emplace_back(hms::parse_rational(a), hms::parse_rational(b));
  return IntervalSet::normalize(std::move(v));
}

}  // namespace

TEST_CASE("normalize merges, drops and sorts") {
  CHECK(make({{"0", "1/2"}, {"1/2", "1"}}) == make({{"0", "1"}}));
  CHECK(make({{"1/4", "1/4"}}).empty());
  CHECK(make({{"1/2", "3/4"}, {"0", "1/4"}}).cells() ==
        std::vector<IntervalSet::Cell>{{Rational(0), Rational(1, 4)},
                                       {Rational(1, 2), Rational(3, 4)}});
}

TEST_CASE("normalize rejects bad input") {
  CHECK_THROWS_AS(make({{"-1/2", "0"}}), hms::EndpointOutOfRange);
  CHECK_THROWS_AS(make({{"0", "3/2"}}), hms::EndpointOutOfRange);
  CHECK_THROWS_AS(make({{"1/2", "1/4"}}), hms::MalformedPair);
}

TEST_CASE("boolean operations on examples") {
  CHECK(set_union(make({{"0", "1/2"}}), make({{"1/2", "1"}})) == make({{"0", "1"}}));
  CHECK(intersect(make({{"0", "3/4"}}), make({{"1/4", "1"}})) ==
        make({{"1/4", "3/4"}}));
  CHECK(make({{"1/4", "1/2"}}).complement() ==
        make({{"0", "1/4"}, {"1/2", "1"}}));
}

TEST_CASE("lebesgue on examples") {
  CHECK(make({{"0", "1"}}).lebesgue() == 1);
  CHECK(make({{"0", "1/4"}, {"1/2", "3/4"}}).lebesgue() == Rational(1, 2));
  CHECK(make({{"0", "2/7"}}).complement().lebesgue() == Rational(5, 7));
  CHECK(IntervalSet().lebesgue() == 0);
}

TEST_CASE("contains respects the half-open convention") {
  IntervalSet s = make({{"0", "1/2"}});
  CHECK_FALSE(s.contains(Rational(1, 2)));
  CHECK(s.contains(Rational(0)));
  CHECK(make({{"1/4", "3/4"}}).contains(Rational(3, 10)));
  CHECK_THROWS_AS(s.contains(Rational(2)), hms::PointOutOfRange);
}

TEST_CASE("modularity: |s∪t| + |s∩t| = |s| + |t|") {
  hmstest::Rng rng(7);
  for (int i = 0; i < 300; ++i) {
    IntervalSet s = hmstest::random_interval_set(rng);
    IntervalSet t = hmstest::random_interval_set(rng);
    CHECK(set_union(s, t).lebesgue() + intersect(s, t).lebesgue() ==
          s.lebesgue() + t.lebesgue());
  }
}

TEST_CASE("boolean algebra laws") {
  hmstest::Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    IntervalSet s = hmstest::random_interval_set(rng);
    IntervalSet t = hmstest::random_interval_set(rng);
    IntervalSet u = hmstest::random_interval_set(rng);

    CHECK(s.complement().complement() == s);
    CHECK(set_union(s, t) == set_union(t, s));
    CHECK(intersect(s, t) == intersect(t, s));
    CHECK(set_union(s, s) == s);
    CHECK(intersect(s, s) == s);
    CHECK(set_union(set_union(s, t), u) == set_union(s, set_union(t, u)));
    CHECK(intersect(intersect(s, t), u) == intersect(s, intersect(t, u)));
    // De Morgan
    CHECK(set_union(s, t).complement() == intersect(s.complement(), t.complement()));
    CHECK(intersect(s, t).complement() == set_union(s.complement(), t.complement()));
  }
}

TEST_CASE("normalize is idempotent and order-insensitive") {
  hmstest::Rng rng(13);
  for (int i = 0; i < 100; ++i) {
    std::vector<IntervalSet::Cell> cells;
    for (std::size_t k = rng.below(5); k-- > 0;) {
      hms::Rational a = rng.rational01();
      hms::Rational b = rng.rational01();
      if (a > b) std::swap(a, b);
      cells.emplace_back(a, b);
    }
    IntervalSet once = IntervalSet::normalize(cells);
    CHECK(IntervalSet::normalize(once.cells()) == once);
    std::reverse(cells.begin(), cells.end());
    CHECK(IntervalSet::normalize(cells) == once);
  }
}

TEST_CASE("every point below 1 is in exactly one of s, complement(s)") {
  hmstest::Rng rng(17);
  for (int i = 0; i < 100; ++i) {
    IntervalSet s = hmstest::random_interval_set(rng);
    for (int k = 0; k < 10; ++k) {
      Rational x = rng.rational01();
      if (x == 1) continue;
      CHECK(s.contains(x) != s.complement().contains(x));
    }
  }
}
