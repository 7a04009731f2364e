#pragma once

#include "hms/interval.hpp"
#include "hms/measure.hpp"
#include "hms/rational.hpp"

#include <cstdint>
#include <vector>

namespace hmstest {

// Small deterministic generator for property tests.
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t x = state;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  std::uint64_t below(std::uint64_t n) { return next() % n; }

  hms::Rational rational01(std::uint64_t max_den = 64) {
    std::uint64_t den = 1 + below(max_den);
    return hms::Rational(below(den + 1), den);
  }
};

inline hms::IntervalSet random_interval_set(Rng& rng, std::size_t max_cells = 4) {
  std::vector<hms::IntervalSet::Cell> cells;
  std::size_t n = rng.below(max_cells + 1);
  for (std::size_t i = 0; i < n; ++i) {
    hms::Rational a = rng.rational01();
    hms::Rational b = rng.rational01();
    if (a > b) std::swap(a, b);
    cells.emplace_back(a, b);
  }
  return hms::IntervalSet::normalize(std::move(cells));
}

// Random probability vector with denominators <= max_den, exact sum 1.
inline std::vector<hms::Rational> random_weights(Rng& rng, std::size_t count,
                                                 std::uint64_t max_den = 1000) {
  std::vector<std::uint64_t> parts(count);
  std::uint64_t total = 0;
  for (auto& p : parts) {
    p = 1 + rng.below(max_den);
    total += p;
  }
  std::vector<hms::Rational> out;
  hms::Rational sum(0);
  for (std::size_t i = 0; i + 1 < count; ++i) {
    out.emplace_back(parts[i], total);
    sum += out.back();
  }
  out.push_back(hms::Rational(1) - sum);
  return out;
}

}  // namespace hmstest
