#include "hms/interval.hpp"

#include <algorithm>

namespace hms {

IntervalSet IntervalSet::normalize(std::vector<Cell> cells) {
  for (const auto& [a, b] : cells) {
    if (a < 0 || b > 1) throw EndpointOutOfRange("interval endpoint outside [0,1]");
    if (a > b) throw MalformedPair("interval with a > b");
  }
  std::erase_if(cells, [](const Cell& c) { return c.first == c.second; });
  std::sort(cells.begin(), cells.end());
  std::vector<Cell> merged;
  for (auto& c : cells) {
    if (!merged.empty() && c.first <= merged.back().second) {
      if (c.second > merged.back().second) merged.back().second = std::move(c.second);
    } else {
      merged.push_back(std::move(c));
    }
  }
  IntervalSet s;
  s.cells_ = std::move(merged);
  return s;
}

IntervalSet IntervalSet::from_sorted(std::vector<Cell> cells) {
  IntervalSet s;
  s.cells_ = std::move(cells);
  return s;
}

IntervalSet set_union(const IntervalSet& s, const IntervalSet& t) {
  std::vector<IntervalSet::Cell> all = s.cells_;
  all.insert(all.end(), t.cells_.begin(), t.cells_.end());
  return IntervalSet::normalize(std::move(all));
}

IntervalSet intersect(const IntervalSet& s, const IntervalSet& t) {
  std::vector<IntervalSet::Cell> out;
  auto i = s.cells_.begin();
  auto j = t.cells_.begin();
  while (i != s.cells_.end() && j != t.cells_.end()) {
    Rational lo = std::max(i->first, j->first);
    Rational hi = std::min(i->second, j->second);
    if (lo < hi) out.emplace_back(lo, hi);
    if (i->second < j->second) {
      ++i;
    } else {
      ++j;
    }
  }
  return IntervalSet::from_sorted(std::move(out));
}

IntervalSet IntervalSet::complement() const {
  std::vector<Cell> out;
  Rational cursor(0);
  for (const auto& [a, b] : cells_) {
    if (cursor < a) out.emplace_back(cursor, a);
    cursor = b;
  }
  if (cursor < 1) out.emplace_back(cursor, Rational(1));
  return from_sorted(std::move(out));
}

Rational IntervalSet::lebesgue() const {
  Rational total(0);
  for (const auto& [a, b] : cells_) total += b - a;
  return total;
}

bool IntervalSet::contains(const Rational& x) const {
  if (x < 0 || x > 1) throw PointOutOfRange("point outside [0,1]");
  auto it = std::upper_bound(
      cells_.begin(), cells_.end(), x,
      [](const Rational& v, const Cell& c) { return v < c.first; });
  if (it == cells_.begin()) return false;
  --it;
  return x >= it->first && x < it->second;
}

}  // namespace hms
