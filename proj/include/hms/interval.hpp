#pragma once

#include "hms/rational.hpp"

#include <stdexcept>
#include <utility>
#include <vector>

namespace hms {

struct EndpointOutOfRange : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct MalformedPair : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct PointOutOfRange : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A finite union of disjoint half-open intervals [a,b) inside [0,1],
/// kept sorted and maximally merged. The empty set is an empty cell list.
class IntervalSet {
 public:
  using Cell = std::pair<Rational, Rational>;

  IntervalSet() = default;

  /// Sorts, drops empty cells, merges overlapping/touching ones.
  /// Throws EndpointOutOfRange / MalformedPair on bad input.
  static IntervalSet normalize(std::vector<Cell> cells);

  /// Trusts that `cells` already satisfy the class invariant.
  static IntervalSet from_sorted(std::vector<Cell> cells);

  static IntervalSet full() { return normalize({{Rational(0), Rational(1)}}); }

  const std::vector<Cell>& cells() const { return cells_; }
  bool empty() const { return cells_.empty(); }

  friend IntervalSet set_union(const IntervalSet& s, const IntervalSet& t);
  friend IntervalSet intersect(const IntervalSet& s, const IntervalSet& t);
  IntervalSet complement() const;

  /// Total length, exactly.
  Rational lebesgue() const;

  /// Membership under the half-open convention; x must be in [0,1].
  bool contains(const Rational& x) const;

  bool operator==(const IntervalSet&) const = default;

 private:
  std::vector<Cell> cells_;
};

}  // namespace hms
