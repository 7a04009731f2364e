#pragma once

#include "hms/interval.hpp"
#include "hms/rational.hpp"

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace hms {

struct MassNotOne : std::runtime_error {
  Rational deficit;
  explicit MassNotOne(Rational d)
      : std::runtime_error("total mass differs from 1 by " + hms::to_string(d)),
        deficit(std::move(d)) {}
};
struct DuplicateOutcome : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InvalidCdf : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UnknownOutcome : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct WeightOutOfRange : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Continuous, piecewise-linear CDF on [0,1] with rational breakpoints.
/// First point is (0,0), last is (1,1); x strictly increasing, F
/// non-decreasing. Jumps are never represented here; point masses are
/// atoms of the enclosing measure.
class PiecewiseLinearCdf {
 public:
  using Point = std::pair<Rational, Rational>;  // (x, F(x))

  static PiecewiseLinearCdf make(std::vector<Point> points);
  static PiecewiseLinearCdf uniform();  // F(x) = x

  const std::vector<Point>& points() const { return points_; }

  /// F(x) by linear interpolation; x must be in [0,1].
  Rational value_at(const Rational& x) const;

  bool operator==(const PiecewiseLinearCdf&) const = default;

 private:
  std::vector<Point> points_;
};

struct Atom {
  std::string outcome;
  Rational weight;  // > 0
  bool operator==(const Atom&) const = default;
};

struct ContinuousPart {
  Rational weight;  // in (0,1]
  PiecewiseLinearCdf cdf;
  std::string support;  // label for the continuous outcome range
  bool operator==(const ContinuousPart&) const = default;
};

/// A query set of outcomes: a finite set of atom labels plus, for the
/// continuous part, sub-ranges of its [0,1] coordinate.
struct OutcomeSubset {
  std::set<std::string> labels;
  IntervalSet ranges;

  static OutcomeSubset of(std::initializer_list<std::string> ls) {
    OutcomeSubset b;
    b.labels.insert(ls.begin(), ls.end());
    return b;
  }
};

/// Probability measure with a finite atomic part and an optional
/// piecewise-linear continuous part. Total mass is exactly 1.
class ProbabilityMeasure {
 public:
  static ProbabilityMeasure make(std::vector<Atom> atoms,
                                 std::optional<ContinuousPart> continuous = {});

  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::optional<ContinuousPart>& continuous() const { return continuous_; }

  Rational atomic_mass() const;
  bool has_outcome(const std::string& label) const;

  /// P(B); unknown labels throw UnknownOutcome.
  Rational eval(const OutcomeSubset& b) const;

  /// The whole outcome space as a query set.
  OutcomeSubset full_subset() const;

  bool operator==(const ProbabilityMeasure&) const = default;

 private:
  std::vector<Atom> atoms_;
  std::optional<ContinuousPart> continuous_;
};

struct Decomposition {
  std::optional<ProbabilityMeasure> left;   // normalized continuous part
  std::optional<ProbabilityMeasure> right;  // normalized atomic part
  Rational atomic_weight;                   // a = total atom mass
};

/// Splits off the atomic support: left carries the continuous part
/// scaled to mass 1, right the atoms scaled to mass 1.
Decomposition decompose(const ProbabilityMeasure& m);

/// (1-a)*l + a*r on the disjoint union of their outcome spaces. Clashing
/// atom labels on the right are suffixed with "'" until unique.
ProbabilityMeasure weighted_union(const ProbabilityMeasure& l,
                                  const ProbabilityMeasure& r,
                                  const Rational& a);

/// Canonical isomorphism-class tag of a measure space.
class MeasureClass {
 public:
  enum class Kind { Continuum, Finite, Mixed };

  static MeasureClass continuum();
  static MeasureClass finite(std::vector<Rational> weights);
  static MeasureClass mixed(Rational atomic_mass, std::vector<Rational> weights);

  Kind kind() const { return kind_; }
  /// Total mass of the atomic part: 1 for Finite, 0 for Continuum.
  const Rational& atomic_mass() const { return atomic_mass_; }
  /// Normalized atom weights, sorted non-increasing; empty for Continuum.
  const std::vector<Rational>& weights() const { return weights_; }

  std::string str() const;
  bool operator==(const MeasureClass&) const = default;
  bool operator<(const MeasureClass& o) const;

 private:
  Kind kind_ = Kind::Finite;
  Rational atomic_mass_;
  std::vector<Rational> weights_;
};

/// Classifies into the catalogue {CONTINUUM, FINITE(n,m), MIXED(a,m)};
/// invariant under outcome relabelling and cdf shape.
MeasureClass classify(const ProbabilityMeasure& m);

}  // namespace hms
