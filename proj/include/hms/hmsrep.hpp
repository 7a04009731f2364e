#pragma once

#include "hms/interval.hpp"
#include "hms/measure.hpp"
#include "hms/msys.hpp"
#include "hms/order.hpp"

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace hms {

/// One cell of a deterministic outcome map: contexts in [begin, end) are
/// sent either to a fixed atom outcome or through a strictly increasing
/// affine segment onto the continuous coordinate.
struct OutcomeCell {
  struct Affine {
    Rational alpha;  // > 0
    Rational beta;
    bool operator==(const Affine&) const = default;
  };
  Rational begin;
  Rational end;
  std::variant<std::string, Affine> target;
  bool operator==(const OutcomeCell&) const = default;
};

/// Deterministic map [0,1) -> outcomes whose cells partition [0,1).
struct OutcomeMap {
  std::vector<OutcomeCell> cells;
  bool operator==(const OutcomeMap&) const = default;
};

/// Value of the deterministic observable at one context point: an atom
/// label or a point of the continuous coordinate.
struct Outcome {
  std::optional<std::string> label;
  std::optional<Rational> value;  // continuous coordinate in [0,1]
  bool operator==(const Outcome&) const = default;
};

/// A hidden-measurement representation over Lebesgue measure on [0,1]:
/// one outcome map per (state, measurement) table entry.
struct HiddenRepresentation {
  MeasurementSystem system;
  std::map<std::pair<std::string, std::string>, OutcomeMap> maps;

  const OutcomeMap& map_for(const std::string& state,
                            const std::string& meas) const;
};

/// Inverse-CDF layout of a single measure: atoms (sorted by weight then
/// name) occupy consecutive intervals from 0, the continuous part fills
/// the tail through the piecewise-affine quantile of its cdf. Total by
/// construction.
OutcomeMap couple(const ProbabilityMeasure& target);

/// Couples every table entry. Never fails on a validated system.
HiddenRepresentation build(const MeasurementSystem& ms);

/// The context set driving state p into B under measurement e; B is
/// intersected with O_e first.
IntervalSet delta_lambda(const HiddenRepresentation& rep, const std::string& state,
                         const std::string& meas, const OutcomeSubset& b);

/// Deterministic evaluation at one context; lambda = 1 goes to the last
/// cell (a measure-zero convention that keeps phi total).
Outcome phi(const HiddenRepresentation& rep, const std::string& state,
            const std::string& meas, const Rational& lambda);

struct VerificationEntry {
  std::string state;
  std::string measurement;
  std::string subset;  // human-readable description of B
  Rational expected;   // P_{p,e}(B)
  Rational got;        // Lebesgue measure of the context preimage
  bool ok = false;
};

struct VerificationReport {
  std::vector<VerificationEntry> entries;
  bool all_ok = true;
};

/// Checks measure preservation exactly: singletons, pairwise unions, the
/// empty set, the full space, and `grid` equal sub-ranges of every
/// continuous part.
VerificationReport verify(const HiddenRepresentation& rep,
                          const MeasurementSystem& ms, std::size_t grid = 8);

struct CriterionReport {
  Verdict verdict = Verdict::No;
  ClassSet system_classes;                 // Delta-M of the system
  std::optional<MeasureClass> mu_class;    // fixed-mu variant
  SetLeqResult comparison;                 // fixed-mu variant
  // per-measurement context measures for the finite-Lambda variant
  std::vector<std::pair<std::string, std::optional<ProbabilityMeasure>>> per_measurement_mu;
};

/// Decides whether ms is representable over the fixed context measure mu.
CriterionReport check_criterion(const MeasurementSystem& ms,
                                const ProbabilityMeasure& mu,
                                const LeqOptions& opts = {});

struct LambdaDescriptor {
  enum class Kind { Continuum, Finite } kind = Kind::Continuum;
  std::size_t size = 0;  // Finite only
};

/// Decides whether ms is representable over some context measure on the
/// given context set; the measure may differ per measurement.
CriterionReport check_criterion_lambda(const MeasurementSystem& ms,
                                       const LambdaDescriptor& lambda,
                                       const LeqOptions& opts = {});

}  // namespace hms
