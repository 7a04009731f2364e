#pragma once

#include "hms/measure.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hms {

enum class Verdict { Yes, No, Unknown };

struct MissingTableEntry : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UnknownOutcomeRef : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UnknownStateOrMeasurement : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SearchBudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OutcomeLabel {
  std::string name;
  Rational value;  // real-line embedding of the outcome
  bool operator==(const OutcomeLabel&) const = default;
};

struct Measurement {
  std::string name;
  std::vector<OutcomeLabel> outcomes;
  bool has_continuous = false;  // set when some table row has a continuous part
  bool operator==(const Measurement&) const = default;
};

/// States, measurements with their outcome spaces, and one probability
/// measure per (state, measurement) pair. Immutable once validated.
class MeasurementSystem {
 public:
  static MeasurementSystem validate(
      std::vector<std::string> states, std::vector<Measurement> measurements,
      std::map<std::pair<std::string, std::string>, ProbabilityMeasure> table);

  const std::vector<std::string>& states() const { return states_; }
  const std::vector<Measurement>& measurements() const { return measurements_; }
  const Measurement& measurement(const std::string& name) const;

  const ProbabilityMeasure& entry(const std::string& state,
                                  const std::string& meas) const;

  /// P_{p,e}(B) with the extension convention: labels outside O_e are
  /// dropped (B is intersected with O_e before evaluation).
  Rational prob(const std::string& state, const std::string& meas,
                const OutcomeSubset& b) const;

  /// B restricted to measurement e's outcome space.
  OutcomeSubset restrict_to(const std::string& meas, const OutcomeSubset& b) const;

  bool operator==(const MeasurementSystem&) const = default;

 private:
  std::vector<std::string> states_;
  std::vector<Measurement> measurements_;
  std::map<std::pair<std::string, std::string>, ProbabilityMeasure> table_;
};

struct EquivalenceWitness {
  std::map<std::string, std::string> state_map;        // zeta
  std::map<std::string, std::string> measurement_map;  // eta
  // per source measurement: outcome-name bijection (nu)
  std::map<std::string, std::map<std::string, std::string>> outcome_maps;
};

struct EquivResult {
  Verdict verdict = Verdict::No;
  std::optional<EquivalenceWitness> witness;
};

/// Searches for probability-preserving bijections of states, measurements
/// and outcomes. Candidate enumeration is pruned by sorted-probability
/// signatures; the first witness in lexicographic order is returned.
EquivResult math_equiv(const MeasurementSystem& a, const MeasurementSystem& b,
                       std::uint64_t budget = 1'000'000);

}  // namespace hms
