#pragma once

#include "hms/measure.hpp"
#include "hms/msys.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace hms {

/// How one source atom embeds into the target space.
struct AtomAllocation {
  std::size_t source_index;                // into the source class weights
  std::vector<std::size_t> target_atoms;   // disjoint across allocations
  Rational continuous_slice;               // mass taken from the target continuous part
};

/// Where a source atom lands when the target is (partly) a continuum:
/// the interval [begin, end) of the canonical [0,1] layout.
struct IntervalAllocation {
  std::size_t source_index;
  Rational begin;
  Rational end;
};

/// Constructive witness for class1 <= class2.
struct LeqWitness {
  enum class Kind { IntervalLayout, AtomPartition };
  Kind kind = Kind::AtomPartition;
  std::vector<IntervalAllocation> layout;   // IntervalLayout only
  std::vector<AtomAllocation> allocations;  // AtomPartition only
  Rational source_continuous_mass;          // embeds whole into the target continuum
};

struct LeqResult {
  Verdict verdict = Verdict::No;
  std::optional<LeqWitness> witness;
};

struct LeqOptions {
  std::size_t atom_budget = 16;        // max target atoms before giving up
  std::uint64_t node_budget = 4'000'000;  // search nodes before Unknown
};

/// Decides class1 <= class2 (existence of an injective measure-preserving
/// sigma-morphism) and returns an explicit witness on success. Exhausted
/// search budgets yield Unknown, never No.
LeqResult leq(const MeasureClass& c1, const MeasureClass& c2,
              const LeqOptions& opts = {});

struct ClassSet {
  std::vector<MeasureClass> classes;  // deduplicated, sorted

  static ClassSet from(std::vector<MeasureClass> cs);
};

struct SetLeqEntry {
  MeasureClass source;
  std::optional<MeasureClass> matched_target;
  std::optional<LeqWitness> witness;
};

struct SetLeqResult {
  Verdict verdict = Verdict::Yes;
  std::vector<SetLeqEntry> entries;
};

/// N <= N2: every class in N embeds into some class of N2.
SetLeqResult leq_sets(const ClassSet& n, const ClassSet& n2,
                      const LeqOptions& opts = {});

/// The set of classes realized by a measurement system's table.
ClassSet delta_M(const MeasurementSystem& ms);

struct MixedOrContinuumClassUnsupported : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MuSearchResult {
  Verdict verdict = Verdict::No;
  std::optional<ProbabilityMeasure> mu;
};

/// Searches for a measure on at most n atoms dominating every class in N.
/// Stage one unions the cumulative breakpoints of all classes; stage two
/// (n <= 8) runs an exact search over common-refinement supports. A failed
/// stage one without an exhaustive stage two is reported Unknown.
MuSearchResult exists_mu_for_finite_lambda(const ClassSet& n, std::size_t max_atoms,
                                           const LeqOptions& opts = {});

}  // namespace hms
