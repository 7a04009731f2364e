#pragma once

#include "hms/hmsrep.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hms {

struct OutcomeStat {
  std::string outcome;     // atom label, or the continuous support label
  Rational expected;
  std::uint64_t count = 0;
  double frequency = 0.0;
  std::optional<double> z;  // absent when expected is 0 or 1
};

struct SampleReport {
  std::string state;
  std::string measurement;
  std::vector<OutcomeStat> stats;
  std::uint64_t n = 0;
  std::uint64_t seed = 0;
  unsigned shards = 1;
};

/// Uniform draw on [0,1) addressed by (seed, index); the generator is a
/// SplitMix64 hash of the counter, so shard decomposition cannot change
/// the stream.
double uniform01(std::uint64_t seed, std::uint64_t index);

/// n uniform context draws tallied through phi. Shard s handles indices
/// congruent to s mod shards; tallies merge by addition, so the result is
/// identical for any shard count.
SampleReport sample(const HiddenRepresentation& rep, const std::string& state,
                    const std::string& meas, std::uint64_t n, std::uint64_t seed,
                    unsigned shards = 1);

/// sample() per pair, with a subseed derived from (seed, pair index).
std::vector<SampleReport> sweep(
    const HiddenRepresentation& rep,
    const std::vector<std::pair<std::string, std::string>>& pairs,
    std::uint64_t n, std::uint64_t seed);

}  // namespace hms
