#include "hms/sim.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace hms {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

double uniform01(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t h = splitmix64(splitmix64(seed) ^ index);
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

SampleReport sample(const HiddenRepresentation& rep, const std::string& state,
                    const std::string& meas, std::uint64_t n, std::uint64_t seed,
                    unsigned shards) {
  if (shards == 0) shards = 1;
  const OutcomeMap& map = rep.map_for(state, meas);
  const ProbabilityMeasure& measure = rep.system.entry(state, meas);

  // Tally keyed by cell target: atom label, or the continuous bucket.
  const std::string cont_label =
      measure.continuous() ? measure.continuous()->support : std::string();
  std::map<std::string, std::uint64_t> counts;
  for (const auto& o : rep.system.measurement(meas).outcomes)
    counts[o.name];  // default-initialize to 0, including expected-0 outcomes
  if (measure.continuous()) counts[cont_label];

  // Index-addressed draws: shard decomposition only changes who counts
  // which index, never the value drawn for it.
  for (unsigned s = 0; s < shards; ++s) {
    for (std::uint64_t i = s; i < n; i += shards) {
      double lam = uniform01(seed, i);
      // Locate the cell by float comparison against exact endpoints.
      const OutcomeCell* hit = &map.cells.back();
      for (const auto& cell : map.cells) {
        if (lam < to_double(cell.end)) {
          hit = &cell;
          break;
        }
      }
      if (const auto* label = std::get_if<std::string>(&hit->target)) {
        ++counts[*label];
      } else {
        ++counts[cont_label];
      }
    }
  }

  SampleReport report;
  report.state = state;
  report.measurement = meas;
  report.n = n;
  report.seed = seed;
  report.shards = shards;
  for (const auto& [label, count] : counts) {
    OutcomeStat stat;
    stat.outcome = label;
    if (measure.continuous() && label == cont_label) {
      stat.expected = measure.continuous()->weight;
    } else {
      stat.expected = rep.system.prob(state, meas, OutcomeSubset::of({label}));
    }
    stat.count = count;
    stat.frequency = static_cast<double>(count) / static_cast<double>(n);
    double e = to_double(stat.expected);
    if (e > 0.0 && e < 1.0)
      stat.z = (stat.frequency - e) /
               std::sqrt(e * (1.0 - e) / static_cast<double>(n));
    report.stats.push_back(std::move(stat));
  }
  return report;
}

std::vector<SampleReport> sweep(
    const HiddenRepresentation& rep,
    const std::vector<std::pair<std::string, std::string>>& pairs,
    std::uint64_t n, std::uint64_t seed) {
  std::vector<SampleReport> out;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    std::uint64_t subseed = splitmix64(splitmix64(seed) + i + 1);
    out.push_back(sample(rep, pairs[i].first, pairs[i].second, n, subseed));
  }
  return out;
}

}  // namespace hms
