#include "hms/msys.hpp"

#include <algorithm>

namespace hms {

MeasurementSystem MeasurementSystem::validate(
    std::vector<std::string> states, std::vector<Measurement> measurements,
    std::map<std::pair<std::string, std::string>, ProbabilityMeasure> table) {
  for (auto& meas : measurements) {
    // Deduplicate identical outcome labels; same name with a different
    // value is a conflict.
    std::vector<OutcomeLabel> dedup;
    for (const auto& o : meas.outcomes) {
      auto it = std::find_if(dedup.begin(), dedup.end(), [&](const OutcomeLabel& d) {
        return d.name == o.name;
      });
      if (it == dedup.end()) {
        dedup.push_back(o);
      } else if (it->value != o.value) {
        throw UnknownOutcomeRef("conflicting values for outcome '" + o.name +
                                "' in measurement '" + meas.name + "'");
      }
    }
    for (std::size_t i = 0; i < dedup.size(); ++i)
      for (std::size_t j = i + 1; j < dedup.size(); ++j)
        if (dedup[i].value == dedup[j].value)
          throw UnknownOutcomeRef("outcomes '" + dedup[i].name + "' and '" +
                                  dedup[j].name + "' share value in '" +
                                  meas.name + "'");
    meas.outcomes = std::move(dedup);
    meas.has_continuous = false;
  }

  for (const auto& p : states) {
    for (auto& meas : measurements) {
      auto it = table.find({p, meas.name});
      if (it == table.end())
        throw MissingTableEntry("missing table entry (" + p + ", " + meas.name + ")");
      const ProbabilityMeasure& m = it->second;
      for (const auto& atom : m.atoms()) {
        bool known = std::any_of(
            meas.outcomes.begin(), meas.outcomes.end(),
            [&](const OutcomeLabel& o) { return o.name == atom.outcome; });
        if (!known)
          throw UnknownOutcomeRef("row (" + p + ", " + meas.name +
                                  ") references unknown outcome '" +
                                  atom.outcome + "'");
      }
      if (m.continuous()) meas.has_continuous = true;
    }
  }

  MeasurementSystem ms;
  ms.states_ = std::move(states);
  ms.measurements_ = std::move(measurements);
  ms.table_ = std::move(table);
  return ms;
}

const Measurement& MeasurementSystem::measurement(const std::string& name) const {
  auto it = std::find_if(measurements_.begin(), measurements_.end(),
                         [&](const Measurement& m) { return m.name == name; });
  if (it == measurements_.end())
    throw UnknownStateOrMeasurement("unknown measurement '" + name + "'");
  return *it;
}

const ProbabilityMeasure& MeasurementSystem::entry(const std::string& state,
                                                   const std::string& meas) const {
  auto it = table_.find({state, meas});
  if (it == table_.end())
    throw UnknownStateOrMeasurement("unknown pair (" + state + ", " + meas + ")");
  return it->second;
}

OutcomeSubset MeasurementSystem::restrict_to(const std::string& meas,
                                             const OutcomeSubset& b) const {
  const Measurement& m = measurement(meas);
  OutcomeSubset r;
  for (const auto& label : b.labels)
    if (std::any_of(m.outcomes.begin(), m.outcomes.end(),
                    [&](const OutcomeLabel& o) { return o.name == label; }))
      r.labels.insert(label);
  if (m.has_continuous) r.ranges = b.ranges;
  return r;
}

Rational MeasurementSystem::prob(const std::string& state, const std::string& meas,
                                 const OutcomeSubset& b) const {
  const ProbabilityMeasure& m = entry(state, meas);
  OutcomeSubset r = restrict_to(meas, b);
  // Outcomes of O_e that the row omits carry probability zero.
  std::erase_if(r.labels,
                [&](const std::string& l) { return !m.has_outcome(l); });
  if (!m.continuous()) r.ranges = IntervalSet();
  return m.eval(r);
}

namespace {

// Sorted weight profile of one table row; continuous part included verbatim
// so only genuinely identical continuous rows can match.
struct RowSig {
  std::vector<Rational> weights;
  std::optional<ContinuousPart> continuous;
  bool operator==(const RowSig&) const = default;
  bool operator<(const RowSig& o) const {
    if (weights != o.weights) return weights < o.weights;
    if (continuous.has_value() != o.continuous.has_value())
      return !continuous.has_value();
    if (!continuous) return false;
    if (continuous->weight != o.continuous->weight)
      return continuous->weight < o.continuous->weight;
    return continuous->cdf.points() < o.continuous->cdf.points();
  }
};

RowSig row_sig(const ProbabilityMeasure& m) {
  RowSig s;
  for (const auto& a : m.atoms()) s.weights.push_back(a.weight);
  std::sort(s.weights.begin(), s.weights.end());
  s.continuous = m.continuous();
  return s;
}

}  // namespace

EquivResult math_equiv(const MeasurementSystem& a, const MeasurementSystem& b,
                       std::uint64_t budget) {
  if (a.states().size() != b.states().size() ||
      a.measurements().size() != b.measurements().size())
    return {Verdict::No, {}};

  const auto& as = a.states();
  const auto& bs = b.states();
  std::uint64_t checks = 0;
  auto spend = [&](std::uint64_t k) {
    checks += k;
    return checks <= budget;
  };

  // Signature of a state: multiset of row signatures across measurements.
  auto state_sig = [](const MeasurementSystem& ms, const std::string& p) {
    std::vector<RowSig> sig;
    for (const auto& e : ms.measurements()) sig.push_back(row_sig(ms.entry(p, e.name)));
    std::sort(sig.begin(), sig.end());
    return sig;
  };
  auto meas_sig = [](const MeasurementSystem& ms, const Measurement& e) {
    std::vector<RowSig> sig;
    for (const auto& p : ms.states()) sig.push_back(row_sig(ms.entry(p, e.name)));
    std::sort(sig.begin(), sig.end());
    return std::make_pair(e.outcomes.size(), sig);
  };

  std::vector<std::vector<RowSig>> asig, bsig;
  for (const auto& p : as) asig.push_back(state_sig(a, p));
  for (const auto& p : bs) bsig.push_back(state_sig(b, p));
  std::vector<std::pair<std::size_t, std::vector<RowSig>>> amsig, bmsig;
  for (const auto& e : a.measurements()) amsig.push_back(meas_sig(a, e));
  for (const auto& e : b.measurements()) bmsig.push_back(meas_sig(b, e));

  const std::size_t ns = as.size();
  const std::size_t ne = a.measurements().size();

  // Try to find, for a fixed state bijection, compatible measurement and
  // outcome bijections.
  auto try_measurements = [&](const std::vector<std::size_t>& zeta,
                              EquivalenceWitness& w) -> std::optional<bool> {
    std::vector<std::size_t> eta(ne);
    std::vector<bool> used(ne, false);
    std::function<std::optional<bool>(std::size_t)> go =
        [&](std::size_t ei) -> std::optional<bool> {
      if (ei == ne) return true;
      for (std::size_t ej = 0; ej < ne; ++ej) {
        if (used[ej] || amsig[ei] != bmsig[ej]) continue;
        const Measurement& ea = a.measurements()[ei];
        const Measurement& eb = b.measurements()[ej];
        // Outcome bijection: match equal probability columns greedily.
        std::map<std::string, std::string> nu;
        std::vector<bool> taken(eb.outcomes.size(), false);
        bool ok = true;
        for (const auto& oa : ea.outcomes) {
          bool matched = false;
          for (std::size_t t = 0; t < eb.outcomes.size() && !matched; ++t) {
            if (taken[t]) continue;
            bool equal = true;
            for (const auto& p : as) {
              if (!spend(1)) return std::nullopt;  // budget exhausted
              Rational pa = a.prob(p, ea.name, OutcomeSubset::of({oa.name}));
              Rational pb = b.prob(bs[zeta[&p - as.data()]], eb.name,
                                   OutcomeSubset::of({eb.outcomes[t].name}));
              if (pa != pb) {
                equal = false;
                break;
              }
            }
            if (equal) {
              taken[t] = true;
              nu[oa.name] = eb.outcomes[t].name;
              matched = true;
            }
          }
          if (!matched) {
            ok = false;
            break;
          }
        }
        // Continuous parts must agree verbatim row by row.
        if (ok) {
          for (const auto& p : as) {
            const auto& ca = a.entry(p, ea.name).continuous();
            const auto& cb =
                b.entry(bs[zeta[&p - as.data()]], eb.name).continuous();
            if (ca != cb) {
              ok = false;
              break;
            }
          }
        }
        if (!ok) continue;
        used[ej] = true;
        eta[ei] = ej;
        w.outcome_maps[ea.name] = std::move(nu);
        auto sub = go(ei + 1);
        if (!sub.has_value()) return std::nullopt;
        if (*sub) {
          w.measurement_map[ea.name] = eb.name;
          return true;
        }
        used[ej] = false;
        w.outcome_maps.erase(ea.name);
      }
      return false;
    };
    return go(0);
  };

  std::vector<std::size_t> zeta(ns);
  std::vector<bool> used(ns, false);
  EquivResult out;
  std::function<std::optional<bool>(std::size_t)> pick_state =
      [&](std::size_t i) -> std::optional<bool> {
    if (i == ns) {
      EquivalenceWitness w;
      auto r = try_measurements(zeta, w);
      if (!r.has_value()) return std::nullopt;
      if (*r) {
        for (std::size_t k = 0; k < ns; ++k) w.state_map[as[k]] = bs[zeta[k]];
        out.witness = std::move(w);
        return true;
      }
      return false;
    }
    for (std::size_t j = 0; j < ns; ++j) {
      if (used[j] || asig[i] != bsig[j]) continue;
      used[j] = true;
      zeta[i] = j;
      auto r = pick_state(i + 1);
      if (!r.has_value()) return std::nullopt;
      if (*r) return true;
      used[j] = false;
    }
    return false;
  };

  auto r = pick_state(0);
  if (!r.has_value()) return {Verdict::Unknown, {}};
  out.verdict = *r ? Verdict::Yes : Verdict::No;
  return out;
}

}  // namespace hms
