#include "hms/hmsrep.hpp"

#include <algorithm>

namespace hms {

const OutcomeMap& HiddenRepresentation::map_for(const std::string& state,
                                                const std::string& meas) const {
  auto it = maps.find({state, meas});
  if (it == maps.end())
    throw UnknownStateOrMeasurement("no outcome map for (" + state + ", " +
                                    meas + ")");
  return it->second;
}

OutcomeMap couple(const ProbabilityMeasure& target) {
  std::vector<Atom> atoms = target.atoms();
  std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) {
    if (a.weight != b.weight) return a.weight > b.weight;
    return a.outcome < b.outcome;
  });

  OutcomeMap map;
  Rational cursor(0);
  for (const auto& a : atoms) {
    map.cells.push_back({cursor, cursor + a.weight, a.outcome});
    cursor += a.weight;
  }
  if (target.continuous()) {
    const ContinuousPart& c = *target.continuous();
    const Rational tail_start = cursor;
    const Rational& t = c.weight;
    const auto& pts = c.cdf.points();
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
      const auto& [x0, f0] = pts[k];
      const auto& [x1, f1] = pts[k + 1];
      if (f1 == f0) continue;  // cdf plateau: value range carries no mass
      Rational lo = tail_start + t * f0;
      Rational hi = tail_start + t * f1;
      Rational alpha = (x1 - x0) / (t * (f1 - f0));
      Rational beta = x0 - alpha * lo;
      map.cells.push_back({std::move(lo), std::move(hi),
                           OutcomeCell::Affine{std::move(alpha), std::move(beta)}});
    }
  }
  return map;
}

HiddenRepresentation build(const MeasurementSystem& ms) {
  HiddenRepresentation rep{ms, {}};
  for (const auto& p : ms.states())
    for (const auto& e : ms.measurements())
      rep.maps.emplace(std::make_pair(p, e.name), couple(ms.entry(p, e.name)));
  return rep;
}

IntervalSet delta_lambda(const HiddenRepresentation& rep, const std::string& state,
                         const std::string& meas, const OutcomeSubset& b) {
  const OutcomeMap& map = rep.map_for(state, meas);
  OutcomeSubset r = rep.system.restrict_to(meas, b);

  std::vector<IntervalSet::Cell> cells;
  for (const auto& cell : map.cells) {
    if (const auto* label = std::get_if<std::string>(&cell.target)) {
      if (r.labels.contains(*label)) cells.emplace_back(cell.begin, cell.end);
      continue;
    }
    const auto& aff = std::get<OutcomeCell::Affine>(cell.target);
    // Value range of this segment, half-open like the context cell.
    Rational vlo = aff.alpha * cell.begin + aff.beta;
    Rational vhi = aff.alpha * cell.end + aff.beta;
    for (const auto& [s, t] : r.ranges.cells()) {
      Rational lo = std::max(s, vlo);
      Rational hi = std::min(t, vhi);
      if (lo >= hi) continue;
      cells.emplace_back((lo - aff.beta) / aff.alpha, (hi - aff.beta) / aff.alpha);
    }
  }
  return IntervalSet::normalize(std::move(cells));
}

Outcome phi(const HiddenRepresentation& rep, const std::string& state,
            const std::string& meas, const Rational& lambda) {
  if (lambda < 0 || lambda > 1) throw PointOutOfRange("context outside [0,1]");
  const OutcomeMap& map = rep.map_for(state, meas);
  auto it = std::upper_bound(
      map.cells.begin(), map.cells.end(), lambda,
      [](const Rational& v, const OutcomeCell& c) { return v < c.begin; });
  if (it != map.cells.begin()) --it;
  if (lambda >= it->end) it = std::prev(map.cells.end());  // lambda = 1
  Outcome o;
  if (const auto* label = std::get_if<std::string>(&it->target)) {
    o.label = *label;
  } else {
    const auto& aff = std::get<OutcomeCell::Affine>(it->target);
    o.value = aff.alpha * lambda + aff.beta;
  }
  return o;
}

namespace {

std::string describe(const OutcomeSubset& b) {
  if (b.labels.empty() && b.ranges.empty()) return "{}";
  std::string s = "{";
  for (const auto& l : b.labels) {
    if (s.size() > 1) s += ",";
    s += l;
  }
  for (const auto& [lo, hi] : b.ranges.cells()) {
    if (s.size() > 1) s += ",";
    s += "[" + to_string(lo) + "," + to_string(hi) + ")";
  }
  return s + "}";
}

void check_subset(const HiddenRepresentation& rep, const MeasurementSystem& ms,
                  const std::string& p, const std::string& e,
                  const OutcomeSubset& b, VerificationReport& report) {
  VerificationEntry entry;
  entry.state = p;
  entry.measurement = e;
  entry.subset = describe(b);
  entry.expected = ms.prob(p, e, b);
  entry.got = delta_lambda(rep, p, e, b).lebesgue();
  entry.ok = entry.expected == entry.got;
  if (!entry.ok) report.all_ok = false;
  report.entries.push_back(std::move(entry));
}

}  // namespace

VerificationReport verify(const HiddenRepresentation& rep,
                          const MeasurementSystem& ms, std::size_t grid) {
  VerificationReport report;
  for (const auto& p : ms.states()) {
    for (const auto& e : ms.measurements()) {
      std::vector<std::string> labels;
      for (const auto& o : e.outcomes) labels.push_back(o.name);

      check_subset(rep, ms, p, e.name, OutcomeSubset{}, report);  // empty set
      OutcomeSubset full;
      full.labels.insert(labels.begin(), labels.end());
      if (e.has_continuous) full.ranges = IntervalSet::full();
      check_subset(rep, ms, p, e.name, full, report);

      for (std::size_t i = 0; i < labels.size(); ++i) {
        check_subset(rep, ms, p, e.name, OutcomeSubset::of({labels[i]}), report);
        for (std::size_t j = i + 1; j < labels.size(); ++j)
          check_subset(rep, ms, p, e.name, OutcomeSubset::of({labels[i], labels[j]}),
                       report);
      }
      if (e.has_continuous && grid > 0) {
        Rational g(grid);
        for (std::size_t i = 0; i < grid; ++i) {
          OutcomeSubset cell;
          cell.ranges = IntervalSet::normalize(
              {{Rational(i) / g, Rational(i + 1) / g}});
          check_subset(rep, ms, p, e.name, cell, report);
          if (i > 0) {
            OutcomeSubset prefix;
            prefix.ranges = IntervalSet::normalize({{Rational(0), Rational(i) / g}});
            check_subset(rep, ms, p, e.name, prefix, report);
          }
        }
      }
    }
  }
  return report;
}

CriterionReport check_criterion(const MeasurementSystem& ms,
                                const ProbabilityMeasure& mu,
                                const LeqOptions& opts) {
  CriterionReport report;
  report.system_classes = delta_M(ms);
  report.mu_class = classify(mu);
  report.comparison =
      leq_sets(report.system_classes, ClassSet::from({*report.mu_class}), opts);
  report.verdict = report.comparison.verdict;
  return report;
}

CriterionReport check_criterion_lambda(const MeasurementSystem& ms,
                                       const LambdaDescriptor& lambda,
                                       const LeqOptions& opts) {
  CriterionReport report;
  report.system_classes = delta_M(ms);
  if (lambda.kind == LambdaDescriptor::Kind::Continuum) {
    report.verdict = Verdict::Yes;  // universal [0,1] construction
    return report;
  }

  // The context measure may differ per measurement, so the criterion is
  // checked measurement by measurement.
  report.verdict = Verdict::Yes;
  for (const auto& e : ms.measurements()) {
    std::vector<MeasureClass> column;
    bool non_finite = false;
    for (const auto& p : ms.states()) {
      MeasureClass c = classify(ms.entry(p, e.name));
      if (c.kind() != MeasureClass::Kind::Finite) non_finite = true;
      column.push_back(std::move(c));
    }
    if (non_finite) {
      // An atomless part never embeds into finitely many atoms.
      report.per_measurement_mu.emplace_back(e.name, std::nullopt);
      report.verdict = Verdict::No;
      continue;
    }
    MuSearchResult r =
        exists_mu_for_finite_lambda(ClassSet::from(std::move(column)), lambda.size, opts);
    report.per_measurement_mu.emplace_back(e.name, r.mu);
    if (r.verdict == Verdict::No) {
      report.verdict = Verdict::No;
    } else if (r.verdict == Verdict::Unknown && report.verdict == Verdict::Yes) {
      report.verdict = Verdict::Unknown;
    }
  }
  return report;
}

}  // namespace hms
