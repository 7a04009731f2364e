#include "hms/json_io.hpp"

#include "hms/quantum.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace hms {

using nlohmann::json;

namespace {

Rational rat(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  throw SchemaError("expected a rational \"p/q\" string");
}

std::string verdict_str(Verdict v) {
  switch (v) {
    case Verdict::Yes:
      return "yes";
    case Verdict::No:
      return "no";
    case Verdict::Unknown:
      return "unknown";
  }
  return {};
}

}  // namespace

json measure_to_json(const ProbabilityMeasure& m) {
  json atoms = json::object();
  for (const auto& a : m.atoms()) atoms[a.outcome] = to_string(a.weight);
  json j{{"atoms", atoms}};
  if (m.continuous()) {
    json cdf = json::array();
    for (const auto& [x, f] : m.continuous()->cdf.points())
      cdf.push_back(json::array({to_string(x), to_string(f)}));
    j["continuous"] = {{"weight", to_string(m.continuous()->weight)},
                       {"cdf", cdf},
                       {"support", m.continuous()->support}};
  }
  return j;
}

ProbabilityMeasure measure_from_json(const json& j) {
  if (!j.is_object()) throw SchemaError("measure must be an object");
  std::vector<Atom> atoms;
  if (j.contains("atoms")) {
    for (const auto& [label, w] : j.at("atoms").items())
      atoms.push_back({label, rat(w)});
  }
  std::optional<ContinuousPart> cont;
  if (j.contains("continuous")) {
    const json& c = j.at("continuous");
    std::vector<PiecewiseLinearCdf::Point> pts;
    for (const auto& p : c.at("cdf")) pts.emplace_back(rat(p.at(0)), rat(p.at(1)));
    cont = ContinuousPart{rat(c.at("weight")), PiecewiseLinearCdf::make(std::move(pts)),
                          c.value("support", std::string("continuum"))};
  }
  return ProbabilityMeasure::make(std::move(atoms), std::move(cont));
}

json system_to_json(const MeasurementSystem& ms) {
  json measurements = json::array();
  for (const auto& e : ms.measurements()) {
    json outcomes = json::array();
    for (const auto& o : e.outcomes)
      outcomes.push_back({{"name", o.name}, {"value", to_string(o.value)}});
    measurements.push_back({{"name", e.name}, {"outcomes", outcomes}});
  }
  json table = json::array();
  for (const auto& p : ms.states())
    for (const auto& e : ms.measurements())
      table.push_back({{"state", p},
                       {"measurement", e.name},
                       {"measure", measure_to_json(ms.entry(p, e.name))}});
  return {{"version", 1},
          {"states", ms.states()},
          {"measurements", measurements},
          {"table", table}};
}

namespace {

MeasurementSystem system_from_quantum_block(const json& q) {
  std::vector<NamedState> states;
  for (const auto& s : q.at("states")) {
    ComplexVector v;
    for (const auto& c : s.at("vector"))
      v.emplace_back(c.at(0).get<double>(), c.at(1).get<double>());
    states.push_back({s.at("name").get<std::string>(), std::move(v)});
  }
  std::vector<MeasurementBasis> bases;
  for (const auto& b : q.at("bases")) {
    MeasurementBasis basis;
    basis.name = b.at("name").get<std::string>();
    for (const auto& vec : b.at("vectors")) {
      ComplexVector v;
      for (const auto& c : vec) v.emplace_back(c.at(0).get<double>(), c.at(1).get<double>());
      basis.vectors.push_back(std::move(v));
    }
    for (const auto& e : b.at("eigenvalues")) basis.eigenvalues.push_back(rat(e));
    if (b.contains("outcomes"))
      basis.outcome_names = b.at("outcomes").get<std::vector<std::string>>();
    bases.push_back(std::move(basis));
  }
  BornOptions opts;
  if (q.contains("tolerance")) opts.tolerance = q.at("tolerance").get<double>();
  if (q.contains("denominator_bound"))
    opts.denominator_bound = BigInt(q.at("denominator_bound").get<std::string>());
  return born_system(states, bases, opts);
}

}  // namespace

MeasurementSystem system_from_json(const json& j) {
  if (!j.is_object()) throw SchemaError("system document must be an object");
  const bool has_table = j.contains("table");
  const bool has_quantum = j.contains("quantum");
  if (has_table == has_quantum)
    throw SchemaError("exactly one of \"table\" or \"quantum\" is required");
  if (has_quantum) return system_from_quantum_block(j.at("quantum"));

  std::vector<std::string> states = j.at("states").get<std::vector<std::string>>();
  std::vector<Measurement> measurements;
  for (const auto& e : j.at("measurements")) {
    Measurement m{e.at("name").get<std::string>(), {}};
    for (const auto& o : e.at("outcomes"))
      m.outcomes.push_back({o.at("name").get<std::string>(), rat(o.at("value"))});
    measurements.push_back(std::move(m));
  }
  std::map<std::pair<std::string, std::string>, ProbabilityMeasure> table;
  for (const auto& row : j.at("table"))
    table.emplace(std::make_pair(row.at("state").get<std::string>(),
                                 row.at("measurement").get<std::string>()),
                  measure_from_json(row.at("measure")));
  return MeasurementSystem::validate(std::move(states), std::move(measurements),
                                     std::move(table));
}

json rep_to_json(const HiddenRepresentation& rep) {
  json maps = json::array();
  for (const auto& [key, map] : rep.maps) {
    json cells = json::array();
    for (const auto& cell : map.cells) {
      json c{{"interval", json::array({to_string(cell.begin), to_string(cell.end)})}};
      if (const auto* label = std::get_if<std::string>(&cell.target)) {
        c["outcome"] = *label;
      } else {
        const auto& aff = std::get<OutcomeCell::Affine>(cell.target);
        c["outcome"] = {{"affine", json::array({to_string(aff.alpha), to_string(aff.beta)})}};
      }
      cells.push_back(std::move(c));
    }
    maps.push_back({{"state", key.first}, {"measurement", key.second}, {"cells", cells}});
  }
  return {{"version", 1}, {"context", "lebesgue[0,1]"}, {"maps", maps}};
}

namespace {

std::map<std::pair<std::string, std::string>, OutcomeMap> maps_from_json(const json& j) {
  if (j.value("context", std::string()) != "lebesgue[0,1]")
    throw SchemaError("unsupported context descriptor");
  std::map<std::pair<std::string, std::string>, OutcomeMap> maps;
  for (const auto& entry : j.at("maps")) {
    OutcomeMap map;
    for (const auto& c : entry.at("cells")) {
      OutcomeCell cell{rat(c.at("interval").at(0)), rat(c.at("interval").at(1)),
                       std::string()};
      const json& target = c.at("outcome");
      if (target.is_string()) {
        cell.target = target.get<std::string>();
      } else {
        cell.target = OutcomeCell::Affine{rat(target.at("affine").at(0)),
                                          rat(target.at("affine").at(1))};
      }
      map.cells.push_back(std::move(cell));
    }
    maps.emplace(std::make_pair(entry.at("state").get<std::string>(),
                                entry.at("measurement").get<std::string>()),
                 std::move(map));
  }
  return maps;
}

}  // namespace

HiddenRepresentation rep_from_json(const json& j, const MeasurementSystem& ms) {
  return HiddenRepresentation{ms, maps_from_json(j)};
}

HiddenRepresentation rep_from_json_standalone(const json& j) {
  auto maps = maps_from_json(j);

  // Recover the system: cell lengths are the probabilities, and for
  // affine segments the pushforward of Lebesgue is a piecewise-linear cdf
  // over the segment's value range.
  std::set<std::string> state_set;
  std::map<std::string, std::set<std::string>> outcome_sets;
  for (const auto& [key, map] : maps) {
    state_set.insert(key.first);
    for (const auto& cell : map.cells)
      if (const auto* label = std::get_if<std::string>(&cell.target))
        outcome_sets[key.second].insert(*label);
  }

  std::map<std::pair<std::string, std::string>, ProbabilityMeasure> table;
  for (const auto& [key, map] : maps) {
    std::map<std::string, Rational> weights;
    struct Segment {
      Rational v0, v1, mass;
    };
    std::vector<Segment> segments;
    for (const auto& cell : map.cells) {
      Rational mass = cell.end - cell.begin;
      if (const auto* label = std::get_if<std::string>(&cell.target)) {
        weights[*label] += mass;
      } else {
        const auto& aff = std::get<OutcomeCell::Affine>(cell.target);
        segments.push_back({aff.alpha * cell.begin + aff.beta,
                            aff.alpha * cell.end + aff.beta, mass});
      }
    }
    std::vector<Atom> atoms;
    for (auto& [label, w] : weights) atoms.push_back({label, w});
    std::optional<ContinuousPart> cont;
    if (!segments.empty()) {
      std::sort(segments.begin(), segments.end(),
                [](const Segment& a, const Segment& b) { return a.v0 < b.v0; });
      Rational total(0);
      for (const auto& s : segments) total += s.mass;
      std::vector<PiecewiseLinearCdf::Point> pts{{Rational(0), Rational(0)}};
      Rational cum(0);
      for (const auto& s : segments) {
        if (s.v0 > pts.back().first) pts.emplace_back(s.v0, cum / total);
        cum += s.mass;
        pts.emplace_back(s.v1, cum / total);
      }
      if (pts.back().first < 1) pts.emplace_back(Rational(1), Rational(1));
      cont = ContinuousPart{total, PiecewiseLinearCdf::make(std::move(pts)),
                            "continuum"};
    }
    table.emplace(key, ProbabilityMeasure::make(std::move(atoms), std::move(cont)));
  }

  std::vector<Measurement> measurements;
  for (const auto& [name, outcomes] : outcome_sets) {
    Measurement m{name, {}};
    std::size_t i = 0;
    for (const auto& o : outcomes) m.outcomes.push_back({o, Rational(i++)});
    measurements.push_back(std::move(m));
  }
  // Measurements that only ever transport continuously still need a node.
  for (const auto& [key, map] : maps) {
    if (!outcome_sets.contains(key.second))
      measurements.push_back({key.second, {}});
    outcome_sets[key.second];
  }

  MeasurementSystem ms = MeasurementSystem::validate(
      std::vector<std::string>(state_set.begin(), state_set.end()),
      std::move(measurements), std::move(table));
  return HiddenRepresentation{std::move(ms), std::move(maps)};
}

json witness_to_json(const LeqWitness& w) {
  json j;
  if (w.kind == LeqWitness::Kind::IntervalLayout) {
    j["kind"] = "interval_layout";
    json layout = json::array();
    for (const auto& cell : w.layout)
      layout.push_back({{"source_atom", cell.source_index},
                        {"interval", json::array({to_string(cell.begin),
                                                  to_string(cell.end)})}});
    j["layout"] = layout;
  } else {
    j["kind"] = "atom_partition";
    json allocs = json::array();
    for (const auto& a : w.allocations)
      allocs.push_back({{"source_atom", a.source_index},
                        {"target_atoms", a.target_atoms},
                        {"continuous_slice", to_string(a.continuous_slice)}});
    j["allocations"] = allocs;
  }
  j["source_continuous_mass"] = to_string(w.source_continuous_mass);
  return j;
}

json criterion_report_to_json(const CriterionReport& r) {
  json classes = json::array();
  for (const auto& c : r.system_classes.classes) classes.push_back(c.str());
  json j{{"verdict", verdict_str(r.verdict)}, {"delta_M", classes}};
  if (r.mu_class) {
    j["mu_class"] = r.mu_class->str();
    json entries = json::array();
    for (const auto& e : r.comparison.entries) {
      json entry{{"source", e.source.str()}};
      if (e.matched_target) {
        entry["target"] = e.matched_target->str();
        entry["witness"] = witness_to_json(*e.witness);
      }
      entries.push_back(std::move(entry));
    }
    j["comparison"] = entries;
  }
  if (!r.per_measurement_mu.empty()) {
    json per = json::array();
    for (const auto& [name, mu] : r.per_measurement_mu) {
      json entry{{"measurement", name}};
      if (mu) entry["mu"] = measure_to_json(*mu);
      per.push_back(std::move(entry));
    }
    j["per_measurement"] = per;
  }
  return j;
}

json verification_report_to_json(const VerificationReport& r) {
  json entries = json::array();
  for (const auto& e : r.entries)
    entries.push_back({{"state", e.state},
                       {"measurement", e.measurement},
                       {"subset", e.subset},
                       {"expected", to_string(e.expected)},
                       {"got", to_string(e.got)},
                       {"ok", e.ok}});
  return {{"all_ok", r.all_ok}, {"checks", entries}};
}

json sample_report_to_json(const SampleReport& r) {
  json stats = json::array();
  for (const auto& s : r.stats) {
    json stat{{"outcome", s.outcome},
              {"expected", to_string(s.expected)},
              {"count", s.count},
              {"frequency", s.frequency}};
    if (s.z) stat["z"] = *s.z;
    stats.push_back(std::move(stat));
  }
  return {{"state", r.state}, {"measurement", r.measurement}, {"n", r.n},
          {"seed", r.seed},   {"shards", r.shards},           {"outcomes", stats}};
}

std::string sample_reports_to_csv(const std::vector<SampleReport>& rs) {
  std::ostringstream out;
  out << "state,measurement,outcome,expected,count,frequency,z\n";
  for (const auto& r : rs)
    for (const auto& s : r.stats) {
      out << r.state << "," << r.measurement << "," << s.outcome << ","
          << to_string(s.expected) << "," << s.count << "," << s.frequency << ",";
      if (s.z) out << *s.z;
      out << "\n";
    }
  return out.str();
}

}  // namespace hms
