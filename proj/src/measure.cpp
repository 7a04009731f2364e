#include "hms/measure.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace hms {

PiecewiseLinearCdf PiecewiseLinearCdf::make(std::vector<Point> points) {
  if (points.size() < 2) throw InvalidCdf("cdf needs at least two breakpoints");
  if (points.front() != Point{Rational(0), Rational(0)})
    throw InvalidCdf("cdf must start at (0,0)");
  if (points.back() != Point{Rational(1), Rational(1)})
    throw InvalidCdf("cdf must end at (1,1)");
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (points[i].first <= points[i - 1].first)
      throw InvalidCdf("cdf x-coordinates must be strictly increasing");
    if (points[i].second < points[i - 1].second)
      throw InvalidCdf("cdf must be non-decreasing");
  }
  PiecewiseLinearCdf c;
  c.points_ = std::move(points);
  return c;
}

PiecewiseLinearCdf PiecewiseLinearCdf::uniform() {
  return make({{Rational(0), Rational(0)}, {Rational(1), Rational(1)}});
}

Rational PiecewiseLinearCdf::value_at(const Rational& x) const {
  if (x < 0 || x > 1) throw PointOutOfRange("cdf argument outside [0,1]");
  auto it = std::upper_bound(
      points_.begin(), points_.end(), x,
      [](const Rational& v, const Point& p) { return v < p.first; });
  if (it == points_.end()) return points_.back().second;
  const Point& hi = *it;
  const Point& lo = *(it - 1);
  return lo.second +
         (hi.second - lo.second) * (x - lo.first) / (hi.first - lo.first);
}

ProbabilityMeasure ProbabilityMeasure::make(
    std::vector<Atom> atoms, std::optional<ContinuousPart> continuous) {
  std::set<std::string> seen;
  Rational total(0);
  for (const auto& a : atoms) {
    if (a.weight <= 0) throw WeightOutOfRange("atom weight must be positive");
    if (!seen.insert(a.outcome).second)
      throw DuplicateOutcome("duplicate outcome '" + a.outcome + "'");
    total += a.weight;
  }
  if (continuous) {
    if (continuous->weight <= 0 || continuous->weight > 1)
      throw WeightOutOfRange("continuous weight must be in (0,1]");
    total += continuous->weight;
  }
  if (total != 1) throw MassNotOne(Rational(1) - total);
  ProbabilityMeasure m;
  m.atoms_ = std::move(atoms);
  m.continuous_ = std::move(continuous);
  return m;
}

Rational ProbabilityMeasure::atomic_mass() const {
  Rational total(0);
  for (const auto& a : atoms_) total += a.weight;
  return total;
}

bool ProbabilityMeasure::has_outcome(const std::string& label) const {
  return std::any_of(atoms_.begin(), atoms_.end(),
                     [&](const Atom& a) { return a.outcome == label; });
}

Rational ProbabilityMeasure::eval(const OutcomeSubset& b) const {
  Rational total(0);
  for (const auto& label : b.labels) {
    auto it = std::find_if(atoms_.begin(), atoms_.end(),
                           [&](const Atom& a) { return a.outcome == label; });
    if (it == atoms_.end())
      throw UnknownOutcome("unknown outcome '" + label + "'");
    total += it->weight;
  }
  if (!b.ranges.empty()) {
    if (!continuous_)
      throw UnknownOutcome("range query on a purely atomic measure");
    for (const auto& [lo, hi] : b.ranges.cells())
      total += continuous_->weight *
               (continuous_->cdf.value_at(hi) - continuous_->cdf.value_at(lo));
  }
  return total;
}

OutcomeSubset ProbabilityMeasure::full_subset() const {
  OutcomeSubset b;
  for (const auto& a : atoms_) b.labels.insert(a.outcome);
  if (continuous_) b.ranges = IntervalSet::full();
  return b;
}

Decomposition decompose(const ProbabilityMeasure& m) {
  Decomposition d;
  d.atomic_weight = m.atomic_mass();
  if (!m.atoms().empty()) {
    std::vector<Atom> scaled = m.atoms();
    for (auto& a : scaled) a.weight /= d.atomic_weight;
    d.right = ProbabilityMeasure::make(std::move(scaled));
  }
  if (m.continuous()) {
    ContinuousPart c = *m.continuous();
    c.weight = Rational(1);
    d.left = ProbabilityMeasure::make({}, std::move(c));
  }
  return d;
}

ProbabilityMeasure weighted_union(const ProbabilityMeasure& l,
                                  const ProbabilityMeasure& r,
                                  const Rational& a) {
  if (a < 0 || a > 1) throw WeightOutOfRange("union weight outside [0,1]");
  if (a == 0) return l;
  if (a == 1) return r;

  std::set<std::string> taken;
  std::vector<Atom> atoms;
  for (const auto& atom : l.atoms()) {
    atoms.push_back({atom.outcome, (1 - a) * atom.weight});
    taken.insert(atom.outcome);
  }
  for (const auto& atom : r.atoms()) {
    std::string name = atom.outcome;
    while (!taken.insert(name).second) name += "'";
    atoms.push_back({name, a * atom.weight});
  }

  std::optional<ContinuousPart> cont;
  const auto& lc = l.continuous();
  const auto& rc = r.continuous();
  Rational lw = lc ? (1 - a) * lc->weight : Rational(0);
  Rational rw = rc ? a * rc->weight : Rational(0);
  if (lw + rw > 0) {
    PiecewiseLinearCdf cdf = PiecewiseLinearCdf::uniform();
    if (lw > 0 && rw > 0) {
      // Mixture of the two cdfs over the merged breakpoint grid.
      std::vector<Rational> xs;
      for (const auto& p : lc->cdf.points()) xs.push_back(p.first);
      for (const auto& p : rc->cdf.points()) xs.push_back(p.first);
      std::sort(xs.begin(), xs.end());
      xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
      std::vector<PiecewiseLinearCdf::Point> pts;
      for (const auto& x : xs)
        pts.emplace_back(x, (lw * lc->cdf.value_at(x) + rw * rc->cdf.value_at(x)) /
                                (lw + rw));
      cdf = PiecewiseLinearCdf::make(std::move(pts));
    } else {
      cdf = lw > 0 ? lc->cdf : rc->cdf;
    }
    cont = ContinuousPart{lw + rw, std::move(cdf),
                          lc ? lc->support : rc->support};
  }
  return ProbabilityMeasure::make(std::move(atoms), std::move(cont));
}

MeasureClass MeasureClass::continuum() {
  MeasureClass c;
  c.kind_ = Kind::Continuum;
  c.atomic_mass_ = Rational(0);
  return c;
}

MeasureClass MeasureClass::finite(std::vector<Rational> weights) {
  Rational total(0);
  for (const auto& w : weights) {
    if (w <= 0) throw WeightOutOfRange("class weight must be positive");
    total += w;
  }
  if (total != 1) throw MassNotOne(Rational(1) - total);
  std::sort(weights.begin(), weights.end(), std::greater<>());
  MeasureClass c;
  c.kind_ = Kind::Finite;
  c.atomic_mass_ = Rational(1);
  c.weights_ = std::move(weights);
  return c;
}

MeasureClass MeasureClass::mixed(Rational atomic_mass,
                                 std::vector<Rational> weights) {
  if (atomic_mass <= 0 || atomic_mass >= 1)
    throw WeightOutOfRange("mixed-class atomic mass must be in (0,1)");
  MeasureClass c = finite(std::move(weights));
  c.kind_ = Kind::Mixed;
  c.atomic_mass_ = std::move(atomic_mass);
  return c;
}

std::string MeasureClass::str() const {
  switch (kind_) {
    case Kind::Continuum:
      return "CONTINUUM";
    case Kind::Finite:
    case Kind::Mixed: {
      std::string body;
      for (const auto& w : weights_) {
        if (!body.empty()) body += ",";
        body += hms::to_string(w);
      }
      if (kind_ == Kind::Finite)
        return "FINITE(" + std::to_string(weights_.size()) + ",[" + body + "])";
      return "MIXED(" + hms::to_string(atomic_mass_) + ",[" + body + "])";
    }
  }
  return {};
}

bool MeasureClass::operator<(const MeasureClass& o) const {
  return std::tie(kind_, atomic_mass_, weights_) <
         std::tie(o.kind_, o.atomic_mass_, o.weights_);
}

MeasureClass classify(const ProbabilityMeasure& m) {
  Rational a = m.atomic_mass();
  if (m.atoms().empty()) return MeasureClass::continuum();
  std::vector<Rational> weights;
  for (const auto& atom : m.atoms()) weights.push_back(atom.weight / a);
  if (a == 1) return MeasureClass::finite(std::move(weights));
  return MeasureClass::mixed(a, std::move(weights));
}

}  // namespace hms
