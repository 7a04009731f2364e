#include "hms/order.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace hms {

namespace {

using Kind = MeasureClass::Kind;

// Assigns every target atom to one source atom so that each source
// atom's group mass stays within its capacity. Capacities are absolute
// masses. When the target has no continuous part the group sums end up
// exact automatically (both sides total the same atomic mass only if
// capacities sum to the target atomic mass; otherwise exactness is
// enforced by `require_exact`).
struct PartitionSearch {
  const std::vector<Rational>& capacities;  // source atom masses
  const std::vector<Rational>& targets;     // target atom masses
  bool require_exact;
  std::uint64_t node_budget;

  std::uint64_t nodes = 0;
  std::vector<Rational> remaining;
  std::vector<std::size_t> assignment;  // target index -> source index
  bool exhausted = false;

  std::optional<std::vector<std::size_t>> run() {
    remaining = capacities;
    assignment.assign(targets.size(), 0);
    if (dfs(0)) return assignment;
    return std::nullopt;
  }

  bool dfs(std::size_t j) {
    if (++nodes > node_budget) {
      exhausted = true;
      return false;
    }
    if (j == targets.size()) {
      if (!require_exact) return true;
      return std::all_of(remaining.begin(), remaining.end(),
                         [](const Rational& r) { return r == 0; });
    }
    std::vector<const Rational*> tried;
    for (std::size_t i = 0; i < capacities.size(); ++i) {
      if (remaining[i] < targets[j]) continue;
      // Groups with equal remaining capacity are interchangeable.
      bool dup = std::any_of(tried.begin(), tried.end(),
                             [&](const Rational* r) { return *r == remaining[i]; });
      if (dup) continue;
      tried.push_back(&remaining[i]);
      remaining[i] -= targets[j];
      assignment[j] = i;
      if (dfs(j + 1)) return true;
      remaining[i] += targets[j];
      if (exhausted) return false;
    }
    return false;
  }
};

LeqWitness interval_layout_witness(const MeasureClass& c1) {
  LeqWitness w;
  w.kind = LeqWitness::Kind::IntervalLayout;
  Rational cursor(0);
  for (std::size_t i = 0; i < c1.weights().size(); ++i) {
    Rational width = c1.atomic_mass() * c1.weights()[i];
    w.layout.push_back({i, cursor, cursor + width});
    cursor += width;
  }
  w.source_continuous_mass = Rational(1) - c1.atomic_mass();
  return w;
}

}  // namespace

LeqResult leq(const MeasureClass& c1, const MeasureClass& c2,
              const LeqOptions& opts) {
  if (c2.kind() == Kind::Continuum)
    return {Verdict::Yes, interval_layout_witness(c1)};

  // The image of an atomless subalgebra is atomless, so a source
  // continuum can never land in a finite atomic target, and a MIXED
  // target's continuum (mass < 1) cannot absorb a full continuum.
  if (c1.kind() == Kind::Continuum) return {Verdict::No, {}};
  if (c1.kind() == Kind::Mixed && c2.kind() == Kind::Finite)
    return {Verdict::No, {}};

  // Remaining cases: atomic/mixed source into atomic/mixed target.
  // Complement preservation forces the source images to cover every
  // target atom, so we partition the target atoms among the source
  // atoms; any per-group shortfall is filled by a slice of the target
  // continuum (absent for a FINITE target, hence exact sums there).
  if (c2.weights().size() > opts.atom_budget) return {Verdict::Unknown, {}};

  std::vector<Rational> caps;
  for (const auto& w : c1.weights()) caps.push_back(c1.atomic_mass() * w);
  std::vector<Rational> tgt;
  for (const auto& w : c2.weights()) tgt.push_back(c2.atomic_mass() * w);

  PartitionSearch search{caps, tgt, c2.kind() == Kind::Finite, opts.node_budget};
  auto assignment = search.run();
  if (!assignment) {
    if (search.exhausted) return {Verdict::Unknown, {}};
    return {Verdict::No, {}};
  }

  LeqWitness w;
  w.kind = LeqWitness::Kind::AtomPartition;
  w.source_continuous_mass = Rational(1) - c1.atomic_mass();
  for (std::size_t i = 0; i < caps.size(); ++i) {
    AtomAllocation alloc{i, {}, Rational(0)};
    Rational got(0);
    for (std::size_t j = 0; j < tgt.size(); ++j) {
      if ((*assignment)[j] == i) {
        alloc.target_atoms.push_back(j);
        got += tgt[j];
      }
    }
    alloc.continuous_slice = caps[i] - got;
    w.allocations.push_back(std::move(alloc));
  }
  return {Verdict::Yes, std::move(w)};
}

ClassSet ClassSet::from(std::vector<MeasureClass> cs) {
  std::sort(cs.begin(), cs.end());
  cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
  return ClassSet{std::move(cs)};
}

SetLeqResult leq_sets(const ClassSet& n, const ClassSet& n2,
                      const LeqOptions& opts) {
  SetLeqResult out;
  for (const auto& c : n.classes) {
    SetLeqEntry entry{c, {}, {}};
    bool any_unknown = false;
    for (const auto& t : n2.classes) {
      LeqResult r = leq(c, t, opts);
      if (r.verdict == Verdict::Yes) {
        entry.matched_target = t;
        entry.witness = std::move(r.witness);
        break;
      }
      if (r.verdict == Verdict::Unknown) any_unknown = true;
    }
    if (!entry.matched_target) {
      Verdict v = any_unknown ? Verdict::Unknown : Verdict::No;
      if (out.verdict != Verdict::No) out.verdict = v;
      if (v == Verdict::No) out.verdict = Verdict::No;
    }
    out.entries.push_back(std::move(entry));
  }
  return out;
}

ClassSet delta_M(const MeasurementSystem& ms) {
  std::vector<MeasureClass> cs;
  for (const auto& p : ms.states())
    for (const auto& e : ms.measurements())
      cs.push_back(classify(ms.entry(p, e.name)));
  return ClassSet::from(std::move(cs));
}

namespace {

ProbabilityMeasure measure_from_weights(std::vector<Rational> weights) {
  std::sort(weights.begin(), weights.end(), std::greater<>());
  std::vector<Atom> atoms;
  for (std::size_t i = 0; i < weights.size(); ++i)
    atoms.push_back({"m" + std::to_string(i + 1), weights[i]});
  return ProbabilityMeasure::make(std::move(atoms));
}

// Rational Gaussian elimination: solves A y = rhs when the columns of A
// are linearly independent; returns nullopt on inconsistency or rank
// deficiency.
std::optional<std::vector<Rational>> solve_exact(
    std::vector<std::vector<Rational>> a, std::vector<Rational> rhs) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows == 0 ? 0 : a[0].size();
  std::vector<std::size_t> pivot_row(cols);
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols; ++c) {
    std::size_t pr = r;
    while (pr < rows && a[pr][c] == 0) ++pr;
    if (pr == rows) return std::nullopt;  // rank-deficient columns
    std::swap(a[pr], a[r]);
    std::swap(rhs[pr], rhs[r]);
    Rational inv = Rational(1) / a[r][c];
    for (std::size_t cc = c; cc < cols; ++cc) a[r][cc] *= inv;
    rhs[r] *= inv;
    for (std::size_t rr = 0; rr < rows; ++rr) {
      if (rr == r || a[rr][c] == 0) continue;
      Rational f = a[rr][c];
      for (std::size_t cc = c; cc < cols; ++cc) a[rr][cc] -= f * a[r][cc];
      rhs[rr] -= f * rhs[r];
    }
    pivot_row[c] = r;
    ++r;
  }
  for (std::size_t rr = r; rr < rows; ++rr)
    if (rhs[rr] != 0) return std::nullopt;  // inconsistent
  std::vector<Rational> y(cols);
  for (std::size_t c = 0; c < cols; ++c) y[c] = rhs[pivot_row[c]];
  return y;
}

}  // namespace

MuSearchResult exists_mu_for_finite_lambda(const ClassSet& n,
                                           std::size_t max_atoms,
                                           const LeqOptions& opts) {
  for (const auto& c : n.classes)
    if (c.kind() != Kind::Finite)
      throw MixedOrContinuumClassUnsupported(
          "finite-context search supports FINITE classes only, got " + c.str());
  if (max_atoms == 0) throw WeightOutOfRange("context size must be positive");
  if (n.classes.empty())
    return {Verdict::Yes, measure_from_weights({Rational(1)})};

  // Stage one: union of cumulative breakpoints; the gaps form a common
  // refinement of every class.
  std::set<Rational> breaks{Rational(0), Rational(1)};
  for (const auto& c : n.classes) {
    Rational cum(0);
    for (const auto& w : c.weights()) {
      cum += w;
      breaks.insert(cum);
    }
  }
  std::vector<Rational> gaps;
  for (auto it = std::next(breaks.begin()); it != breaks.end(); ++it)
    gaps.push_back(*it - *std::prev(it));
  if (gaps.size() <= max_atoms)
    return {Verdict::Yes, measure_from_weights(std::move(gaps))};

  // Stage two (exact, small n): a dominating measure with at most n atoms
  // exists iff the transportation system over outcome tuples has a
  // nonnegative solution supported on at most n cells; vertex solutions
  // have linearly independent support columns, so enumerating independent
  // supports is complete.
  if (max_atoms > 8) return {Verdict::Unknown, {}};
  std::size_t tuple_count = 1;
  for (const auto& c : n.classes) {
    tuple_count *= c.weights().size();
    if (tuple_count > 64) return {Verdict::Unknown, {}};
  }

  // Tuple t -> per-class atom index.
  std::vector<std::vector<std::size_t>> tuples;
  std::vector<std::size_t> cur(n.classes.size(), 0);
  for (std::size_t t = 0; t < tuple_count; ++t) {
    tuples.push_back(cur);
    for (std::size_t c = n.classes.size(); c-- > 0;) {
      if (++cur[c] < n.classes[c].weights().size()) break;
      cur[c] = 0;
    }
  }

  std::size_t constraint_rows = 0;
  for (const auto& c : n.classes) constraint_rows += c.weights().size();

  std::uint64_t budget = opts.node_budget;
  std::size_t k_max = std::min(max_atoms, tuples.size());
  for (std::size_t k = 1; k <= k_max; ++k) {
    std::vector<std::size_t> comb(k);
    std::iota(comb.begin(), comb.end(), 0);
    while (true) {
      if (budget-- == 0) return {Verdict::Unknown, {}};
      std::vector<std::vector<Rational>> a(constraint_rows,
                                           std::vector<Rational>(k, Rational(0)));
      std::vector<Rational> rhs;
      std::size_t row = 0;
      for (std::size_t c = 0; c < n.classes.size(); ++c) {
        for (std::size_t i = 0; i < n.classes[c].weights().size(); ++i) {
          for (std::size_t j = 0; j < k; ++j)
            if (tuples[comb[j]][c] == i) a[row][j] = 1;
          rhs.push_back(n.classes[c].weights()[i]);
          ++row;
        }
      }
      if (auto y = solve_exact(std::move(a), std::move(rhs))) {
        bool positive = std::all_of(y->begin(), y->end(),
                                    [](const Rational& v) { return v > 0; });
        if (positive) return {Verdict::Yes, measure_from_weights(std::move(*y))};
      }
      // Next k-combination of tuple indices.
      std::size_t i = k;
      while (i-- > 0) {
        if (comb[i] != i + tuples.size() - k) {
          ++comb[i];
          for (std::size_t j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
          break;
        }
        if (i == 0) goto next_k;
      }
    }
  next_k:;
  }
  return {Verdict::No, {}};
}

}  // namespace hms
