#include "hms/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace hms {

namespace {

Complex inner(const ComplexVector& a, const ComplexVector& b) {
  Complex s(0, 0);
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

void check_state(const ComplexVector& v, std::size_t dim) {
  if (v.size() != dim) throw DimensionMismatch("state dimension mismatch");
  double n = std::sqrt(inner(v, v).real());
  if (std::abs(n - 1.0) > 1e-12) throw NotNormalized("state not unit norm");
}

void check_basis(const MeasurementBasis& b) {
  const std::size_t dim = b.vectors.size();
  if (dim < 2) throw DimensionMismatch("basis needs dimension >= 2");
  if (b.eigenvalues.size() != dim)
    throw DimensionMismatch("eigenvalue count differs from dimension");
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = i + 1; j < dim; ++j)
      if (b.eigenvalues[i] == b.eigenvalues[j])
        throw DimensionMismatch("degenerate eigenvalues in basis '" + b.name + "'");
  for (const auto& v : b.vectors)
    if (v.size() != dim) throw DimensionMismatch("basis vector dimension mismatch");
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      double expect = i == j ? 1.0 : 0.0;
      if (std::abs(std::abs(inner(b.vectors[i], b.vectors[j])) - expect) > 1e-10)
        throw NotOrthonormal("basis '" + b.name + "' not orthonormal");
    }
  }
}

std::string outcome_name(const MeasurementBasis& b, std::size_t i) {
  if (i < b.outcome_names.size() && !b.outcome_names[i].empty())
    return b.outcome_names[i];
  return b.name + ":" + std::to_string(i + 1);
}

/// Snapped, exactly renormalized Born row for one state in one basis.
std::vector<Rational> born_row(const ComplexVector& state,
                               const MeasurementBasis& basis,
                               const BornOptions& opts) {
  std::vector<Rational> probs;
  for (const auto& eig : basis.vectors) {
    double p = std::norm(inner(eig, state));
    Rational snapped = snap_to_rational(p, opts.denominator_bound);
    if (std::abs(to_double(snapped) - p) > opts.tolerance)
      snapped = rational_from_double(p);
    if (snapped < 0) snapped = Rational(0);
    if (snapped > 1) snapped = Rational(1);
    probs.push_back(std::move(snapped));
  }
  Rational total(0);
  for (const auto& p : probs) total += p;
  auto largest = std::max_element(probs.begin(), probs.end());
  *largest += Rational(1) - total;
  return probs;
}

ProbabilityMeasure row_measure(const std::vector<Rational>& probs,
                               const MeasurementBasis& basis) {
  std::vector<Atom> atoms;
  for (std::size_t i = 0; i < probs.size(); ++i)
    if (probs[i] > 0) atoms.push_back({outcome_name(basis, i), probs[i]});
  return ProbabilityMeasure::make(std::move(atoms));
}

ComplexVector mat_vec(const ComplexMatrix& m, const ComplexVector& v) {
  ComplexVector out(m.size(), Complex(0, 0));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out[i] += m[i][j] * v[j];
  return out;
}

}  // namespace

MeasurementSystem born_system(const std::vector<NamedState>& states,
                              const std::vector<MeasurementBasis>& bases,
                              const BornOptions& opts) {
  if (states.empty() || bases.empty())
    throw DimensionMismatch("need at least one state and one basis");
  const std::size_t dim = states.front().vector.size();
  for (const auto& s : states) check_state(s.vector, dim);
  for (const auto& b : bases) {
    check_basis(b);
    if (b.vectors.size() != dim) throw DimensionMismatch("basis dimension mismatch");
  }

  std::vector<Measurement> measurements;
  std::map<std::pair<std::string, std::string>, ProbabilityMeasure> table;
  for (const auto& b : bases) {
    Measurement m{b.name, {}};
    for (std::size_t i = 0; i < dim; ++i)
      m.outcomes.push_back({outcome_name(b, i), b.eigenvalues[i]});
    measurements.push_back(std::move(m));
    for (const auto& s : states)
      table.emplace(std::make_pair(s.name, b.name),
                    row_measure(born_row(s.vector, b, opts), b));
  }

  std::vector<std::string> names;
  for (const auto& s : states) names.push_back(s.name);
  return MeasurementSystem::validate(std::move(names), std::move(measurements),
                                     std::move(table));
}

std::map<std::string, OutcomeMap> unitary_extend(
    const std::vector<NamedState>& states, const MeasurementBasis& e0,
    const MeasurementBasis& e, const BornOptions& opts) {
  check_basis(e0);
  check_basis(e);
  const std::size_t dim = e0.vectors.size();
  if (e.vectors.size() != dim)
    throw BasisMismatch("reference and target bases have different dimension");

  const bool same_basis = e.vectors == e0.vectors;

  // U maps the reference eigenvectors onto the target ones; U^-1 = U†
  // is applied to every state before coupling in the reference basis.
  ComplexMatrix u_inv(dim, ComplexVector(dim, Complex(0, 0)));
  if (!same_basis) {
    // U = sum_i |e_i><e0_i|, so U^-1[j][k] = sum_i conj(e_i[j])... built
    // directly as U† = sum_i |e0_i><e_i|.
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < dim; ++c)
          u_inv[r][c] += e0.vectors[i][r] * std::conj(e.vectors[i][c]);
  }

  // Reference outcome i relabels to the target outcome i.
  std::map<std::string, std::string> relabel;
  for (std::size_t i = 0; i < dim; ++i)
    relabel[outcome_name(e0, i)] = outcome_name(e, i);

  std::map<std::string, OutcomeMap> out;
  for (const auto& s : states) {
    check_state(s.vector, dim);
    ComplexVector pulled = same_basis ? s.vector : mat_vec(u_inv, s.vector);
    OutcomeMap map = couple(row_measure(born_row(pulled, e0, opts), e0));
    for (auto& cell : map.cells)
      if (auto* label = std::get_if<std::string>(&cell.target))
        *label = relabel.at(*label);
    out.emplace(s.name, std::move(map));
  }
  return out;
}

std::pair<MeasurementSystem, HiddenRepresentation> aerts_sphere(
    const std::vector<Rational>& theta_over_pi,
    const std::vector<Rational>& axis_over_pi, const BornOptions& opts) {
  using std::numbers::pi;
  auto bloch_state = [](double theta) {
    return ComplexVector{Complex(std::cos(theta / 2), 0),
                         Complex(std::sin(theta / 2), 0)};
  };

  std::vector<NamedState> states;
  for (const auto& t : theta_over_pi)
    states.push_back({"theta=" + to_string(t) + "pi", bloch_state(to_double(t) * pi)});

  std::vector<Rational> axes{Rational(0)};  // z axis first
  for (const auto& a : axis_over_pi)
    if (std::find(axes.begin(), axes.end(), a) == axes.end()) axes.push_back(a);

  std::vector<MeasurementBasis> bases;
  for (const auto& a : axes) {
    double half = to_double(a) * pi / 2;
    MeasurementBasis b;
    b.name = a == 0 ? "z" : "axis=" + to_string(a) + "pi";
    b.vectors = {{Complex(std::cos(half), 0), Complex(std::sin(half), 0)},
                 {Complex(-std::sin(half), 0), Complex(std::cos(half), 0)}};
    b.eigenvalues = {Rational(1), Rational(-1)};
    b.outcome_names = {"up", "down"};
    bases.push_back(std::move(b));
  }

  MeasurementSystem ms = born_system(states, bases, opts);
  HiddenRepresentation rep = build(ms);
  return {std::move(ms), std::move(rep)};
}

}  // namespace hms
