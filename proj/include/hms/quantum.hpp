#pragma once

#include "hms/hmsrep.hpp"
#include "hms/msys.hpp"

#include <complex>
#include <map>
#include <string>
#include <vector>

namespace hms {

struct DimensionMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotNormalized : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotOrthonormal : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct BasisMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;
using ComplexMatrix = std::vector<ComplexVector>;  // row-major

struct NamedState {
  std::string name;
  ComplexVector vector;  // unit norm within 1e-12
};

struct MeasurementBasis {
  std::string name;
  std::vector<ComplexVector> vectors;   // pairwise orthonormal within 1e-10
  std::vector<Rational> eigenvalues;    // distinct outcome values
  std::vector<std::string> outcome_names;  // empty -> generated "<name>:k"
};

struct BornOptions {
  double tolerance = 1e-9;
  BigInt denominator_bound = 1'000'000;
};

/// Measurement system with Born-rule probabilities |<basis_i|state>|^2,
/// snapped to small rationals and renormalized to exact mass 1 (the
/// largest entry absorbs the residual).
MeasurementSystem born_system(const std::vector<NamedState>& states,
                              const std::vector<MeasurementBasis>& bases,
                              const BornOptions& opts = {});

/// Outcome maps for measurement e obtained from the reference basis e0 by
/// unitary conjugation: each state is pulled back through U^-1 (where
/// U p0_i = pe_i), coupled in the reference basis, and the outcomes are
/// relabelled along p0_i -> pe_i. The context measure stays Lebesgue.
std::map<std::string, OutcomeMap> unitary_extend(
    const std::vector<NamedState>& states, const MeasurementBasis& e0,
    const MeasurementBasis& e, const BornOptions& opts = {});

/// Spin-1/2 Bloch-sphere instance: states at the given polar angles
/// (rational multiples of pi, phase 0), measured along z plus the listed
/// axis angles (also rational multiples of pi).
std::pair<MeasurementSystem, HiddenRepresentation> aerts_sphere(
    const std::vector<Rational>& theta_over_pi,
    const std::vector<Rational>& axis_over_pi, const BornOptions& opts = {});

}  // namespace hms
