#pragma once

#include "hms/hmsrep.hpp"
#include "hms/msys.hpp"
#include "hms/sim.hpp"

#include <json.hpp>

#include <string>

namespace hms {

struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

nlohmann::json measure_to_json(const ProbabilityMeasure& m);
ProbabilityMeasure measure_from_json(const nlohmann::json& j);

nlohmann::json system_to_json(const MeasurementSystem& ms);

/// Accepts either an explicit probability table or a quantum block
/// (exactly one of the two must be present).
MeasurementSystem system_from_json(const nlohmann::json& j);

nlohmann::json rep_to_json(const HiddenRepresentation& rep);

/// Rebinds serialized maps to an already validated system.
HiddenRepresentation rep_from_json(const nlohmann::json& j,
                                   const MeasurementSystem& ms);

/// Reconstructs a representation without its source document: the system
/// is derived from the maps themselves (cell lengths are the
/// probabilities, outcome values are assigned by label order).
HiddenRepresentation rep_from_json_standalone(const nlohmann::json& j);

nlohmann::json witness_to_json(const LeqWitness& w);
nlohmann::json criterion_report_to_json(const CriterionReport& r);
nlohmann::json verification_report_to_json(const VerificationReport& r);
nlohmann::json sample_report_to_json(const SampleReport& r);
std::string sample_reports_to_csv(const std::vector<SampleReport>& rs);

}  // namespace hms
