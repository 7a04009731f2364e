#include "hms/hmsrep.hpp"
#include "hms/json_io.hpp"
#include "hms/quantum.hpp"
#include "hms/sim.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cxxabi.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using nlohmann::json;

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitUnknown = 3;

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw hms::SchemaError("cannot open '" + path + "'");
  json j;
  in >> j;
  return j;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw hms::SchemaError("cannot write '" + path + "'");
  out << content;
}

hms::LeqOptions options_from_env() {
  hms::LeqOptions opts;
  if (const char* budget = std::getenv("HMS_SEARCH_BUDGET"))
    opts.atom_budget = static_cast<std::size_t>(std::stoul(budget));
  return opts;
}

int exit_for(hms::Verdict v) {
  switch (v) {
    case hms::Verdict::Yes:
      return kExitYes;
    case hms::Verdict::No:
      return kExitNo;
    case hms::Verdict::Unknown:
      return kExitUnknown;
  }
  return kExitInvalid;
}

std::vector<hms::Rational> parse_rational_list(const std::string& csv) {
  std::vector<hms::Rational> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(hms::parse_rational(item));
  return out;
}

int run(int argc, char** argv) {
  CLI::App app{"Hidden-measurement representations over [0,1]"};
  app.require_subcommand(1);

  auto* build_cmd = app.add_subcommand("build", "Construct a representation");
  std::string build_in, build_out;
  build_cmd->add_option("input", build_in)->required();
  build_cmd->add_option("output", build_out)->required();

  auto* check_cmd = app.add_subcommand("check", "Representability criterion");
  std::string check_in, check_mu, check_lambda;
  check_cmd->add_option("input", check_in)->required();
  auto* mu_opt = check_cmd->add_option("--mu", check_mu, "context measure JSON");
  auto* lambda_opt = check_cmd->add_option(
      "--lambda", check_lambda, "context set: continuum or finite:<n>");
  mu_opt->excludes(lambda_opt);

  auto* verify_cmd = app.add_subcommand("verify", "Exact measure-preservation check");
  std::string verify_sys, verify_rep;
  verify_cmd->add_option("system", verify_sys)->required();
  verify_cmd->add_option("rep", verify_rep)->required();

  auto* sample_cmd = app.add_subcommand("sample", "Seeded context sampling");
  std::string sample_rep, sample_state, sample_meas, sample_out;
  std::uint64_t sample_n = 100000, sample_seed = 42;
  unsigned sample_shards = 1;
  bool sample_json = false;
  sample_cmd->add_option("rep", sample_rep)->required();
  sample_cmd->add_option("--state", sample_state)->required();
  sample_cmd->add_option("--measurement", sample_meas)->required();
  sample_cmd->add_option("-n", sample_n);
  sample_cmd->add_option("--seed", sample_seed);
  sample_cmd->add_option("--shards", sample_shards);
  sample_cmd->add_option("--out", sample_out, "CSV output path");
  sample_cmd->add_flag("--json", sample_json, "print the JSON mirror");

  auto* classify_cmd = app.add_subcommand("classify", "Print the class set");
  std::string classify_in;
  classify_cmd->add_option("input", classify_in)->required();

  auto* equiv_cmd = app.add_subcommand("equiv", "Mathematical equivalence");
  std::string equiv_a, equiv_b;
  equiv_cmd->add_option("a", equiv_a)->required();
  equiv_cmd->add_option("b", equiv_b)->required();

  auto* quantum_cmd = app.add_subcommand("quantum", "Quantum front-end");
  auto* gen_cmd = quantum_cmd->add_subcommand("gen", "Generate a spin-1/2 system");
  std::string gen_thetas = "0,1/3,1/2,2/3,1", gen_axes, gen_out;
  gen_cmd->add_option("--thetas", gen_thetas, "polar angles, multiples of pi");
  gen_cmd->add_option("--axes", gen_axes, "extra axes, multiples of pi");
  gen_cmd->add_option("--out", gen_out, "system JSON path (default stdout)");

  CLI11_PARSE(app, argc, argv);
  const hms::LeqOptions opts = options_from_env();

  if (*build_cmd) {
    hms::MeasurementSystem ms = hms::system_from_json(load_json(build_in));
    hms::HiddenRepresentation rep = hms::build(ms);
    write_file(build_out, hms::rep_to_json(rep).dump(2) + "\n");
    std::size_t cells = 0;
    for (const auto& [key, map] : rep.maps) cells += map.cells.size();
    std::cout << ms.states().size() << " states x " << ms.measurements().size()
              << " measurements, " << rep.maps.size() << " maps, " << cells
              << " cells\n";
    return kExitYes;
  }

  if (*check_cmd) {
    hms::MeasurementSystem ms = hms::system_from_json(load_json(check_in));
    hms::CriterionReport report;
    if (!check_mu.empty()) {
      report = hms::check_criterion(
          ms, hms::measure_from_json(load_json(check_mu)), opts);
    } else if (check_lambda == "continuum") {
      report = hms::check_criterion_lambda(
          ms, {hms::LambdaDescriptor::Kind::Continuum, 0}, opts);
    } else if (check_lambda.starts_with("finite:")) {
      std::size_t n = std::stoul(check_lambda.substr(7));
      report = hms::check_criterion_lambda(
          ms, {hms::LambdaDescriptor::Kind::Finite, n}, opts);
    } else {
      throw hms::SchemaError("check needs --mu <file> or --lambda continuum|finite:<n>");
    }
    std::cout << hms::criterion_report_to_json(report).dump(2) << "\n";
    return exit_for(report.verdict);
  }

  if (*verify_cmd) {
    hms::MeasurementSystem ms = hms::system_from_json(load_json(verify_sys));
    hms::HiddenRepresentation rep = hms::rep_from_json(load_json(verify_rep), ms);
    hms::VerificationReport report = hms::verify(rep, ms);
    std::cout << hms::verification_report_to_json(report).dump(2) << "\n";
    return report.all_ok ? kExitYes : kExitNo;
  }

  if (*sample_cmd) {
    hms::HiddenRepresentation rep =
        hms::rep_from_json_standalone(load_json(sample_rep));
    hms::SampleReport report = hms::sample(rep, sample_state, sample_meas,
                                           sample_n, sample_seed, sample_shards);
    std::string csv = hms::sample_reports_to_csv({report});
    if (sample_out.empty()) {
      std::cout << csv;
    } else {
      write_file(sample_out, csv);
    }
    if (sample_json) std::cout << hms::sample_report_to_json(report).dump(2) << "\n";
    return kExitYes;
  }

  if (*classify_cmd) {
    hms::MeasurementSystem ms = hms::system_from_json(load_json(classify_in));
    for (const auto& c : hms::delta_M(ms).classes) std::cout << c.str() << "\n";
    return kExitYes;
  }

  if (*equiv_cmd) {
    hms::MeasurementSystem a = hms::system_from_json(load_json(equiv_a));
    hms::MeasurementSystem b = hms::system_from_json(load_json(equiv_b));
    hms::EquivResult r = hms::math_equiv(a, b);
    if (r.witness) {
      json w{{"states", r.witness->state_map},
             {"measurements", r.witness->measurement_map},
             {"outcomes", r.witness->outcome_maps}};
      std::cout << w.dump(2) << "\n";
    } else {
      std::cout << "not equivalent\n";
    }
    return exit_for(r.verdict);
  }

  if (*gen_cmd) {
    auto [ms, rep] = hms::aerts_sphere(parse_rational_list(gen_thetas),
                                       parse_rational_list(gen_axes));
    std::string doc = hms::system_to_json(ms).dump(2) + "\n";
    if (gen_out.empty()) {
      std::cout << doc;
    } else {
      write_file(gen_out, doc);
    }
    return kExitYes;
  }

  return kExitInvalid;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    int status = 0;
    char* demangled = abi::__cxa_demangle(typeid(e).name(), nullptr, nullptr, &status);
    std::string name = status == 0 && demangled ? demangled : typeid(e).name();
    std::free(demangled);
    if (name.starts_with("hms::")) name = name.substr(5);
    json err{{"error", name}, {"message", e.what()}};
    std::cerr << err.dump() << "\n";
    return kExitInvalid;
  }
}
