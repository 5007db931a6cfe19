#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "passivize/report.hpp"

namespace {

using passivize::json;

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw passivize::InvalidSpec("cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw passivize::InvalidSpec(std::string("malformed JSON: ") + e.what());
  }
  return j;
}

std::uint64_t effective_seed(std::uint64_t cli_seed) {
  if (const char* env = std::getenv("PASSIVIZE_SEED")) return std::strtoull(env, nullptr, 10);
  return cli_seed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum speed limits and passivization times under bounded bandwidth"};
  app.require_subcommand(1);

  std::string spec_path, format = "json", method = "involution";
  std::string which = "qubit";
  std::string closed_form;
  double evolve_time = 0.0;
  int copies = 2, catalyst_dim = 2, restarts = 32, max_copies = 14;
  std::optional<int> steps;
  std::uint64_t seed = 1;

  app.add_option("--format", format, "Output format: json, csv or text");

  auto* cmd_bounds = app.add_subcommand("bounds", "QSL, upper bounds and exact times");
  cmd_bounds->add_option("spec", spec_path)->required();

  auto* cmd_h = app.add_subcommand("hamiltonian", "Time-optimal Hamiltonian matrix");
  cmd_h->add_option("spec", spec_path)->required();
  cmd_h->add_option("--method", method,
                    "involution | nondegenerate | maximally_active");

  auto* cmd_evolve = app.add_subcommand("evolve", "Propagate under the optimal Hamiltonian");
  cmd_evolve->add_option("spec", spec_path)->required();
  cmd_evolve->add_option("--time", evolve_time, "Evolution time")->required();
  int step_override = 0;
  cmd_evolve->add_option("--steps", step_override, "Integration steps");

  auto* cmd_coll = app.add_subcommand("collective", "N-copy quantities");
  cmd_coll->add_option("spec", spec_path)->required();
  cmd_coll->add_option("-N,--copies", copies, "Copy count")->required();
  cmd_coll->add_option("--closed-form", closed_form,
                       "qubit_pure | qubit_mixed | qutrit_rank2 | qutrit_full");

  auto* cmd_assist = app.add_subcommand("assisted", "Catalyzed bounds");
  cmd_assist->add_option("spec", spec_path)->required();
  cmd_assist->add_option("--nc", catalyst_dim, "Catalyst dimension")->required();

  auto* cmd_batt = app.add_subcommand("battery", "Quantum-battery report");
  cmd_batt->add_option("spec", spec_path)->required();
  cmd_batt->add_option("--seed", seed, "Sampling seed");

  auto* cmd_oracle = app.add_subcommand("oracle", "Numerical minimum distance");
  cmd_oracle->add_option("spec", spec_path)->required();
  cmd_oracle->add_option("--restarts", restarts, "Multistart restarts");
  cmd_oracle->add_option("--seed", seed, "Multistart seed");

  auto* cmd_fig = app.add_subcommand("figures", "Collective-advantage series");
  cmd_fig->add_option("--which", which, "qubit | qutrit")->required();
  cmd_fig->add_option("--max-n", max_copies, "Largest copy count");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 2;  // malformed invocations are validation errors
  }

  try {
    passivize::Report report;
    if (cmd_fig->parsed()) {
      report = passivize::figures_report(which, max_copies);
      if (format == "json") format = "csv";  // the series is inherently tabular
    } else if (cmd_batt->parsed()) {
      json input = load_json(spec_path);
      report = passivize::battery_report(passivize::battery_from_json(input),
                                         effective_seed(seed), input);
    } else {
      json input = load_json(spec_path);
      passivize::SystemSpec spec = passivize::spec_from_json(input);
      if (cmd_bounds->parsed()) {
        report = passivize::bounds_report(spec, input);
      } else if (cmd_h->parsed()) {
        report = passivize::hamiltonian_report(spec, method, input);
      } else if (cmd_evolve->parsed()) {
        if (cmd_evolve->count("--steps")) steps = step_override;
        report = passivize::evolve_report(spec, evolve_time, steps, input);
      } else if (cmd_coll->parsed()) {
        std::optional<std::string> cf;
        if (!closed_form.empty()) cf = closed_form;
        report = passivize::collective_report(spec, copies, cf, input);
      } else if (cmd_assist->parsed()) {
        report = passivize::assisted_report(spec, catalyst_dim, input);
      } else if (cmd_oracle->parsed()) {
        report = passivize::oracle_report(spec, restarts, effective_seed(seed), input);
      } else {
        throw passivize::UnknownCommand("no subcommand matched");
      }
    }
    std::cout << passivize::emit_report(report, passivize::parse_format(format));
    return 0;
  } catch (const passivize::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
