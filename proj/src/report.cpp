#include "passivize/report.hpp"

#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <random>
#include <sstream>

#include "minimize.hpp"

namespace passivize {

double round_sig(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return std::strtod(buf, nullptr);
}

void Report::add_result(const std::string& name, const json& value,
                        const std::string& unit, const std::string& provenance) {
  json entry;
  entry["value"] = value;
  entry["unit"] = unit;
  entry["provenance"] = provenance;
  results_[name] = std::move(entry);
}

void Report::set_table(std::vector<std::string> header,
                       std::vector<std::vector<double>> rows) {
  table_header_ = std::move(header);
  table_rows_ = std::move(rows);
}

json Report::to_json() const {
  json out;
  out["input"] = input_;
  out["results"] = results_;
  if (has_table()) {
    json table = json::array();
    for (const auto& row : table_rows_) {
      json r = json::object();
      for (size_t c = 0; c < table_header_.size(); ++c) r[table_header_[c]] = round_sig(row[c]);
      table.push_back(std::move(r));
    }
    out["table"] = std::move(table);
  }
  out["warnings"] = warnings_;
  return out;
}

std::string Report::to_csv() const {
  if (!has_table()) throw UnsupportedFormat("csv output requires tabular results");
  std::ostringstream os;
  for (size_t c = 0; c < table_header_.size(); ++c)
    os << (c ? "," : "") << table_header_[c];
  os << "\n";
  char buf[40];
  for (const auto& row : table_rows_) {
    for (size_t c = 0; c < row.size(); ++c) {
      std::snprintf(buf, sizeof(buf), "%.12g", row[c]);
      os << (c ? "," : "") << buf;
    }
    os << "\n";
  }
  return os.str();
}

std::string Report::to_text() const {
  std::ostringstream os;
  for (auto it = results_.begin(); it != results_.end(); ++it) {
    os << it.key() << " = " << it.value()["value"].dump();
    const std::string unit = it.value()["unit"];
    if (!unit.empty()) os << " [" << unit << "]";
    os << "  (" << it.value()["provenance"].get<std::string>() << ")\n";
  }
  if (has_table()) os << to_csv();
  for (const auto& w : warnings_) os << "warning: " << w << "\n";
  return os.str();
}

ReportFormat parse_format(const std::string& name) {
  if (name == "json") return ReportFormat::json;
  if (name == "csv") return ReportFormat::csv;
  if (name == "text") return ReportFormat::text;
  throw UnsupportedFormat("unknown format '" + name + "'");
}

std::string emit_report(const Report& report, ReportFormat format) {
  switch (format) {
    case ReportFormat::json: return report.to_json().dump(2) + "\n";
    case ReportFormat::csv: return report.to_csv();
    case ReportFormat::text: return report.to_text();
  }
  throw UnsupportedFormat("unknown format");
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      row.push_back({round_sig(m(i, j).real()), round_sig(m(i, j).imag())});
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string cycles_to_string(const Permutation& sigma) {
  std::ostringstream os;
  for (const auto& cyc : cycle_decomposition(sigma).cycles) {
    os << "(";
    for (size_t i = 0; i < cyc.size(); ++i) os << (i ? " " : "") << cyc[i] + 1;
    os << ")";
  }
  return os.str();
}

SystemSpec spec_from_json(const json& j) {
  if (!j.contains("a") || !j.contains("p"))
    throw InvalidSpec("spec file must contain arrays 'a' and 'p'");
  const double omega = j.value("omega", 1.0);
  return SystemSpec(j["a"].get<std::vector<double>>(), j["p"].get<std::vector<double>>(),
                    omega);
}

BatterySpec battery_from_json(const json& j) {
  if (!j.contains("eps") || !j.contains("p"))
    throw InvalidSpec("battery file must contain arrays 'eps' and 'p'");
  const double omega = j.value("omega", 1.0);
  return BatterySpec(j["eps"].get<std::vector<double>>(),
                     j["p"].get<std::vector<double>>(), omega);
}

namespace {

void add_bounds(Report& report, const BoundReport& bounds) {
  report.add_result("tau_qsl", round_sig(bounds.tau_qsl), "1/omega", "qsl");
  report.add_result("tau_upper", round_sig(bounds.tau_upper), "1/omega", "upper-bound");
  if (bounds.upper_permutation)
    report.add_result("upper_permutation", cycles_to_string(*bounds.upper_permutation), "",
                      "upper-bound");
  if (bounds.tau_exact) {
    report.add_result("tau_exact", round_sig(*bounds.tau_exact), "1/omega",
                      bounds.numerical ? "numerical-oracle" : "exact");
    report.add_result("exact_method", to_string(*bounds.exact_method), "", "exact");
  }
  for (const auto& w : bounds.warnings) report.add_warning(w);
}

}  // namespace

Report bounds_report(const SystemSpec& spec, json input_echo) {
  Report report;
  report.set_input(std::move(input_echo));
  report.add_result("discrepancy", discrepancy(spec), "", "exact");
  add_bounds(report, compute_bounds(spec));
  return report;
}

Report hamiltonian_report(const SystemSpec& spec, const std::string& method,
                          json input_echo) {
  Report report;
  report.set_input(std::move(input_echo));
  HamiltonianMethod m;
  if (method == "involution")
    m = HamiltonianMethod::involution;
  else if (method == "nondegenerate")
    m = HamiltonianMethod::nondegenerate;
  else if (method == "maximally_active")
    m = HamiltonianMethod::maximally_active;
  else
    throw InvalidSpec("unknown Hamiltonian method '" + method + "'");
  auto built = build_time_optimal_hamiltonian(spec, m);
  if (!built) {
    report.add_result("already_passive", true, "", "exact");
    return report;
  }
  report.add_result("hamiltonian", matrix_to_json(built->h.matrix()), "omega", "exact");
  report.add_result("tau", round_sig(built->tau), "1/omega", "exact");
  report.add_result("bandwidth", round_sig(bandwidth(built->h)), "omega^2", "exact");
  return report;
}

Report evolve_report(const SystemSpec& spec, double total_time, std::optional<int> steps,
                     json input_echo) {
  Report report;
  report.set_input(std::move(input_echo));
  std::optional<TimeOptimal> built;
  try {
    built = build_time_optimal_hamiltonian(spec, HamiltonianMethod::involution);
  } catch (const MethodPreconditionFailed&) {
    built = build_time_optimal_hamiltonian(spec, HamiltonianMethod::nondegenerate);
  }
  DensityOperator rho0 = DensityOperator::diagonal(spec.p());
  if (!built) {
    report.add_result("already_passive", true, "", "exact");
    report.add_result("passive", true, "", "exact");
    return report;
  }
  const int n_steps = steps ? *steps : default_step_count(spec.omega(), total_time);
  Matrix h = built->h.matrix();
  DensityOperator rho_final =
      von_neumann_evolve([&h](double) { return h; }, rho0, total_time, n_steps);
  json diag = json::array();
  for (int k = 0; k < spec.dim(); ++k)
    diag.push_back(round_sig(rho_final.matrix()(k, k).real()));
  report.add_result("final_diagonal", diag, "", "exact");
  report.add_result("passive", is_passive(rho_final, spec), "", "exact");
  report.add_result("tau_used", round_sig(total_time), "1/omega", "exact");
  return report;
}

Report collective_report(const SystemSpec& spec, int copies,
                         const std::optional<std::string>& closed_form, json input_echo) {
  Report report;
  report.set_input(std::move(input_echo));
  CollectiveSpec cspec{spec, copies, std::nullopt};
  report.add_result("delta_n", delta_n(cspec), "", "exact");
  report.add_result("tau_cqsl", round_sig(tau_cqsl(cspec)), "1/omega", "qsl");
  try {
    report.add_result("advantage_ratio", round_sig(advantage_ratio(cspec)), "", "exact");
  } catch (const NotInvolution&) {
    report.add_warning("no involution: advantage ratio unavailable");
  }
  if (closed_form) {
    ActiveKind kind;
    if (*closed_form == "qubit_pure")
      kind = ActiveKind::qubit_pure;
    else if (*closed_form == "qubit_mixed")
      kind = ActiveKind::qubit_mixed;
    else if (*closed_form == "qutrit_rank2")
      kind = ActiveKind::qutrit_rank2;
    else if (*closed_form == "qutrit_full")
      kind = ActiveKind::qutrit_full;
    else
      throw InvalidSpec("unknown closed form '" + *closed_form + "'");
    report.add_result("delta_n_closed", delta_n_closed(kind, copies), "", "exact");
  }
  return report;
}

Report assisted_report(const SystemSpec& spec, int catalyst_dim, json input_echo) {
  Report report;
  report.set_input(std::move(input_echo));
  AssistedBounds ab = assisted_bounds(spec, catalyst_dim);
  report.add_result("tau_aqsl", round_sig(ab.tau_aqsl), "1/omega", "qsl");
  report.add_result("tau_upper", round_sig(ab.tau_upper), "1/omega",
                    ab.upper_exact ? "exact" : "upper-bound");
  return report;
}

Report battery_report(const BatterySpec& battery, std::uint64_t seed, json input_echo) {
  Report report;
  report.set_input(std::move(input_echo));
  report.add_result("ergotropy", round_sig(ergotropy(battery)), "energy", "exact");

  BoundReport bounds = compute_bounds(battery.sys);
  if (bounds.tau_exact) {
    report.add_result("tau_pas", round_sig(*bounds.tau_exact), "1/omega",
                      bounds.numerical ? "numerical-oracle" : "exact");
  } else {
    report.add_result("tau_pas", round_sig(bounds.tau_upper), "1/omega", "upper-bound");
  }
  PowerBound pb = power_upper_bound(battery, PowerScenario::generic());
  report.add_result("power_bound", round_sig(pb.power), "energy*omega",
                    pb.tau_kind == "exact" ? "exact" : "qsl");

  // Spread of the transferred-energy variance over sampled passivizing
  // unitaries; a single value when the state spectrum is non-degenerate.
  const auto& spec = battery.sys;
  double lo = 0.0, hi = 0.0;
  bool first = true;
  auto record = [&](const UnitaryOperator& u) {
    const double v = energy_transfer_variance(u, battery);
    lo = first ? v : std::min(lo, v);
    hi = first ? v : std::max(hi, v);
    first = false;
  };
  record(permutation_operator(canonical_passivizing_permutation(spec)));
  if (!spec.p_nondegenerate()) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
    const auto gens_a = detail::commutant_generators(spec.dim(), spec.a_groups());
    const auto gens_p = detail::commutant_generators(spec.dim(), spec.p_groups());
    const Matrix p_op =
        permutation_operator(canonical_passivizing_permutation(spec)).matrix();
    for (int trial = 0; trial < 32; ++trial) {
      std::vector<double> x(gens_a.size()), y(gens_p.size());
      for (auto& v : x) v = angle(rng);
      for (auto& v : y) v = angle(rng);
      Matrix u = detail::exp_i_combination(gens_a, x, spec.dim()) * p_op *
                 detail::exp_i_combination(gens_p, y, spec.dim());
      record(UnitaryOperator(std::move(u)));
    }
  }
  json range = json::array({round_sig(lo), round_sig(hi)});
  report.add_result("variance_range", range, "energy^2",
                    spec.p_nondegenerate() ? "exact" : "numerical-oracle");
  return report;
}

Report oracle_report(const SystemSpec& spec, int restarts, std::uint64_t seed,
                     json input_echo) {
  Report report;
  report.set_input(std::move(input_echo));
  OracleResult res = numeric_min_distance(spec, restarts, seed);
  report.add_result("distance", round_sig(res.best_distance), "", "numerical-oracle");
  report.add_result("tau", round_sig(res.best_distance / spec.omega()), "1/omega",
                    "numerical-oracle");
  report.add_result("restarts", res.restarts_used, "", "exact");
  report.add_result("spread", round_sig(res.spread), "", "numerical-oracle");
  report.add_result("converged", res.converged, "", "numerical-oracle");
  return report;
}

Report figures_report(const std::string& which, int max_copies) {
  Report report;
  json input;
  input["which"] = which;
  input["max_n"] = max_copies;
  report.set_input(std::move(input));
  ActiveKind kind;
  if (which == "qubit")
    kind = ActiveKind::qubit_mixed;
  else if (which == "qutrit")
    kind = ActiveKind::qutrit_full;
  else
    throw InvalidSpec("figure series must be 'qubit' or 'qutrit'");
  std::vector<std::vector<double>> rows;
  for (auto [n_copies, ratio] : advantage_series(kind, max_copies))
    rows.push_back({double(n_copies), ratio});
  report.set_table({"N", "ratio"}, std::move(rows));
  return report;
}

}  // namespace passivize
