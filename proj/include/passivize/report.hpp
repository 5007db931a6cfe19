#ifndef PASSIVIZE_REPORT_HPP
#define PASSIVIZE_REPORT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "passivize/battery.hpp"
#include "passivize/bounds.hpp"
#include "passivize/collective.hpp"
#include "passivize/oracle.hpp"
#include "passivize/system.hpp"

namespace passivize {

using json = nlohmann::ordered_json;

/// Machine-readable result collection: echoed input, named quantities with
/// units and provenance (exact | upper-bound | qsl | numerical-oracle), and
/// warnings. Field order is stable and floats carry 12 significant digits.
class Report {
 public:
  void set_input(json input) { input_ = std::move(input); }
  void add_result(const std::string& name, const json& value, const std::string& unit,
                  const std::string& provenance);
  void add_warning(const std::string& w) { warnings_.push_back(w); }
  void set_table(std::vector<std::string> header,
                 std::vector<std::vector<double>> rows);
  bool has_table() const { return !table_header_.empty(); }

  json to_json() const;
  std::string to_csv() const;
  std::string to_text() const;

 private:
  json input_ = json::object();
  json results_ = json::object();
  std::vector<std::string> warnings_;
  std::vector<std::string> table_header_;
  std::vector<std::vector<double>> table_rows_;
};

enum class ReportFormat { json, csv, text };

ReportFormat parse_format(const std::string& name);
std::string emit_report(const Report& report, ReportFormat format);

/// Rounds to 12 significant digits; applied to every reported float.
double round_sig(double v);

/// Complex matrix as nested arrays of [re, im] pairs.
json matrix_to_json(const Matrix& m);

/// 1-based cycle notation, e.g. "(1 3 2)(4 5)".
std::string cycles_to_string(const Permutation& sigma);

SystemSpec spec_from_json(const json& j);
BatterySpec battery_from_json(const json& j);

Report bounds_report(const SystemSpec& spec, json input_echo);
Report hamiltonian_report(const SystemSpec& spec, const std::string& method,
                          json input_echo);
Report evolve_report(const SystemSpec& spec, double total_time,
                     std::optional<int> steps, json input_echo);
Report collective_report(const SystemSpec& spec, int copies,
                         const std::optional<std::string>& closed_form, json input_echo);
Report assisted_report(const SystemSpec& spec, int catalyst_dim, json input_echo);
Report battery_report(const BatterySpec& battery, std::uint64_t seed, json input_echo);
Report oracle_report(const SystemSpec& spec, int restarts, std::uint64_t seed,
                     json input_echo);
Report figures_report(const std::string& which, int max_copies);

}  // namespace passivize

#endif
