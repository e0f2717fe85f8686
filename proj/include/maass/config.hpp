#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"
#include "maass/converse_bound.hpp"

namespace maass {

// JSON run configuration. Complex numbers are [re, im] pairs; places are
// "inf" or a prime written as a decimal string.
//
// {
//   "n": 2,
//   "places": {"inf": [[0, 9], [0, -9]], "2": [[0.1, 0.4], [-0.1, -0.4]]},
//   "other_places": {...},                      // distance only
//   "S": ["inf", 2],
//   "p": 2,
//   "delta": "auto",                            // or a number; auto = max_delta/2
//   "truncation": {"m_max": 0, "coset_height": 20, "tol": 1e-10, "y_floor": 0.05},
//   "budgets": {"volume_samples": 400000, "sup_samples": 4000, "refine_steps": 200,
//               "sup_inflation": 0.1, "a_infinity_mode": "auto", "casimir_panels": 24,
//               "probes": 48},
//   "seed": 1,
//   "verify": {"suite": "all", "trials": 100, "samples": 10000},
//   "output": {"report": "report.json", "csv": ""}
// }
struct RunConfig {
  LocalDataSet data;
  std::optional<LocalDataSet> other;
  PlaceSet S{0};
  long long p = 0;  // 0 → smallest finite place
  std::optional<double> delta;  // nullopt = auto
  TruncationPolicy truncation;
  BoundOptions budgets;  // seed lives here too
  std::string verify_suite = "all";
  int verify_trials = 100;
  long long verify_samples = 10000;
  std::string report_path;
  std::string csv_path;

  double resolved_delta() const;
  long long resolved_p() const;
  BoundOptions bound_options() const;  // budgets + truncation
};

RunConfig parse_config(const std::string& json_text);  // throws InvalidInput
RunConfig load_config(const std::string& path);
std::string emit_config(const RunConfig& c);  // canonical: all fields, 17 significant digits

std::uint64_t fnv1a64(const std::string& bytes);
std::string config_hash(const RunConfig& c);  // hex FNV-1a of emit_config
const char* toolkit_version();

// JSON report: every BoundReport field, plus config hash, version and seeds.
std::string report_json(const BoundReport& r, const RunConfig& c);
// name,value,std_error rows of the scalar intermediates
std::string report_csv(const BoundReport& r);

// Wraps an error into {"error": {"kind", "message"}, "config_hash", "version"}.
std::string error_json(const std::string& kind, const std::string& message, const std::string& hash);

using Json = nlohmann::ordered_json;

// JSON text with every floating-point number printed to 17 significant digits.
std::string dump17(const Json& j, int indent = 2);

Json to_json(cplx z);  // [re, im]
Json to_json(const SpectralParameter& ell);
Json to_json(const LocalDataSet& d);
Json to_json(const num::WideReal& w);  // {"value": "m e±k" string, "ln": number}

}  // namespace maass
