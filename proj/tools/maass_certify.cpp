// maass-certify: batch front-end over the library.
//
//   maass-certify bound|laplacian-bound|distance|symbol|verify --config run.json [--out r.json] [--csv s.csv]
//
// exit codes: 0 ok, 1 usage/config, 2 hypothesis violation, 3 numerical failure
// (verify also exits 3 when a suite fails).

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "maass/annihilator.hpp"
#include "maass/config.hpp"
#include "maass/core_geometry.hpp"

using namespace maass;

namespace {

constexpr int kOk = 0, kConfig = 1, kHypothesis = 2, kNumerical = 3;

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidInput("cannot write " + path);
  f << text;
}

Json header(const char* kind, const RunConfig& c) {
  Json j;
  j["kind"] = kind;
  j["version"] = toolkit_version();
  j["config_hash"] = config_hash(c);
  return j;
}

Json places_array(const PlaceSet& S) {
  Json a = Json::array();
  for (long long v : S) a.push_back(v == 0 ? Json("inf") : Json(v));
  return a;
}

std::string run_distance(const RunConfig& c) {
  if (!c.other) throw InvalidInput("distance: config needs 'other_places'");
  const auto& a = c.data;
  const auto& b = *c.other;
  const double d = distance_dS(a, b, c.S);
  Json terms = Json::array();
  for (int j = 1; j < a.n; ++j) {
    const cplx x = casimir_eigenvalue(j, a.infinity), y = casimir_eigenvalue(j, b.infinity);
    terms.push_back({{"place", "inf"}, {"j", j}, {"lhs", to_json(x)}, {"rhs", to_json(y)}, {"diff_sq", std::norm(x - y)}});
  }
  for (long long q : c.S) {
    if (q == 0) continue;
    for (int j = 1; j <= a.n / 2; ++j) {
      const cplx x = satake_hecke_eigenvalue(j, q, a.at(q)), y = satake_hecke_eigenvalue(j, q, b.at(q));
      terms.push_back({{"place", q}, {"j", j}, {"lhs", to_json(x)}, {"rhs", to_json(y)}, {"diff_sq", std::norm(x - y)}});
    }
  }
  Json j = header("distance", c);
  j["S"] = places_array(c.S);
  j["d_S"] = d;
  j["terms"] = terms;
  return dump17(j) + "\n";
}

std::string run_symbol(const RunConfig& c) {
  const long long p0 = c.resolved_p();
  Json rows = Json::array();
  for (const auto& [p, ell] : c.data.finite) {
    const cplx s = natural_symbol(p, c.data.infinity, ell);
    Json r = {{"p", p},
              {"symbol", to_json(s)},
              {"abs", std::abs(s)},
              {"norm_bound", natural_norm_bound(c.data.n, p)},
              {"selected", p == p0}};
    if (c.data.n <= 3) {
      const auto e = evaluate_expansions(p, c.data.infinity, ell);
      r["expansion_literal"] = to_json(e.literal);
      r["expansion_corrected"] = to_json(e.corrected);
    }
    rows.push_back(r);
  }
  Json j = header("symbol", c);
  j["n"] = c.data.n;
  j["ell_infinity"] = to_json(c.data.infinity);
  j["symbols"] = rows;
  return dump17(j) + "\n";
}

struct SuiteResult {
  Json json;
  bool passed = true;
};

SuiteResult suite_annihilation(const RunConfig& c, long long p, std::uint64_t seed, bool self_dual) {
  const int n = c.data.n;
  const auto rep = verify_annihilation(n, p, c.verify_trials, seed);
  SuiteResult s;
  if (!self_dual) {
    double worst = rep.max_constant, worst_exact = 0.0;
    Json parts = Json::object();
    for (const auto& [label, v] : rep.max_eisenstein) {
      const double ex = rep.max_eisenstein_exact.at(label);
      parts[label] = {{"max_abs", v}, {"max_abs_exact", ex}};
      worst = std::max(worst, v);
      worst_exact = std::max(worst_exact, ex);
    }
    s.passed = worst < 1e-9 && worst_exact < 1e-14;
    s.json = {{"partitions", parts}, {"max_constant", rep.max_constant}, {"max_abs", worst},
              {"max_abs_exact", worst_exact}, {"tolerance", 1e-9}, {"tolerance_exact", 1e-14}};
  } else if (rep.self_dual_applicable) {
    s.passed = rep.max_self_dual < 1e-9 && rep.max_self_dual_exact < 1e-14;
    s.json = {{"max_abs", rep.max_self_dual}, {"max_abs_exact", rep.max_self_dual_exact}, {"tolerance", 1e-9}};
  } else {
    // n = 2: the symbol does not vanish on generic self-dual pairs
    s.json = {{"applicable", false}, {"max_abs_nonvanishing", rep.self_dual_counterexample}};
  }
  s.json["trials"] = rep.trials;
  return s;
}

SuiteResult suite_expansions(const RunConfig& c, long long p, std::uint64_t seed) {
  const int n = c.data.n;
  num::Rng rng(seed);
  double worst = 0.0, worst_id = 0.0;
  for (int t = 0; t < c.verify_trials; ++t) {
    const auto l1 = random_parameter(rng, n, 0.5, 10.0);
    const auto l2 = random_parameter(rng, n, 0.5, 10.0);
    const auto e = evaluate_expansions(p, l1, l2);
    const double scale = std::max(1.0, std::abs(e.symbol));
    worst = std::max(worst, std::abs(e.corrected - e.symbol) / scale);
    worst_id = std::max(worst_id, std::abs(e.literal + e.identified_term - e.corrected) / scale);
  }
  SuiteResult s;
  s.passed = worst < 1e-10 && worst_id < 1e-10;
  s.json = {{"trials", c.verify_trials}, {"max_rel_corrected", worst}, {"max_rel_literal_gap", worst_id},
            {"tolerance", 1e-10}};
  return s;
}

SuiteResult suite_norm(const RunConfig& c, long long p, std::uint64_t seed) {
  const auto r = norm_bound_sweep(c.data.n, p, c.verify_samples, seed);
  SuiteResult s;
  s.passed = r.violations == 0;
  s.json = {{"bound", r.bound}, {"max_abs", r.max_abs}, {"samples", r.samples}, {"violations", r.violations}};
  return s;
}

SuiteResult suite_multiplicativity(const RunConfig& c, std::uint64_t seed) {
  num::Rng rng(seed);
  double worst = 0.0;
  int checks = 0;
  const int per_prime = std::max(1, std::min(c.verify_trials, 20));
  for (long long p : {2LL, 3LL, 5LL})
    for (int t = 0; t < per_prime; ++t) {
      const auto r = verify_multiplicativity(random_parameter(rng, c.data.n, 0.5, 10.0), p, 3);
      worst = std::max(worst, r.max_deviation);
      checks += r.checks;
    }
  SuiteResult s;
  s.passed = worst < 1e-10;
  s.json = {{"checks", checks}, {"max_deviation", worst}, {"tolerance", 1e-10}};
  return s;
}

int run_verify(const RunConfig& c, const std::string& out) {
  const std::string& suite = c.verify_suite;
  const char* known[] = {"eisenstein", "self-dual", "expansions", "norm", "multiplicativity"};
  bool ok_name = suite == "all";
  for (const char* k : known) ok_name = ok_name || suite == k;
  if (!ok_name) throw InvalidInput("verify: unknown suite '" + suite + "'");
  const long long p = c.data.finite.empty() ? 2 : c.resolved_p();
  const std::uint64_t seed = c.budgets.seed;

  Json j = header("verify", c);
  j["n"] = c.data.n;
  j["p"] = p;
  j["seed"] = seed;
  Json suites = Json::object();
  bool all = true;
  auto record = [&](const char* name, SuiteResult r) {
    r.json["passed"] = r.passed;
    suites[name] = r.json;
    all = all && r.passed;
  };
  auto want = [&](const char* name) { return suite == "all" || suite == name; };
  if (want("eisenstein")) record("eisenstein", suite_annihilation(c, p, num::shard_seed(seed, 11), false));
  if (want("self-dual")) record("self-dual", suite_annihilation(c, p, num::shard_seed(seed, 11), true));
  if (want("expansions")) record("expansions", suite_expansions(c, p, num::shard_seed(seed, 12)));
  if (want("norm")) record("norm", suite_norm(c, p, num::shard_seed(seed, 13)));
  if (want("multiplicativity")) record("multiplicativity", suite_multiplicativity(c, num::shard_seed(seed, 14)));
  j["suites"] = suites;
  j["passed"] = all;
  write_text(out, dump17(j) + "\n");
  return all ? kOk : kNumerical;
}

const char* kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidInput: return "invalid_input";
    case ErrorKind::HypothesisViolation: return "hypothesis_violation";
    case ErrorKind::NumericalFailure: return "numerical_failure";
    default: return "unsupported";
  }
}

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::HypothesisViolation: return kHypothesis;
    case ErrorKind::NumericalFailure: return kNumerical;
    default: return kConfig;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"GL(n) quasi-Maass forms and approximate-converse bounds"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(toolkit_version()));

  std::string config_path, out, csv, suite;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON run configuration")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out, "report path (default: stdout)");
  };
  auto* bound = app.add_subcommand("bound", "main certification bound ε");
  add_common(bound);
  bound->add_option("--csv", csv, "CSV of scalar intermediates");
  auto* lap = app.add_subcommand("laplacian-bound", "window for the Laplace eigenvalue");
  add_common(lap);
  lap->add_option("--csv", csv, "CSV of scalar intermediates");
  auto* dist = app.add_subcommand("distance", "d_S between two local data sets");
  add_common(dist);
  auto* sym = app.add_subcommand("symbol", "annihilator symbol at (ℓ_∞, ℓ_p)");
  add_common(sym);
  auto* ver = app.add_subcommand("verify", "invariant suites");
  add_common(ver);
  ver->add_option("--suite", suite, "eisenstein|self-dual|expansions|norm|multiplicativity|all");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfig;
  }

  std::string hash;
  try {
    RunConfig c = load_config(config_path);
    hash = config_hash(c);
    const std::string report_to = out.empty() ? c.report_path : out;
    const std::string csv_to = csv.empty() ? c.csv_path : csv;

    if (bound->parsed() || lap->parsed()) {
      const BoundReport r = bound->parsed()
                                ? theorem_main_bound(c.data, c.S, c.resolved_p(), c.resolved_delta(), c.bound_options())
                                : theorem_laplacian_bound(c.data, c.resolved_p(), c.resolved_delta(), c.bound_options());
      write_text(report_to, report_json(r, c));
      if (!csv_to.empty()) write_text(csv_to, report_csv(r));
      return kOk;
    }
    if (dist->parsed()) {
      write_text(report_to, run_distance(c));
      return kOk;
    }
    if (sym->parsed()) {
      write_text(report_to, run_symbol(c));
      return kOk;
    }
    if (!suite.empty()) c.verify_suite = suite;
    return run_verify(c, report_to);
  } catch (const Error& e) {
    const std::string rec = error_json(kind_name(e.kind()), e.what(), hash);
    std::cerr << rec;
    if (!out.empty()) {
      try {
        write_text(out, rec);
      } catch (...) {
      }
    }
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << error_json("numerical_failure", e.what(), hash);
    return kNumerical;
  }
}
