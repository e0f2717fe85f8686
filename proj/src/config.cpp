#include "maass/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace maass {

namespace {

long long parse_place(const Json& v) {
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "inf" || s == "infinity" || s == "∞") return 0;
    try {
      std::size_t pos = 0;
      const long long q = std::stoll(s, &pos);
      if (pos == s.size()) return q;
    } catch (const std::exception&) {
    }
    throw InvalidInput("config: bad place '" + s + "'");
  }
  if (v.is_number_integer()) return v.get<long long>();
  throw InvalidInput("config: places are \"inf\" or primes");
}

std::string place_key(long long v) { return v == 0 ? "inf" : std::to_string(v); }

cplx parse_complex(const Json& v) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
    throw InvalidInput("config: complex numbers are [re, im] pairs");
  return {v[0].get<double>(), v[1].get<double>()};
}

LocalDataSet parse_places(const Json& obj, int n) {
  if (!obj.is_object()) throw InvalidInput("config: places must be an object");
  LocalDataSet d;
  d.n = n;
  bool have_inf = false;
  for (const auto& [k, v] : obj.items()) {
    const long long place = parse_place(Json(k));
    if (!v.is_array() || static_cast<int>(v.size()) != n)
      throw InvalidInput("config: place " + k + " needs " + std::to_string(n) + " entries");
    std::vector<cplx> ell;
    for (const auto& e : v) ell.push_back(parse_complex(e));
    SpectralParameter sp;
    try {
      sp = SpectralParameter(ell, 1e-9);
    } catch (const Error& e) {
      throw InvalidInput("config: place " + k + ": " + e.what());
    }
    if (place == 0) {
      d.infinity = sp;
      have_inf = true;
    } else {
      d.finite[place] = sp;
    }
  }
  if (!have_inf) throw InvalidInput("config: places must include \"inf\"");
  d.validate();
  return d;
}

Json places_json(const LocalDataSet& d) {
  Json o = Json::object();
  o["inf"] = to_json(d.infinity);
  for (const auto& [q, ell] : d.finite) o[std::to_string(q)] = to_json(ell);
  return o;
}

const char* mode_name(AInfinityMode m) {
  switch (m) {
    case AInfinityMode::ClosedBound: return "closed";
    case AInfinityMode::Numerical: return "numerical";
    default: return "auto";
  }
}

AInfinityMode parse_mode(const std::string& s) {
  if (s == "auto") return AInfinityMode::Auto;
  if (s == "closed") return AInfinityMode::ClosedBound;
  if (s == "numerical") return AInfinityMode::Numerical;
  throw InvalidInput("config: a_infinity_mode must be auto, closed or numerical");
}

template <class T>
T get_or(const Json& obj, const char* key, T dflt) {
  if (!obj.contains(key)) return dflt;
  try {
    return obj.at(key).get<T>();
  } catch (const std::exception&) {
    throw InvalidInput(std::string("config: bad value for '") + key + "'");
  }
}

void dump_rec(const Json& j, int indent, int depth, std::string& out) {
  const std::string pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * (depth + 1)), ' ') : "";
  const std::string pad_close = indent > 0 ? std::string(static_cast<std::size_t>(indent * depth), ' ') : "";
  const char* nl = indent > 0 ? "\n" : "";
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{";
      out += nl;
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        if (!first) {
          out += ",";
          out += nl;
        }
        first = false;
        out += pad + Json(k).dump() + (indent > 0 ? ": " : ":");
        dump_rec(v, indent, depth + 1, out);
      }
      out += nl + pad_close + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // short numeric arrays stay on one line
      bool flat = j.size() <= 4;
      for (const auto& v : j) flat = flat && v.is_primitive();
      out += "[";
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += flat ? ", " : ",";
        if (!flat) out += nl + pad;
        first = false;
        dump_rec(v, indent, depth + 1, out);
      }
      if (!flat) out += nl + pad_close;
      out += "]";
      return;
    }
    case Json::value_t::number_float: {
      double v = j.get<double>();
      if (v == 0.0) v = 0.0;  // no "-0"
      if (!std::isfinite(v)) {
        out += "null";
        return;
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out += buf;
      return;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

std::string dump17(const Json& j, int indent) {
  std::string out;
  dump_rec(j, indent, 0, out);
  return out;
}

Json to_json(cplx z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const SpectralParameter& ell) {
  Json a = Json::array();
  for (const auto& e : ell.ell) a.push_back(to_json(e));
  return a;
}

Json to_json(const LocalDataSet& d) { return places_json(d); }

Json to_json(const num::WideReal& w) {
  Json o;
  o["value"] = w.to_string(17);
  o["ln"] = w.ln();
  return o;
}

double RunConfig::resolved_delta() const { return delta ? *delta : auto_delta(data.infinity); }

long long RunConfig::resolved_p() const {
  if (p > 0) return p;
  if (data.finite.empty()) throw InvalidInput("config: no finite place to use as p");
  return data.finite.begin()->first;
}

BoundOptions RunConfig::bound_options() const {
  BoundOptions o = budgets;
  o.truncation = truncation;
  return o;
}

RunConfig parse_config(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const std::exception& e) {
    throw InvalidInput(std::string("config: JSON parse error: ") + e.what());
  }
  if (!j.is_object()) throw InvalidInput("config: top level must be an object");
  RunConfig c;
  const int n = get_or<int>(j, "n", 2);
  if (n < 2) throw InvalidInput("config: n ≥ 2");
  if (!j.contains("places")) throw InvalidInput("config: 'places' is required");
  c.data = parse_places(j["places"], n);
  if (j.contains("other_places")) c.other = parse_places(j["other_places"], n);
  if (j.contains("S")) {
    if (!j["S"].is_array()) throw InvalidInput("config: S must be an array");
    c.S.clear();
    for (const auto& v : j["S"]) c.S.push_back(parse_place(v));
    if (std::find(c.S.begin(), c.S.end(), 0) == c.S.end()) throw InvalidInput("config: S must contain \"inf\"");
    std::sort(c.S.begin(), c.S.end());
    c.S.erase(std::unique(c.S.begin(), c.S.end()), c.S.end());
    for (long long v : c.S)
      if (!c.data.has_place(v)) throw InvalidInput("config: S place " + place_key(v) + " is not in 'places'");
  }
  if (j.contains("p")) c.p = parse_place(j["p"]);
  if (c.p < 0 || (c.p > 0 && !c.data.has_place(c.p))) throw InvalidInput("config: p must be a finite place");
  if (j.contains("delta")) {
    const auto& d = j["delta"];
    if (d.is_string()) {
      if (d.get<std::string>() != "auto") throw InvalidInput("config: delta is a number or \"auto\"");
    } else if (d.is_number()) {
      c.delta = d.get<double>();
      if (!(*c.delta > 0.0)) throw InvalidInput("config: delta must be positive");
    } else {
      throw InvalidInput("config: delta is a number or \"auto\"");
    }
  }
  if (j.contains("truncation")) {
    const auto& t = j["truncation"];
    c.truncation.m_max = get_or<int>(t, "m_max", c.truncation.m_max);
    c.truncation.coset_height = get_or<int>(t, "coset_height", c.truncation.coset_height);
    c.truncation.tol = get_or<double>(t, "tol", c.truncation.tol);
    c.truncation.y_floor = get_or<double>(t, "y_floor", c.truncation.y_floor);
  }
  auto& b = c.budgets;
  if (j.contains("budgets")) {
    const auto& t = j["budgets"];
    b.volume_samples = get_or<long long>(t, "volume_samples", b.volume_samples);
    b.sup_samples = get_or<long long>(t, "sup_samples", b.sup_samples);
    b.refine_steps = get_or<int>(t, "refine_steps", b.refine_steps);
    b.sup_inflation = get_or<double>(t, "sup_inflation", b.sup_inflation);
    b.a_mode = parse_mode(get_or<std::string>(t, "a_infinity_mode", mode_name(b.a_mode)));
    b.casimir_panels = get_or<int>(t, "casimir_panels", b.casimir_panels);
    b.probes = get_or<int>(t, "probes", b.probes);
    b.tail_nudge = get_or<double>(t, "tail_nudge", b.tail_nudge);
  }
  if (b.volume_samples < 1 || b.sup_samples < 1 || b.refine_steps < 0 || b.sup_inflation < 0.0 ||
      b.casimir_panels < 2 || b.probes < 1)
    throw InvalidInput("config: budgets out of range");
  b.seed = get_or<std::uint64_t>(j, "seed", b.seed);
  if (j.contains("verify")) {
    const auto& v = j["verify"];
    c.verify_suite = get_or<std::string>(v, "suite", c.verify_suite);
    c.verify_trials = get_or<int>(v, "trials", c.verify_trials);
    c.verify_samples = get_or<long long>(v, "samples", c.verify_samples);
  }
  if (j.contains("output")) {
    const auto& o = j["output"];
    c.report_path = get_or<std::string>(o, "report", "");
    c.csv_path = get_or<std::string>(o, "csv", "");
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("config: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

namespace {

Json config_json(const RunConfig& c) {
  Json j;
  j["n"] = c.data.n;
  j["places"] = places_json(c.data);
  if (c.other) j["other_places"] = places_json(*c.other);
  Json S = Json::array();
  for (long long v : c.S) {
    if (v == 0)
      S.push_back("inf");
    else
      S.push_back(v);
  }
  j["S"] = S;
  j["p"] = c.p;
  if (c.delta)
    j["delta"] = *c.delta;
  else
    j["delta"] = "auto";
  j["truncation"] = {{"m_max", c.truncation.m_max},
                     {"coset_height", c.truncation.coset_height},
                     {"tol", c.truncation.tol},
                     {"y_floor", c.truncation.y_floor}};
  const auto& b = c.budgets;
  j["budgets"] = {{"volume_samples", b.volume_samples}, {"sup_samples", b.sup_samples},
                  {"refine_steps", b.refine_steps},     {"sup_inflation", b.sup_inflation},
                  {"a_infinity_mode", mode_name(b.a_mode)}, {"casimir_panels", b.casimir_panels},
                  {"probes", b.probes},                 {"tail_nudge", b.tail_nudge}};
  j["seed"] = b.seed;
  j["verify"] = {{"suite", c.verify_suite}, {"trials", c.verify_trials}, {"samples", c.verify_samples}};
  j["output"] = {{"report", c.report_path}, {"csv", c.csv_path}};
  return j;
}

Json point_json(const IwasawaPoint& z) {
  Json x = Json::array();
  for (int i = 0; i < z.n; ++i)
    for (int k = i + 1; k < z.n; ++k) x.push_back(z.x(i, k));
  return {{"x", x}, {"y", z.y}};
}

}  // namespace

std::string emit_config(const RunConfig& c) { return dump17(config_json(c)); }

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string config_hash(const RunConfig& c) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(emit_config(c))));
  return buf;
}

const char* toolkit_version() { return MAASS_VERSION; }

std::string report_json(const BoundReport& r, const RunConfig& c) {
  Json j;
  j["kind"] = r.kind;
  j["version"] = toolkit_version();
  j["config_hash"] = config_hash(c);
  Json in;
  in["n"] = r.data.n;
  in["places"] = places_json(r.data);
  Json S = Json::array();
  for (long long v : r.S) S.push_back(v == 0 ? Json("inf") : Json(v));
  in["S"] = S;
  in["p"] = r.p;
  in["delta"] = r.delta;
  in["delta_max"] = r.delta_max;
  in["truncation"] = config_json(c)["truncation"];
  in["budgets"] = config_json(c)["budgets"];
  in["seeds"] = {{"master", r.options.seed},
                 {"volume", num::shard_seed(r.options.seed, 1)},
                 {"sup", num::shard_seed(r.options.seed, 2)},
                 {"probes", num::shard_seed(r.options.seed, 3)}};
  j["inputs"] = in;

  Json m;
  m["symbol"] = to_json(r.symbol);
  m["symbol_abs"] = std::abs(r.symbol);
  m["norm_bound"] = r.norm_bound;
  m["C_delta"] = r.bump.c_delta;
  m["vol_B_delta"] = r.bump.vol_ball;
  m["hat_H"] = to_json(r.hat_H);
  m["hat_H_abs"] = std::abs(r.hat_H);
  m["hat_H_above_half"] = r.hat_H_above_half;
  m["vol_B1"] = {{"value", r.vol_B1.value},
                 {"std_error", r.vol_B1.std_error},
                 {"samples", r.vol_B1.samples},
                 {"hits", r.vol_B1.hits}};
  m["sup_B2"] = {{"measured", r.sup.measured},      {"used", r.sup.used},
                 {"inflation", r.options.sup_inflation}, {"uncertainty", r.sup.uncertainty},
                 {"argmax", point_json(r.sup.argmax)},   {"accepted", r.sup.accepted},
                 {"attempted", r.sup.attempted},         {"max_truncation_tail", r.sup.max_tail}};
  if (r.kind == "main") {
    Json terms = Json::array();
    for (std::size_t k = 0; k < r.a_inf.integrals.size(); ++k)
      terms.push_back({{"j", k + 1},
                       {"mode", r.a_inf.modes[k]},
                       {"integral", r.a_inf.integrals[k]},
                       {"error", r.a_inf.errors[k]}});
    m["A_infinity"] = {{"terms", terms}, {"total", r.a_inf.total}, {"error", r.a_inf.total_error}};
    m["A_S_finite"] = r.a_s_finite;
    Json counts = Json::array();
    for (const auto& [key, cnt] : r.counts) counts.push_back({{"q", key.first}, {"j", key.second}, {"count", cnt}});
    m["hecke_counts"] = counts;
    m["q_max"] = r.q_max;
  }
  m["T"] = r.T;
  m["whittaker_tail"] = to_json(r.tail);
  m["analytic_conductor"] = r.conductor;
  j["intermediates"] = m;

  Json out;
  if (r.kind == "main") {
    out["epsilon"] = to_json(r.epsilon);
    out["epsilon_rel_error"] = r.epsilon_rel_error;
    out["upper_rhs"] = to_json(upper_bound_rhs(r));
    out["lower_rhs"] = to_json(lower_bound_rhs(r));
  } else {
    out["lambda_n"] = to_json(r.lambda_n);
    out["bracket_theorem"] = r.bracket_theorem;
    out["A_closed"] = r.a_closed;
    out["window_theorem"] = to_json(r.window_theorem);
    out["window_proof"] = to_json(r.window_proof);
    out["window_rel_error"] = r.window_rel_error;
  }
  j["outputs"] = out;
  j["flags"] = r.flags;
  return dump17(j) + "\n";
}

std::string report_csv(const BoundReport& r) {
  std::ostringstream o;
  o.precision(17);
  o << "name,value,std_error\n";
  o << "delta," << r.delta << ",0\n";
  o << "symbol_abs," << std::abs(r.symbol) << ",0\n";
  o << "norm_bound," << r.norm_bound << ",0\n";
  o << "hat_H_abs," << std::abs(r.hat_H) << ",0\n";
  o << "C_delta," << r.bump.c_delta << ",0\n";
  o << "vol_B_delta," << r.bump.vol_ball << ",0\n";
  o << "vol_B1," << r.vol_B1.value << "," << r.vol_B1.std_error << "\n";
  o << "sup_B2_measured," << r.sup.measured << "," << r.sup.uncertainty << "\n";
  o << "sup_B2_used," << r.sup.used << ",0\n";
  if (r.kind == "main") {
    for (std::size_t k = 0; k < r.a_inf.integrals.size(); ++k)
      o << "A_infinity_j" << k + 1 << "," << r.a_inf.integrals[k] << "," << r.a_inf.errors[k] << "\n";
    o << "A_S_finite," << r.a_s_finite << ",0\n";
    o << "ln_epsilon," << r.epsilon.ln() << "," << r.epsilon_rel_error << "\n";
  } else {
    o << "ln_window_theorem," << r.window_theorem.ln() << "," << r.window_rel_error << "\n";
    o << "ln_window_proof," << r.window_proof.ln() << "," << r.window_rel_error << "\n";
  }
  o << "T," << r.T << ",0\n";
  o << "ln_whittaker_tail," << r.tail.ln() << ",0\n";
  return o.str();
}

std::string error_json(const std::string& kind, const std::string& message, const std::string& hash) {
  Json j;
  j["error"] = {{"kind", kind}, {"message", message}};
  j["config_hash"] = hash;
  j["version"] = toolkit_version();
  return dump17(j) + "\n";
}

}  // namespace maass
