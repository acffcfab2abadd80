#include "motivic/curve_formulas.hpp"
#include "motivic/dt_engine.hpp"
#include "motivic/json_io.hpp"
#include "motivic/oracles.hpp"
#include "motivic/symfunc.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace motivic;

constexpr const char* kEngineVersion = "1.0.0";

// Carrier for schema violations collected during config parsing.
struct ViolationsError {
  std::vector<std::string> violations;
};

using KeyVals = std::map<std::string, std::string>;

KeyVals parse_key_vals(const std::vector<std::string>& tokens) {
  KeyVals kv;
  for (const std::string& t : tokens) {
    auto pos = t.find('=');
    if (pos == std::string::npos || pos == 0)
      throw Error(ErrorCode::Config, "arguments must have the form key=value: " + t);
    kv[t.substr(0, pos)] = t.substr(pos + 1);
  }
  return kv;
}

const std::string& kv_get(const KeyVals& kv, const std::string& key) {
  auto it = kv.find(key);
  if (it == kv.end()) throw Error(ErrorCode::Config, "missing argument: " + key);
  return it->second;
}

long kv_int(const KeyVals& kv, const std::string& key) {
  const std::string& s = kv_get(kv, key);
  try {
    std::size_t used = 0;
    long v = std::stol(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCode::Config, "expected an integer for " + key + ": " + s);
  }
}

long kv_int_or(const KeyVals& kv, const std::string& key, long fallback) {
  return kv.count(key) ? kv_int(kv, key) : fallback;
}

Partition kv_partition(const KeyVals& kv, const std::string& key) {
  const std::string& s = kv_get(kv, key);
  Partition p;
  if (s.empty() || s == "0") return p;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      long v = std::stol(item);
      if (v < 1) throw std::invalid_argument(item);
      p.parts.push_back(static_cast<unsigned>(v));
    } catch (const std::exception&) {
      throw Error(ErrorCode::Config, "expected a partition like 2,1 for " + key + ": " + s);
    }
  }
  std::sort(p.parts.begin(), p.parts.end(), std::greater<unsigned>());
  return p;
}

// flags=1,1;2 : per-puncture flag jumps, punctures split by ';'.
std::vector<std::vector<unsigned>> parse_flags(const std::string& s) {
  std::vector<std::vector<unsigned>> out;
  std::stringstream groups(s);
  std::string group;
  while (std::getline(groups, group, ';')) {
    std::vector<unsigned> row;
    std::stringstream items(group);
    std::string item;
    while (std::getline(items, item, ',')) {
      try {
        long v = std::stol(item);
        if (v < 0) throw std::invalid_argument(item);
        row.push_back(static_cast<unsigned>(v));
      } catch (const std::exception&) {
        throw Error(ErrorCode::Config, "expected flag jumps like 1,1;2 : " + s);
      }
    }
    out.push_back(std::move(row));
  }
  return out;
}

Realization parse_realize(const std::string& spec, const CurveData& curve) {
  Realization r;
  r.curve = &curve;
  if (spec.empty() || spec == "symbolic") {
    r.kind = Realization::Kind::Symbolic;
    return r;
  }
  std::string kind = spec, params;
  auto colon = spec.find(':');
  if (colon != std::string::npos) {
    kind = spec.substr(0, colon);
    params = spec.substr(colon + 1);
  } else if (spec.rfind("q=", 0) == 0) {
    kind = "point_count";
    params = spec;
  }
  if (kind == "point_count")
    r.kind = Realization::Kind::PointCount;
  else if (kind == "e_polynomial")
    r.kind = Realization::Kind::EPolynomial;
  else if (kind == "euler_characteristic")
    r.kind = Realization::Kind::EulerCharacteristic;
  else if (kind == "symbolic")
    r.kind = Realization::Kind::Symbolic;
  else
    throw Error(ErrorCode::Config, "unknown realization kind: " + kind);
  std::stringstream ss(params);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    auto pos = item.find('=');
    if (pos == std::string::npos)
      throw Error(ErrorCode::Config, "realization parameters must be key=value: " + item);
    std::string key = item.substr(0, pos), val = item.substr(pos + 1);
    if (key == "q")
      r.q = parse_rational(val);
    else if (key == "sqrt_q")
      r.sqrt_q = parse_rational(val);
    else
      throw Error(ErrorCode::Config, "unknown realization parameter: " + key);
  }
  if (r.kind == Realization::Kind::PointCount && r.q == 0)
    throw Error(ErrorCode::Config, "point_count realization needs q=<rational>");
  return r;
}

std::string realize_value_string(const RealizeResult& res) {
  if (res.rational) return to_string(*res.rational);
  if (res.epoly) return bivar_to_string(*res.epoly);
  return res.symbolic ? res.symbolic->to_string() : "0";
}

const char* realize_kind_name(Realization::Kind k) {
  switch (k) {
    case Realization::Kind::PointCount: return "point_count";
    case Realization::Kind::EPolynomial: return "e_polynomial";
    case Realization::Kind::EulerCharacteristic: return "euler_characteristic";
    default: return "symbolic";
  }
}

Json realization_to_json(const Realization& r, const RealizeResult& res) {
  Json out;
  out["kind"] = realize_kind_name(r.kind);
  if (r.kind == Realization::Kind::PointCount) {
    out["q"] = to_string(r.q);
    if (r.sqrt_q) out["sqrt_q"] = to_string(*r.sqrt_q);
  }
  out["value"] = realize_value_string(res);
  if (res.epoly) {
    Json terms = Json::array();
    for (const auto& [e, c] : *res.epoly) {
      Json rec;
      rec["u_exp"] = e.first;
      rec["v_exp"] = e.second;
      rec["coeff"] = to_string(c);
      terms.push_back(std::move(rec));
    }
    out["terms"] = std::move(terms);
  }
  if (res.symbolic) out["terms"] = motcoeff_to_json(*res.symbolic);
  return out;
}

Json qtpoly_to_json(const QTPoly& p) {
  Json out;
  out["string"] = p.to_string();
  Json terms = Json::array();
  for (const auto& [e, c] : p.terms()) {
    Json rec;
    rec["q_exp"] = e.first;
    rec["t_exp"] = e.second;
    rec["coeff"] = to_string(c);
    terms.push_back(std::move(rec));
  }
  out["terms"] = std::move(terms);
  return out;
}

Json expansion_to_json(const std::map<Partition, QTPoly>& ex) {
  Json out = Json::array();
  for (const auto& [lam, c] : ex) {
    Json rec;
    rec["lambda"] = lam.parts;
    rec["coeff"] = qtpoly_to_json(c);
    out.push_back(std::move(rec));
  }
  return out;
}

Json admissibility_to_json(const AdmissibilityReport& rep) {
  Json out;
  out["full_at"] = rep.full_at;
  out["nonresonant_at"] = rep.nonresonant_at;
  out["residue_condition"] = rep.residue_condition;
  return out;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Config, "cannot open config file: " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::Config, std::string("malformed JSON: ") + e.what());
  }
}

struct CliOptions {
  std::string config_path;
  std::string realize_spec;
  long r_max = -1;
  long z_max = -1;
  long guard = -1;
  std::string out_path;
  std::vector<std::string> extras;
};

ModelConfig load_model(const CliOptions& opt) {
  ModelConfig cfg;
  if (!opt.config_path.empty()) {
    Json doc = read_json_file(opt.config_path);
    std::vector<std::string> violations;
    cfg = model_config_from_json(doc, violations);
    if (!violations.empty()) throw ViolationsError{violations};
  }
  if (opt.r_max >= 0) cfg.trunc.r_max = static_cast<unsigned>(opt.r_max);
  if (opt.z_max >= 0) cfg.trunc.z_max = static_cast<unsigned>(opt.z_max);
  if (opt.guard >= 0) cfg.guard = static_cast<unsigned>(opt.guard);
  cfg.validate();
  if (cfg.guard < 1 || cfg.guard > cfg.trunc.z_max)
    throw Error(ErrorCode::Config, "guard must satisfy 1 <= guard <= z_max");
  return cfg;
}

void emit(const Json& doc, const std::string& out_path) {
  std::string text = doc.dump(2);
  text.push_back('\n');
  std::cout << text;
  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw Error(ErrorCode::Config, "cannot open output file: " + out_path);
    out << text;
  }
}

Json base_doc(const std::string& command) {
  Json doc;
  doc["command"] = command;
  doc["engine_version"] = kEngineVersion;
  return doc;
}

void add_provenance(Json& doc, const ModelConfig& cfg) {
  Json t;
  t["r_max"] = cfg.trunc.r_max;
  t["z_max"] = cfg.trunc.z_max;
  doc["truncation"] = std::move(t);
  doc["guard"] = cfg.guard;
}

int run_zeta(const CliOptions& opt) {
  ModelConfig cfg = load_model(opt);
  auto series = kapranov_zeta(cfg.curve, cfg.trunc.z_max);
  Json doc = base_doc("zeta");
  add_provenance(doc, cfg);
  doc["result"]["series"] = zseries_to_json(series);
  Realization r = parse_realize(opt.realize_spec, cfg.curve);
  if (r.kind != Realization::Kind::Symbolic) {
    Json vals = Json::array();
    for (const auto& [idx, c] : series.terms()) {
      Json rec;
      rec["z"] = idx.z();
      rec["value"] = realize_value_string(c.realize(r));
      vals.push_back(std::move(rec));
    }
    Json rj;
    rj["kind"] = realize_kind_name(r.kind);
    if (r.kind == Realization::Kind::PointCount) rj["q"] = to_string(r.q);
    rj["values"] = std::move(vals);
    doc["realization"] = std::move(rj);
  }
  emit(doc, opt.out_path);
  return 0;
}

int run_bun_class(const CliOptions& opt) {
  ModelConfig cfg = load_model(opt);
  KeyVals kv = parse_key_vals(opt.extras);
  long r = kv_int(kv, "r");
  if (r < 1) throw Error(ErrorCode::Precondition, "rank must be positive");
  FractionCoeff cls = bun_class(cfg.curve, static_cast<unsigned>(r));
  Json doc = base_doc("bun-class");
  doc["rank"] = r;
  doc["result"]["class"] = fraction_to_json(cls);
  doc["symbolic"] = cls.to_string();
  Realization real = parse_realize(opt.realize_spec, cfg.curve);
  if (real.kind != Realization::Kind::Symbolic)
    doc["realization"] = realization_to_json(real, cls.realize(real));
  emit(doc, opt.out_path);
  return 0;
}

int run_goettsche(const CliOptions& opt) {
  KeyVals kv = parse_key_vals(opt.extras);
  std::string surface = kv.count("surface") ? kv.at("surface") : "a2";
  if (surface != "a2")
    throw Error(ErrorCode::Config, "unknown surface: " + surface);
  unsigned z_max = opt.z_max >= 0 ? static_cast<unsigned>(opt.z_max) : 8;
  auto series = goettsche_series(a2_surface_zeta(z_max), z_max);
  Json doc = base_doc("goettsche");
  doc["surface"] = surface;
  doc["truncation"]["z_max"] = z_max;
  doc["result"]["series"] = zseries_to_json(series);
  CurveData trivial_curve;
  Realization r = parse_realize(opt.realize_spec, trivial_curve);
  if (r.kind != Realization::Kind::Symbolic) {
    Json vals = Json::array();
    for (const auto& [idx, c] : series.terms()) {
      Json rec;
      rec["z"] = idx.z();
      rec["value"] = realize_value_string(c.realize(r));
      vals.push_back(std::move(rec));
    }
    Json rj;
    rj["kind"] = realize_kind_name(r.kind);
    if (r.kind == Realization::Kind::PointCount) rj["q"] = to_string(r.q);
    rj["values"] = std::move(vals);
    doc["realization"] = std::move(rj);
  }
  emit(doc, opt.out_path);
  return 0;
}

int run_gl_class(const CliOptions& opt) {
  KeyVals kv = parse_key_vals(opt.extras);
  long n = kv_int(kv, "n");
  if (n < 1) throw Error(ErrorCode::Precondition, "rank must be positive");
  MotCoeff cls = gl_class(static_cast<unsigned>(n));
  Json doc = base_doc("gl-class");
  doc["n"] = n;
  doc["result"]["class"] = motcoeff_to_json(cls);
  doc["symbolic"] = cls.to_string();
  CurveData trivial_curve;
  Realization real = parse_realize(opt.realize_spec, trivial_curve);
  if (real.kind != Realization::Kind::Symbolic)
    doc["realization"] = realization_to_json(real, cls.realize(real));
  emit(doc, opt.out_path);
  return 0;
}

int run_macdonald(const CliOptions& opt) {
  KeyVals kv = parse_key_vals(opt.extras);
  Partition mu = kv_partition(kv, "mu");
  unsigned nvars = static_cast<unsigned>(kv_int_or(kv, "nvars", static_cast<long>(mu.size())));
  if (nvars == 0) nvars = 1;
  SymPoly h = modified_macdonald(mu, nvars);
  Json doc = base_doc("macdonald");
  doc["mu"] = mu.parts;
  doc["nvars"] = nvars;
  doc["result"]["monomial_expansion"] = expansion_to_json(h.monomial_expansion());
  doc["result"]["schur_expansion"] = expansion_to_json(h.schur_expansion());
  emit(doc, opt.out_path);
  return 0;
}

int run_dt_series(const CliOptions& opt) {
  ModelConfig cfg = load_model(opt);
  auto omega = omega_series(cfg);
  auto h = h_series(omega, cfg.curve.genus);
  auto report = check_z_polynomiality(h, cfg.guard);
  Json doc = base_doc("dt-series");
  add_provenance(doc, cfg);
  doc["result"]["omega"] = series_to_json(omega);
  doc["result"]["h"] = series_to_json(h);
  Json rep;
  rep["all_pass"] = report.all_pass;
  rep["window_low"] = report.window_low;
  Json entries = Json::array();
  for (const auto& e : report.entries) {
    Json rec;
    rec["gamma"] = gamma_to_json(e.w_monomial, h.shape());
    rec["max_z"] = e.max_z;
    rec["pass"] = e.pass;
    entries.push_back(std::move(rec));
  }
  rep["entries"] = std::move(entries);
  doc["result"]["polynomiality"] = std::move(rep);
  emit(doc, opt.out_path);
  return 0;
}

GammaClass gamma_from_args(const ModelConfig& cfg, const KeyVals& kv) {
  GammaClass g;
  long r = kv_int(kv, "r");
  if (r < 1) throw Error(ErrorCode::Precondition, "rank must be positive");
  g.r = static_cast<unsigned>(r);
  g.d = kv_int_or(kv, "d", 0);
  if (kv.count("flags")) {
    g.r_xj = parse_flags(kv.at("flags"));
  } else {
    // Default: all of the rank in the first level at every puncture.
    for (const auto& p : cfg.punctures) {
      std::vector<unsigned> row(p.levels(), 0);
      if (!row.empty()) row[0] = g.r;
      g.r_xj.push_back(std::move(row));
    }
  }
  cfg.check_gamma(g);
  return g;
}

int run_conn(const CliOptions& opt, bool semistable) {
  ModelConfig cfg = load_model(opt);
  KeyVals kv = parse_key_vals(opt.extras);
  GammaClass gamma = gamma_from_args(cfg, kv);
  Json doc = base_doc(semistable ? "conn-ss-class" : "conn-class");
  add_provenance(doc, cfg);
  doc["gamma"] = Json{{"r", gamma.r}, {"r_xj", gamma.r_xj}, {"d", gamma.d}};
  doc["epsilon"] = to_string(cfg.epsilon);
  doc["admissibility"] = admissibility_to_json(admissibility(gamma, cfg));
  FractionCoeff cls = semistable ? conn_ss_class(cfg, gamma) : conn_class(cfg, gamma);
  doc["result"]["class"] = fraction_to_json(cls);
  doc["symbolic"] = cls.to_string();
  Realization real = parse_realize(opt.realize_spec, cfg.curve);
  if (real.kind != Realization::Kind::Symbolic)
    doc["realization"] = realization_to_json(real, cls.realize(real));
  emit(doc, opt.out_path);
  return 0;
}

int run_dt_extract(const CliOptions& opt) {
  if (opt.config_path.empty())
    throw Error(ErrorCode::Config, "dt-extract needs --config with a torus element");
  Json in = read_json_file(opt.config_path);
  std::vector<std::string> violations;
  TorusInput tin = torus_input_from_json(in, violations);
  if (!violations.empty()) throw ViolationsError{violations};
  auto inv = dt_extract_ray(tin.element, tin.lattice);
  Json doc = base_doc("dt-extract");
  Json list = Json::array();
  for (const auto& [v, c] : inv) {
    Json rec;
    rec["vector"] = v;
    rec["coeff"] = fraction_to_json(c);
    rec["symbolic"] = c.to_string();
    list.push_back(std::move(rec));
  }
  doc["result"]["invariants"] = std::move(list);
  emit(doc, opt.out_path);
  return 0;
}

int run_oracle(const CliOptions& opt) {
  if (opt.extras.empty())
    throw Error(ErrorCode::Config, "oracle needs a sub-verb: nilpotent, bun-p1, hilb-a2, hall");
  std::string verb = opt.extras.front();
  KeyVals kv = parse_key_vals({opt.extras.begin() + 1, opt.extras.end()});
  Json doc = base_doc("oracle");
  doc["verb"] = verb;
  if (verb == "nilpotent") {
    long d = kv_int(kv, "d"), q = kv_int(kv, "q");
    if (d < 1 || q < 2) throw Error(ErrorCode::Config, "need d >= 1 and q >= 2");
    auto census = count_nilpotent_types(static_cast<unsigned>(d), static_cast<unsigned>(q));
    doc["d"] = d;
    doc["q"] = q;
    doc["result"]["total"] = census.total;
    Json types = Json::array();
    for (const auto& [type, count] : census.by_type) {
      Json rec;
      rec["type"] = type.parts;
      rec["count"] = count;
      types.push_back(std::move(rec));
    }
    doc["result"]["by_type"] = std::move(types);
  } else if (verb == "bun-p1") {
    long d = kv_int_or(kv, "d", 0), q = kv_int(kv, "q");
    long k_max = kv_int_or(kv, "k_max", 12);
    if (q < 2 || k_max < 2) throw Error(ErrorCode::Config, "need q >= 2 and k_max >= 2");
    auto count = bun_p1_weighted_count(d, static_cast<unsigned>(q), static_cast<unsigned>(k_max));
    doc["d"] = d;
    doc["q"] = q;
    doc["k_max"] = k_max;
    doc["result"]["partial_sum"] = to_string(count.partial_sum);
    doc["result"]["tail_bound"] = to_string(count.tail_bound);
  } else if (verb == "hilb-a2") {
    long n = kv_int(kv, "n"), q = kv_int(kv, "q");
    if (n < 0 || q < 2) throw Error(ErrorCode::Config, "need n >= 0 and q >= 2");
    doc["n"] = n;
    doc["q"] = q;
    doc["result"]["count"] =
        hilb_a2_bruteforce(static_cast<unsigned>(n), static_cast<unsigned>(q));
  } else if (verb == "hall") {
    Partition lam = kv_partition(kv, "lam");
    Partition mu = kv_partition(kv, "mu");
    Partition nu = kv_partition(kv, "nu");
    long q = kv_int(kv, "q");
    if (q < 2) throw Error(ErrorCode::Config, "need q >= 2");
    doc["lam"] = lam.parts;
    doc["mu"] = mu.parts;
    doc["nu"] = nu.parts;
    doc["q"] = q;
    doc["result"]["count"] = hall_numbers_bruteforce(lam, mu, nu, static_cast<unsigned>(q));
  } else {
    throw Error(ErrorCode::Config, "unknown oracle verb: " + verb);
  }
  emit(doc, opt.out_path);
  return 0;
}

int emit_error(const std::string& command, int code, const std::string& message,
               const std::vector<std::string>& violations, const std::string& out_path) {
  Json doc = base_doc(command);
  doc["error"]["code"] = code;
  doc["error"]["message"] = message;
  if (!violations.empty()) doc["error"]["violations"] = violations;
  try {
    emit(doc, out_path);
  } catch (const Error&) {
    // Output-path failure while reporting an error: stdout already has the doc.
  }
  return code;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"motcalc: exact motivic classes of parabolic Higgs and connection moduli"};
  app.require_subcommand(1);

  CliOptions opt;
  const std::vector<std::string> names = {"zeta",       "bun-class",     "goettsche",
                                          "gl-class",   "macdonald",     "dt-series",
                                          "conn-class", "conn-ss-class", "dt-extract",
                                          "oracle"};
  const std::vector<std::string> descriptions = {
      "Kapranov zeta series of the configured curve",
      "class of the stack of rank-r bundles",
      "Hilbert-scheme series of a surface",
      "class of the group GL(n)",
      "modified Macdonald polynomial expansions",
      "master series, its plethystic logarithm, and the z-polynomiality report",
      "class of the stack of epsilon-connections",
      "class of the semistable locus at the configured weights",
      "ray extraction of DT invariants from a torus element",
      "finite-field brute-force counts (nilpotent, bun-p1, hilb-a2, hall)"};
  std::vector<CLI::App*> subs;
  for (std::size_t i = 0; i < names.size(); ++i) {
    CLI::App* sub = app.add_subcommand(names[i], descriptions[i]);
    sub->add_option("--config", opt.config_path, "JSON model configuration");
    sub->add_option("--realize", opt.realize_spec,
                    "realization kind[:q=<rational>[,sqrt_q=<rational>]]");
    sub->add_option("--r-max", opt.r_max, "rank truncation override");
    sub->add_option("--z-max", opt.z_max, "z truncation override");
    sub->add_option("--guard", opt.guard, "stabilization guard window");
    sub->add_option("--out", opt.out_path, "also write the JSON result to this file");
    sub->allow_extras();
    subs.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  std::string command;
  for (std::size_t i = 0; i < names.size(); ++i)
    if (subs[i]->parsed()) {
      command = names[i];
      opt.extras = subs[i]->remaining();
    }

  try {
    if (command == "zeta") return run_zeta(opt);
    if (command == "bun-class") return run_bun_class(opt);
    if (command == "goettsche") return run_goettsche(opt);
    if (command == "gl-class") return run_gl_class(opt);
    if (command == "macdonald") return run_macdonald(opt);
    if (command == "dt-series") return run_dt_series(opt);
    if (command == "conn-class") return run_conn(opt, false);
    if (command == "conn-ss-class") return run_conn(opt, true);
    if (command == "dt-extract") return run_dt_extract(opt);
    if (command == "oracle") return run_oracle(opt);
    return emit_error(command, 2, "unknown command", {}, opt.out_path);
  } catch (const ViolationsError& v) {
    return emit_error(command, 2, "configuration is invalid", v.violations, opt.out_path);
  } catch (const Error& e) {
    return emit_error(command, e.exit_code(), e.what(), {}, opt.out_path);
  } catch (const std::exception& e) {
    return emit_error(command, 1, e.what(), {}, opt.out_path);
  }
}
