#include "motivic/json_io.hpp"

#include <algorithm>

namespace motivic {

namespace {

void fail(const std::string& path, const std::string& msg) {
  throw Error(ErrorCode::Config, path + ": " + msg);
}

long long int_field(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<long long>();
}

} // namespace

Json motcoeff_to_json(const MotCoeff& c) {
  Json out = Json::array();
  for (const auto& [key, lp] : c.terms()) {
    for (const auto& [half_exp, coeff] : lp.terms()) {
      Json rec;
      rec["L_half_exponent"] = half_exp;
      rec["p_monomial"] = key.ps;
      rec["coeff"] = to_string(coeff);
      if (key.jac > 0) rec["jac_power"] = key.jac;
      out.push_back(std::move(rec));
    }
  }
  return out;
}

MotCoeff motcoeff_from_json(const Json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected a list of coefficient records");
  MotCoeff out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const Json& rec = j[i];
    const std::string p = path + "/" + std::to_string(i);
    if (!rec.is_object()) fail(p, "expected an object");
    if (!rec.contains("L_half_exponent") || !rec.contains("coeff"))
      fail(p, "record needs L_half_exponent and coeff");
    long long he = int_field(rec["L_half_exponent"], p + "/L_half_exponent");
    Rat c;
    try {
      if (rec["coeff"].is_number_integer())
        c = Rat(rec["coeff"].get<long long>());
      else
        c = parse_rational(rec["coeff"].get<std::string>());
    } catch (const Json::exception&) {
      fail(p + "/coeff", "expected an integer or rational string");
    }
    MotCoeff term = MotCoeff::half_power(static_cast<int>(he), c);
    if (rec.contains("p_monomial")) {
      if (!rec["p_monomial"].is_array()) fail(p + "/p_monomial", "expected a list of indices");
      for (const Json& n : rec["p_monomial"]) {
        long long v = int_field(n, p + "/p_monomial");
        if (v < 1) fail(p + "/p_monomial", "indices must be positive");
        term = term * MotCoeff::p_symbol(static_cast<unsigned>(v));
      }
    }
    if (rec.contains("jac_power")) {
      long long v = int_field(rec["jac_power"], p + "/jac_power");
      if (v < 0) fail(p + "/jac_power", "must be nonnegative");
      for (long long k = 0; k < v; ++k) term = term * MotCoeff::jac_symbol();
    }
    out += term;
  }
  return out;
}

Json fraction_to_json(const FractionCoeff& f) {
  Json out;
  out["num"] = motcoeff_to_json(f.num());
  out["den"] = motcoeff_to_json(f.den());
  return out;
}

FractionCoeff fraction_from_json(const Json& j, const std::string& path) {
  if (!j.is_object() || !j.contains("num")) fail(path, "expected {num, den}");
  MotCoeff num = motcoeff_from_json(j["num"], path + "/num");
  MotCoeff den = j.contains("den") ? motcoeff_from_json(j["den"], path + "/den")
                                   : MotCoeff::one();
  return FractionCoeff(num, den);
}

Json gamma_to_json(const MonomialIndex& idx, const SeriesShape& shape) {
  Json gamma;
  gamma["r"] = idx.rank();
  Json rxj = Json::array();
  for (std::size_t x = 0; x < shape.puncture_levels.size(); ++x) {
    Json row = Json::array();
    for (unsigned jlev = 0; jlev < shape.puncture_levels[x]; ++jlev)
      row.push_back(idx.punct(shape, static_cast<unsigned>(x), jlev));
    rxj.push_back(std::move(row));
  }
  gamma["r_xj"] = std::move(rxj);
  return gamma;
}

Json series_to_json(const GradedSeries<FractionCoeff>& f) {
  const SeriesShape& shape = f.shape();
  Json out = Json::array();
  for (const auto& [idx, coeff] : f.terms()) {
    Json rec;
    rec["gamma"] = gamma_to_json(idx, shape);
    rec["z"] = idx.z();
    rec["coeff"] = fraction_to_json(coeff);
    out.push_back(std::move(rec));
  }
  return out;
}

Json zseries_to_json(const GradedSeries<MotCoeff>& f) {
  Json out = Json::array();
  for (const auto& [idx, coeff] : f.terms()) {
    Json rec;
    rec["z"] = idx.z();
    rec["coeff"] = motcoeff_to_json(coeff);
    out.push_back(std::move(rec));
  }
  return out;
}

Rat rational_from_json(const Json& j, const std::string& path,
                       std::vector<std::string>& violations) {
  if (j.is_number_integer()) return Rat(j.get<long long>());
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const Error& e) {
      violations.push_back(path + ": " + e.what());
      return Rat(0);
    }
  }
  violations.push_back(path + ": expected an integer or rational string \"a/b\"");
  return Rat(0);
}

namespace {

bool require(const Json& j, const char* key, const char* what,
             std::vector<std::string>& violations) {
  if (j.contains(key)) return true;
  violations.push_back(std::string("/") + key + ": " + what);
  return false;
}

} // namespace

ModelConfig model_config_from_json(const Json& j, std::vector<std::string>& violations) {
  ModelConfig cfg;
  if (!j.is_object()) {
    violations.push_back(": configuration must be a JSON object");
    return cfg;
  }
  if (require(j, "genus", "required field is missing", violations)) {
    if (!j["genus"].is_number_integer() || j["genus"].get<long long>() < 0)
      violations.push_back("/genus: expected a nonnegative integer");
    else
      cfg.curve.genus = j["genus"].get<unsigned>();
  }
  if (require(j, "l_coeffs", "required field is missing", violations)) {
    if (!j["l_coeffs"].is_array()) {
      violations.push_back("/l_coeffs: expected a list of rationals");
    } else {
      cfg.curve.l_coeffs.clear();
      for (std::size_t i = 0; i < j["l_coeffs"].size(); ++i)
        cfg.curve.l_coeffs.push_back(
            rational_from_json(j["l_coeffs"][i], "/l_coeffs/" + std::to_string(i), violations));
      if (cfg.curve.l_coeffs.size() != 2 * cfg.curve.genus + 1)
        violations.push_back("/l_coeffs: must list exactly 2*genus+1 coefficients");
      if (!cfg.curve.l_coeffs.empty() && cfg.curve.l_coeffs[0] != 1)
        violations.push_back("/l_coeffs/0: leading coefficient must be 1");
    }
  }
  if (require(j, "punctures", "required field is missing", violations)) {
    if (!j["punctures"].is_array()) {
      violations.push_back("/punctures: expected a list");
    } else {
      for (std::size_t x = 0; x < j["punctures"].size(); ++x) {
        const Json& pj = j["punctures"][x];
        const std::string base = "/punctures/" + std::to_string(x);
        PunctureConfig pc;
        pc.id = "x" + std::to_string(x);
        if (!pj.is_object()) {
          violations.push_back(base + ": expected an object");
          continue;
        }
        if (pj.contains("id") && pj["id"].is_string()) pc.id = pj["id"].get<std::string>();
        if (!pj.contains("order") || !pj["order"].is_number_integer() ||
            pj["order"].get<long long>() < 1) {
          violations.push_back(base + "/order: order must be positive");
          continue;
        }
        pc.order = pj["order"].get<unsigned>();
        if (!pj.contains("principal_parts") || !pj["principal_parts"].is_array() ||
            pj["principal_parts"].empty()) {
          violations.push_back(base +
                               "/principal_parts: each parabolic level needs a principal part");
          continue;
        }
        for (std::size_t lev = 0; lev < pj["principal_parts"].size(); ++lev) {
          const Json& row = pj["principal_parts"][lev];
          const std::string rp = base + "/principal_parts/" + std::to_string(lev);
          std::vector<Rat> entries;
          if (!row.is_array() || row.size() != pc.order) {
            violations.push_back(rp + ": principal part must list exactly one coefficient per "
                                      "pole order");
            entries.assign(pc.order, Rat(0));
          } else {
            for (std::size_t c = 0; c < row.size(); ++c)
              entries.push_back(
                  rational_from_json(row[c], rp + "/" + std::to_string(c), violations));
          }
          pc.principal_parts.push_back(std::move(entries));
        }
        if (!pj.contains("weights") || !pj["weights"].is_array()) {
          violations.push_back(base + "/weights: expected a list of rationals");
          continue;
        }
        for (std::size_t c = 0; c < pj["weights"].size(); ++c)
          pc.weights.push_back(rational_from_json(
              pj["weights"][c], base + "/weights/" + std::to_string(c), violations));
        if (pc.weights.size() != pc.principal_parts.size()) {
          violations.push_back(base + "/weights: each parabolic level needs a principal part "
                                      "and a weight");
          continue;
        }
        for (std::size_t c = 1; c < pc.weights.size(); ++c)
          if (pc.weights[c] < pc.weights[c - 1]) {
            violations.push_back(base + "/weights: weights must be weakly increasing");
            break;
          }
        if (!pc.weights.empty() && pc.weights.back() >= pc.weights.front() + 1)
          violations.push_back(base +
                               "/weights: weights must stay within one period of the first "
                               "weight");
        cfg.punctures.push_back(std::move(pc));
      }
    }
  }
  if (require(j, "epsilon", "required field is missing", violations))
    cfg.epsilon = rational_from_json(j["epsilon"], "/epsilon", violations);
  if (require(j, "trunc", "required field is missing", violations)) {
    const Json& t = j["trunc"];
    if (!t.is_object() || !t.contains("r_max") || !t.contains("z_max")) {
      violations.push_back("/trunc: expected {r_max, z_max}");
    } else {
      if (!t["r_max"].is_number_integer() || t["r_max"].get<long long>() < 1)
        violations.push_back("/trunc/r_max: expected a positive integer");
      else
        cfg.trunc.r_max = t["r_max"].get<unsigned>();
      if (!t["z_max"].is_number_integer() || t["z_max"].get<long long>() < 1)
        violations.push_back("/trunc/z_max: z_max must be at least 1");
      else
        cfg.trunc.z_max = t["z_max"].get<unsigned>();
    }
  }
  if (j.contains("guard")) {
    if (!j["guard"].is_number_integer() || j["guard"].get<long long>() < 1)
      violations.push_back("/guard: guard must satisfy 1 <= guard <= z_max");
    else
      cfg.guard = j["guard"].get<unsigned>();
  }
  if (violations.empty() && cfg.guard > cfg.trunc.z_max)
    violations.push_back("/guard: guard must satisfy 1 <= guard <= z_max");
  return cfg;
}

TorusInput torus_input_from_json(const Json& j, std::vector<std::string>& violations) {
  TorusInput in;
  if (!j.is_object()) {
    violations.push_back(": torus element must be a JSON object");
    return in;
  }
  unsigned rank = 0;
  if (require(j, "rank", "required field is missing", violations)) {
    if (!j["rank"].is_number_integer() || j["rank"].get<long long>() < 1)
      violations.push_back("/rank: expected a positive integer");
    else
      rank = j["rank"].get<unsigned>();
  }
  in.lattice.rank = rank;
  if (require(j, "skew_form", "required field is missing", violations)) {
    const Json& m = j["skew_form"];
    bool ok = m.is_array() && m.size() == rank;
    if (ok)
      for (const Json& row : m) ok = ok && row.is_array() && row.size() == rank;
    if (!ok) {
      violations.push_back("/skew_form: skew form must be a rank x rank matrix");
    } else {
      for (const Json& row : m) {
        std::vector<long> r;
        for (const Json& v : row) {
          if (!v.is_number_integer()) {
            violations.push_back("/skew_form: entries must be integers");
            return in;
          }
          r.push_back(v.get<long>());
        }
        in.lattice.skew_form.push_back(std::move(r));
      }
      try {
        in.lattice.validate();
      } catch (const Error& e) {
        violations.push_back(std::string("/skew_form: ") + e.what());
      }
    }
  }
  unsigned window = 0;
  if (j.contains("window")) {
    if (!j["window"].is_number_integer() || j["window"].get<long long>() < 0)
      violations.push_back("/window: expected a nonnegative integer");
    else
      window = j["window"].get<unsigned>();
  }
  std::vector<std::pair<LatticeVector, FractionCoeff>> parsed;
  if (require(j, "terms", "required field is missing", violations) && j["terms"].is_array()) {
    for (std::size_t i = 0; i < j["terms"].size(); ++i) {
      const Json& rec = j["terms"][i];
      const std::string base = "/terms/" + std::to_string(i);
      if (!rec.is_object() || !rec.contains("vector") || !rec.contains("coeff")) {
        violations.push_back(base + ": expected {vector, coeff}");
        continue;
      }
      LatticeVector v;
      if (!rec["vector"].is_array() || rec["vector"].size() != rank) {
        violations.push_back(base + "/vector: lattice vector has wrong rank");
        continue;
      }
      for (const Json& e : rec["vector"]) {
        if (!e.is_number_integer()) {
          violations.push_back(base + "/vector: entries must be integers");
          break;
        }
        v.push_back(e.get<long>());
      }
      if (v.size() != rank) continue;
      try {
        parsed.emplace_back(v, fraction_from_json(rec["coeff"], base + "/coeff"));
      } catch (const Error& e) {
        violations.push_back(e.what());
      }
    }
  }
  if (window == 0)
    for (const auto& [v, c] : parsed) {
      long n = 0;
      for (long e : v) n += e < 0 ? -e : e;
      window = std::max(window, static_cast<unsigned>(n));
    }
  in.element = TorusElement(window);
  for (const auto& [v, c] : parsed) in.element.add_term(v, c);
  return in;
}

} // namespace motivic
