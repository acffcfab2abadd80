#pragma once

#include "motivic/dt_engine.hpp"
#include "motivic/graded_series.hpp"
#include "motivic/mot_coeff.hpp"
#include "motivic/quantum_torus.hpp"

#include "json.hpp"

#include <string>
#include <vector>

namespace motivic {

using Json = nlohmann::ordered_json;

// Wire format for a coefficient: a list of monomial records
//   {"L_half_exponent": 2*exponent, "p_monomial": [n_1 <= n_2 <= ...],
//    "coeff": "a/b"}
// with an optional "jac_power" field when the Jacobian symbol occurs.
Json motcoeff_to_json(const MotCoeff& c);
MotCoeff motcoeff_from_json(const Json& j, const std::string& path);

// {"num": <coeff>, "den": <coeff>}
Json fraction_to_json(const FractionCoeff& f);
FractionCoeff fraction_from_json(const Json& j, const std::string& path);

// {"r": rank, "r_xj": [[...], ...]} for one monomial's discrete class.
Json gamma_to_json(const MonomialIndex& idx, const SeriesShape& shape);

// Series over the rank/puncture/z grading: a list of
//   {"gamma": {"r": rank, "r_xj": [[...], ...]}, "z": degree, "coeff": ...}.
Json series_to_json(const GradedSeries<FractionCoeff>& f);
// Single-variable series (no puncture data): {"z": n, "coeff": ...} records.
Json zseries_to_json(const GradedSeries<MotCoeff>& f);

// Exact rational from a JSON value: an integer or a string "a" / "a/b".
// Appends a violation message instead of throwing; returns 0 on failure.
Rat rational_from_json(const Json& j, const std::string& path,
                       std::vector<std::string>& violations);

// Model configuration (curve, punctures, epsilon, truncation, guard) from a
// JSON document.  Collects all schema violations, each prefixed with the
// JSON-pointer path of the offending value; valid iff `violations` stays
// empty.
ModelConfig model_config_from_json(const Json& j, std::vector<std::string>& violations);

// Torus element input for ray extraction:
//   {"rank": n, "skew_form": [[...]], "window": w,
//    "terms": [{"vector": [...], "coeff": <fraction>}]}
struct TorusInput {
  ChargeLattice lattice;
  TorusElement element;
};
TorusInput torus_input_from_json(const Json& j, std::vector<std::string>& violations);

} // namespace motivic
