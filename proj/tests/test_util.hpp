#pragma once

#include "doctest.h"

#include "motivic/mot_coeff.hpp"
#include "motivic/rational.hpp"

#include <functional>
#include <string>

namespace testutil {

// Runs fn and checks that it throws a motivic::Error with the given code
// whose message contains `needle`.
inline void expect_error(const std::function<void()>& fn, motivic::ErrorCode code,
                         const std::string& needle) {
  try {
    fn();
    FAIL_CHECK("expected an error containing \"" << needle << "\"");
  } catch (const motivic::Error& e) {
    CHECK(e.code() == code);
    if (std::string(e.what()).find(needle) == std::string::npos)
      FAIL_CHECK("error message \"" << e.what() << "\" does not contain \"" << needle << "\"");
  }
}

inline motivic::Realization point_count(const motivic::Rat& q,
                                        const motivic::CurveData* curve = nullptr) {
  motivic::Realization r;
  r.kind = motivic::Realization::Kind::PointCount;
  r.q = q;
  r.curve = curve;
  return r;
}

inline motivic::Realization e_polynomial(const motivic::CurveData* curve = nullptr) {
  motivic::Realization r;
  r.kind = motivic::Realization::Kind::EPolynomial;
  r.curve = curve;
  return r;
}

inline motivic::Realization euler_char(const motivic::CurveData* curve = nullptr) {
  motivic::Realization r;
  r.kind = motivic::Realization::Kind::EulerCharacteristic;
  r.curve = curve;
  return r;
}

// The genus-1 test curve with numerator 1 - 2z + 5z^2 (the curve
// y^2 = x^3 + x over the field with five elements).
inline motivic::CurveData elliptic_fixture() {
  motivic::CurveData c;
  c.genus = 1;
  c.l_coeffs = {motivic::Rat(1), motivic::Rat(-2), motivic::Rat(5)};
  return c;
}

inline motivic::CurveData genus0_fixture() { return motivic::CurveData{}; }

} // namespace testutil
