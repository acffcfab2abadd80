#include "doctest.h"

#include "motivic/json_io.hpp"
#include "motivic/lpoly.hpp"
#include "motivic/mot_coeff.hpp"
#include "motivic/graded_series.hpp"
#include "motivic/plethystic.hpp"
#include "motivic/rational.hpp"

#include "test_util.hpp"

#include <utility>
#include <vector>

using namespace motivic;
using testutil::expect_error;

namespace {

GradedSeries<FractionCoeff> rank_series(unsigned r_max, unsigned z_max = 0) {
  return GradedSeries<FractionCoeff>(SeriesShape{}, Truncation{r_max, z_max});
}

MonomialIndex rz(unsigned r, unsigned z = 0) { return MonomialIndex(SeriesShape{}, r, z); }

} // namespace

TEST_SUITE("foundation") {

TEST_CASE("rational parsing accepts integers and fractions") {
  CHECK(parse_rational("3/4") == Rat(3) / Rat(4));
  CHECK(parse_rational("-7") == Rat(-7));
  CHECK(parse_rational("+4") == Rat(4));
  CHECK(parse_rational("0") == Rat(0));
  CHECK(is_integer(parse_rational("10/5")));
}

TEST_CASE("rational parsing rejects malformed input") {
  expect_error([] { parse_rational(""); }, ErrorCode::Config, "empty rational literal");
  expect_error([] { parse_rational("1/0"); }, ErrorCode::Config, "zero denominator");
  expect_error([] { parse_rational("x"); }, ErrorCode::Config, "bad rational literal");
  expect_error([] { parse_rational("1/2/3"); }, ErrorCode::Config, "bad rational literal");
  expect_error([] { parse_rational("3/"); }, ErrorCode::Config, "bad rational literal");
  expect_error([] { parse_rational("-"); }, ErrorCode::Config, "bad rational literal");
}

TEST_CASE("Laurent polynomial arithmetic in the half-power variable") {
  LPoly s = LPoly::monomial(1);
  LPoly L = LPoly::l_power(1);
  CHECK(s * s == L);
  CHECK(LPoly::l_power(2) * LPoly::l_power(3) == LPoly::l_power(5));
  CHECK(LPoly::l_power(-1) * LPoly::l_power(1) == LPoly(Rat(1)));

  LPoly a = s + LPoly(Rat(1));
  LPoly b = s - LPoly(Rat(1));
  CHECK(a * b == L - LPoly(Rat(1)));

  CHECK((s + LPoly::monomial(3)).adams(2) == LPoly::monomial(2) + LPoly::monomial(6));
  CHECK(LPoly::monomial(-1).adams(3) == LPoly::monomial(-3));

  // (s^2 - s) at s = 2.
  CHECK((L - s).eval(Rat(2)) == Rat(2));
  expect_error([&] { LPoly::monomial(-2).eval(Rat(0)); }, ErrorCode::Precondition,
               "zero denominator");
}

TEST_CASE("Laurent polynomial gcd and exact division") {
  LPoly s = LPoly::monomial(1);
  LPoly s2m1 = LPoly::l_power(1) - LPoly(Rat(1));       // (s-1)(s+1)
  LPoly s3ms2 = LPoly::monomial(3) - LPoly::l_power(1); // s^2 (s-1)
  CHECK(LPoly::gcd(s2m1, s3ms2) == s - LPoly(Rat(1)));

  auto q = LPoly::divide_exact(s2m1, s + LPoly(Rat(1)));
  REQUIRE(q.has_value());
  CHECK(*q == s - LPoly(Rat(1)));
  CHECK_FALSE(LPoly::divide_exact(s2m1, s + LPoly(Rat(2))).has_value());
  expect_error([&] { LPoly::divide_exact(s2m1, LPoly()); }, ErrorCode::Precondition,
               "zero denominator");
}

TEST_CASE("coefficient ring multiplication is commutative and distributive") {
  MotCoeff p1 = MotCoeff::p_symbol(1);
  MotCoeff p2 = MotCoeff::p_symbol(2);
  MotCoeff jac = MotCoeff::jac_symbol();
  CHECK(p1 * p2 == p2 * p1);
  CHECK((p1 + jac) * (p1 + jac) == p1 * p1 + (p1 * jac).scaled(Rat(2)) + jac * jac);
  CHECK((p1 + p2) * jac == p1 * jac + p2 * jac);
  CHECK((p1 - p1).is_zero());
  CHECK(MotCoeff::l_power(1) * MotCoeff::l_power(-1) == MotCoeff::one());
}

TEST_CASE("Adams operations act on symbols and compose") {
  MotCoeff p1 = MotCoeff::p_symbol(1);
  CHECK(p1.adams(3) == MotCoeff::p_symbol(3));
  CHECK(MotCoeff::half_power(1).adams(2) == MotCoeff::l_power(1));
  MotCoeff mixed = p1 * MotCoeff::half_power(1) + MotCoeff::p_symbol(2);
  CHECK(mixed.adams(2).adams(3) == mixed.adams(6));
  CHECK(mixed.adams(1) == mixed);
  expect_error([] { MotCoeff::jac_symbol().adams(2); }, ErrorCode::Precondition,
               "Adams operation not defined on the Jac symbol");
}

TEST_CASE("general linear group classes") {
  MotCoeff L = MotCoeff::l_power(1);
  CHECK(gl_class(1) == L - MotCoeff::one());
  MotCoeff expect2 = MotCoeff::l_power(4) - MotCoeff::l_power(3) - MotCoeff::l_power(2) + L;
  CHECK(gl_class(2) == expect2);

  auto r2 = gl_class(2).realize(testutil::point_count(Rat(2)));
  REQUIRE(r2.rational.has_value());
  CHECK(*r2.rational == Rat(6));
  auto r3 = gl_class(3).realize(testutil::point_count(Rat(2)));
  REQUIRE(r3.rational.has_value());
  CHECK(*r3.rational == Rat(168));
}

TEST_CASE("curve data validation and Newton power sums") {
  CurveData c = testutil::elliptic_fixture();
  auto p = c.power_sums(4);
  REQUIRE(p.size() == 4);
  CHECK(p[0] == Rat(2));
  CHECK(p[1] == Rat(-6));
  CHECK(p[2] == Rat(-22));
  CHECK(p[3] == Rat(-14));
  CHECK(c.l_at_one() == Rat(4));

  CurveData bad;
  bad.genus = 1;
  bad.l_coeffs = {Rat(1), Rat(-2)};
  expect_error([&] { bad.validate(); }, ErrorCode::Config, "2*genus+1");
  CurveData bad0;
  bad0.l_coeffs = {Rat(2)};
  expect_error([&] { bad0.validate(); }, ErrorCode::Config, "l_coeffs[0] must equal 1");
}

TEST_CASE("power sums match brute-force point counts of the fixture curve") {
  // The fixture numerator 1 - 2z + 5z^2 belongs to y^2 = x^3 + x over the
  // five-element field: its point counts over the base field and the
  // quadratic extension pin down the first two power sums.
  unsigned long n1 = 1; // point at infinity
  for (int x = 0; x < 5; ++x)
    for (int y = 0; y < 5; ++y)
      if ((y * y) % 5 == (x * x * x + x) % 5) ++n1;
  CHECK(n1 == 4);

  // The quadratic extension as pairs a + b*t with t^2 = 2 (2 is a nonsquare
  // modulo 5).
  auto mul = [](std::pair<int, int> u, std::pair<int, int> v) {
    int a = u.first, b = u.second, c = v.first, d = v.second;
    return std::make_pair(((a * c + 2 * b * d) % 5 + 5) % 5, ((a * d + b * c) % 5 + 5) % 5);
  };
  auto add = [](std::pair<int, int> u, std::pair<int, int> v) {
    return std::make_pair((u.first + v.first) % 5, (u.second + v.second) % 5);
  };
  unsigned long n2 = 1;
  for (int xa = 0; xa < 5; ++xa)
    for (int xb = 0; xb < 5; ++xb)
      for (int ya = 0; ya < 5; ++ya)
        for (int yb = 0; yb < 5; ++yb) {
          auto x = std::make_pair(xa, xb), y = std::make_pair(ya, yb);
          auto lhs = mul(y, y);
          auto rhs = add(mul(mul(x, x), x), x);
          if (lhs == rhs) ++n2;
        }
  CHECK(n2 == 32);

  auto p = testutil::elliptic_fixture().power_sums(2);
  CHECK(Rat(5) + 1 - p[0] == Rat(static_cast<long>(n1)));
  CHECK(Rat(25) + 1 - p[1] == Rat(static_cast<long>(n2)));
}

TEST_CASE("point-count realization") {
  CurveData curve = testutil::elliptic_fixture();
  MotCoeff cls = MotCoeff::one() - MotCoeff::p_symbol(1) + MotCoeff::l_power(1);
  auto r = cls.realize(testutil::point_count(Rat(5), &curve));
  REQUIRE(r.rational.has_value());
  CHECK(*r.rational == Rat(4));

  auto jac = MotCoeff::jac_symbol().realize(testutil::point_count(Rat(5), &curve));
  CHECK(*jac.rational == Rat(4));

  expect_error([&] { MotCoeff::half_power(3).realize(testutil::point_count(Rat(4))); },
               ErrorCode::Precondition, "half-integer weight not realizable");
  Realization withroot = testutil::point_count(Rat(4));
  withroot.sqrt_q = Rat(2);
  CHECK(*MotCoeff::half_power(3).realize(withroot).rational == Rat(8));

  expect_error([&] { MotCoeff::p_symbol(1).realize(testutil::point_count(Rat(5))); },
               ErrorCode::Precondition, "requires curve data");
}

TEST_CASE("E-polynomial realization") {
  CurveData curve = testutil::elliptic_fixture();
  MotCoeff cls = MotCoeff::one() - MotCoeff::p_symbol(1) + MotCoeff::l_power(1);
  auto r = cls.realize(testutil::e_polynomial(&curve));
  REQUIRE(r.epoly.has_value());
  BivarPoly expect;
  expect[{0, 0}] = Rat(1);
  expect[{1, 0}] = Rat(-1);
  expect[{0, 1}] = Rat(-1);
  expect[{1, 1}] = Rat(1);
  CHECK(*r.epoly == expect); // (1-u)(1-v)

  auto rj = MotCoeff::jac_symbol().realize(testutil::e_polynomial(&curve));
  CHECK(*rj.epoly == expect);

  expect_error([] { MotCoeff::l_power(-1).realize(testutil::e_polynomial()); },
               ErrorCode::Precondition, "negative powers of L");
  expect_error([] { MotCoeff::half_power(1).realize(testutil::e_polynomial()); },
               ErrorCode::Precondition, "half-integer weight not realizable");

  // (L^2 - 1)/(L - 1) divides out to uv + 1.
  FractionCoeff frac(MotCoeff::l_power(2) - MotCoeff::one(),
                     MotCoeff::l_power(1) - MotCoeff::one());
  auto fr = frac.realize(testutil::e_polynomial());
  BivarPoly expectq;
  expectq[{0, 0}] = Rat(1);
  expectq[{1, 1}] = Rat(1);
  CHECK(*fr.epoly == expectq);
}

TEST_CASE("Euler-characteristic realization") {
  CurveData g1 = testutil::elliptic_fixture();
  CurveData g0 = testutil::genus0_fixture();
  MotCoeff cls = MotCoeff::one() - MotCoeff::p_symbol(1) + MotCoeff::l_power(1);
  CHECK(*cls.realize(testutil::euler_char(&g1)).rational == Rat(0));
  CHECK(*MotCoeff::jac_symbol().realize(testutil::euler_char(&g1)).rational == Rat(0));
  CHECK(*MotCoeff::jac_symbol().realize(testutil::euler_char(&g0)).rational == Rat(1));
  CHECK(*MotCoeff::half_power(5).realize(testutil::euler_char()).rational == Rat(1));
}

TEST_CASE("fraction realization guards division") {
  FractionCoeff f(MotCoeff::one(), MotCoeff::l_power(1) - MotCoeff::one());
  expect_error([&] { f.realize(testutil::point_count(Rat(1))); }, ErrorCode::Precondition,
               "realization maps denominator to zero");
  CHECK(*f.realize(testutil::point_count(Rat(3))).rational == Rat(1) / Rat(2));
}

TEST_CASE("fraction normalization cancels polynomial content") {
  MotCoeff L = MotCoeff::l_power(1);
  // (L^2 - 1)/(L - 1) reduces to (L + 1)/1.
  FractionCoeff f(L * L - MotCoeff::one(), L - MotCoeff::one());
  CHECK(f.is_polynomial());
  CHECK(f.num() == L + MotCoeff::one());
  // Monomial denominators are units and get absorbed.
  FractionCoeff g(MotCoeff::p_symbol(1), MotCoeff::l_power(2));
  CHECK(g.is_polynomial());
  CHECK(g.num() == MotCoeff::p_symbol(1).mul_lpoly(LPoly::l_power(-2)));
  expect_error([&] { FractionCoeff(L, MotCoeff()); }, ErrorCode::Precondition,
               "zero denominator");
}

TEST_CASE("graded series ring operations and inversion") {
  auto s = rank_series(5);
  s.add_term(rz(0), FractionCoeff::one());
  s.add_term(rz(1), FractionCoeff(Rat(-1)));
  auto inv = s.invert(); // geometric series
  for (unsigned r = 0; r <= 5; ++r) CHECK(inv.coefficient_at(rz(r)) == FractionCoeff::one());
  CHECK((s * inv).terms() ==
        GradedSeries<FractionCoeff>::one(SeriesShape{}, Truncation{5, 0}).terms());

  auto zero_const = rank_series(3);
  zero_const.add_term(rz(1), FractionCoeff::one());
  expect_error([&] { zero_const.invert(); }, ErrorCode::Precondition, "series not invertible");

  expect_error([&] { s.coefficient_at(rz(6)); }, ErrorCode::Precondition, "beyond truncation");

  GradedSeries<FractionCoeff> other(SeriesShape{{2}}, Truncation{3, 0});
  expect_error([&] { auto t = s + other; (void)t; }, ErrorCode::Precondition,
               "series shapes do not match");
}

TEST_CASE("series inversion over the polynomial coefficient ring") {
  GradedSeries<MotCoeff> s(SeriesShape{}, Truncation{3, 0});
  s.add_term(rz(0), MotCoeff::l_power(1));
  s.add_term(rz(1), MotCoeff::l_power(1, Rat(-1)));
  auto inv = s.invert(); // L^-1 / (1 - w)
  for (unsigned r = 0; r <= 3; ++r) CHECK(inv.coefficient_at(rz(r)) == MotCoeff::l_power(-1));

  GradedSeries<MotCoeff> bad(SeriesShape{}, Truncation{3, 0});
  bad.add_term(rz(0), MotCoeff::p_symbol(1));
  expect_error([&] { bad.invert(); }, ErrorCode::Precondition, "series not invertible");
}

TEST_CASE("setting z to one requires a stabilized tail") {
  auto s = rank_series(2, 8);
  s.add_term(rz(1, 0), FractionCoeff::one());
  s.add_term(rz(1, 2), FractionCoeff(Rat(3)));
  s.add_term(rz(1, 4), FractionCoeff(Rat(-1)));
  auto v = s.evaluate_z_one(4);
  CHECK(v.coefficient_at(rz(1, 0)) == FractionCoeff(Rat(3)));

  expect_error([&] { s.evaluate_z_one(0); }, ErrorCode::Precondition,
               "guard must satisfy 1 <= guard <= z_max");
  expect_error([&] { s.evaluate_z_one(9); }, ErrorCode::Precondition,
               "guard must satisfy 1 <= guard <= z_max");

  auto tail = rank_series(2, 8);
  tail.add_term(rz(1, 7), FractionCoeff::one());
  expect_error([&] { tail.evaluate_z_one(4); }, ErrorCode::Stabilization,
               "z-series not stabilized; increase z_max");

  auto sliced = s.z_slice(2);
  CHECK(sliced.coefficient_at(rz(1, 0)) == FractionCoeff(Rat(3)));
  CHECK(sliced.coefficient_at(rz(1, 2)) == FractionCoeff());
}

TEST_CASE("plethystic exponential of a single variable is the full symmetric series") {
  auto w = rank_series(6);
  w.add_term(rz(1), FractionCoeff::one());
  auto e = pleth_exp(w);
  for (unsigned r = 0; r <= 6; ++r) CHECK(e.coefficient_at(rz(r)) == FractionCoeff::one());
}

TEST_CASE("plethystic log of the two-line product is linear") {
  // The series with r-th coefficient 1 + L + ... + L^r has logarithm (1+L)w.
  auto f = rank_series(5);
  for (unsigned r = 0; r <= 5; ++r) {
    MotCoeff acc;
    for (unsigned i = 0; i <= r; ++i) acc += MotCoeff::l_power(static_cast<int>(i));
    f.add_term(rz(r), FractionCoeff(acc));
  }
  auto lg = pleth_log(f);
  CHECK(lg.coefficient_at(rz(1)) ==
        FractionCoeff(MotCoeff::one() + MotCoeff::l_power(1)));
  for (unsigned r = 2; r <= 5; ++r) CHECK(lg.coefficient_at(rz(r)) == FractionCoeff());
  CHECK(lg.coefficient_at(rz(0)) == FractionCoeff());
}

TEST_CASE("plethystic operations are mutually inverse") {
  auto f = rank_series(4);
  f.add_term(rz(1), FractionCoeff::half_power(1));
  f.add_term(rz(2), FractionCoeff(MotCoeff::one(), MotCoeff::l_power(1) - MotCoeff::one()));
  f.add_term(rz(3), FractionCoeff(MotCoeff::p_symbol(2)));
  auto back = pleth_log(pleth_exp(f));
  CHECK(back.terms() == f.terms());
}

TEST_CASE("plethystic operations reject bad constant terms") {
  auto c1 = rank_series(3);
  c1.add_term(rz(0), FractionCoeff::one());
  expect_error([&] { pleth_exp(c1); }, ErrorCode::Precondition,
               "Exp requires augmentation-zero input");
  auto c0 = rank_series(3);
  c0.add_term(rz(1), FractionCoeff::one());
  expect_error([&] { pleth_log(c0); }, ErrorCode::Precondition, "Log requires constant term 1");
}

TEST_CASE("series-level Adams operation rescales the grading") {
  auto f = rank_series(4, 4);
  f.add_term(rz(1, 1), FractionCoeff(MotCoeff::p_symbol(1)));
  auto f2 = adams_series(f, 2);
  CHECK(f2.coefficient_at(rz(2, 2)) == FractionCoeff(MotCoeff::p_symbol(2)));
  CHECK(f2.coefficient_at(rz(1, 1)) == FractionCoeff());
  expect_error([&] { adams_series(f, 0); }, ErrorCode::Precondition,
               "Adams index must be positive");
}

TEST_CASE("JSON round trips for coefficients and fractions") {
  MotCoeff num = MotCoeff::p_symbol(1) * MotCoeff::p_symbol(1) * MotCoeff::jac_symbol();
  num = num.mul_lpoly(LPoly::monomial(-1)) - MotCoeff(Rat(3));
  MotCoeff den = MotCoeff::l_power(1) - MotCoeff::one();
  FractionCoeff f(num, den);
  auto j = fraction_to_json(f);
  auto back = fraction_from_json(j, "");
  CHECK(back == f);

  auto jm = motcoeff_to_json(num);
  CHECK(motcoeff_from_json(jm, "") == num);

  expect_error([&] { motcoeff_from_json(Json::object(), ""); }, ErrorCode::Config,
               "expected a list");
}

TEST_CASE("model configuration parses from JSON and collects violations") {
  Json doc;
  doc["genus"] = 1;
  doc["l_coeffs"] = {1, -2, 5};
  doc["epsilon"] = "1";
  doc["trunc"] = {{"r_max", 2}, {"z_max", 12}};
  doc["guard"] = 4;
  doc["punctures"] = Json::array();
  Json punct;
  punct["id"] = "x0";
  punct["order"] = 1;
  punct["principal_parts"] = {{"1/3"}, {"1/4"}};
  punct["weights"] = {"0", "1/2"};
  doc["punctures"].push_back(punct);

  std::vector<std::string> violations;
  ModelConfig cfg = model_config_from_json(doc, violations);
  CHECK(violations.empty());
  CHECK(cfg.curve.genus == 1);
  CHECK(cfg.epsilon == Rat(1));
  CHECK(cfg.trunc.r_max == 2);
  CHECK(cfg.punctures.size() == 1);
  CHECK(cfg.punctures[0].levels() == 2);
  CHECK(cfg.punctures[0].residue(0) == Rat(1) / Rat(3));
  CHECK(cfg.punctures[0].weights[1] == Rat(1) / Rat(2));

  doc["punctures"][0]["weights"] = {"1", "0"};
  violations.clear();
  model_config_from_json(doc, violations);
  bool found = false;
  for (const auto& v : violations)
    if (v.find("/punctures/0/weights") != std::string::npos) found = true;
  CHECK(found);
}

} // TEST_SUITE
