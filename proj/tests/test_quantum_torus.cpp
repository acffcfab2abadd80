#include "doctest.h"

#include "motivic/plethystic.hpp"
#include "motivic/quantum_torus.hpp"
#include "test_util.hpp"

using namespace motivic;
using namespace testutil;

namespace {

ChargeLattice standard_lattice(long c = 1) {
  ChargeLattice lat;
  lat.rank = 2;
  lat.skew_form = {{0, c}, {-c, 0}};
  return lat;
}

TorusElement basis(const LatticeVector& v, unsigned window) {
  TorusElement e(window);
  e.add_term(v, FractionCoeff::one());
  return e;
}

FractionCoeff frac(const MotCoeff& n, const MotCoeff& d) { return FractionCoeff(n, d); }

} // namespace

TEST_SUITE("quantum_torus") {

TEST_CASE("lattice validation and pairing") {
  auto lat = standard_lattice();
  lat.validate();
  CHECK(lat.pair({1, 0}, {0, 1}) == 1);
  CHECK(lat.pair({0, 1}, {1, 0}) == -1);
  CHECK(lat.pair({2, 3}, {2, 3}) == 0);
  CHECK(lat.pair({1, 2}, {3, 4}) == 1 * 4 - 2 * 3);

  ChargeLattice bad;
  bad.rank = 2;
  bad.skew_form = {{0, 1}};
  expect_error([&] { bad.validate(); }, ErrorCode::Config,
               "skew form must be a rank x rank matrix");
  bad.skew_form = {{0, 1}, {1, 0}};
  expect_error([&] { bad.validate(); }, ErrorCode::Config, "skew form must be antisymmetric");
  expect_error([&] { lat.pair({1, 0, 0}, {0, 1}); }, ErrorCode::Precondition,
               "lattice vector has wrong rank");
}

TEST_CASE("central charge evaluation") {
  CentralCharge z;
  z.re = {Rat(1), Rat(0)};
  z.im = {Rat(1, 2), Rat(1)};
  auto [x, y] = z({2, 3});
  CHECK(x == Rat(2));
  CHECK(y == Rat(4));
  expect_error([&] { z({1}); }, ErrorCode::Precondition, "lattice vector has wrong rank");
}

TEST_CASE("twisted commutation relation") {
  auto lat = standard_lattice();
  auto e1 = basis({1, 0}, 4);
  auto e2 = basis({0, 1}, 4);
  auto ab = torus_mul(e1, e2, lat);
  auto ba = torus_mul(e2, e1, lat);

  CHECK(ab.coeff({1, 1}) == FractionCoeff::half_power(1));
  CHECK(ba.coeff({1, 1}) == FractionCoeff::half_power(-1));
  // e1 e2 = L e2 e1.
  CHECK(ab.coeff({1, 1}) == FractionCoeff::l_power(1) * ba.coeff({1, 1}));
}

TEST_CASE("unit and window clipping") {
  auto lat = standard_lattice();
  TorusElement a(3);
  a.add_term({1, 1}, FractionCoeff(MotCoeff::p_symbol(1)));
  a.add_term({-1, 0}, frac(MotCoeff::one(), MotCoeff::l_power(1) - MotCoeff::one()));

  CHECK(torus_mul(TorusElement::unit(2, 3), a, lat) == a);
  CHECK(torus_mul(a, TorusElement::unit(2, 3), lat) == a);

  // (1,1) + (1,1) leaves the window |v|_1 <= 3, (1,1) + (-1,0) stays.
  auto sq = torus_mul(a, a, lat);
  CHECK(sq.coeff({2, 2}).is_zero());
  CHECK_FALSE(sq.coeff({0, 1}).is_zero());
}

TEST_CASE("associativity on mixed elements") {
  auto lat = standard_lattice(2);
  TorusElement a(6), b(6), c(6);
  a.add_term({1, 0}, FractionCoeff(MotCoeff::l_power(1)));
  a.add_term({0, 1}, FractionCoeff(Rat(3)));
  b.add_term({1, 1}, frac(MotCoeff::p_symbol(2), MotCoeff::l_power(1) + MotCoeff::one()));
  b.add_term({-1, 0}, FractionCoeff::half_power(3));
  c.add_term({0, -1}, FractionCoeff(MotCoeff::jac_symbol()));
  c.add_term({1, -1}, FractionCoeff(Rat(1, 2)));

  CHECK(torus_mul(torus_mul(a, b, lat), c, lat) == torus_mul(a, torus_mul(b, c, lat), lat));
}

TEST_CASE("ray extraction inverts the exponential") {
  auto lat = standard_lattice();
  const LatticeVector dir = {1, -1};
  std::vector<FractionCoeff> omega = {
      FractionCoeff(MotCoeff::l_power(1)),
      frac(MotCoeff::one(), MotCoeff::l_power(1) - MotCoeff::one()),
      FractionCoeff(MotCoeff::p_symbol(2).mul_lpoly(LPoly::l_power(-1))),
  };

  // Build Exp(sum_k omega_k e_{k dir} / (1 - L^-1)) through the univariate
  // detour the extraction itself uses.
  SeriesShape shape;
  GradedSeries<FractionCoeff> s(shape, Truncation{3, 0});
  FractionCoeff reg(MotCoeff::one(), MotCoeff::one() - MotCoeff::l_power(-1));
  for (unsigned k = 1; k <= 3; ++k)
    s.add_term(MonomialIndex(shape, k, 0), omega[k - 1] * reg);
  auto ex = pleth_exp(s);

  TorusElement A(6);
  for (const auto& [m, coeff] : ex.terms()) {
    LatticeVector v(dir.size());
    for (std::size_t i = 0; i < dir.size(); ++i)
      v[i] = dir[i] * static_cast<long>(m.rank());
    A.add_term(v, coeff);
  }

  auto out = dt_extract_ray(A, lat);
  REQUIRE(out.size() == 3);
  for (unsigned k = 1; k <= 3; ++k) {
    LatticeVector v = {static_cast<long>(k), -static_cast<long>(k)};
    REQUIRE(out.count(v) == 1);
    CHECK(out.at(v) == omega[k - 1]);
  }
}

TEST_CASE("ray extraction rejects bad supports") {
  auto lat = standard_lattice();
  TorusElement two_rays(4);
  two_rays.add_term(LatticeVector{0, 0}, FractionCoeff::one());
  two_rays.add_term(LatticeVector{1, 0}, FractionCoeff::one());
  two_rays.add_term(LatticeVector{0, 1}, FractionCoeff::one());
  expect_error([&] { dt_extract_ray(two_rays, lat); }, ErrorCode::Precondition,
               "not supported on a single ray");

  TorusElement mixed_signs(4);
  mixed_signs.add_term(LatticeVector{1, 1}, FractionCoeff::one());
  mixed_signs.add_term(LatticeVector{-1, -1}, FractionCoeff::one());
  expect_error([&] { dt_extract_ray(mixed_signs, lat); }, ErrorCode::Precondition,
               "not supported on a single ray");

  TorusElement bad_const(4);
  bad_const.add_term(LatticeVector{0, 0}, FractionCoeff(Rat(2)));
  expect_error([&] { dt_extract_ray(bad_const, lat); }, ErrorCode::Precondition,
               "Log requires constant term 1");

  // The empty element extracts to the empty invariant map.
  CHECK(dt_extract_ray(TorusElement::unit(2, 4), lat).empty());
}

TEST_CASE("sector products") {
  auto lat = standard_lattice();
  auto a = basis({1, 1}, 4);
  auto b = basis({1, -1}, 4);

  expect_error([&] { sector_factorize({}, lat); }, ErrorCode::Precondition,
               "sector product needs at least one ray");
  expect_error([&] { sector_factorize({{a, Ray{Rat(0), Rat(0)}}}, lat); },
               ErrorCode::Precondition, "ray direction must be nonzero");
  expect_error(
      [&] {
        sector_factorize({{b, Ray{Rat(1), Rat(-1)}}, {a, Ray{Rat(1), Rat(1)}}}, lat);
      },
      ErrorCode::Precondition, "rays out of clockwise order");

  // Clockwise from (1,1) to (1,-1) is accepted and multiplies in order.
  auto prod = sector_factorize({{a, Ray{Rat(1), Rat(1)}}, {b, Ray{Rat(1), Rat(-1)}}}, lat);
  CHECK(prod == torus_mul(a, b, lat));
  CHECK(prod.coeff({2, 0}) == FractionCoeff::half_power(-2));
}

TEST_CASE("commutative case is order independent") {
  ChargeLattice flat;
  flat.rank = 2;
  flat.skew_form = {{0, 0}, {0, 0}};
  TorusElement a(5), b(5);
  a.add_term({1, 0}, FractionCoeff(MotCoeff::l_power(2)));
  a.add_term({1, 1}, FractionCoeff(Rat(5, 7)));
  b.add_term({0, 1}, FractionCoeff(MotCoeff::p_symbol(1)));
  b.add_term({2, 0}, FractionCoeff::half_power(1));
  CHECK(torus_mul(a, b, flat) == torus_mul(b, a, flat));
}

} // TEST_SUITE
