// Acceptance suite: each test case covers one numbered criterion and prints
// a single "[criterion N] PASS" / "[criterion N] FAIL" line for the harness,
// based on whether any assertion in the case failed.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "motivic/curve_formulas.hpp"
#include "motivic/dt_engine.hpp"
#include "motivic/oracles.hpp"
#include "motivic/plethystic.hpp"
#include "motivic/quantum_torus.hpp"
#include "motivic/symfunc.hpp"
#include "test_util.hpp"

#include <cstdio>
#include <exception>
#include <random>
#include <utility>
#include <vector>

using namespace motivic;
using namespace testutil;

namespace {

// Prints the verdict for one criterion when the enclosing scope exits; a
// criterion passes when no doctest assertion failed inside it and nothing is
// propagating out of it.
struct CriterionReport {
  int id;
  int failed_before;
  explicit CriterionReport(int n)
      : id(n), failed_before(doctest::detail::g_cs->numAssertsFailedCurrentTest_atomic) {}
  ~CriterionReport() {
    const int failed_now = doctest::detail::g_cs->numAssertsFailedCurrentTest_atomic;
    const bool ok = failed_now == failed_before && std::uncaught_exceptions() == 0;
    std::printf("[criterion %d] %s\n", id, ok ? "PASS" : "FAIL");
    std::fflush(stdout);
  }
};

MonomialIndex zi(unsigned z) { return MonomialIndex(SeriesShape{}, 0, z); }

MotCoeff l_minus_one() { return MotCoeff::l_power(1) - MotCoeff::one(); }

ModelConfig bare_config(const CurveData& curve, unsigned r_max, unsigned z_max, unsigned guard) {
  ModelConfig cfg;
  cfg.curve = curve;
  cfg.trunc = {r_max, z_max};
  cfg.guard = guard;
  return cfg;
}

// One regular marked point with a single parabolic level carrying the given
// residue.
ModelConfig one_puncture_config(const Rat& residue) {
  ModelConfig cfg = bare_config(genus0_fixture(), 1, 12, 4);
  PunctureConfig p;
  p.id = "x0";
  p.order = 1;
  p.principal_parts = {{residue}};
  p.weights = {Rat(0)};
  cfg.punctures = {p};
  return cfg;
}

Rat realized_value(const FractionCoeff& c, const Realization& r) {
  auto out = c.realize(r);
  REQUIRE(out.rational.has_value());
  return *out.rational;
}

} // namespace

TEST_CASE("criterion 1: bundle stack class against the splitting-type oracle") {
  CriterionReport report(1);
  CurveData line = genus0_fixture();
  FractionCoeff cls = bun_class(line, 2);
  for (unsigned q : {2u, 3u}) {
    Rat value = realized_value(cls, point_count(Rat(q), &line));
    auto oracle = bun_p1_weighted_count(0, q, 12);
    Rat diff = value - oracle.partial_sum;
    if (diff < 0) diff = -diff;
    CHECK(diff <= oracle.tail_bound);
    // The tail bound is an exact geometric tail, so the two sides agree on
    // the nose as well.
    CHECK(oracle.partial_sum + oracle.tail_bound == value);
    if (q == 2) CHECK(value == Rat(1, 3));
  }
}

TEST_CASE("criterion 2: ideal-count series of the affine plane") {
  CriterionReport report(2);
  auto hilb = goettsche_series(a2_surface_zeta(3), 3);
  CHECK(hilb.coefficient_at(zi(0)) == MotCoeff::one());
  CHECK(hilb.coefficient_at(zi(1)) == MotCoeff::l_power(2));
  CHECK(hilb.coefficient_at(zi(2)) == MotCoeff::l_power(4) + MotCoeff::l_power(3));
  CHECK(hilb.coefficient_at(zi(3)) ==
        MotCoeff::l_power(6) + MotCoeff::l_power(5) + MotCoeff::l_power(4));

  auto count_at = [&](unsigned n, unsigned q) {
    auto res = hilb.coefficient_at(zi(n)).realize(point_count(Rat(q)));
    REQUIRE(res.rational.has_value());
    return *res.rational;
  };
  CHECK(count_at(2, 2) == Rat(hilb_a2_bruteforce(2, 2)));
  CHECK(count_at(2, 3) == Rat(hilb_a2_bruteforce(2, 3)));
  CHECK(count_at(3, 2) == Rat(hilb_a2_bruteforce(3, 2)));
}

TEST_CASE("criterion 3: genus zero connections match inverse general linear classes") {
  CriterionReport report(3);
  auto cfg = bare_config(genus0_fixture(), 3, 20, 6);
  for (unsigned r = 1; r <= 3; ++r) {
    auto c = conn_class(cfg, GammaClass{r, {}, 0});
    CHECK(c == FractionCoeff(MotCoeff::one(), gl_class(r)));
  }
}

TEST_CASE("criterion 4: rank one connections on an elliptic curve") {
  CriterionReport report(4);
  CurveData curve = elliptic_fixture();
  auto cfg = bare_config(curve, 1, 12, 4);
  auto c = conn_class(cfg, GammaClass{1, {}, 0});
  auto expect = FractionCoeff(MotCoeff::l_power(1) * MotCoeff::jac_symbol(), l_minus_one());
  auto r = point_count(Rat(5), &curve);
  Rat got = realized_value(c, r);
  CHECK(got == realized_value(expect, r));
  CHECK(got == Rat(5));
}

TEST_CASE("criterion 5: one regular marked point in rank one") {
  CriterionReport report(5);
  auto expect = FractionCoeff(MotCoeff::one(), l_minus_one());
  // Integer residue -d' pairs with degree d' to satisfy the residue identity.
  CHECK(conn_ss_class(one_puncture_config(Rat(0)), GammaClass{1, {{1}}, 0}) == expect);
  CHECK(conn_ss_class(one_puncture_config(Rat(-1)), GammaClass{1, {{1}}, 1}) == expect);
  // A non-integer residue empties the stack.
  CHECK(conn_ss_class(one_puncture_config(Rat(1, 2)), GammaClass{1, {{1}}, 0}).is_zero());
  CHECK(conn_class(one_puncture_config(Rat(1, 3)), GammaClass{1, {{1}}, 0}).is_zero());
}

TEST_CASE("criterion 6: connections agree with semistable Higgs classes") {
  CriterionReport report(6);
  for (const CurveData& curve : {genus0_fixture(), elliptic_fixture()}) {
    auto cfg = bare_config(curve, 3, 12, 4);
    auto higgs = cfg;
    higgs.epsilon = Rat(0);
    for (unsigned r = 1; r <= 3; ++r) {
      GammaClass g{r, {}, 0};
      CHECK(conn_class(cfg, g) == conn_ss_class(higgs, g));
    }
  }
}

TEST_CASE("criterion 7: reduced log-series rows are polynomial in the grading variable") {
  CriterionReport report(7);
  // Marked-point variants: none, a regular point, and an order-two point
  // with two parabolic levels.
  PunctureConfig regular;
  regular.id = "x0";
  regular.order = 1;
  regular.principal_parts = {{Rat(1, 3)}};
  regular.weights = {Rat(0)};

  PunctureConfig irregular;
  irregular.id = "x0";
  irregular.order = 2;
  irregular.principal_parts = {{Rat(1), Rat(1, 3)}, {Rat(2), Rat(1, 4)}};
  irregular.weights = {Rat(0), Rat(1, 2)};

  const std::vector<std::vector<PunctureConfig>> divisors = {{}, {regular}, {irregular}};
  for (const CurveData& curve : {genus0_fixture(), elliptic_fixture()}) {
    for (const auto& punctures : divisors) {
      auto cfg = bare_config(curve, 3, 24, 6);
      cfg.punctures = punctures;
      cfg.validate();
      auto omega = omega_series(cfg);
      auto h = h_series(omega, cfg.curve.genus);
      auto rep = check_z_polynomiality(h, cfg.guard);
      CHECK(rep.all_pass);
      for (const auto& entry : rep.entries) CHECK(entry.pass);
    }
  }
}

TEST_CASE("criterion 8: two-parameter symmetric families against the inner-product oracle") {
  CriterionReport report(8);
  std::vector<Partition> mus;
  for (unsigned n = 1; n <= 4; ++n)
    for (const auto& p : Partition::all_of_size(n)) mus.push_back(p);
  for (const auto& mu : mus)
    for (unsigned nvars = 1; nvars <= 4; ++nvars)
      CHECK(modified_macdonald(mu, nvars) == macdonald_oracle(mu, nvars));
  // Conjugating the partition swaps the two parameters.
  for (const auto& mu : mus)
    CHECK(modified_macdonald(mu, 4).qt_swapped() == modified_macdonald(mu.conjugate(), 4));
}

TEST_CASE("criterion 9: plethystic exponential laws on randomized series") {
  CriterionReport report(9);
  std::mt19937 rng(20260822u);
  auto rnd = [&](unsigned m) { return static_cast<unsigned>(rng() % m); };
  auto rand_rat = [&]() {
    long num = static_cast<long>(rnd(9)) - 4;
    if (num == 0) num = 1;
    return Rat(num, 1 + static_cast<long>(rnd(3)));
  };
  auto rand_coeff = [&]() {
    MotCoeff c;
    unsigned nterms = 1 + rnd(2);
    for (unsigned i = 0; i < nterms; ++i) {
      MotCoeff t = MotCoeff::half_power(static_cast<int>(rnd(5)) - 2, rand_rat());
      if (rnd(3) == 0) t = t * MotCoeff::p_symbol(1 + rnd(2));
      c = c + t;
    }
    return c;
  };
  SeriesShape shape;
  auto rand_series = [&]() {
    GradedSeries<MotCoeff> f(shape, Truncation{0, 6});
    unsigned nterms = 1 + rnd(3);
    for (unsigned i = 0; i < nterms; ++i) f.add_term(zi(1 + rnd(6)), rand_coeff());
    return f;
  };

  for (int trial = 0; trial < 50; ++trial) {
    auto f = rand_series();
    CHECK(pleth_log(pleth_exp(f)).terms() == f.terms());
  }
  for (int trial = 0; trial < 50; ++trial) {
    auto f = rand_series();
    auto g = rand_series();
    CHECK(pleth_exp(f + g).terms() == (pleth_exp(f) * pleth_exp(g)).terms());
  }
  for (int trial = 0; trial < 50; ++trial) {
    auto f = rand_series();
    unsigned k = 1 + rnd(3);
    unsigned m = 1 + rnd(3);
    CHECK(adams_series(adams_series(f, k), m).terms() == adams_series(f, k * m).terms());
  }
}

TEST_CASE("criterion 10: nilpotent matrix counts over small fields") {
  CriterionReport report(10);
  auto c22 = count_nilpotent_types(2, 2);
  REQUIRE(c22.by_type.size() == 2);
  CHECK(c22.by_type.at(Partition({1, 1})) == 1);
  CHECK(c22.by_type.at(Partition({2})) == 3);

  const std::vector<std::pair<unsigned, unsigned>> grid = {{1, 2}, {1, 3}, {2, 2}, {2, 3},
                                                           {3, 2}, {3, 3}, {4, 2}};
  for (auto [d, q] : grid) {
    unsigned long expect = 1;
    for (unsigned i = 0; i < d * d - d; ++i) expect *= q;
    CHECK(count_nilpotent_types(d, q).total == expect);
  }
}

TEST_CASE("criterion 11: submodule counts against one-parameter structure constants") {
  CriterionReport report(11);
  std::vector<Partition> small;
  for (unsigned n = 0; n <= 3; ++n)
    for (const auto& p : Partition::all_of_size(n)) small.push_back(p);
  for (unsigned q : {2u, 3u})
    for (const auto& lam : small)
      for (const auto& mu : small)
        for (const auto& nu : small)
          if (mu.size() + nu.size() == lam.size())
            CHECK(hall_number_from_hl(lam, mu, nu, Rat(q)) ==
                  Rat(hall_numbers_bruteforce(lam, mu, nu, q)));
}

TEST_CASE("criterion 12: twisted torus algebra laws") {
  CriterionReport report(12);
  std::mt19937 rng(0x5eed22u);
  auto rnd = [&](unsigned m) { return static_cast<unsigned>(rng() % m); };
  auto rand_frac = [&]() {
    switch (rnd(5)) {
      case 0: return FractionCoeff::l_power(static_cast<int>(rnd(5)) - 2);
      case 1: return FractionCoeff::half_power(2 * static_cast<int>(rnd(3)) - 1);
      case 2: return FractionCoeff(MotCoeff::one(), l_minus_one());
      case 3: return FractionCoeff(MotCoeff::p_symbol(1 + rnd(2)));
      default: return FractionCoeff(MotCoeff::jac_symbol());
    }
  };
  auto rand_element = [&](unsigned window) {
    TorusElement e(window);
    unsigned nterms = 1 + rnd(3);
    for (unsigned i = 0; i < nterms; ++i) {
      LatticeVector v = {static_cast<long>(rnd(3)) - 1, static_cast<long>(rnd(3)) - 1};
      e.add_term(v, rand_frac());
    }
    return e;
  };

  ChargeLattice lat{2, {{0, 2}, {-2, 0}}};
  lat.validate();
  // Window 12 keeps every product of three |.|_1 <= 2 supports un-clipped.
  for (int trial = 0; trial < 30; ++trial) {
    auto a = rand_element(12);
    auto b = rand_element(12);
    auto c = rand_element(12);
    CHECK(torus_mul(torus_mul(a, b, lat), c, lat) == torus_mul(a, torus_mul(b, c, lat), lat));
  }

  // Ray round trip: feed Exp of a randomized ray-supported element through
  // the extraction and recover the inputs.  The exponential needs Adams
  // operations, so these coefficients stay in the lambda-ring part of the
  // coefficient ring (no Jac symbol).
  auto rand_adams_frac = [&]() {
    switch (rnd(4)) {
      case 0: return FractionCoeff::l_power(static_cast<int>(rnd(5)) - 2);
      case 1: return FractionCoeff::half_power(2 * static_cast<int>(rnd(3)) - 1);
      case 2: return FractionCoeff(MotCoeff::one(), l_minus_one());
      default: return FractionCoeff(MotCoeff::p_symbol(1 + rnd(2)));
    }
  };
  for (int trial = 0; trial < 10; ++trial) {
    const LatticeVector dir = {1, -1};
    std::vector<FractionCoeff> omega;
    for (unsigned k = 0; k < 3; ++k) omega.push_back(rand_adams_frac());
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
      CHECK(out.at(v) == omega[k - 1]);
    }
  }

  // With a zero pairing the product is order-independent.
  ChargeLattice flat{2, {{0, 0}, {0, 0}}};
  for (int trial = 0; trial < 30; ++trial) {
    auto a = rand_element(12);
    auto b = rand_element(12);
    auto c = rand_element(12);
    auto left = torus_mul(torus_mul(a, b, flat), c, flat);
    auto right = torus_mul(c, torus_mul(b, a, flat), flat);
    CHECK(left == right);
  }
}
