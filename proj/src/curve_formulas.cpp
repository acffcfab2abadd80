#include "motivic/curve_formulas.hpp"

namespace motivic {

namespace {

GradedSeries<MotCoeff> univariate(unsigned z_max) {
  return GradedSeries<MotCoeff>(SeriesShape{}, Truncation{0, z_max});
}

MonomialIndex z_index(unsigned z) { return MonomialIndex(SeriesShape{}, 0, z); }

} // namespace

SurfaceZeta a2_surface_zeta(unsigned z_max) {
  auto s = univariate(z_max);
  for (unsigned n = 0; n <= z_max; ++n)
    s.add_term(z_index(n), MotCoeff::l_power(static_cast<int>(2 * n)));
  return SurfaceZeta{s};
}

GradedSeries<MotCoeff> kapranov_zeta(const CurveData& curve, unsigned z_max) {
  curve.validate();
  auto numer = univariate(z_max);
  for (std::size_t i = 0; i < curve.l_coeffs.size(); ++i)
    numer.add_term(z_index(static_cast<unsigned>(i)), MotCoeff(curve.l_coeffs[i]));
  auto denom = univariate(z_max);
  denom.add_term(z_index(0), MotCoeff(Rat(1)));
  denom.add_term(z_index(1), -(MotCoeff(Rat(1)) + MotCoeff::l_power(1)));
  denom.add_term(z_index(2), MotCoeff::l_power(1));
  return numer * denom.invert();
}

FractionCoeff bun_class(const CurveData& curve, unsigned r) {
  curve.validate();
  if (r < 1) throw Error(ErrorCode::Precondition, "rank must be positive");
  const int g = static_cast<int>(curve.genus);
  const int ri = static_cast<int>(r);
  MotCoeff num = MotCoeff::l_power((ri * ri - 1) * (g - 1));
  num *= MotCoeff::jac_symbol();
  MotCoeff den = MotCoeff::l_power(1) - MotCoeff(Rat(1));
  for (int i = 2; i <= ri; ++i) {
    // zeta_X(L^-i) = L_X(L^-i) / ((1 - L^-i)(1 - L^{1-i})).
    LPoly lval;
    for (std::size_t j = 0; j < curve.l_coeffs.size(); ++j)
      lval += LPoly::l_power(-i * static_cast<int>(j), curve.l_coeffs[j]);
    num = num.mul_lpoly(lval);
    LPoly one = LPoly(Rat(1));
    den = den.mul_lpoly(one - LPoly::l_power(-i)).mul_lpoly(one - LPoly::l_power(1 - i));
  }
  return FractionCoeff(num, den);
}

GradedSeries<MotCoeff> goettsche_series(const SurfaceZeta& surface, unsigned z_max) {
  if (surface.zeta.coefficient_at(z_index(0)) != MotCoeff(Rat(1)))
    throw Error(ErrorCode::Precondition, "surface zeta series must have constant term 1");
  auto result = univariate(z_max);
  result.add_term(z_index(0), MotCoeff(Rat(1)));
  for (unsigned m = 1; m <= z_max; ++m) {
    // Substitute z -> L^{m-1} z^m into the zeta series.
    auto factor = univariate(z_max);
    for (unsigned k = 0; k * m <= z_max; ++k) {
      MotCoeff c = surface.zeta.coefficient_at(z_index(k));
      factor.add_term(z_index(k * m),
                      c.mul_lpoly(LPoly::l_power(static_cast<int>(k * (m - 1)))));
    }
    result = result * factor;
  }
  return result;
}

} // namespace motivic
