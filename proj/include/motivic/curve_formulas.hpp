#pragma once

#include "motivic/graded_series.hpp"
#include "motivic/mot_coeff.hpp"

namespace motivic {

// A surface entered only through its zeta series sum_n [Sym^n S] z^n.
struct SurfaceZeta {
  GradedSeries<MotCoeff> zeta;
};

// zeta series of the affine plane, 1/(1 - L^2 z), truncated at z_max.
SurfaceZeta a2_surface_zeta(unsigned z_max);

// Kapranov zeta expansion zeta_X(z) = sum_n [Sym^n X] z^n, computed as
// L_X(z) / ((1-z)(1-Lz)).
GradedSeries<MotCoeff> kapranov_zeta(const CurveData& curve, unsigned z_max);

// Class of the moduli stack of rank-r bundles on the curve:
//   L^{(r^2-1)(g-1)} [Jac] / (L-1) * prod_{i=2}^r zeta_X(L^{-i}).
FractionCoeff bun_class(const CurveData& curve, unsigned r);

// Hilbert-scheme generating series of a surface:
//   sum_n [Hilb_n(S)] z^n = prod_{m>=1} zeta_S(L^{m-1} z^m).
GradedSeries<MotCoeff> goettsche_series(const SurfaceZeta& surface, unsigned z_max);

} // namespace motivic
