#pragma once

#include "motivic/graded_series.hpp"

namespace motivic {

namespace detail {

inline int moebius(unsigned n) {
  int m = 1;
  for (unsigned p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      m = -m;
    }
  }
  if (n > 1) m = -m;
  return m;
}

} // namespace detail

// psi_k on a series: multiplies every monomial exponent (w, puncture
// variables, and z) by k and applies the coefficient-level Adams operation.
// Terms pushed outside the truncation window are dropped.
template <class C>
GradedSeries<C> adams_series(const GradedSeries<C>& f, unsigned k) {
  if (k == 0) throw Error(ErrorCode::Precondition, "Adams index must be positive");
  if (k == 1) return f;
  GradedSeries<C> r(f.shape(), f.trunc());
  for (const auto& [m, c] : f.terms()) {
    MonomialIndex sm = m.scaled(k);
    if (!r.in_window(sm)) continue;
    r.add_term(sm, adams_coeff(c, k));
  }
  return r;
}

namespace detail {

// Ordinary exp of a series with zero constant term.
template <class C>
GradedSeries<C> series_exp(const GradedSeries<C>& g) {
  GradedSeries<C> acc = GradedSeries<C>::one(g.shape(), g.trunc());
  GradedSeries<C> term = GradedSeries<C>::one(g.shape(), g.trunc());
  unsigned n = 0;
  while (true) {
    ++n;
    term *= g;
    term = term.scalar_mul(C(Rat(1) / Rat(n)));
    if (term.is_zero()) break;
    acc += term;
  }
  return acc;
}

// Ordinary log of a series with constant term 1.
template <class C>
GradedSeries<C> series_log(const GradedSeries<C>& f) {
  GradedSeries<C> u = f - GradedSeries<C>::one(f.shape(), f.trunc());
  GradedSeries<C> acc(f.shape(), f.trunc());
  GradedSeries<C> pw = GradedSeries<C>::one(f.shape(), f.trunc());
  unsigned n = 0;
  while (true) {
    ++n;
    pw *= u;
    if (pw.is_zero()) break;
    Rat c = (n % 2 == 1) ? Rat(1) / Rat(n) : Rat(-1) / Rat(n);
    acc += pw.scalar_mul(C(c));
  }
  return acc;
}

template <class C>
unsigned adams_bound(const GradedSeries<C>& f) {
  // psi_k annihilates every term once k exceeds each positive exponent
  // budget; max(r_max, z_max) is a safe global bound.
  return std::max(f.trunc().r_max, f.trunc().z_max);
}

} // namespace detail

// Plethystic exponential Exp(f) = exp(sum_k psi_k(f)/k) for f with zero
// constant term.
template <class C>
GradedSeries<C> pleth_exp(const GradedSeries<C>& f) {
  if (!f.constant_term().is_zero())
    throw Error(ErrorCode::Precondition, "Exp requires augmentation-zero input");
  GradedSeries<C> g = f;
  for (unsigned k = 2; k <= detail::adams_bound(f); ++k) {
    GradedSeries<C> fk = adams_series(f, k);
    if (fk.is_zero()) continue;
    g += fk.scalar_mul(C(Rat(1) / Rat(k)));
  }
  return detail::series_exp(g);
}

// Plethystic logarithm Log(f) = sum_k (mu(k)/k) psi_k(log f) for f with
// constant term 1.  Inverse of pleth_exp on the truncation window.
template <class C>
GradedSeries<C> pleth_log(const GradedSeries<C>& f) {
  C c0 = f.constant_term();
  if (!(c0 == C(Rat(1))))
    throw Error(ErrorCode::Precondition, "Log requires constant term 1");
  GradedSeries<C> lg = detail::series_log(f);
  GradedSeries<C> acc = lg;
  for (unsigned k = 2; k <= detail::adams_bound(f); ++k) {
    int mu = detail::moebius(k);
    if (mu == 0) continue;
    GradedSeries<C> lk = adams_series(lg, k);
    if (lk.is_zero()) continue;
    acc += lk.scalar_mul(C(Rat(mu) / Rat(k)));
  }
  return acc;
}

} // namespace motivic
