#pragma once

#include "motivic/lpoly.hpp"

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace motivic {

// Numeric description of a smooth projective curve: its genus and the 2g+1
// exact rational coefficients b_0..b_2g of the degree-2g polynomial
// L(z) = sum b_i z^i with b_0 = 1 (the numerator of the zeta function).
struct CurveData {
  unsigned genus = 0;
  std::vector<Rat> l_coeffs = {Rat(1)};

  void validate() const;

  // Power sums p_1..p_n of the inverse roots of L, via Newton's identities.
  std::vector<Rat> power_sums(unsigned n_max) const;

  // L(1): the point-count realization of the Jacobian symbol.
  Rat l_at_one() const;
};

// Monomial in the polynomial generators: a power of the opaque Jacobian
// symbol times a multiset of power-sum symbols p_n (sorted indices, with
// multiplicity).  The empty key is the constant monomial.
struct SymKey {
  unsigned jac = 0;
  std::vector<unsigned> ps;

  bool is_constant() const { return jac == 0 && ps.empty(); }
  bool operator==(const SymKey& o) const { return jac == o.jac && ps == o.ps; }
  bool operator<(const SymKey& o) const {
    if (jac != o.jac) return jac < o.jac;
    return ps < o.ps;
  }
  SymKey merged(const SymKey& o) const {
    SymKey r;
    r.jac = jac + o.jac;
    r.ps.resize(ps.size() + o.ps.size());
    std::merge(ps.begin(), ps.end(), o.ps.begin(), o.ps.end(), r.ps.begin());
    return r;
  }
};

// Bivariate polynomial in u, v over the rationals; the value space of the
// E-polynomial realization.
using BivarPoly = std::map<std::pair<int, int>, Rat>;

BivarPoly bivar_mul(const BivarPoly& a, const BivarPoly& b);
BivarPoly bivar_add(const BivarPoly& a, const BivarPoly& b);
BivarPoly bivar_scale(const BivarPoly& a, const Rat& c);
// Exact division; empty optional if b does not divide a.
std::optional<BivarPoly> bivar_divide_exact(const BivarPoly& a, const BivarPoly& b);
std::string bivar_to_string(const BivarPoly& a);

// Realization homomorphisms out of the coefficient ring.
struct Realization {
  enum class Kind { PointCount, EPolynomial, EulerCharacteristic, Symbolic };
  Kind kind = Kind::Symbolic;
  Rat q = Rat(0);                // PointCount: the prime-power value of L
  std::optional<Rat> sqrt_q;     // PointCount: value of L^(1/2) when needed
  const CurveData* curve = nullptr; // needed when p-symbols or Jac occur
};

class MotCoeff;
struct RealizeResult; // defined after MotCoeff below (optional needs the complete type)

// Element of Q[L^(1/2), L^(-1/2)][p_1, p_2, ...][Jac]: a finite sum of
// symbol-monomials with Laurent-polynomial-in-L^(1/2) coefficients.  Zero
// coefficients are never stored.
class MotCoeff {
public:
  MotCoeff() = default;
  explicit MotCoeff(const Rat& c) {
    if (c != 0) t_[SymKey{}] = LPoly(c);
  }
  explicit MotCoeff(const LPoly& p) {
    if (!p.is_zero()) t_[SymKey{}] = p;
  }

  // s-units: l_power(1) is L itself, half_power(1) is L^(1/2).
  static MotCoeff l_power(int k, const Rat& c = Rat(1)) { return MotCoeff(LPoly::l_power(k, c)); }
  static MotCoeff half_power(int half_exp, const Rat& c = Rat(1)) {
    return MotCoeff(LPoly::monomial(half_exp, c));
  }
  static MotCoeff p_symbol(unsigned n);
  static MotCoeff jac_symbol();
  static MotCoeff one() { return MotCoeff(Rat(1)); }

  bool is_zero() const { return t_.empty(); }
  bool is_constant() const {
    return t_.empty() || (t_.size() == 1 && t_.begin()->first.is_constant());
  }
  // True iff no p-symbols and no Jac occur (a plain Laurent polynomial in s).
  bool is_symbol_free() const { return is_constant(); }
  LPoly lpoly_part() const {
    auto it = t_.find(SymKey{});
    return it == t_.end() ? LPoly() : it->second;
  }

  bool operator==(const MotCoeff& o) const { return t_ == o.t_; }
  bool operator!=(const MotCoeff& o) const { return !(*this == o); }

  MotCoeff operator-() const;
  friend MotCoeff operator+(const MotCoeff& a, const MotCoeff& b);
  friend MotCoeff operator-(const MotCoeff& a, const MotCoeff& b);
  friend MotCoeff operator*(const MotCoeff& a, const MotCoeff& b);
  MotCoeff& operator+=(const MotCoeff& o) { return *this = *this + o; }
  MotCoeff& operator-=(const MotCoeff& o) { return *this = *this - o; }
  MotCoeff& operator*=(const MotCoeff& o) { return *this = *this * o; }

  MotCoeff scaled(const Rat& c) const;
  MotCoeff mul_lpoly(const LPoly& p) const;

  // Adams operation psi_k: L^(m/2) -> L^(km/2), p_n -> p_{kn}.  The Jacobian
  // symbol carries no lambda-structure here; applying psi_k to it is an error.
  MotCoeff adams(unsigned k) const;

  // If every symbol-coefficient is divisible by d, divide through.
  std::optional<MotCoeff> divide_exact_lpoly(const LPoly& d) const;
  // gcd of all Laurent coefficients (monic, shift-normalized); zero for zero.
  LPoly content_gcd() const;

  RealizeResult realize(const Realization& r) const;

  const std::map<SymKey, LPoly>& terms() const { return t_; }
  std::string to_string() const;

private:
  void insert(const SymKey& k, const LPoly& p) {
    if (p.is_zero()) return;
    auto [it, fresh] = t_.emplace(k, p);
    if (!fresh) {
      it->second += p;
      if (it->second.is_zero()) t_.erase(it);
    }
  }

  std::map<SymKey, LPoly> t_;
};

struct RealizeResult {
  // Exactly one of these is populated, depending on the realization kind.
  std::optional<Rat> rational;       // PointCount, EulerCharacteristic
  std::optional<BivarPoly> epoly;    // EPolynomial
  std::optional<MotCoeff> symbolic;  // Symbolic
};

// Exact fraction num/den of ring elements.  Whenever the denominator is free
// of p-symbols and Jac (a univariate Laurent polynomial in s, the only shape
// the formulas ever produce), the fraction is reduced by polynomial gcd and
// the denominator is normalized monic with lowest exponent zero.  General
// denominators are kept unreduced; equality is by cross-multiplication.
class FractionCoeff {
public:
  FractionCoeff() : num_(), den_(MotCoeff::one()) {}
  explicit FractionCoeff(const Rat& c) : num_(c), den_(MotCoeff::one()) {}
  explicit FractionCoeff(const MotCoeff& n) : num_(n), den_(MotCoeff::one()) {}
  FractionCoeff(const MotCoeff& n, const MotCoeff& d);

  static FractionCoeff one() { return FractionCoeff(Rat(1)); }
  static FractionCoeff l_power(int k) { return FractionCoeff(MotCoeff::l_power(k)); }
  static FractionCoeff half_power(int h) { return FractionCoeff(MotCoeff::half_power(h)); }

  bool is_zero() const { return num_.is_zero(); }
  const MotCoeff& num() const { return num_; }
  const MotCoeff& den() const { return den_; }
  bool is_polynomial() const;  // denominator reduced to 1

  bool operator==(const FractionCoeff& o) const;
  bool operator!=(const FractionCoeff& o) const { return !(*this == o); }

  FractionCoeff operator-() const;
  friend FractionCoeff operator+(const FractionCoeff& a, const FractionCoeff& b);
  friend FractionCoeff operator-(const FractionCoeff& a, const FractionCoeff& b);
  friend FractionCoeff operator*(const FractionCoeff& a, const FractionCoeff& b);
  friend FractionCoeff operator/(const FractionCoeff& a, const FractionCoeff& b);
  FractionCoeff& operator+=(const FractionCoeff& o) { return *this = *this + o; }
  FractionCoeff& operator-=(const FractionCoeff& o) { return *this = *this - o; }
  FractionCoeff& operator*=(const FractionCoeff& o) { return *this = *this * o; }
  FractionCoeff& operator/=(const FractionCoeff& o) { return *this = *this / o; }

  FractionCoeff scaled(const Rat& c) const;
  FractionCoeff adams(unsigned k) const;
  FractionCoeff inverse() const;

  RealizeResult realize(const Realization& r) const;

  std::string to_string() const;

private:
  void normalize();

  MotCoeff num_, den_;
};

// Coefficient arithmetic as free functions (uniform entry points).
template <class C> C coeff_add(const C& a, const C& b) { return a + b; }
template <class C> C coeff_mul(const C& a, const C& b) { return a * b; }
template <class C> C coeff_neg(const C& a) { return -a; }
FractionCoeff coeff_div(const FractionCoeff& a, const FractionCoeff& b);
MotCoeff adams_coeff(const MotCoeff& a, unsigned k);
FractionCoeff adams_coeff(const FractionCoeff& a, unsigned k);

// The class of GL(n): prod_{i=0}^{n-1} (L^n - L^i).
MotCoeff gl_class(unsigned n);

} // namespace motivic
