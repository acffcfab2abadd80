#pragma once

#include "motivic/rational.hpp"

#include <algorithm>
#include <optional>
#include <vector>

namespace motivic {

// Univariate Laurent polynomial in s = L^(1/2) over the rationals.  Exponents
// are counted in s-units, so s^2 = L and even exponents are integer powers of
// L.  Stored densely as coefficients c_[i] of s^(off_ + i), trimmed so that
// the first and last coefficients are nonzero (empty means the zero
// polynomial).
class LPoly {
public:
  LPoly() = default;
  explicit LPoly(const Rat& c) {
    if (c != 0) c_.push_back(c);
  }

  static LPoly monomial(int half_exp, const Rat& c = Rat(1)) {
    LPoly p;
    if (c != 0) {
      p.off_ = half_exp;
      p.c_.push_back(c);
    }
    return p;
  }
  // L^k as a convenience (exponent in whole-L units).
  static LPoly l_power(int k, const Rat& c = Rat(1)) { return monomial(2 * k, c); }

  bool is_zero() const { return c_.empty(); }
  int lo() const { return off_; }                                   // lowest s-exponent
  int hi() const { return off_ + static_cast<int>(c_.size()) - 1; } // highest s-exponent

  Rat at(int e) const {
    if (is_zero() || e < lo() || e > hi()) return Rat(0);
    return c_[static_cast<std::size_t>(e - off_)];
  }

  // True iff the polynomial is c*s^k for a single k.
  bool is_monomial() const { return c_.size() == 1; }

  bool operator==(const LPoly& o) const { return off_ == o.off_ && c_ == o.c_; }
  bool operator!=(const LPoly& o) const { return !(*this == o); }

  LPoly operator-() const {
    LPoly r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }

  friend LPoly operator+(const LPoly& a, const LPoly& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    int lo = std::min(a.lo(), b.lo()), hi = std::max(a.hi(), b.hi());
    LPoly r;
    r.off_ = lo;
    r.c_.assign(static_cast<std::size_t>(hi - lo + 1), Rat(0));
    for (int e = a.lo(); e <= a.hi(); ++e) r.c_[static_cast<std::size_t>(e - lo)] += a.at(e);
    for (int e = b.lo(); e <= b.hi(); ++e) r.c_[static_cast<std::size_t>(e - lo)] += b.at(e);
    r.trim();
    return r;
  }
  friend LPoly operator-(const LPoly& a, const LPoly& b) { return a + (-b); }

  friend LPoly operator*(const LPoly& a, const LPoly& b) {
    if (a.is_zero() || b.is_zero()) return LPoly();
    LPoly r;
    r.off_ = a.off_ + b.off_;
    r.c_.assign(a.c_.size() + b.c_.size() - 1, Rat(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) {
        if (b.c_[j] == 0) continue;
        r.c_[i + j] += a.c_[i] * b.c_[j];
      }
    }
    r.trim();
    return r;
  }

  LPoly& operator+=(const LPoly& o) { return *this = *this + o; }
  LPoly& operator-=(const LPoly& o) { return *this = *this - o; }
  LPoly& operator*=(const LPoly& o) { return *this = *this * o; }

  LPoly scaled(const Rat& c) const {
    if (c == 0) return LPoly();
    LPoly r = *this;
    for (auto& x : r.c_) x *= c;
    return r;
  }

  // Multiply by s^k.
  LPoly shifted(int k) const {
    LPoly r = *this;
    if (!r.is_zero()) r.off_ += k;
    return r;
  }

  // Adams operation: s^m -> s^(k*m).
  LPoly adams(unsigned k) const {
    LPoly r;
    for (int e = lo(); e <= hi(); ++e) {
      Rat c = at(e);
      if (c != 0) r += monomial(e * static_cast<int>(k), c);
    }
    return r;
  }

  // Substitute a rational value for s.
  Rat eval(const Rat& s) const {
    Rat acc(0);
    for (int e = lo(); e <= hi(); ++e) {
      Rat c = at(e);
      if (c == 0) continue;
      if (e >= 0) {
        acc += c * pow_rat(s, e);
      } else {
        if (s == 0) throw Error(ErrorCode::Precondition, "zero denominator");
        acc += c / pow_rat(s, -e);
      }
    }
    return acc;
  }

  // Monic gcd of the polynomial parts (s-shifts are units and are ignored).
  // The result has lowest exponent 0 and leading coefficient 1.
  static LPoly gcd(const LPoly& a, const LPoly& b) {
    if (a.is_zero()) return b.is_zero() ? LPoly() : b.unit_normalized();
    if (b.is_zero()) return a.unit_normalized();
    LPoly x = a.unit_normalized(), y = b.unit_normalized();
    while (!y.is_zero()) {
      LPoly r = poly_mod(x, y);
      x = y;
      y = r.is_zero() ? r : r.unit_normalized();
    }
    return x.unit_normalized();
  }

  // Exact division (allowing an s-shift between the operands): returns a/b if
  // b divides a in the Laurent ring, nothing otherwise.
  static std::optional<LPoly> divide_exact(const LPoly& a, const LPoly& b) {
    if (b.is_zero()) throw Error(ErrorCode::Precondition, "zero denominator");
    if (a.is_zero()) return LPoly();
    LPoly rem = a;
    LPoly q;
    int db = b.hi() - b.lo();
    const Rat& lead_b = b.at(b.hi());
    while (!rem.is_zero() && rem.hi() - rem.lo() >= db) {
      int e = rem.hi() - b.hi();
      Rat c = rem.at(rem.hi()) / lead_b;
      LPoly term = monomial(e, c);
      q += term;
      rem -= term * b;
    }
    if (!rem.is_zero()) return std::nullopt;
    return q;
  }

  // For printing: list of (s-exponent, coefficient), ascending.
  std::vector<std::pair<int, Rat>> terms() const {
    std::vector<std::pair<int, Rat>> out;
    for (int e = lo(); e <= hi(); ++e) {
      Rat c = at(e);
      if (c != 0) out.emplace_back(e, c);
    }
    return out;
  }

private:
  void trim() {
    std::size_t b = 0, e = c_.size();
    while (b < e && c_[b] == 0) ++b;
    while (e > b && c_[e - 1] == 0) --e;
    if (b == e) {
      c_.clear();
      off_ = 0;
      return;
    }
    if (b > 0 || e < c_.size()) {
      std::vector<Rat> nc(c_.begin() + static_cast<std::ptrdiff_t>(b),
                          c_.begin() + static_cast<std::ptrdiff_t>(e));
      c_ = std::move(nc);
      off_ += static_cast<int>(b);
    }
  }

  // Shift lowest exponent to 0 and divide by the leading coefficient.
  LPoly unit_normalized() const {
    LPoly r = shifted(-lo());
    Rat lead = r.at(r.hi());
    return r.scaled(Rat(1) / lead);
  }

  static LPoly poly_mod(const LPoly& a, const LPoly& b) {
    LPoly rem = a;
    int db = b.hi() - b.lo();
    const Rat& lead_b = b.at(b.hi());
    while (!rem.is_zero() && rem.hi() - rem.lo() >= db) {
      Rat c = rem.at(rem.hi()) / lead_b;
      rem -= b.shifted(rem.hi() - b.hi()).scaled(c);
    }
    return rem;
  }

  static Rat pow_rat(const Rat& base, int e) {
    Rat acc(1);
    for (int i = 0; i < e; ++i) acc *= base;
    return acc;
  }

  int off_ = 0;
  std::vector<Rat> c_;
};

} // namespace motivic
