#pragma once

#include "motivic/mot_coeff.hpp"

#include <functional>
#include <map>
#include <numeric>
#include <vector>

namespace motivic {

// Variable shape of a multigraded series: one formal variable w tracking the
// rank, one puncture variable w_{x,j} per puncture x and level j (the shape
// records the number of levels kept per puncture), and the expansion
// variable z.
struct SeriesShape {
  std::vector<unsigned> puncture_levels;

  bool operator==(const SeriesShape& o) const { return puncture_levels == o.puncture_levels; }
  unsigned total_puncture_vars() const {
    return std::accumulate(puncture_levels.begin(), puncture_levels.end(), 0u);
  }
};

struct Truncation {
  unsigned r_max = 0;
  unsigned z_max = 0;

  static Truncation min(const Truncation& a, const Truncation& b) {
    return Truncation{std::min(a.r_max, b.r_max), std::min(a.z_max, b.z_max)};
  }
  bool operator==(const Truncation& o) const { return r_max == o.r_max && z_max == o.z_max; }
};

// Exponent vector of one monomial: [rank, z, puncture exponents...] flattened
// in shape order.  Always interpreted relative to a SeriesShape.
class MonomialIndex {
public:
  MonomialIndex() = default;
  MonomialIndex(const SeriesShape& shape, unsigned rank, unsigned z)
      : v_(2 + shape.total_puncture_vars(), 0) {
    v_[0] = rank;
    v_[1] = z;
  }

  unsigned rank() const { return v_[0]; }
  unsigned z() const { return v_[1]; }
  void set_rank(unsigned r) { v_[0] = r; }
  void set_z(unsigned z) { v_[1] = z; }

  unsigned punct(const SeriesShape& shape, unsigned x, unsigned j) const {
    return v_[2 + offset(shape, x) + j];
  }
  void set_punct(const SeriesShape& shape, unsigned x, unsigned j, unsigned e) {
    v_[2 + offset(shape, x) + j] = e;
  }
  unsigned punct_sum(const SeriesShape& shape, unsigned x) const {
    unsigned off = offset(shape, x), acc = 0;
    for (unsigned j = 0; j < shape.puncture_levels[x]; ++j) acc += v_[2 + off + j];
    return acc;
  }

  bool is_constant() const {
    for (unsigned e : v_) if (e != 0) return false;
    return true;
  }

  MonomialIndex plus(const MonomialIndex& o) const {
    MonomialIndex r = *this;
    for (std::size_t i = 0; i < v_.size(); ++i) r.v_[i] += o.v_[i];
    return r;
  }
  MonomialIndex scaled(unsigned k) const {
    MonomialIndex r = *this;
    for (auto& e : r.v_) e *= k;
    return r;
  }
  MonomialIndex with_z(unsigned z) const {
    MonomialIndex r = *this;
    r.v_[1] = z;
    return r;
  }

  const std::vector<unsigned>& raw() const { return v_; }
  bool operator==(const MonomialIndex& o) const { return v_ == o.v_; }
  bool operator<(const MonomialIndex& o) const { return v_ < o.v_; }

private:
  static unsigned offset(const SeriesShape& shape, unsigned x) {
    unsigned off = 0;
    for (unsigned i = 0; i < x; ++i) off += shape.puncture_levels[i];
    return off;
  }

  std::vector<unsigned> v_;
};

// Truncated multigraded power series with exact coefficients.  Monomials
// outside the truncation window (rank > r_max, z > z_max, or a puncture
// exponent sum > r_max) are silently dropped; since the window is downward
// closed under addition of exponents, ring operations are exact on the
// window.
template <class C>
class GradedSeries {
public:
  GradedSeries() = default;
  GradedSeries(SeriesShape shape, Truncation tr) : shape_(std::move(shape)), tr_(tr) {}

  static GradedSeries one(const SeriesShape& shape, Truncation tr) {
    GradedSeries s(shape, tr);
    s.add_term(MonomialIndex(shape, 0, 0), unit());
    return s;
  }

  const SeriesShape& shape() const { return shape_; }
  const Truncation& trunc() const { return tr_; }
  const std::map<MonomialIndex, C>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }

  bool in_window(const MonomialIndex& m) const {
    if (m.rank() > tr_.r_max || m.z() > tr_.z_max) return false;
    for (unsigned x = 0; x < shape_.puncture_levels.size(); ++x)
      if (m.punct_sum(shape_, x) > tr_.r_max) return false;
    return true;
  }

  void add_term(const MonomialIndex& m, const C& c) {
    if (c.is_zero() || !in_window(m)) return;
    auto [it, fresh] = t_.emplace(m, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) t_.erase(it);
    }
  }

  // Coefficient lookup; asking outside the truncation window is an error
  // (the value there is unknown, not zero).
  const C& coefficient_at(const MonomialIndex& m) const {
    if (!in_window(m)) throw Error(ErrorCode::Precondition, "beyond truncation");
    static const C zero{};
    auto it = t_.find(m);
    return it == t_.end() ? zero : it->second;
  }

  C constant_term() const {
    MonomialIndex c(shape_, 0, 0);
    auto it = t_.find(c);
    return it == t_.end() ? C{} : it->second;
  }

  GradedSeries operator-() const {
    GradedSeries r(shape_, tr_);
    for (const auto& [m, c] : t_) r.t_[m] = -c;
    return r;
  }

  friend GradedSeries operator+(const GradedSeries& a, const GradedSeries& b) {
    a.check_shape(b);
    GradedSeries r(a.shape_, Truncation::min(a.tr_, b.tr_));
    for (const auto& [m, c] : a.t_) r.add_term(m, c);
    for (const auto& [m, c] : b.t_) r.add_term(m, c);
    return r;
  }
  friend GradedSeries operator-(const GradedSeries& a, const GradedSeries& b) { return a + (-b); }

  friend GradedSeries operator*(const GradedSeries& a, const GradedSeries& b) {
    a.check_shape(b);
    GradedSeries r(a.shape_, Truncation::min(a.tr_, b.tr_));
    for (const auto& [ma, ca] : a.t_) {
      if (ma.rank() > r.tr_.r_max || ma.z() > r.tr_.z_max) continue;
      for (const auto& [mb, cb] : b.t_) {
        MonomialIndex m = ma.plus(mb);
        if (!r.in_window(m)) continue;
        r.add_term(m, ca * cb);
      }
    }
    return r;
  }

  GradedSeries& operator+=(const GradedSeries& o) { return *this = *this + o; }
  GradedSeries& operator-=(const GradedSeries& o) { return *this = *this - o; }
  GradedSeries& operator*=(const GradedSeries& o) { return *this = *this * o; }

  GradedSeries scalar_mul(const C& c) const {
    GradedSeries r(shape_, tr_);
    if (c.is_zero()) return r;
    for (const auto& [m, x] : t_) {
      C y = x * c;
      if (!y.is_zero()) r.t_[m] = y;
    }
    return r;
  }

  GradedSeries filter(const std::function<bool(const MonomialIndex&)>& keep) const {
    GradedSeries r(shape_, tr_);
    for (const auto& [m, c] : t_)
      if (keep(m)) r.t_[m] = c;
    return r;
  }

  // Multiplicative inverse; requires an invertible constant term.
  GradedSeries invert() const {
    C c0 = constant_term();
    auto c0inv = try_invert(c0);
    if (!c0inv) throw Error(ErrorCode::Precondition, "series not invertible");
    // f = c0 (1 - g) with g supported away from the constant; invert by the
    // geometric series, which terminates on the truncation window.
    GradedSeries g(shape_, tr_);
    for (const auto& [m, c] : t_) {
      if (m.is_constant()) continue;
      g.t_[m] = -(c * *c0inv);
    }
    GradedSeries acc = one(shape_, tr_);
    GradedSeries pw = one(shape_, tr_);
    while (true) {
      pw *= g;
      if (pw.is_zero()) break;
      acc += pw;
    }
    return acc.scalar_mul(*c0inv);
  }

  // Sets z = 1.  Requires every (rank, puncture) group to have stabilized:
  // its stored coefficients must vanish in the top `guard` z-degrees.
  GradedSeries evaluate_z_one(unsigned guard) const {
    if (guard == 0 || guard > tr_.z_max)
      throw Error(ErrorCode::Precondition, "guard must satisfy 1 <= guard <= z_max");
    for (const auto& [m, c] : t_) {
      (void)c;
      if (m.z() > tr_.z_max - guard)
        throw Error(ErrorCode::Stabilization, "z-series not stabilized; increase z_max");
    }
    GradedSeries r(shape_, tr_);
    for (const auto& [m, c] : t_) r.add_term(m.with_z(0), c);
    return r;
  }

  // Picks out the sub-series of a fixed z-degree, as a z-free series.
  GradedSeries z_slice(unsigned z) const {
    GradedSeries r(shape_, tr_);
    for (const auto& [m, c] : t_)
      if (m.z() == z) r.t_[m.with_z(0)] = c;
    return r;
  }

private:
  static C unit() { return C(Rat(1)); }

  static std::optional<C> try_invert(const C& c);

  void check_shape(const GradedSeries& o) const {
    if (!(shape_ == o.shape_))
      throw Error(ErrorCode::Precondition, "series shapes do not match");
  }

  SeriesShape shape_;
  Truncation tr_;
  std::map<MonomialIndex, C> t_;
};

template <>
inline std::optional<MotCoeff> GradedSeries<MotCoeff>::try_invert(const MotCoeff& c) {
  // Units of the polynomial coefficient ring are the nonzero monomials c*s^k.
  if (!c.is_symbol_free()) return std::nullopt;
  LPoly p = c.lpoly_part();
  if (p.is_zero() || !p.is_monomial()) return std::nullopt;
  return MotCoeff(LPoly::monomial(-p.lo(), Rat(1) / p.at(p.lo())));
}

template <>
inline std::optional<FractionCoeff> GradedSeries<FractionCoeff>::try_invert(
    const FractionCoeff& c) {
  if (c.is_zero()) return std::nullopt;
  return c.inverse();
}

} // namespace motivic
