#include "motivic/mot_coeff.hpp"

#include <sstream>

namespace motivic {

void CurveData::validate() const {
  if (l_coeffs.size() != 2 * static_cast<std::size_t>(genus) + 1)
    throw Error(ErrorCode::Config, "l_coeffs must have exactly 2*genus+1 entries");
  if (l_coeffs[0] != 1)
    throw Error(ErrorCode::Config, "l_coeffs[0] must equal 1");
}

std::vector<Rat> CurveData::power_sums(unsigned n_max) const {
  validate();
  // L(z) = prod (1 - a_i z); with e_k = (-1)^k b_k elementary symmetric in
  // the a_i, Newton's identities give
  //   p_n = -n b_n - sum_{i=1}^{n-1} b_i p_{n-i}   (b_i = 0 for i > 2g).
  std::vector<Rat> p(n_max + 1, Rat(0));
  for (unsigned n = 1; n <= n_max; ++n) {
    Rat acc(0);
    if (n < l_coeffs.size()) acc -= Rat(n) * l_coeffs[n];
    for (unsigned i = 1; i < n && i < l_coeffs.size(); ++i) acc -= l_coeffs[i] * p[n - i];
    p[n] = acc;
  }
  p.erase(p.begin());
  return p;
}

Rat CurveData::l_at_one() const {
  Rat acc(0);
  for (const auto& b : l_coeffs) acc += b;
  return acc;
}

BivarPoly bivar_mul(const BivarPoly& a, const BivarPoly& b) {
  BivarPoly r;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      auto key = std::make_pair(ea.first + eb.first, ea.second + eb.second);
      Rat& slot = r[key];
      slot += ca * cb;
      if (slot == 0) r.erase(key);
    }
  return r;
}

BivarPoly bivar_add(const BivarPoly& a, const BivarPoly& b) {
  BivarPoly r = a;
  for (const auto& [e, c] : b) {
    Rat& slot = r[e];
    slot += c;
    if (slot == 0) r.erase(e);
  }
  return r;
}

BivarPoly bivar_scale(const BivarPoly& a, const Rat& c) {
  BivarPoly r;
  if (c == 0) return r;
  for (const auto& [e, x] : a) r[e] = x * c;
  return r;
}

std::optional<BivarPoly> bivar_divide_exact(const BivarPoly& a, const BivarPoly& b) {
  if (b.empty()) throw Error(ErrorCode::Precondition, "zero denominator");
  BivarPoly rem = a, q;
  // Leading term in the (u, v) lex order is the map's last entry.
  const auto& [lead_e, lead_c] = *b.rbegin();
  while (!rem.empty()) {
    const auto& [re, rc] = *rem.rbegin();
    if (re.first < lead_e.first || re.second < lead_e.second) return std::nullopt;
    std::pair<int, int> qe{re.first - lead_e.first, re.second - lead_e.second};
    Rat qc = rc / lead_c;
    q[qe] = qc;
    BivarPoly t;
    t[qe] = qc;
    rem = bivar_add(rem, bivar_scale(bivar_mul(t, b), Rat(-1)));
  }
  return q;
}

std::string bivar_to_string(const BivarPoly& a) {
  if (a.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : a) {
    if (!first) os << (c > 0 ? " + " : " - ");
    else if (c < 0) os << "-";
    first = false;
    Rat ab = c < 0 ? Rat(-c) : c;
    bool havec = (ab != 1) || (e.first == 0 && e.second == 0);
    if (havec) os << ab.str();
    if (e.first > 0) os << (havec ? "*u" : "u") << (e.first > 1 ? "^" + std::to_string(e.first) : "");
    if (e.second > 0)
      os << ((havec || e.first > 0) ? "*v" : "v")
         << (e.second > 1 ? "^" + std::to_string(e.second) : "");
  }
  return os.str();
}

MotCoeff MotCoeff::p_symbol(unsigned n) {
  if (n == 0) throw Error(ErrorCode::Precondition, "p-symbol index must be positive");
  MotCoeff r;
  SymKey k;
  k.ps.push_back(n);
  r.t_[k] = LPoly(Rat(1));
  return r;
}

MotCoeff MotCoeff::jac_symbol() {
  MotCoeff r;
  SymKey k;
  k.jac = 1;
  r.t_[k] = LPoly(Rat(1));
  return r;
}

MotCoeff MotCoeff::operator-() const {
  MotCoeff r;
  for (const auto& [k, p] : t_) r.t_[k] = -p;
  return r;
}

MotCoeff operator+(const MotCoeff& a, const MotCoeff& b) {
  MotCoeff r = a;
  for (const auto& [k, p] : b.t_) r.insert(k, p);
  return r;
}

MotCoeff operator-(const MotCoeff& a, const MotCoeff& b) {
  MotCoeff r = a;
  for (const auto& [k, p] : b.t_) r.insert(k, -p);
  return r;
}

MotCoeff operator*(const MotCoeff& a, const MotCoeff& b) {
  MotCoeff r;
  for (const auto& [ka, pa] : a.t_)
    for (const auto& [kb, pb] : b.t_) r.insert(ka.merged(kb), pa * pb);
  return r;
}

MotCoeff MotCoeff::scaled(const Rat& c) const {
  MotCoeff r;
  if (c == 0) return r;
  for (const auto& [k, p] : t_) r.t_[k] = p.scaled(c);
  return r;
}

MotCoeff MotCoeff::mul_lpoly(const LPoly& p) const {
  MotCoeff r;
  if (p.is_zero()) return r;
  for (const auto& [k, q] : t_) r.t_[k] = q * p;
  return r;
}

MotCoeff MotCoeff::adams(unsigned k) const {
  if (k == 0) throw Error(ErrorCode::Precondition, "Adams index must be positive");
  MotCoeff r;
  for (const auto& [key, p] : t_) {
    if (key.jac != 0)
      throw Error(ErrorCode::Precondition, "Adams operation not defined on the Jac symbol");
    SymKey nk;
    nk.ps.reserve(key.ps.size());
    for (unsigned n : key.ps) nk.ps.push_back(n * k);
    r.insert(nk, p.adams(k));
  }
  return r;
}

std::optional<MotCoeff> MotCoeff::divide_exact_lpoly(const LPoly& d) const {
  MotCoeff r;
  for (const auto& [k, p] : t_) {
    auto q = LPoly::divide_exact(p, d);
    if (!q) return std::nullopt;
    r.t_[k] = *q;
  }
  return r;
}

LPoly MotCoeff::content_gcd() const {
  LPoly g;
  for (const auto& [k, p] : t_) g = LPoly::gcd(g, p);
  return g;
}

namespace {

Rat realize_lpoly_point(const LPoly& p, const Realization& r) {
  Rat acc(0);
  for (const auto& [e, c] : p.terms()) {
    if (e % 2 == 0) {
      int k = e / 2;
      Rat pw(1);
      for (int i = 0; i < std::abs(k); ++i) pw *= r.q;
      if (k < 0) {
        if (r.q == 0) throw Error(ErrorCode::Precondition, "zero denominator");
        acc += c / pw;
      } else {
        acc += c * pw;
      }
    } else {
      if (!r.sqrt_q)
        throw Error(ErrorCode::Precondition, "half-integer weight not realizable");
      Rat s = *r.sqrt_q;
      Rat pw(1);
      for (int i = 0; i < std::abs(e); ++i) pw *= s;
      if (e < 0) {
        if (s == 0) throw Error(ErrorCode::Precondition, "zero denominator");
        acc += c / pw;
      } else {
        acc += c * pw;
      }
    }
  }
  return acc;
}

BivarPoly realize_lpoly_epoly(const LPoly& p) {
  BivarPoly acc;
  for (const auto& [e, c] : p.terms()) {
    if (e % 2 != 0) throw Error(ErrorCode::Precondition, "half-integer weight not realizable");
    int k = e / 2;
    if (k < 0)
      throw Error(ErrorCode::Precondition,
                  "negative powers of L not realizable as an E-polynomial");
    BivarPoly t;
    t[{k, k}] = c;  // L -> uv
    acc = bivar_add(acc, t);
  }
  return acc;
}

const CurveData* require_curve(const Realization& r, const char* what) {
  if (!r.curve)
    throw Error(ErrorCode::Precondition,
                std::string("realization of ") + what + " requires curve data");
  return r.curve;
}

} // namespace

RealizeResult MotCoeff::realize(const Realization& r) const {
  RealizeResult out;
  switch (r.kind) {
    case Realization::Kind::Symbolic:
      out.symbolic = *this;
      return out;
    case Realization::Kind::PointCount: {
      Rat acc(0);
      std::vector<Rat> psums;
      for (const auto& [k, p] : t_) {
        Rat factor(1);
        if (k.jac > 0) {
          const CurveData* cd = require_curve(r, "the Jac symbol");
          Rat j = cd->l_at_one();
          for (unsigned i = 0; i < k.jac; ++i) factor *= j;
        }
        if (!k.ps.empty()) {
          const CurveData* cd = require_curve(r, "p-symbols");
          unsigned need = k.ps.back();
          if (psums.size() < need) psums = cd->power_sums(need);
          for (unsigned n : k.ps) factor *= psums[n - 1];
        }
        acc += factor * realize_lpoly_point(p, r);
      }
      out.rational = acc;
      return out;
    }
    case Realization::Kind::EulerCharacteristic: {
      // L^(1/2) -> 1, p_n -> 2g, Jac -> 0 (g >= 1) or 1 (g = 0).
      Rat acc(0);
      for (const auto& [k, p] : t_) {
        Rat factor(1);
        if (k.jac > 0) {
          const CurveData* cd = require_curve(r, "the Jac symbol");
          if (cd->genus >= 1) continue;
        }
        if (!k.ps.empty()) {
          const CurveData* cd = require_curve(r, "p-symbols");
          Rat tg = Rat(2) * Rat(cd->genus);
          for (std::size_t i = 0; i < k.ps.size(); ++i) factor *= tg;
        }
        Rat lp(0);
        for (const auto& [e, c] : p.terms()) {
          (void)e;
          lp += c;
        }
        acc += factor * lp;
      }
      out.rational = acc;
      return out;
    }
    case Realization::Kind::EPolynomial: {
      // L -> uv, p_n -> g(u^n + v^n), Jac -> (1-u)^g (1-v)^g.
      BivarPoly acc;
      for (const auto& [k, p] : t_) {
        BivarPoly factor;
        factor[{0, 0}] = Rat(1);
        if (k.jac > 0) {
          const CurveData* cd = require_curve(r, "the Jac symbol");
          BivarPoly jac;
          jac[{0, 0}] = Rat(1);
          BivarPoly onemu, onemv;
          onemu[{0, 0}] = Rat(1);
          onemu[{1, 0}] = Rat(-1);
          onemv[{0, 0}] = Rat(1);
          onemv[{0, 1}] = Rat(-1);
          for (unsigned g = 0; g < cd->genus; ++g) jac = bivar_mul(jac, bivar_mul(onemu, onemv));
          for (unsigned i = 0; i < k.jac; ++i) factor = bivar_mul(factor, jac);
        }
        if (!k.ps.empty()) {
          const CurveData* cd = require_curve(r, "p-symbols");
          for (unsigned n : k.ps) {
            BivarPoly pn;
            pn[{static_cast<int>(n), 0}] = Rat(cd->genus);
            pn[{0, static_cast<int>(n)}] = Rat(cd->genus);
            factor = bivar_mul(factor, pn);
          }
        }
        acc = bivar_add(acc, bivar_mul(factor, realize_lpoly_epoly(p)));
      }
      out.epoly = acc;
      return out;
    }
  }
  throw Error(ErrorCode::Precondition, "unknown realization kind");
}

std::string MotCoeff::to_string() const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first_term = true;
  for (const auto& [k, p] : t_) {
    for (const auto& [e, c] : p.terms()) {
      bool neg = c < 0;
      Rat ab = neg ? Rat(-c) : c;
      if (first_term) {
        if (neg) os << "-";
      } else {
        os << (neg ? " - " : " + ");
      }
      first_term = false;
      std::vector<std::string> factors;
      if (ab != 1 || (e == 0 && k.is_constant())) factors.push_back(ab.str());
      if (e != 0) {
        if (e == 2) factors.push_back("L");
        else if (e % 2 == 0) factors.push_back("L^" + std::to_string(e / 2));
        else factors.push_back("L^(" + std::to_string(e) + "/2)");
      }
      for (unsigned i = 0; i < k.jac; ++i) factors.push_back("Jac");
      unsigned run = 0;
      for (std::size_t i = 0; i < k.ps.size(); ++i) {
        ++run;
        if (i + 1 == k.ps.size() || k.ps[i + 1] != k.ps[i]) {
          std::string f = "p" + std::to_string(k.ps[i]);
          if (run > 1) f += "^" + std::to_string(run);
          factors.push_back(f);
          run = 0;
        }
      }
      for (std::size_t i = 0; i < factors.size(); ++i) {
        if (i) os << "*";
        os << factors[i];
      }
    }
  }
  return os.str();
}

FractionCoeff::FractionCoeff(const MotCoeff& n, const MotCoeff& d) : num_(n), den_(d) {
  if (den_.is_zero()) throw Error(ErrorCode::Precondition, "zero denominator");
  normalize();
}

void FractionCoeff::normalize() {
  if (num_.is_zero()) {
    den_ = MotCoeff::one();
    return;
  }
  if (!den_.is_symbol_free()) return;  // general denominator: keep unreduced
  LPoly d = den_.lpoly_part();
  if (!d.is_monomial()) {
    LPoly g = LPoly::gcd(num_.content_gcd(), d);
    if (g.hi() > g.lo()) {  // nontrivial common polynomial factor
      auto nq = num_.divide_exact_lpoly(g);
      auto dq = LPoly::divide_exact(d, g);
      num_ = *nq;
      d = *dq;
    }
  }
  // Normalize the denominator: lowest exponent 0, leading coefficient 1;
  // absorb the adjusting unit into the numerator.
  int shift = d.lo();
  Rat lead = d.at(d.hi());
  d = d.shifted(-shift).scaled(Rat(1) / lead);
  num_ = num_.mul_lpoly(LPoly::monomial(-shift, Rat(1) / lead));
  den_ = MotCoeff(d);
}

bool FractionCoeff::is_polynomial() const {
  return den_ == MotCoeff::one();
}

bool FractionCoeff::operator==(const FractionCoeff& o) const {
  if (den_ == o.den_) return num_ == o.num_;
  return num_ * o.den_ == o.num_ * den_;
}

FractionCoeff FractionCoeff::operator-() const {
  FractionCoeff r = *this;
  r.num_ = -r.num_;
  return r;
}

FractionCoeff operator+(const FractionCoeff& a, const FractionCoeff& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den_ == b.den_) {
    FractionCoeff r;
    r.num_ = a.num_ + b.num_;
    r.den_ = a.den_;
    if (r.num_.is_zero()) r.den_ = MotCoeff::one();
    return r;
  }
  return FractionCoeff(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

FractionCoeff operator-(const FractionCoeff& a, const FractionCoeff& b) { return a + (-b); }

FractionCoeff operator*(const FractionCoeff& a, const FractionCoeff& b) {
  if (a.is_zero() || b.is_zero()) return FractionCoeff();
  return FractionCoeff(a.num_ * b.num_, a.den_ * b.den_);
}

FractionCoeff operator/(const FractionCoeff& a, const FractionCoeff& b) {
  if (b.is_zero()) throw Error(ErrorCode::Precondition, "zero denominator");
  if (a.is_zero()) return FractionCoeff();
  return FractionCoeff(a.num_ * b.den_, a.den_ * b.num_);
}

FractionCoeff FractionCoeff::scaled(const Rat& c) const {
  if (c == 0) return FractionCoeff();
  FractionCoeff r = *this;
  r.num_ = r.num_.scaled(c);
  return r;
}

FractionCoeff FractionCoeff::adams(unsigned k) const {
  return FractionCoeff(num_.adams(k), den_.adams(k));
}

FractionCoeff FractionCoeff::inverse() const {
  if (is_zero()) throw Error(ErrorCode::Precondition, "zero denominator");
  return FractionCoeff(den_, num_);
}

RealizeResult FractionCoeff::realize(const Realization& r) const {
  RealizeResult n = num_.realize(r), d = den_.realize(r);
  RealizeResult out;
  switch (r.kind) {
    case Realization::Kind::Symbolic:
      // Symbolic realization of a fraction returns the numerator/denominator
      // pair untouched; callers handle it at the fraction level.
      out.symbolic = num_;
      return out;
    case Realization::Kind::PointCount:
    case Realization::Kind::EulerCharacteristic: {
      if (*d.rational == 0)
        throw Error(ErrorCode::Precondition, "realization maps denominator to zero");
      out.rational = *n.rational / *d.rational;
      return out;
    }
    case Realization::Kind::EPolynomial: {
      if (d.epoly->empty())
        throw Error(ErrorCode::Precondition, "realization maps denominator to zero");
      auto q = bivar_divide_exact(*n.epoly, *d.epoly);
      if (!q)
        throw Error(ErrorCode::Precondition,
                    "E-polynomial realization of the fraction is not polynomial");
      out.epoly = *q;
      return out;
    }
  }
  throw Error(ErrorCode::Precondition, "unknown realization kind");
}

std::string FractionCoeff::to_string() const {
  if (is_polynomial()) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

FractionCoeff coeff_div(const FractionCoeff& a, const FractionCoeff& b) { return a / b; }
MotCoeff adams_coeff(const MotCoeff& a, unsigned k) { return a.adams(k); }
FractionCoeff adams_coeff(const FractionCoeff& a, unsigned k) { return a.adams(k); }

MotCoeff gl_class(unsigned n) {
  MotCoeff acc = MotCoeff::one();
  for (unsigned i = 0; i < n; ++i) {
    MotCoeff f = MotCoeff::l_power(static_cast<int>(n)) - MotCoeff::l_power(static_cast<int>(i));
    acc *= f;
  }
  return acc;
}

} // namespace motivic
