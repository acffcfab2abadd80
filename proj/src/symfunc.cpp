#include "motivic/symfunc.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace motivic {

namespace {

Rat rat_pow(const Rat& base, long e) {
  if (e == 0) return Rat(1);
  Rat b = base;
  if (e < 0) {
    if (b == 0) throw Error(ErrorCode::Precondition, "zero denominator");
    b = Rat(1) / b;
    e = -e;
  }
  Rat acc(1);
  for (long i = 0; i < e; ++i) acc *= b;
  return acc;
}

} // namespace

// ---------------------------------------------------------------------------
// QTPoly

QTPoly QTPoly::operator-() const {
  QTPoly r;
  for (const auto& [e, c] : t_) r.t_[e] = -c;
  return r;
}

QTPoly operator+(const QTPoly& a, const QTPoly& b) {
  QTPoly r = a;
  for (const auto& [e, c] : b.t_) {
    auto it = r.t_.find(e);
    if (it == r.t_.end()) {
      r.t_[e] = c;
    } else {
      it->second += c;
      if (it->second == 0) r.t_.erase(it);
    }
  }
  return r;
}

QTPoly operator-(const QTPoly& a, const QTPoly& b) { return a + (-b); }

QTPoly operator*(const QTPoly& a, const QTPoly& b) {
  QTPoly r;
  for (const auto& [ea, ca] : a.t_)
    for (const auto& [eb, cb] : b.t_) {
      std::pair<int, int> e{ea.first + eb.first, ea.second + eb.second};
      auto it = r.t_.find(e);
      if (it == r.t_.end()) {
        Rat c = ca * cb;
        if (c != 0) r.t_[e] = c;
      } else {
        it->second += ca * cb;
        if (it->second == 0) r.t_.erase(it);
      }
    }
  return r;
}

QTPoly QTPoly::scaled(const Rat& c) const {
  QTPoly r;
  if (c == 0) return r;
  for (const auto& [e, co] : t_) r.t_[e] = co * c;
  return r;
}

QTPoly QTPoly::t_inverted() const {
  QTPoly r;
  for (const auto& [e, c] : t_) r.t_[{e.first, -e.second}] = c;
  return r;
}

QTPoly QTPoly::qt_swapped() const {
  QTPoly r;
  for (const auto& [e, c] : t_) r.t_[{e.second, e.first}] = c;
  return r;
}

QTPoly QTPoly::q_zero() const {
  QTPoly r;
  for (const auto& [e, c] : t_) {
    if (e.first < 0)
      throw Error(ErrorCode::Precondition, "cannot set q to zero: negative q-exponent");
    if (e.first == 0) r.t_[e] = c;
  }
  return r;
}

Rat QTPoly::eval(const Rat& qv, const Rat& tv) const {
  Rat acc(0);
  for (const auto& [e, c] : t_)
    acc += c * rat_pow(qv, e.first) * rat_pow(tv, e.second);
  return acc;
}

int QTPoly::min_q() const {
  int m = 0;
  bool first = true;
  for (const auto& [e, c] : t_) {
    (void)c;
    if (first || e.first < m) m = e.first;
    first = false;
  }
  return m;
}

int QTPoly::min_t() const {
  int m = 0;
  bool first = true;
  for (const auto& [e, c] : t_) {
    (void)c;
    if (first || e.second < m) m = e.second;
    first = false;
  }
  return m;
}

QTPoly QTPoly::shifted(int dq, int dt) const {
  QTPoly r;
  for (const auto& [e, c] : t_) r.t_[{e.first + dq, e.second + dt}] = c;
  return r;
}

std::optional<QTPoly> QTPoly::divide_exact(const QTPoly& a, const QTPoly& b) {
  if (b.is_zero()) throw Error(ErrorCode::Precondition, "zero denominator");
  QTPoly rem = a, quot;
  auto lead_b = *b.t_.rbegin();
  long steps = 0;
  while (!rem.is_zero()) {
    if (++steps > 1000000)
      throw Error(ErrorCode::Precondition, "polynomial division did not terminate");
    auto lead_r = *rem.t_.rbegin();
    std::pair<int, int> e{lead_r.first.first - lead_b.first.first,
                          lead_r.first.second - lead_b.first.second};
    Rat c = lead_r.second / lead_b.second;
    // In the Laurent setting any monomial divides; exactness shows up as the
    // remainder reaching zero.  A quotient term lexicographically below every
    // plausible bound signals non-divisibility.
    if (e.first < a.min_q() - b.min_q() - 1 || e.second < a.min_t() - b.min_t() - 1)
      return std::nullopt;
    quot.t_[e] = c;
    rem = rem - b * monomial(e.first, e.second, c);
  }
  return quot;
}

std::string QTPoly::to_string() const {
  if (t_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  // Render highest terms first for readability.
  for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
    const auto& [e, c] = *it;
    Rat ac = c < 0 ? Rat(-c) : c;
    if (first) {
      if (c < 0) out << "-";
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    std::vector<std::string> factors;
    if (ac != 1 || (e.first == 0 && e.second == 0)) factors.push_back(motivic::to_string(ac));
    auto var = [&](const char* name, int exp) {
      if (exp == 0) return;
      std::ostringstream v;
      v << name;
      if (exp != 1) v << "^" << exp;
      factors.push_back(v.str());
    };
    var("q", e.first);
    var("t", e.second);
    for (std::size_t i = 0; i < factors.size(); ++i) {
      if (i) out << "*";
      out << factors[i];
    }
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Bivariate gcd support for fraction reduction.  Without cancellation the
// denominators produced by repeated fraction addition grow multiplicatively
// and the Gram-Schmidt construction below becomes intractable already for
// partitions of size three.

namespace {

// Dense univariate polynomial in t over the rationals, coefficient of t^i at
// index i; empty vector is zero.
using UniPoly = std::vector<Rat>;

void uni_trim(UniPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

UniPoly uni_mul(const UniPoly& a, const UniPoly& b) {
  if (a.empty() || b.empty()) return {};
  UniPoly r(a.size() + b.size() - 1, Rat(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  uni_trim(r);
  return r;
}

UniPoly uni_rem(UniPoly a, const UniPoly& b) {
  while (a.size() >= b.size() && !a.empty()) {
    Rat c = a.back() / b.back();
    std::size_t off = a.size() - b.size();
    for (std::size_t j = 0; j < b.size(); ++j) a[off + j] -= c * b[j];
    uni_trim(a);
  }
  return a;
}

UniPoly uni_monic(UniPoly p) {
  if (p.empty()) return p;
  Rat lead = p.back();
  if (lead != 1)
    for (auto& c : p) c /= lead;
  return p;
}

UniPoly uni_gcd(UniPoly a, UniPoly b) {
  uni_trim(a);
  uni_trim(b);
  while (!b.empty()) {
    UniPoly r = uni_rem(std::move(a), b);
    a = std::move(b);
    b = std::move(r);
  }
  return uni_monic(std::move(a));
}

// Exact division; callers guarantee divisibility.
UniPoly uni_div(UniPoly a, const UniPoly& b) {
  UniPoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Rat(0));
  while (a.size() >= b.size() && !a.empty()) {
    Rat c = a.back() / b.back();
    std::size_t off = a.size() - b.size();
    q[off] = c;
    for (std::size_t j = 0; j < b.size(); ++j) a[off + j] -= c * b[j];
    uni_trim(a);
  }
  uni_trim(q);
  return q;
}

// Dense in the q-direction: index = q-exponent, entry = t-polynomial.
using BiDense = std::vector<UniPoly>;

void bi_trim(BiDense& p) {
  while (!p.empty() && p.back().empty()) p.pop_back();
}

BiDense bi_from_qt(const QTPoly& p) {
  BiDense r;
  for (const auto& [e, c] : p.terms()) {
    auto iq = static_cast<std::size_t>(e.first);
    auto it = static_cast<std::size_t>(e.second);
    if (r.size() <= iq) r.resize(iq + 1);
    if (r[iq].size() <= it) r[iq].resize(it + 1, Rat(0));
    r[iq][it] = c;
  }
  for (auto& c : r) uni_trim(c);
  bi_trim(r);
  return r;
}

QTPoly bi_to_qt(const BiDense& p) {
  QTPoly r;
  for (std::size_t iq = 0; iq < p.size(); ++iq)
    for (std::size_t it = 0; it < p[iq].size(); ++it)
      if (p[iq][it] != 0)
        r += QTPoly::monomial(static_cast<int>(iq), static_cast<int>(it), p[iq][it]);
  return r;
}

UniPoly bi_content(const BiDense& a) {
  UniPoly g;
  for (const auto& c : a)
    if (!c.empty()) g = uni_gcd(std::move(g), c);
  return g;
}

BiDense bi_divide_content(BiDense a, const UniPoly& g) {
  if (g.size() <= 1) return a; // constant content: skip, units are harmless
  for (auto& c : a)
    if (!c.empty()) c = uni_div(std::move(c), g);
  return a;
}

// Pseudo-remainder of a by b in the q-direction over the t-polynomials.
BiDense bi_prem(BiDense a, const BiDense& b) {
  const UniPoly& lb = b.back();
  while (a.size() >= b.size() && !a.empty()) {
    UniPoly la = a.back();
    std::size_t off = a.size() - b.size();
    for (auto& c : a) c = uni_mul(c, lb);
    for (std::size_t j = 0; j < b.size(); ++j) {
      UniPoly sub = uni_mul(la, b[j]);
      UniPoly& tgt = a[off + j];
      if (tgt.size() < sub.size()) tgt.resize(sub.size(), Rat(0));
      for (std::size_t k = 0; k < sub.size(); ++k) tgt[k] -= sub[k];
      uni_trim(tgt);
    }
    bi_trim(a);
  }
  return a;
}

// Primitive polynomial-remainder-sequence gcd of two primitive inputs.
// Robust but slow on large operands; kept as the fallback path.
BiDense bi_gcd_prs(BiDense a, BiDense b) {
  if (a.size() < b.size()) std::swap(a, b);
  while (!b.empty()) {
    BiDense r = bi_prem(std::move(a), b);
    bi_trim(r);
    if (!r.empty()) {
      UniPoly cr = bi_content(r);
      r = bi_divide_content(std::move(r), cr);
    }
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

Rat uni_eval(const UniPoly& p, const Rat& v) {
  Rat r(0);
  for (auto it = p.rbegin(); it != p.rend(); ++it) r = r * v + *it;
  return r;
}

// Evaluate the t-variable at v, leaving a univariate polynomial in q.
UniPoly bi_eval_t(const BiDense& a, const Rat& v) {
  UniPoly r(a.size(), Rat(0));
  for (std::size_t iq = 0; iq < a.size(); ++iq) r[iq] = uni_eval(a[iq], v);
  uni_trim(r);
  return r;
}

unsigned bi_tdeg(const BiDense& a) {
  std::size_t d = 0;
  for (const auto& c : a)
    if (c.size() > d) d = c.size();
  return d == 0 ? 0 : static_cast<unsigned>(d - 1);
}

// Evaluation/interpolation gcd of two primitive inputs: take univariate gcds
// in q at enough integer values of t, interpolate, and certify by trial
// division.  Returns nullopt if too many evaluation points are unlucky.
std::optional<BiDense> bi_gcd_modular(const BiDense& a, const BiDense& b) {
  const UniPoly gamma = uni_gcd(a.back(), b.back());
  const unsigned gamma_deg = gamma.empty() ? 0 : static_cast<unsigned>(gamma.size() - 1);
  const unsigned npoints = gamma_deg + std::min(bi_tdeg(a), bi_tdeg(b)) + 1;

  std::vector<Rat> xs;
  std::vector<UniPoly> ys; // scaled gcd images, one polynomial in q per point
  std::size_t gdeg = std::min(a.size(), b.size()) - 1;
  long tried = 0;
  const long budget = 8 * static_cast<long>(npoints) + 64;
  long k = 0;
  while (true) {
    while (xs.size() < npoints) {
      if (++tried > budget) return std::nullopt;
      // 2, -2, 3, -3, ...; 0 and +-1 are degeneration points for these
      // fractions and are disproportionately unlucky.
      long half = k / 2;
      Rat v(k % 2 == 0 ? half + 2 : -(half + 2));
      ++k;
      if (uni_eval(a.back(), v) == 0 || uni_eval(b.back(), v) == 0) continue;
      UniPoly g = uni_gcd(bi_eval_t(a, v), bi_eval_t(b, v));
      if (g.size() == 1) return BiDense{{Rat(1)}}; // coprime images: gcd is 1
      if (g.size() - 1 > gdeg) continue;          // unlucky point, skip
      if (g.size() - 1 < gdeg) {                  // all earlier points were unlucky
        gdeg = g.size() - 1;
        xs.clear();
        ys.clear();
      }
      Rat s = uni_eval(gamma, v);
      for (auto& c : g) c *= s;
      xs.push_back(v);
      ys.push_back(std::move(g));
    }

    // Lagrange interpolation of each q-coefficient as a polynomial in t.
    BiDense h(gdeg + 1);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      UniPoly basis{Rat(1)};
      Rat denom(1);
      for (std::size_t j = 0; j < xs.size(); ++j) {
        if (j == i) continue;
        basis = uni_mul(basis, UniPoly{-xs[j], Rat(1)});
        denom *= xs[i] - xs[j];
      }
      for (auto& c : basis) c /= denom;
      for (std::size_t iq = 0; iq <= gdeg; ++iq) {
        Rat y = iq < ys[i].size() ? ys[i][iq] : Rat(0);
        if (y == 0) continue;
        if (h[iq].size() < basis.size()) h[iq].resize(basis.size(), Rat(0));
        for (std::size_t j = 0; j < basis.size(); ++j) h[iq][j] += y * basis[j];
      }
    }
    for (auto& c : h) uni_trim(c);
    bi_trim(h);
    if (!h.empty()) {
      UniPoly ch = bi_content(h);
      h = bi_divide_content(std::move(h), ch);
      // Certify: the candidate must divide both inputs exactly.
      QTPoly hp = bi_to_qt(h);
      if (QTPoly::divide_exact(bi_to_qt(a), hp) && QTPoly::divide_exact(bi_to_qt(b), hp))
        return h;
    }
    // Some retained points were unlucky; discard the batch and try fresh
    // values.  A batch free of unlucky points certifies, so this terminates
    // well within the budget in practice.
    xs.clear();
    ys.clear();
  }
}

BiDense bi_gcd(BiDense a, BiDense b) {
  bi_trim(a);
  bi_trim(b);
  if (a.empty()) return b;
  if (b.empty()) return a;
  UniPoly ca = bi_content(a);
  UniPoly cb = bi_content(b);
  UniPoly cg = uni_gcd(ca, cb);
  a = bi_divide_content(std::move(a), ca);
  b = bi_divide_content(std::move(b), cb);
  BiDense g;
  if (auto m = bi_gcd_modular(a, b))
    g = std::move(*m);
  else
    g = bi_gcd_prs(std::move(a), std::move(b));
  for (auto& c : g) c = uni_mul(c, cg);
  return g;
}

bool bi_is_constant(const BiDense& p) {
  return p.empty() || (p.size() == 1 && p[0].size() <= 1);
}

} // namespace

// ---------------------------------------------------------------------------
// QTRatFunc

QTRatFunc::QTRatFunc(const QTPoly& n, const QTPoly& d) : num_(n), den_(d) {
  if (den_.is_zero()) throw Error(ErrorCode::Precondition, "zero denominator");
  normalize();
}

void QTRatFunc::normalize() {
  if (num_.is_zero()) {
    den_ = QTPoly(Rat(1));
    return;
  }
  int sq = std::min(num_.min_q(), den_.min_q());
  int st = std::min(num_.min_t(), den_.min_t());
  if (sq != 0 || st != 0) {
    num_ = num_.shifted(-sq, -st);
    den_ = den_.shifted(-sq, -st);
  }
  if (!(den_ == QTPoly(Rat(1)))) {
    // Cancel the polynomial gcd; both sides have nonnegative exponents here.
    BiDense g = bi_gcd(bi_from_qt(num_.shifted(-num_.min_q(), -num_.min_t())),
                       bi_from_qt(den_.shifted(-den_.min_q(), -den_.min_t())));
    if (!bi_is_constant(g)) {
      QTPoly gp = bi_to_qt(g);
      num_ = *QTPoly::divide_exact(num_, gp);
      den_ = *QTPoly::divide_exact(den_, gp);
    }
  }
  Rat lead = den_.terms().rbegin()->second;
  if (lead != 1) {
    Rat inv = Rat(1) / lead;
    num_ = num_.scaled(inv);
    den_ = den_.scaled(inv);
  }
}

bool QTRatFunc::operator==(const QTRatFunc& o) const {
  if (den_ == o.den_) return num_ == o.num_;
  return num_ * o.den_ == o.num_ * den_;
}

QTRatFunc QTRatFunc::operator-() const {
  QTRatFunc r = *this;
  r.num_ = -r.num_;
  return r;
}

QTRatFunc operator+(const QTRatFunc& a, const QTRatFunc& b) {
  if (a.den_ == b.den_) {
    QTRatFunc r;
    r.num_ = a.num_ + b.num_;
    r.den_ = a.den_;
    r.normalize();
    return r;
  }
  return QTRatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

QTRatFunc operator-(const QTRatFunc& a, const QTRatFunc& b) { return a + (-b); }

QTRatFunc operator*(const QTRatFunc& a, const QTRatFunc& b) {
  return QTRatFunc(a.num_ * b.num_, a.den_ * b.den_);
}

QTRatFunc operator/(const QTRatFunc& a, const QTRatFunc& b) {
  if (b.is_zero()) throw Error(ErrorCode::Precondition, "zero denominator");
  return QTRatFunc(a.num_ * b.den_, a.den_ * b.num_);
}

QTPoly QTRatFunc::to_poly() const {
  auto q = QTPoly::divide_exact(num_, den_);
  if (!q) throw Error(ErrorCode::Precondition, "rational function is not polynomial");
  return *q;
}

// ---------------------------------------------------------------------------
// SymPoly

void SymPoly::add_term(const std::vector<unsigned>& exp, const QTPoly& c) {
  if (exp.size() != nvars_)
    throw Error(ErrorCode::Precondition, "variable counts do not match");
  if (c.is_zero()) return;
  auto it = t_.find(exp);
  if (it == t_.end()) {
    t_[exp] = c;
  } else {
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
  }
}

const QTPoly& SymPoly::coeff(const std::vector<unsigned>& exp) const {
  static const QTPoly zero;
  auto it = t_.find(exp);
  return it == t_.end() ? zero : it->second;
}

SymPoly SymPoly::operator-() const {
  SymPoly r(nvars_);
  for (const auto& [e, c] : t_) r.t_[e] = -c;
  return r;
}

SymPoly operator+(const SymPoly& a, const SymPoly& b) {
  if (a.nvars_ != b.nvars_)
    throw Error(ErrorCode::Precondition, "variable counts do not match");
  SymPoly r = a;
  for (const auto& [e, c] : b.t_) r.add_term(e, c);
  return r;
}

SymPoly operator-(const SymPoly& a, const SymPoly& b) { return a + (-b); }

SymPoly operator*(const SymPoly& a, const SymPoly& b) {
  if (a.nvars_ != b.nvars_)
    throw Error(ErrorCode::Precondition, "variable counts do not match");
  SymPoly r(a.nvars_);
  for (const auto& [ea, ca] : a.t_)
    for (const auto& [eb, cb] : b.t_) {
      std::vector<unsigned> e(a.nvars_);
      for (unsigned i = 0; i < a.nvars_; ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  return r;
}

SymPoly SymPoly::scaled(const QTPoly& c) const {
  SymPoly r(nvars_);
  if (c.is_zero()) return r;
  for (const auto& [e, co] : t_) r.add_term(e, co * c);
  return r;
}

SymPoly SymPoly::qt_swapped() const {
  SymPoly r(nvars_);
  for (const auto& [e, c] : t_) r.t_[e] = c.qt_swapped();
  return r;
}

bool SymPoly::is_symmetric() const {
  for (const auto& [e, c] : t_) {
    std::vector<unsigned> s = e;
    std::sort(s.rbegin(), s.rend());
    if (!(coeff(s) == c)) return false;
  }
  return true;
}

std::map<Partition, QTPoly> SymPoly::monomial_expansion() const {
  std::map<Partition, QTPoly> out;
  for (const auto& [e, c] : t_) {
    std::vector<unsigned> s = e;
    std::sort(s.rbegin(), s.rend());
    if (s != e) continue;
    while (!s.empty() && s.back() == 0) s.pop_back();
    out[Partition{s}] = c;
  }
  return out;
}

SymPoly SymPoly::monomial_sym(const Partition& lam, unsigned nvars) {
  SymPoly r(nvars);
  if (lam.length() > nvars) return r;
  std::vector<unsigned> e(nvars, 0);
  std::copy(lam.parts.begin(), lam.parts.end(), e.begin());
  std::sort(e.begin(), e.end());
  QTPoly one{Rat(1)};
  do {
    r.t_[e] = one;
  } while (std::next_permutation(e.begin(), e.end()));
  return r;
}

SymPoly SymPoly::schur(const Partition& lam, unsigned nvars) {
  SymPoly r(nvars);
  if (lam.length() > nvars) return r;
  if (lam.empty()) {
    r.add_term(std::vector<unsigned>(nvars, 0), QTPoly(Rat(1)));
    return r;
  }
  // Enumerate semistandard tableaux: rows weakly increase left to right,
  // columns strictly increase downward, entries in 1..nvars.
  const auto& parts = lam.parts;
  std::vector<std::vector<unsigned>> fill(parts.size());
  for (std::size_t i = 0; i < parts.size(); ++i) fill[i].assign(parts[i], 0);
  std::vector<unsigned> counts(nvars, 0);
  QTPoly one{Rat(1)};
  auto rec = [&](auto&& self, std::size_t row, std::size_t col) -> void {
    if (row == parts.size()) {
      r.add_term(counts, one);
      return;
    }
    std::size_t nr = row, nc = col + 1;
    if (nc == parts[row]) {
      nr = row + 1;
      nc = 0;
    }
    unsigned lo = 1;
    if (col > 0) lo = std::max(lo, fill[row][col - 1]);
    if (row > 0) lo = std::max(lo, fill[row - 1][col] + 1);
    for (unsigned v = lo; v <= nvars; ++v) {
      fill[row][col] = v;
      ++counts[v - 1];
      self(self, nr, nc);
      --counts[v - 1];
    }
  };
  rec(rec, 0, 0);
  return r;
}

SymPoly SymPoly::from_m_basis(const std::map<Partition, QTPoly>& coeffs, unsigned nvars) {
  SymPoly r(nvars);
  for (const auto& [lam, c] : coeffs) {
    if (lam.length() > nvars) continue;
    r += monomial_sym(lam, nvars).scaled(c);
  }
  return r;
}

namespace {

// Greedy extraction of a symmetric polynomial on a graded triangular basis
// (basis_lam = m_lam + dominance-lower terms).
std::map<Partition, QTPoly>
triangular_expansion(SymPoly f, const std::function<SymPoly(const Partition&, unsigned)>& basis) {
  std::map<Partition, QTPoly> out;
  unsigned nvars = f.nvars();
  long guard = 0;
  while (!f.is_zero()) {
    if (++guard > 100000)
      throw Error(ErrorCode::Precondition, "triangular expansion did not terminate");
    // The lexicographically greatest exponent of a symmetric polynomial is
    // weakly decreasing, hence names a partition.
    auto it = f.terms().rbegin();
    std::vector<unsigned> e = it->first;
    QTPoly c = it->second;
    std::vector<unsigned> s = e;
    std::sort(s.rbegin(), s.rend());
    if (s != e)
      throw Error(ErrorCode::Precondition, "polynomial is not symmetric");
    while (!s.empty() && s.back() == 0) s.pop_back();
    Partition lam{s};
    out[lam] = c;
    f -= basis(lam, nvars).scaled(c);
  }
  return out;
}

} // namespace

std::map<Partition, QTPoly> SymPoly::schur_expansion() const {
  return triangular_expansion(
      *this, [](const Partition& lam, unsigned nv) { return SymPoly::schur(lam, nv); });
}

// ---------------------------------------------------------------------------
// Modified Macdonald polynomials from fill statistics.

SymPoly modified_macdonald(const Partition& mu, unsigned nvars) {
  SymPoly result(nvars);
  if (mu.empty()) {
    result.add_term(std::vector<unsigned>(nvars, 0), QTPoly(Rat(1)));
    return result;
  }
  const auto& parts = mu.parts; // parts[0] is the longest (bottom) row
  Partition conj = mu.conjugate();
  struct Cell {
    unsigned row;  // 1-based from the bottom
    unsigned col;  // 1-based from the left
    unsigned arm, leg;
    int below; // index of the cell directly below, -1 if in the bottom row
  };
  std::vector<Cell> cells;
  // Reading order: top row first, each row left to right.
  for (unsigned i = static_cast<unsigned>(parts.size()); i >= 1; --i)
    for (unsigned j = 1; j <= parts[i - 1]; ++j) {
      Cell c;
      c.row = i;
      c.col = j;
      c.arm = parts[i - 1] - j;
      c.leg = conj.parts[j - 1] - i;
      c.below = -1;
      cells.push_back(c);
    }
  const std::size_t n = cells.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (cells[b].row + 1 == cells[a].row && cells[b].col == cells[a].col)
        cells[a].below = static_cast<int>(b);
  // Attack pairs (first component earlier in reading order): two cells in the
  // same row, or u = (i, j) with v = (i-1, k) and k < j.
  std::vector<std::pair<std::size_t, std::size_t>> attacks;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      const Cell &u = cells[a], &v = cells[b];
      if (u.row == v.row || (v.row + 1 == u.row && v.col < u.col))
        attacks.emplace_back(a, b);
    }
  std::vector<unsigned> fill(n, 1);
  std::map<std::vector<unsigned>, QTPoly> acc;
  for (;;) {
    long inv_pairs = 0;
    for (const auto& [a, b] : attacks)
      if (fill[a] > fill[b]) ++inv_pairs;
    long maj = 0, arm_sum = 0;
    for (std::size_t a = 0; a < n; ++a)
      if (cells[a].below >= 0 && fill[a] > fill[static_cast<std::size_t>(cells[a].below)]) {
        maj += cells[a].leg + 1;
        arm_sum += cells[a].arm;
      }
    long inv = inv_pairs - arm_sum;
    if (inv < 0)
      throw Error(ErrorCode::Precondition, "negative inversion statistic");
    std::vector<unsigned> expv(nvars, 0);
    for (unsigned v : fill) ++expv[v - 1];
    acc[expv] += QTPoly::monomial(static_cast<int>(inv), static_cast<int>(maj));
    // Next filling.
    std::size_t pos = 0;
    while (pos < n && fill[pos] == nvars) fill[pos++] = 1;
    if (pos == n) break;
    ++fill[pos];
  }
  for (const auto& [e, c] : acc) result.add_term(e, c);
  return result;
}

// ---------------------------------------------------------------------------
// Gram-Schmidt construction (oracle route).

namespace {

// Expansion of p_lambda in nv variables on the raw monomial support.
std::map<std::vector<unsigned>, Rat> expand_power_sum(const Partition& lam, unsigned nv) {
  std::map<std::vector<unsigned>, Rat> cur;
  cur[std::vector<unsigned>(nv, 0)] = Rat(1);
  for (unsigned k : lam.parts) {
    std::map<std::vector<unsigned>, Rat> nxt;
    for (const auto& [e, c] : cur)
      for (unsigned i = 0; i < nv; ++i) {
        std::vector<unsigned> e2 = e;
        e2[i] += k;
        nxt[e2] += c;
      }
    cur = std::move(nxt);
  }
  return cur;
}

Rat z_stat(const Partition& lam) {
  std::map<unsigned, unsigned> mult;
  for (unsigned p : lam.parts) ++mult[p];
  Rat z(1);
  for (const auto& [part, m] : mult) {
    for (unsigned i = 0; i < m; ++i) z *= Rat(part);
    for (unsigned i = 2; i <= m; ++i) z *= Rat(i);
  }
  return z;
}

using Vec = std::map<std::size_t, QTRatFunc>; // index into the partition list -> coord

struct GSBasis {
  std::vector<Partition> plist; // linear extension of dominance (ascending)
  // Transition matrices between the power-sum and monomial bases, indexed by
  // positions in plist: p_lam = sum_rho p_to_m[lam][rho] m_rho and back.
  std::vector<std::vector<Rat>> p_to_m, m_to_p;
  std::vector<QTRatFunc> diag;        // <p_lam, p_lam>
  std::vector<Vec> P_m, P_p;          // Gram-Schmidt output in both bases
  std::vector<QTRatFunc> P_norm;      // <P_lam, P_lam>
};

std::vector<std::vector<Rat>> invert_matrix(std::vector<std::vector<Rat>> a) {
  const std::size_t n = a.size();
  std::vector<std::vector<Rat>> inv(n, std::vector<Rat>(n, Rat(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = Rat(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) throw Error(ErrorCode::Precondition, "singular transition matrix");
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    Rat d = a[col][col];
    for (std::size_t j = 0; j < n; ++j) {
      a[col][j] /= d;
      inv[col][j] /= d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      Rat f = a[r][col];
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] -= f * a[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

QTRatFunc dot(const Vec& f, const Vec& g, const std::vector<QTRatFunc>& diag) {
  QTRatFunc acc;
  for (const auto& [i, fc] : f) {
    auto it = g.find(i);
    if (it == g.end()) continue;
    acc += fc * it->second * diag[i];
  }
  return acc;
}

const GSBasis& gs_basis(unsigned n, bool hl_mode) {
  static std::map<std::pair<unsigned, bool>, GSBasis> cache;
  auto key = std::make_pair(n, hl_mode);
  auto hit = cache.find(key);
  if (hit != cache.end()) return hit->second;
  if (n > 8) throw Error(ErrorCode::SizeLimit, "partition size too large for the basis construction");

  GSBasis b;
  b.plist = Partition::all_of_size(n);
  // Ascending lexicographic order on the parts vectors refines dominance.
  std::sort(b.plist.begin(), b.plist.end(),
            [](const Partition& x, const Partition& y) { return x.parts < y.parts; });
  const std::size_t m = b.plist.size();

  b.p_to_m.assign(m, std::vector<Rat>(m, Rat(0)));
  for (std::size_t i = 0; i < m; ++i) {
    auto expn = expand_power_sum(b.plist[i], n);
    for (std::size_t j = 0; j < m; ++j) {
      std::vector<unsigned> e(n, 0);
      std::copy(b.plist[j].parts.begin(), b.plist[j].parts.end(), e.begin());
      auto it = expn.find(e);
      if (it != expn.end()) b.p_to_m[i][j] = it->second;
    }
  }
  b.m_to_p = invert_matrix(b.p_to_m);

  b.diag.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    QTPoly num{z_stat(b.plist[i])};
    QTPoly den{Rat(1)};
    for (unsigned part : b.plist[i].parts) {
      if (!hl_mode)
        num *= QTPoly(Rat(1)) - QTPoly::monomial(static_cast<int>(part), 0);
      den *= QTPoly(Rat(1)) - QTPoly::monomial(0, static_cast<int>(part));
    }
    b.diag.emplace_back(num, den);
  }

  for (std::size_t i = 0; i < m; ++i) {
    Vec vm, vp;
    vm[i] = QTRatFunc(Rat(1));
    for (std::size_t j = 0; j < m; ++j)
      if (b.m_to_p[i][j] != 0) vp[j] = QTRatFunc(b.m_to_p[i][j]);
    for (std::size_t k = 0; k < i; ++k) {
      QTRatFunc c = dot(vp, b.P_p[k], b.diag) / b.P_norm[k];
      if (c.is_zero()) continue;
      for (const auto& [idx, coord] : b.P_m[k]) {
        vm[idx] -= c * coord;
        if (vm[idx].is_zero()) vm.erase(idx);
      }
      for (const auto& [idx, coord] : b.P_p[k]) {
        vp[idx] -= c * coord;
        if (vp[idx].is_zero()) vp.erase(idx);
      }
    }
    b.P_norm.push_back(dot(vp, vp, b.diag));
    b.P_m.push_back(std::move(vm));
    b.P_p.push_back(std::move(vp));
  }
  return cache.emplace(key, std::move(b)).first->second;
}

std::size_t plist_index(const GSBasis& b, const Partition& mu) {
  for (std::size_t i = 0; i < b.plist.size(); ++i)
    if (b.plist[i] == mu) return i;
  throw Error(ErrorCode::Precondition, "partition not found in basis list");
}

} // namespace

SymPoly macdonald_oracle(const Partition& mu, unsigned nvars) {
  if (mu.empty()) return modified_macdonald(mu, nvars);
  const unsigned n = mu.size();
  const GSBasis& b = gs_basis(n, /*hl_mode=*/false);
  const std::size_t mi = plist_index(b, mu);

  // Integral form J_mu = c_mu P_mu with c_mu = prod (1 - q^arm t^(leg+1)).
  QTPoly c_mu{Rat(1)};
  for (const auto& box : mu.boxes())
    c_mu *= QTPoly(Rat(1)) -
            QTPoly::monomial(static_cast<int>(box.arm), static_cast<int>(box.leg) + 1);
  Vec J_p;
  for (const auto& [idx, coord] : b.P_p[mi]) J_p[idx] = coord * QTRatFunc(c_mu);

  // Plethysm p_k -> p_k / (1 - t^k), then t -> 1/t, then multiply by t^n(mu).
  QTPoly tshift = QTPoly::monomial(0, static_cast<int>(mu.n_stat()));
  Vec H_p;
  for (const auto& [idx, coord] : J_p) {
    QTPoly den{Rat(1)};
    for (unsigned part : b.plist[idx].parts)
      den *= QTPoly(Rat(1)) - QTPoly::monomial(0, static_cast<int>(part));
    QTRatFunc v = coord * QTRatFunc(QTPoly(Rat(1)), den);
    H_p[idx] = v.t_inverted() * QTRatFunc(tshift);
  }

  // Back to the monomial basis; every coordinate must come out polynomial.
  std::map<Partition, QTPoly> H_m;
  for (std::size_t j = 0; j < b.plist.size(); ++j) {
    QTRatFunc acc;
    for (const auto& [idx, coord] : H_p)
      if (b.p_to_m[idx][j] != 0) acc += coord * QTRatFunc(b.p_to_m[idx][j]);
    if (!acc.is_zero()) H_m[b.plist[j]] = acc.to_poly();
  }
  return SymPoly::from_m_basis(H_m, nvars);
}

SymPoly hall_littlewood(const Partition& lam, unsigned nvars) {
  if (lam.empty()) {
    SymPoly r(nvars);
    r.add_term(std::vector<unsigned>(nvars, 0), QTPoly(Rat(1)));
    return r;
  }
  const GSBasis& b = gs_basis(lam.size(), /*hl_mode=*/true);
  const std::size_t li = plist_index(b, lam);
  std::map<Partition, QTPoly> coeffs;
  for (const auto& [idx, coord] : b.P_m[li]) coeffs[b.plist[idx]] = coord.to_poly();
  return SymPoly::from_m_basis(coeffs, nvars);
}

std::map<Partition, QTPoly> hl_structure_constants(const Partition& mu, const Partition& nu) {
  const unsigned n = mu.size() + nu.size();
  const unsigned nv = std::max(1u, n);
  SymPoly prod = hall_littlewood(mu, nv) * hall_littlewood(nu, nv);
  return triangular_expansion(
      prod, [](const Partition& lam, unsigned v) { return hall_littlewood(lam, v); });
}

Rat hall_number_from_hl(const Partition& lam, const Partition& mu, const Partition& nu,
                        const Rat& q) {
  if (lam.size() != mu.size() + nu.size()) return Rat(0);
  auto sc = hl_structure_constants(mu, nu);
  auto it = sc.find(lam);
  if (it == sc.end()) return Rat(0);
  long e = static_cast<long>(lam.n_stat()) - static_cast<long>(mu.n_stat()) -
           static_cast<long>(nu.n_stat());
  return rat_pow(q, e) * it->second.eval(Rat(0), Rat(1) / q);
}

} // namespace motivic
