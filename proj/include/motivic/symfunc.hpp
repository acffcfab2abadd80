#pragma once

#include "motivic/partition.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace motivic {

// Laurent polynomial in the two formal parameters (q_param, t_param) over the
// rationals.  Exponents may be negative (needed transiently for the t -> 1/t
// substitution in the modified-Macdonald normalization).
class QTPoly {
public:
  QTPoly() = default;
  explicit QTPoly(const Rat& c) {
    if (c != 0) t_[{0, 0}] = c;
  }
  static QTPoly monomial(int dq, int dt, const Rat& c = Rat(1)) {
    QTPoly p;
    if (c != 0) p.t_[{dq, dt}] = c;
    return p;
  }
  static QTPoly q_param() { return monomial(1, 0); }
  static QTPoly t_param() { return monomial(0, 1); }

  bool is_zero() const { return t_.empty(); }
  const std::map<std::pair<int, int>, Rat>& terms() const { return t_; }

  bool operator==(const QTPoly& o) const { return t_ == o.t_; }
  bool operator!=(const QTPoly& o) const { return !(*this == o); }

  QTPoly operator-() const;
  friend QTPoly operator+(const QTPoly& a, const QTPoly& b);
  friend QTPoly operator-(const QTPoly& a, const QTPoly& b);
  friend QTPoly operator*(const QTPoly& a, const QTPoly& b);
  QTPoly& operator+=(const QTPoly& o) { return *this = *this + o; }
  QTPoly& operator-=(const QTPoly& o) { return *this = *this - o; }
  QTPoly& operator*=(const QTPoly& o) { return *this = *this * o; }

  QTPoly scaled(const Rat& c) const;
  // Substitute t -> 1/t (and fix q): every monomial q^a t^b -> q^a t^-b.
  QTPoly t_inverted() const;
  // Swap the two parameters: q^a t^b -> q^b t^a.
  QTPoly qt_swapped() const;
  // Substitute q -> 0: drops terms with positive q-exponent (negative ones
  // are an error).
  QTPoly q_zero() const;
  Rat eval(const Rat& qv, const Rat& tv) const;

  int min_q() const;
  int min_t() const;
  QTPoly shifted(int dq, int dt) const;

  // Exact division; nullopt if b does not divide a.  Iteration-guarded.
  static std::optional<QTPoly> divide_exact(const QTPoly& a, const QTPoly& b);

  std::string to_string() const;

private:
  std::map<std::pair<int, int>, Rat> t_;
};

// Fraction of QTPolys, kept reduced: unit monomial factors are shifted out,
// the polynomial gcd of numerator and denominator is cancelled, and the
// denominator is scaled to leading coefficient one.  Equality is by
// cross-multiplication.
class QTRatFunc {
public:
  QTRatFunc() : num_(), den_(Rat(1)) {}
  explicit QTRatFunc(const Rat& c) : num_(c), den_(Rat(1)) {}
  explicit QTRatFunc(const QTPoly& n) : num_(n), den_(Rat(1)) {}
  QTRatFunc(const QTPoly& n, const QTPoly& d);

  bool is_zero() const { return num_.is_zero(); }
  const QTPoly& num() const { return num_; }
  const QTPoly& den() const { return den_; }

  bool operator==(const QTRatFunc& o) const;
  QTRatFunc operator-() const;
  friend QTRatFunc operator+(const QTRatFunc& a, const QTRatFunc& b);
  friend QTRatFunc operator-(const QTRatFunc& a, const QTRatFunc& b);
  friend QTRatFunc operator*(const QTRatFunc& a, const QTRatFunc& b);
  friend QTRatFunc operator/(const QTRatFunc& a, const QTRatFunc& b);
  QTRatFunc& operator+=(const QTRatFunc& o) { return *this = *this + o; }
  QTRatFunc& operator-=(const QTRatFunc& o) { return *this = *this - o; }
  QTRatFunc& operator*=(const QTRatFunc& o) { return *this = *this * o; }

  QTRatFunc t_inverted() const { return QTRatFunc(num_.t_inverted(), den_.t_inverted()); }
  // Exact polynomial value; throws if the denominator does not divide out.
  QTPoly to_poly() const;

private:
  void normalize();

  QTPoly num_, den_;
};

// Symmetric polynomial in a fixed number of variables x_1..x_J with QTPoly
// coefficients, stored on the full monomial support.
class SymPoly {
public:
  SymPoly() = default;
  explicit SymPoly(unsigned nvars) : nvars_(nvars) {}

  unsigned nvars() const { return nvars_; }
  bool is_zero() const { return t_.empty(); }
  const std::map<std::vector<unsigned>, QTPoly>& terms() const { return t_; }

  void add_term(const std::vector<unsigned>& exp, const QTPoly& c);
  const QTPoly& coeff(const std::vector<unsigned>& exp) const;

  bool operator==(const SymPoly& o) const { return nvars_ == o.nvars_ && t_ == o.t_; }
  bool operator!=(const SymPoly& o) const { return !(*this == o); }

  SymPoly operator-() const;
  friend SymPoly operator+(const SymPoly& a, const SymPoly& b);
  friend SymPoly operator-(const SymPoly& a, const SymPoly& b);
  friend SymPoly operator*(const SymPoly& a, const SymPoly& b);
  SymPoly& operator+=(const SymPoly& o) { return *this = *this + o; }
  SymPoly& operator-=(const SymPoly& o) { return *this = *this - o; }
  SymPoly& operator*=(const SymPoly& o) { return *this = *this * o; }
  SymPoly scaled(const QTPoly& c) const;

  bool is_symmetric() const;
  SymPoly qt_swapped() const;

  // Coefficients on the monomial symmetric basis: partition -> coefficient.
  std::map<Partition, QTPoly> monomial_expansion() const;
  // Expansion on the Schur basis (greedy extraction; the polynomial must be
  // symmetric).
  std::map<Partition, QTPoly> schur_expansion() const;

  // Monomial symmetric polynomial m_lambda in J variables (zero if the
  // partition is longer than J).
  static SymPoly monomial_sym(const Partition& lam, unsigned nvars);
  // Schur polynomial via semistandard tableaux.
  static SymPoly schur(const Partition& lam, unsigned nvars);
  static SymPoly from_m_basis(const std::map<Partition, QTPoly>& coeffs, unsigned nvars);

private:
  unsigned nvars_ = 0;
  std::map<std::vector<unsigned>, QTPoly> t_;
};

// Modified Macdonald polynomial H~_mu(x_1..x_J; q, t), computed from the
// fill-statistics formula (inv and maj over all fillings of the diagram).
SymPoly modified_macdonald(const Partition& mu, unsigned nvars);

// Independent slow construction of the same polynomial: Gram-Schmidt against
// dominance order under the (q,t) power-sum inner product gives the Macdonald
// P_mu, then the integral form J_mu, then the standard plethystic
// transformation and normalization.
SymPoly macdonald_oracle(const Partition& mu, unsigned nvars);

// Hall-Littlewood P_lambda(x; t): the q = 0 specialization of the Macdonald
// P construction.
SymPoly hall_littlewood(const Partition& lam, unsigned nvars);

// Structure constants f^lam_{mu,nu}(t) of the Hall-Littlewood basis:
// P_mu P_nu = sum_lam f^lam_{mu,nu} P_lam.
std::map<Partition, QTPoly> hl_structure_constants(const Partition& mu, const Partition& nu);

// Classical Hall number g^lam_{mu,nu}(q) at a concrete prime power, obtained
// from the Hall-Littlewood structure constants by
//   g^lam_{mu,nu}(q) = q^{n(lam)-n(mu)-n(nu)} f^lam_{mu,nu}(1/q).
Rat hall_number_from_hl(const Partition& lam, const Partition& mu, const Partition& nu,
                        const Rat& q);

} // namespace motivic
