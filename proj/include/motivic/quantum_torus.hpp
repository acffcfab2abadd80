#pragma once

#include "motivic/mot_coeff.hpp"

#include <map>
#include <utility>
#include <vector>

namespace motivic {

using LatticeVector = std::vector<long>;

// Charge lattice with an antisymmetric integer pairing.
struct ChargeLattice {
  unsigned rank = 0;
  std::vector<std::vector<long>> skew_form; // rank x rank, antisymmetric

  void validate() const;
  long pair(const LatticeVector& a, const LatticeVector& b) const;
};

// Linear map to the complex plane, given by rational linear forms for the
// real and imaginary parts.
struct CentralCharge {
  std::vector<Rat> re, im;

  std::pair<Rat, Rat> operator()(const LatticeVector& v) const;
};

// Element of the graded algebra with basis e_gamma and product
// e_gamma e_mu = L^(<gamma,mu>/2) e_{gamma+mu}.  Support is clipped to the
// window |gamma|_1 <= window (mirroring the series truncation behavior).
class TorusElement {
public:
  TorusElement() = default;
  explicit TorusElement(unsigned window) : window_(window) {}

  static TorusElement unit(unsigned rank, unsigned window);

  unsigned window() const { return window_; }
  bool in_window(const LatticeVector& v) const;
  void add_term(const LatticeVector& v, const FractionCoeff& c);
  const FractionCoeff& coeff(const LatticeVector& v) const;
  const std::map<LatticeVector, FractionCoeff>& terms() const { return t_; }

  bool operator==(const TorusElement& o) const { return t_ == o.t_; }
  bool operator!=(const TorusElement& o) const { return !(*this == o); }

  friend TorusElement operator+(const TorusElement& a, const TorusElement& b);
  friend TorusElement operator-(const TorusElement& a, const TorusElement& b);

private:
  unsigned window_ = 0;
  std::map<LatticeVector, FractionCoeff> t_;
};

// Bilinear extension of the twisted relation.
TorusElement torus_mul(const TorusElement& a, const TorusElement& b, const ChargeLattice& lat);

// DT-invariant extraction along a single ray: with A = Exp(sum Omega(gamma)
// e_gamma / (1 - L^-1)), returns the map gamma -> Omega(gamma).
std::map<LatticeVector, FractionCoeff> dt_extract_ray(const TorusElement& a,
                                                      const ChargeLattice& lat);

// A ray in the central-charge plane, identified by a nonzero direction.
struct Ray {
  Rat x, y;
};

// Ordered (clockwise by ray) product of per-ray elements.
TorusElement sector_factorize(const std::vector<std::pair<TorusElement, Ray>>& ray_elements,
                              const ChargeLattice& lat);

} // namespace motivic
