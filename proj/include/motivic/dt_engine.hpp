#pragma once

#include "motivic/graded_series.hpp"
#include "motivic/mot_coeff.hpp"
#include "motivic/partition.hpp"

#include <string>
#include <vector>

namespace motivic {

// One marked point: pole order n, one principal part per parabolic level
// (coefficients c_{-n}, ..., c_{-1} in a fixed local coordinate), and the
// weakly increasing parabolic weights.
struct PunctureConfig {
  std::string id;
  unsigned order = 1;
  std::vector<std::vector<Rat>> principal_parts; // [level][order entries]
  std::vector<Rat> weights;                      // one per level

  unsigned levels() const { return static_cast<unsigned>(weights.size()); }
  const Rat& residue(unsigned j) const { return principal_parts[j].back(); }
  const Rat& leading(unsigned j) const { return principal_parts[j].front(); }
  void validate() const;
};

// Discrete class: rank, per-puncture flag jump vectors, and the degree.
struct GammaClass {
  unsigned r = 0;
  std::vector<std::vector<unsigned>> r_xj;
  long d = 0;
};

struct ModelConfig {
  CurveData curve;
  std::vector<PunctureConfig> punctures;
  Rat epsilon = Rat(1);
  Truncation trunc{3, 12};
  unsigned guard = 4;

  unsigned delta() const; // sum of (order - 1)
  SeriesShape shape() const;
  void validate() const;
  // Checks that gamma fits this configuration's puncture shape and satisfies
  // the per-puncture sum relation.
  void check_gamma(const GammaClass& g) const;
};

struct Pairings {
  Rat star_zeta;  // sum_x sum_j r_xj * res zeta_xj
  Rat star_sigma; // sum_x sum_j r_xj * sigma_xj
  long chi;       // (2g-2)r^2 - delta r + 2 sum_{x, i<j} n_x r_xi r_xj
};

Pairings class_pairings(const GammaClass& gamma, const ModelConfig& cfg);

struct AdmissibilityReport {
  std::vector<bool> full_at;
  std::vector<bool> nonresonant_at;
  bool residue_condition = false; // epsilon*d + gamma*zeta == 0
};

AdmissibilityReport admissibility(const GammaClass& gamma, const ModelConfig& cfg);

// The master series Omega: sum over partitions mu with |mu| <= r_max of
//   w^|mu| (-L^(1/2))^{(2g+delta)<mu,mu>} z^{2 delta n(mu')}
//   prod_boxes L_X(z^{2a+1} L^{-l-1}) / ((z^{2a+2}-L^l)(z^{2a}-L^{l+1}))
//   prod_x  H~_mu(w_{x,*}; z^2, L),
// denominators expanded one-sidedly in positive powers of z.
//
// The numerator is the motivic L-polynomial: its coefficients are the
// elementary classes of the rank-2g curve symbol whose root multiset is
// closed under a -> L/a.  Concretely, e_k is a polynomial in p_1..p_g and L;
// the upper half satisfies e_{2g-i} = L^{g-i} e_i identically, which is the
// functional-equation input the z-polynomiality of H depends on.
GradedSeries<FractionCoeff> omega_series(const ModelConfig& cfg);

// H = (1 - z^2) Log Omega, computed in the curve's coefficient ring: after
// the plethystic log, every power-sum symbol p_n with n > genus is rewritten
// as the duality polynomial in p_1..p_genus and L (see reduce_curve_symbols).
// Without the rewrite the z-tails of the rank >= 2 coefficients do not
// cancel and the series never stabilizes.
GradedSeries<FractionCoeff> h_series(const GradedSeries<FractionCoeff>& omega, unsigned genus);

// Rewrites every p_n with n > genus into the relation-respecting polynomial
// in p_1..p_genus and L.  This is the ring homomorphism onto the curve's
// actual coefficient ring; it commutes with the Adams operations, so applying
// it after a plethystic operation gives the same result as computing in the
// quotient throughout.
MotCoeff reduce_curve_symbols(const MotCoeff& c, unsigned genus);
FractionCoeff reduce_curve_symbols(const FractionCoeff& c, unsigned genus);
GradedSeries<FractionCoeff> reduce_curve_symbols(const GradedSeries<FractionCoeff>& s,
                                                 unsigned genus);

struct PolynomialityEntry {
  MonomialIndex w_monomial; // z cleared
  unsigned max_z = 0;
  bool pass = true;
};

struct PolynomialityReport {
  bool all_pass = true;
  unsigned window_low = 0; // z-degrees >= this must vanish
  std::vector<PolynomialityEntry> entries;
};

// For every w-monomial of H, checks that the stored z-coefficients vanish in
// the top `guard` z-degrees of the truncation window.
PolynomialityReport check_z_polynomiality(const GradedSeries<FractionCoeff>& h, unsigned guard);

// Class of the stack of epsilon-connections of class gamma (degree gamma.d):
// the coefficient at w^gamma of (-L^(1/2))^chi Exp(L * filter(H at z=1)),
// where the filter keeps monomials with gamma*zeta in epsilon*Z.
// Hypothesis failures on fullness/non-resonance raise errors; a violated
// residue side condition epsilon*d + gamma*zeta = 0 makes the stack empty and
// the result 0.
FractionCoeff conn_class(const ModelConfig& cfg, const GammaClass& gamma);

// Same pipeline with the semistability filter added: monomials must also
// satisfy gamma*sigma - tau * rank in Z, where tau = (d + gamma*sigma)/r for
// the queried class.  epsilon = 0 is allowed; the first filter then reads
// gamma*zeta = 0.
FractionCoeff conn_ss_class(const ModelConfig& cfg, const GammaClass& gamma);

} // namespace motivic
