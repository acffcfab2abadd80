#include "motivic/dt_engine.hpp"

#include "motivic/plethystic.hpp"
#include "motivic/symfunc.hpp"

#include <sstream>

namespace motivic {

void PunctureConfig::validate() const {
  if (order < 1) throw Error(ErrorCode::Config, "order must be positive");
  if (principal_parts.size() != weights.size())
    throw Error(ErrorCode::Config, "each parabolic level needs a principal part and a weight");
  for (const auto& pp : principal_parts)
    if (pp.size() != order)
      throw Error(ErrorCode::Config, "principal part must list exactly one coefficient per pole order");
  for (std::size_t j = 1; j < weights.size(); ++j)
    if (weights[j] < weights[j - 1])
      throw Error(ErrorCode::Config, "weights must be weakly increasing");
  for (std::size_t j = 0; j < weights.size(); ++j)
    if (weights[j] > weights[0] + Rat(order))
      throw Error(ErrorCode::Config, "weights must stay within one period of the first weight");
}

unsigned ModelConfig::delta() const {
  unsigned d = 0;
  for (const auto& p : punctures) d += p.order - 1;
  return d;
}

SeriesShape ModelConfig::shape() const {
  SeriesShape s;
  for (const auto& p : punctures) s.puncture_levels.push_back(p.levels());
  return s;
}

void ModelConfig::validate() const {
  curve.validate();
  for (const auto& p : punctures) p.validate();
  if (trunc.z_max < 1) throw Error(ErrorCode::Config, "z_max must be at least 1");
}

void ModelConfig::check_gamma(const GammaClass& g) const {
  if (g.r_xj.size() != punctures.size())
    throw Error(ErrorCode::Precondition, "gamma shape does not match configuration");
  for (std::size_t x = 0; x < punctures.size(); ++x) {
    if (g.r_xj[x].size() != punctures[x].levels())
      throw Error(ErrorCode::Precondition, "gamma shape does not match configuration");
    unsigned sum = 0;
    for (unsigned v : g.r_xj[x]) sum += v;
    if (sum != g.r)
      throw Error(ErrorCode::Precondition, "flag jumps must sum to the rank at each puncture");
  }
}

Pairings class_pairings(const GammaClass& gamma, const ModelConfig& cfg) {
  cfg.check_gamma(gamma);
  Pairings p;
  p.star_zeta = Rat(0);
  p.star_sigma = Rat(0);
  long cross = 0;
  for (std::size_t x = 0; x < cfg.punctures.size(); ++x) {
    const auto& pc = cfg.punctures[x];
    const auto& rx = gamma.r_xj[x];
    for (std::size_t j = 0; j < rx.size(); ++j) {
      if (rx[j] == 0) continue;
      p.star_zeta += Rat(rx[j]) * pc.residue(static_cast<unsigned>(j));
      p.star_sigma += Rat(rx[j]) * pc.weights[j];
    }
    for (std::size_t i = 0; i < rx.size(); ++i)
      for (std::size_t j = i + 1; j < rx.size(); ++j)
        cross += static_cast<long>(pc.order) * rx[i] * rx[j];
  }
  const long g = cfg.curve.genus, r = gamma.r;
  p.chi = (2 * g - 2) * r * r - static_cast<long>(cfg.delta()) * r + 2 * cross;
  return p;
}

AdmissibilityReport admissibility(const GammaClass& gamma, const ModelConfig& cfg) {
  cfg.check_gamma(gamma);
  AdmissibilityReport rep;
  for (std::size_t x = 0; x < cfg.punctures.size(); ++x) {
    const auto& pc = cfg.punctures[x];
    const auto& rx = gamma.r_xj[x];
    bool full = true;
    for (unsigned v : rx)
      if (v > 1) full = false;
    rep.full_at.push_back(full);
    bool nonres = true;
    for (std::size_t i = 0; i < rx.size() && nonres; ++i) {
      if (rx[i] == 0) continue;
      for (std::size_t j = i + 1; j < rx.size() && nonres; ++j) {
        if (rx[j] == 0) continue;
        if (pc.leading(static_cast<unsigned>(i)) == pc.leading(static_cast<unsigned>(j)))
          nonres = false;
      }
    }
    rep.nonresonant_at.push_back(nonres);
  }
  Pairings p = class_pairings(gamma, cfg);
  rep.residue_condition = (cfg.epsilon * Rat(gamma.d) + p.star_zeta == 0);
  return rep;
}

namespace {

// Coefficient of y^{m-2j} L^j in the closed form of the two-term recurrence
// c_m = y c_{m-1} - L c_{m-2}, c_0 = 2, c_1 = y (up to the sign (-1)^j):
// (m/(m-j)) * binom(m-j, j).
Rat trace_recurrence_coef(unsigned m, unsigned j) {
  Rat c(1);
  for (unsigned i = 1; i <= j; ++i) c = c * Rat(m - 2 * j + i) / Rat(i);
  return c * Rat(m) / Rat(m - j);
}

// Power sums of the curve's 2g root symbols {a_1..a_g, L/a_1..L/a_g}.  The
// free generators are the engine symbols p_1..p_g; every higher power sum is
// a polynomial in those and L, through the trace coordinates y_i = a_i + L/a_i:
//   p~_m = sum_j (-1)^j (m/(m-j)) binom(m-j,j) L^j Y_{m-2j},   Y_m = sum_i y_i^m,
// with Y_m for m > g closed by the Newton recurrence of the g-variable ring.
// Returns entries 1..nmax (index 0 unused).
std::vector<MotCoeff> duality_power_sums(unsigned g, unsigned nmax) {
  std::vector<MotCoeff> P(nmax + 1);
  if (nmax == 0) return P;
  std::vector<MotCoeff> Y(nmax + 1);
  Y[0] = MotCoeff(Rat(static_cast<long>(g)));
  const unsigned ylow = std::min<unsigned>(g, nmax);
  for (unsigned m = 1; m <= ylow; ++m) {
    // Invert the p~ <-> Y relation triangularly: for m <= g, p~_m is p_m itself.
    MotCoeff acc = MotCoeff::p_symbol(m);
    for (unsigned j = 1; 2 * j <= m; ++j) {
      MotCoeff term =
          Y[m - 2 * j].mul_lpoly(LPoly::l_power(static_cast<int>(j)))
              .scaled(trace_recurrence_coef(m, j));
      acc += (j % 2 == 1) ? term : -term;
    }
    Y[m] = acc;
  }
  if (nmax > g) {
    // Elementary symmetrics t_1..t_g of the y's, then the g-term recurrence.
    std::vector<MotCoeff> t;
    t.push_back(MotCoeff(Rat(1)));
    for (unsigned k = 1; k <= g; ++k) {
      MotCoeff acc;
      for (unsigned i = 1; i <= k; ++i) {
        MotCoeff term = t[k - i] * Y[i];
        acc += (i % 2 == 1) ? term : -term;
      }
      t.push_back(acc.scaled(Rat(1) / Rat(k)));
    }
    for (unsigned m = g + 1; m <= nmax; ++m) {
      MotCoeff acc;
      for (unsigned k = 1; k <= g; ++k) {
        MotCoeff term = t[k] * Y[m - k];
        acc += (k % 2 == 1) ? term : -term;
      }
      Y[m] = acc;
    }
  }
  for (unsigned n = 1; n <= nmax; ++n) {
    if (n <= g) {
      P[n] = MotCoeff::p_symbol(n);
      continue;
    }
    MotCoeff acc;
    for (unsigned j = 0; 2 * j <= n; ++j) {
      MotCoeff term =
          Y[n - 2 * j].mul_lpoly(LPoly::l_power(static_cast<int>(j)))
              .scaled(trace_recurrence_coef(n, j));
      acc += (j % 2 == 0) ? term : -term;
    }
    P[n] = acc;
  }
  return P;
}

// Elementary classes e_0..e_2g of the curve symbol, via Newton's identities
// over the duality power sums: k e_k = sum_{i=1}^k (-1)^{i-1} e_{k-i} p~_i.
// By construction e_{2g-i} = L^{g-i} e_i holds identically; for g = 1 this
// gives e_1 = p_1 and e_2 = L.
std::vector<MotCoeff> motivic_elementary_classes(unsigned g) {
  const unsigned n = 2 * g;
  auto P = duality_power_sums(g, n);
  std::vector<MotCoeff> e;
  e.push_back(MotCoeff(Rat(1)));
  for (unsigned k = 1; k <= n; ++k) {
    MotCoeff acc;
    for (unsigned i = 1; i <= k; ++i) {
      MotCoeff term = e[k - i] * P[i];
      acc += (i % 2 == 1) ? term : -term;
    }
    e.push_back(acc.scaled(Rat(1) / Rat(k)));
  }
  return e;
}

using Series = GradedSeries<FractionCoeff>;

// One-sided z-expansion of 1/(z^m - L^s) for m > 0:
//   -L^{-s} sum_{k>=0} z^{mk} L^{-sk}.
Series geometric_factor(const SeriesShape& shape, const Truncation& tr, unsigned m, int s) {
  Series out(shape, tr);
  for (unsigned k = 0; m * k <= tr.z_max; ++k) {
    FractionCoeff c(MotCoeff::l_power(-s * static_cast<int>(k + 1), Rat(-1)));
    out.add_term(MonomialIndex(shape, 0, m * k), c);
  }
  return out;
}

} // namespace

MotCoeff reduce_curve_symbols(const MotCoeff& c, unsigned genus) {
  unsigned hi = 0;
  for (const auto& [key, lp] : c.terms()) {
    (void)lp;
    for (unsigned idx : key.ps)
      if (idx > genus && idx > hi) hi = idx;
  }
  if (hi == 0) return c;
  const auto P = duality_power_sums(genus, hi);
  MotCoeff out;
  for (const auto& [key, lp] : c.terms()) {
    MotCoeff term{lp};
    for (unsigned k = 0; k < key.jac; ++k) term = term * MotCoeff::jac_symbol();
    for (unsigned idx : key.ps)
      term = term * (idx <= genus ? MotCoeff::p_symbol(idx) : P[idx]);
    out += term;
  }
  return out;
}

FractionCoeff reduce_curve_symbols(const FractionCoeff& c, unsigned genus) {
  return FractionCoeff(reduce_curve_symbols(c.num(), genus),
                       reduce_curve_symbols(c.den(), genus));
}

GradedSeries<FractionCoeff> reduce_curve_symbols(const GradedSeries<FractionCoeff>& s,
                                                 unsigned genus) {
  GradedSeries<FractionCoeff> out(s.shape(), s.trunc());
  for (const auto& [m, c] : s.terms()) {
    FractionCoeff r = reduce_curve_symbols(c, genus);
    if (!r.is_zero()) out.add_term(m, r);
  }
  return out;
}

GradedSeries<FractionCoeff> omega_series(const ModelConfig& cfg) {
  cfg.validate();
  const SeriesShape shape = cfg.shape();
  const Truncation tr = cfg.trunc;
  const unsigned g2 = 2 * cfg.curve.genus;
  const unsigned delta = cfg.delta();
  const auto elem = motivic_elementary_classes(cfg.curve.genus);

  Series omega(shape, tr);
  omega.add_term(MonomialIndex(shape, 0, 0), FractionCoeff::one());

  for (unsigned n = 1; n <= tr.r_max; ++n) {
    for (const Partition& mu : Partition::all_of_size(n)) {
      // (-L^(1/2)) ^ ((2g + delta) <mu,mu>), as a half-power monomial.
      const long pref_exp = static_cast<long>(g2 + delta) * static_cast<long>(mu.mu_mu());
      FractionCoeff pref(MotCoeff::half_power(static_cast<int>(pref_exp),
                                              pref_exp % 2 != 0 ? Rat(-1) : Rat(1)));
      Series term(shape, tr);
      const unsigned zshift = 2 * delta * mu.conjugate().n_stat();
      if (zshift > tr.z_max) continue; // the whole mu-term starts beyond the window
      term.add_term(MonomialIndex(shape, 0, zshift), pref);

      for (const auto& box : mu.boxes()) {
        const unsigned a = box.arm;
        const int l = static_cast<int>(box.leg);
        // Numerator L_X(z^{2a+1} L^{-l-1}) = sum_k (-1)^k e_k z^{(2a+1)k} L^{-(l+1)k}.
        Series numer(shape, tr);
        for (unsigned k = 0; k <= g2 && (2 * a + 1) * k <= tr.z_max; ++k) {
          MotCoeff c = elem[k].mul_lpoly(LPoly::l_power(-(l + 1) * static_cast<int>(k)));
          if (k % 2 == 1) c = -c;
          numer.add_term(MonomialIndex(shape, 0, (2 * a + 1) * k), FractionCoeff(c));
        }
        term *= numer;
        term *= geometric_factor(shape, tr, 2 * a + 2, l);
        if (a > 0) {
          term *= geometric_factor(shape, tr, 2 * a, l + 1);
        } else {
          // z^0 - L^{l+1} is z-free: a constant fraction 1/(1 - L^{l+1}).
          FractionCoeff c(MotCoeff::one(),
                          MotCoeff::one() - MotCoeff::l_power(l + 1));
          term = term.scalar_mul(c);
        }
      }

      for (std::size_t x = 0; x < cfg.punctures.size(); ++x) {
        const unsigned J = cfg.punctures[x].levels();
        Series local(shape, tr);
        const SymPoly hh = modified_macdonald(mu, J);
        for (const auto& [expv, qt] : hh.terms()) {
          for (const auto& [qe, coef] : qt.terms()) {
            // q -> z^2, t -> L.
            if (2 * qe.first < 0) continue;
            MonomialIndex m(shape, 0, static_cast<unsigned>(2 * qe.first));
            for (unsigned j = 0; j < J; ++j)
              m.set_punct(shape, static_cast<unsigned>(x), j, expv[j]);
            local.add_term(m, FractionCoeff(MotCoeff::l_power(qe.second, coef)));
          }
        }
        term *= local;
      }

      // Attach the w-grading: every monomial of the mu-term sits in w^n.
      for (const auto& [m, c] : term.terms()) {
        MonomialIndex idx = m;
        idx.set_rank(n);
        omega.add_term(idx, c);
      }
    }
  }
  return omega;
}

GradedSeries<FractionCoeff> h_series(const GradedSeries<FractionCoeff>& omega,
                                     unsigned genus) {
  auto lg = pleth_log(omega);
  Series zfac(omega.shape(), omega.trunc());
  zfac.add_term(MonomialIndex(omega.shape(), 0, 0), FractionCoeff::one());
  zfac.add_term(MonomialIndex(omega.shape(), 0, 2), FractionCoeff(Rat(-1)));
  return reduce_curve_symbols(lg * zfac, genus);
}

PolynomialityReport check_z_polynomiality(const GradedSeries<FractionCoeff>& h, unsigned guard) {
  if (guard < 1 || guard > h.trunc().z_max)
    throw Error(ErrorCode::Precondition, "guard must satisfy 1 <= guard <= z_max");
  PolynomialityReport rep;
  rep.window_low = h.trunc().z_max - guard + 1;
  std::map<MonomialIndex, unsigned> max_z;
  for (const auto& [m, c] : h.terms()) {
    (void)c;
    MonomialIndex key = m.with_z(0);
    auto [it, fresh] = max_z.emplace(key, m.z());
    if (!fresh && m.z() > it->second) it->second = m.z();
  }
  for (const auto& [key, mz] : max_z) {
    PolynomialityEntry e;
    e.w_monomial = key;
    e.max_z = mz;
    e.pass = mz < rep.window_low;
    if (!e.pass) rep.all_pass = false;
    rep.entries.push_back(e);
  }
  return rep;
}

namespace {

Rat monomial_star_zeta(const MonomialIndex& m, const SeriesShape& shape, const ModelConfig& cfg) {
  Rat acc(0);
  for (std::size_t x = 0; x < cfg.punctures.size(); ++x)
    for (unsigned j = 0; j < cfg.punctures[x].levels(); ++j) {
      unsigned e = m.punct(shape, static_cast<unsigned>(x), j);
      if (e) acc += Rat(e) * cfg.punctures[x].residue(j);
    }
  return acc;
}

Rat monomial_star_sigma(const MonomialIndex& m, const SeriesShape& shape, const ModelConfig& cfg) {
  Rat acc(0);
  for (std::size_t x = 0; x < cfg.punctures.size(); ++x)
    for (unsigned j = 0; j < cfg.punctures[x].levels(); ++j) {
      unsigned e = m.punct(shape, static_cast<unsigned>(x), j);
      if (e) acc += Rat(e) * cfg.punctures[x].weights[j];
    }
  return acc;
}

// Shared tail of conn_class / conn_ss_class: filter H(z=1), Exp, extract.
FractionCoeff extract_class(const ModelConfig& cfg, const GammaClass& gamma,
                            const std::function<bool(const MonomialIndex&)>& keep) {
  AdmissibilityReport rep = admissibility(gamma, cfg);
  for (std::size_t x = 0; x < cfg.punctures.size(); ++x) {
    if (cfg.punctures[x].order < 2) continue;
    if (!rep.full_at[x])
      throw Error(ErrorCode::Precondition,
                  "hypothesis failed: gamma is not full at puncture " + cfg.punctures[x].id);
    if (!rep.nonresonant_at[x])
      throw Error(ErrorCode::Precondition,
                  "hypothesis failed: principal parts are resonant at puncture " +
                      cfg.punctures[x].id);
  }
  Pairings pair = class_pairings(gamma, cfg);
  if (cfg.epsilon * Rat(gamma.d) + pair.star_zeta != 0)
    return FractionCoeff(); // empty stack: residue side condition fails
  if (gamma.r > cfg.trunc.r_max)
    throw Error(ErrorCode::Precondition, "rank exceeds the r_max truncation");

  auto omega = omega_series(cfg);
  auto h = h_series(omega, cfg.curve.genus);
  auto h1 = h.evaluate_z_one(cfg.guard);
  auto filtered = h1.filter(keep);
  auto ex = pleth_exp(filtered.scalar_mul(FractionCoeff::l_power(1)));
  ex = reduce_curve_symbols(ex, cfg.curve.genus);

  const SeriesShape shape = cfg.shape();
  MonomialIndex target(shape, gamma.r, 0);
  for (std::size_t x = 0; x < gamma.r_xj.size(); ++x)
    for (std::size_t j = 0; j < gamma.r_xj[x].size(); ++j)
      target.set_punct(shape, static_cast<unsigned>(x), static_cast<unsigned>(j),
                       gamma.r_xj[x][j]);
  FractionCoeff coeff = ex.coefficient_at(target);
  FractionCoeff pref(MotCoeff::half_power(static_cast<int>(pair.chi),
                                          pair.chi % 2 != 0 ? Rat(-1) : Rat(1)));
  return pref * coeff;
}

} // namespace

FractionCoeff conn_class(const ModelConfig& cfg, const GammaClass& gamma) {
  cfg.validate();
  cfg.check_gamma(gamma);
  if (cfg.epsilon == 0)
    throw Error(ErrorCode::Precondition, "hypothesis failed: epsilon must be nonzero");
  const SeriesShape shape = cfg.shape();
  const Rat eps = cfg.epsilon;
  return extract_class(cfg, gamma, [&cfg, shape, eps](const MonomialIndex& m) {
    return is_integer(monomial_star_zeta(m, shape, cfg) / eps);
  });
}

FractionCoeff conn_ss_class(const ModelConfig& cfg, const GammaClass& gamma) {
  cfg.validate();
  cfg.check_gamma(gamma);
  if (gamma.r == 0)
    throw Error(ErrorCode::Precondition, "rank must be positive");
  const SeriesShape shape = cfg.shape();
  const Rat eps = cfg.epsilon;
  Pairings pair = class_pairings(gamma, cfg);
  const Rat tau = (Rat(gamma.d) + pair.star_sigma) / Rat(gamma.r);
  return extract_class(cfg, gamma, [&cfg, shape, eps, tau](const MonomialIndex& m) {
    Rat sz = monomial_star_zeta(m, shape, cfg);
    bool zeta_ok = (eps == 0) ? (sz == 0) : is_integer(sz / eps);
    if (!zeta_ok) return false;
    Rat ss = monomial_star_sigma(m, shape, cfg);
    return is_integer(ss - tau * Rat(m.rank()));
  });
}

} // namespace motivic
