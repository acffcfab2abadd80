#include "motivic/quantum_torus.hpp"

#include "motivic/graded_series.hpp"
#include "motivic/plethystic.hpp"

#include <numeric>

namespace motivic {

void ChargeLattice::validate() const {
  if (skew_form.size() != rank)
    throw Error(ErrorCode::Config, "skew form must be a rank x rank matrix");
  for (const auto& row : skew_form)
    if (row.size() != rank)
      throw Error(ErrorCode::Config, "skew form must be a rank x rank matrix");
  for (unsigned i = 0; i < rank; ++i)
    for (unsigned j = 0; j < rank; ++j)
      if (skew_form[i][j] != -skew_form[j][i])
        throw Error(ErrorCode::Config, "skew form must be antisymmetric");
}

long ChargeLattice::pair(const LatticeVector& a, const LatticeVector& b) const {
  if (a.size() != rank || b.size() != rank)
    throw Error(ErrorCode::Precondition, "lattice vector has wrong rank");
  long acc = 0;
  for (unsigned i = 0; i < rank; ++i) {
    if (a[i] == 0) continue;
    for (unsigned j = 0; j < rank; ++j) acc += a[i] * skew_form[i][j] * b[j];
  }
  return acc;
}

std::pair<Rat, Rat> CentralCharge::operator()(const LatticeVector& v) const {
  if (v.size() != re.size() || v.size() != im.size())
    throw Error(ErrorCode::Precondition, "lattice vector has wrong rank");
  Rat x(0), y(0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    x += re[i] * Rat(v[i]);
    y += im[i] * Rat(v[i]);
  }
  return {x, y};
}

TorusElement TorusElement::unit(unsigned rank, unsigned window) {
  TorusElement e(window);
  e.add_term(LatticeVector(rank, 0), FractionCoeff::one());
  return e;
}

bool TorusElement::in_window(const LatticeVector& v) const {
  unsigned long n = 0;
  for (long c : v) n += static_cast<unsigned long>(c < 0 ? -c : c);
  return n <= window_;
}

void TorusElement::add_term(const LatticeVector& v, const FractionCoeff& c) {
  if (c.is_zero() || !in_window(v)) return;
  auto [it, fresh] = t_.emplace(v, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
  }
}

const FractionCoeff& TorusElement::coeff(const LatticeVector& v) const {
  static const FractionCoeff zero;
  auto it = t_.find(v);
  return it == t_.end() ? zero : it->second;
}

TorusElement operator+(const TorusElement& a, const TorusElement& b) {
  TorusElement r(std::min(a.window_, b.window_));
  for (const auto& [v, c] : a.t_) r.add_term(v, c);
  for (const auto& [v, c] : b.t_) r.add_term(v, c);
  return r;
}

TorusElement operator-(const TorusElement& a, const TorusElement& b) {
  TorusElement r(std::min(a.window_, b.window_));
  for (const auto& [v, c] : a.t_) r.add_term(v, c);
  for (const auto& [v, c] : b.t_) r.add_term(v, -c);
  return r;
}

TorusElement torus_mul(const TorusElement& a, const TorusElement& b, const ChargeLattice& lat) {
  lat.validate();
  TorusElement r(std::min(a.window(), b.window()));
  for (const auto& [va, ca] : a.terms())
    for (const auto& [vb, cb] : b.terms()) {
      LatticeVector v(va.size());
      for (std::size_t i = 0; i < va.size(); ++i) v[i] = va[i] + vb[i];
      if (!r.in_window(v)) continue;
      long twist = lat.pair(va, vb);
      FractionCoeff c = ca * cb;
      if (twist != 0) c = c * FractionCoeff::half_power(static_cast<int>(twist));
      r.add_term(v, c);
    }
  return r;
}

std::map<LatticeVector, FractionCoeff> dt_extract_ray(const TorusElement& a,
                                                      const ChargeLattice& lat) {
  lat.validate();
  // Find the primitive direction of the support.
  LatticeVector dir;
  for (const auto& [v, c] : a.terms()) {
    (void)c;
    bool zero = true;
    for (long x : v)
      if (x != 0) zero = false;
    if (zero) continue;
    long g = 0;
    for (long x : v) g = std::gcd(g, x < 0 ? -x : x);
    LatticeVector prim(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) prim[i] = v[i] / g;
    if (dir.empty()) {
      dir = prim;
    } else if (dir != prim) {
      throw Error(ErrorCode::Precondition, "not supported on a single ray");
    }
  }
  std::map<LatticeVector, FractionCoeff> out;
  if (dir.empty()) {
    // Only a constant term: Log(1) = 0 when the constant is 1; anything else
    // fails inside pleth_log below via the series detour.
    if (!(a.coeff(LatticeVector(lat.rank, 0)) == FractionCoeff::one()))
      throw Error(ErrorCode::Precondition, "Log requires constant term 1");
    return out;
  }
  // On a ray the twist vanishes (antisymmetry), so identify e_{k dir} with a
  // univariate series in the k-grading and reuse the plethystic calculus.
  unsigned k_max = 0;
  for (const auto& [v, c] : a.terms()) {
    (void)c;
    long k = 0;
    for (std::size_t i = 0; i < v.size(); ++i)
      if (dir[i] != 0) {
        k = v[i] / dir[i];
        break;
      }
    if (k < 0 || [&] {
          for (std::size_t i = 0; i < v.size(); ++i)
            if (v[i] != k * dir[i]) return true;
          return false;
        }())
      throw Error(ErrorCode::Precondition, "not supported on a single ray");
    k_max = std::max(k_max, static_cast<unsigned>(k));
  }
  SeriesShape shape;
  Truncation tr{k_max, 0};
  GradedSeries<FractionCoeff> s(shape, tr);
  for (const auto& [v, c] : a.terms()) {
    long k = 0;
    for (std::size_t i = 0; i < v.size(); ++i)
      if (dir[i] != 0) {
        k = v[i] / dir[i];
        break;
      }
    s.add_term(MonomialIndex(shape, static_cast<unsigned>(k), 0), c);
  }
  auto lg = pleth_log(s);
  FractionCoeff unit_factor(MotCoeff::one() - MotCoeff::l_power(-1));
  for (const auto& [m, c] : lg.terms()) {
    if (m.rank() == 0) continue;
    LatticeVector v(dir.size());
    for (std::size_t i = 0; i < dir.size(); ++i)
      v[i] = dir[i] * static_cast<long>(m.rank());
    FractionCoeff omega = c * unit_factor;
    if (!omega.is_zero()) out[v] = omega;
  }
  return out;
}

TorusElement sector_factorize(const std::vector<std::pair<TorusElement, Ray>>& ray_elements,
                              const ChargeLattice& lat) {
  if (ray_elements.empty())
    throw Error(ErrorCode::Precondition, "sector product needs at least one ray");
  for (const auto& [el, ray] : ray_elements) {
    (void)el;
    if (ray.x == 0 && ray.y == 0)
      throw Error(ErrorCode::Precondition, "ray direction must be nonzero");
  }
  for (std::size_t i = 0; i + 1 < ray_elements.size(); ++i) {
    const Ray& a = ray_elements[i].second;
    const Ray& b = ray_elements[i + 1].second;
    if (a.x * b.y - a.y * b.x >= 0)
      throw Error(ErrorCode::Precondition, "rays out of clockwise order");
  }
  TorusElement acc = ray_elements[0].first;
  for (std::size_t i = 1; i < ray_elements.size(); ++i)
    acc = torus_mul(acc, ray_elements[i].first, lat);
  return acc;
}

} // namespace motivic
