#pragma once

#include "motivic/partition.hpp"
#include "motivic/rational.hpp"

#include <map>
#include <vector>

namespace motivic {

// Table-based finite-field arithmetic for q in {2, 3, 4, 5}; q = 4 is the
// field with four elements (not Z/4).  Elements are 0..q-1.
class FqTable {
public:
  explicit FqTable(unsigned q);

  unsigned q() const { return q_; }
  unsigned add(unsigned a, unsigned b) const { return add_[a * q_ + b]; }
  unsigned mul(unsigned a, unsigned b) const { return mul_[a * q_ + b]; }
  unsigned neg(unsigned a) const { return neg_[a]; }
  unsigned inv(unsigned a) const; // a != 0

private:
  unsigned q_;
  std::vector<unsigned> add_, mul_, neg_, inv_;
};

struct NilpotentCensus {
  std::map<Partition, unsigned long> by_type;
  unsigned long total = 0;
};

// Exhaustive census of nilpotent d x d matrices over F_q by Jordan type.
NilpotentCensus count_nilpotent_types(unsigned d, unsigned q);

struct BunP1Count {
  Rat partial_sum;
  Rat tail_bound;
};

// Rank-2 bundles on the projective line: sum of 1/#Aut over splitting types
// O(a)+O(b) with a+b = d and |a-b| <= k_max, plus the geometric bound on the
// omitted tail.
BunP1Count bun_p1_weighted_count(long d, unsigned q, unsigned k_max);

// Number of colength-n ideals of F_q[x,y], counted through commuting matrix
// pairs with a cyclic vector.
unsigned long hilb_a2_bruteforce(unsigned n, unsigned q);

// Classical Hall number: submodules N of the torsion module of type lam with
// N of type nu and quotient of type mu.
unsigned long hall_numbers_bruteforce(const Partition& lam, const Partition& mu,
                                      const Partition& nu, unsigned q);

// Brute-force count of invertible n x n matrices over F_q.
unsigned long count_invertible_matrices(unsigned n, unsigned q);

} // namespace motivic
