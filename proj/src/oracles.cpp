#include "motivic/oracles.hpp"

#include <algorithm>
#include <numeric>

namespace motivic {

FqTable::FqTable(unsigned q) : q_(q) {
  if (q != 2 && q != 3 && q != 4 && q != 5)
    throw Error(ErrorCode::SizeLimit, "unsupported field size");
  add_.assign(q * q, 0);
  mul_.assign(q * q, 0);
  neg_.assign(q, 0);
  inv_.assign(q, 0);
  if (q == 4) {
    // F_4 = F_2[x]/(x^2+x+1); element i has bits (i&1) + (i>>1) x.
    for (unsigned a = 0; a < 4; ++a) {
      for (unsigned b = 0; b < 4; ++b) {
        add_[a * 4 + b] = a ^ b;
        // Polynomial multiplication followed by reduction x^2 = x + 1.
        unsigned a0 = a & 1, a1 = a >> 1, b0 = b & 1, b1 = b >> 1;
        unsigned c0 = a0 & b0, c1 = (a0 & b1) ^ (a1 & b0), c2 = a1 & b1;
        c0 ^= c2;
        c1 ^= c2;
        mul_[a * 4 + b] = c0 | (c1 << 1);
      }
      neg_[a] = a;
    }
  } else {
    for (unsigned a = 0; a < q; ++a) {
      for (unsigned b = 0; b < q; ++b) {
        add_[a * q + b] = (a + b) % q;
        mul_[a * q + b] = (a * b) % q;
      }
      neg_[a] = (q - a) % q;
    }
  }
  for (unsigned a = 1; a < q; ++a)
    for (unsigned b = 1; b < q; ++b)
      if (mul(a, b) == 1) inv_[a] = b;
}

unsigned FqTable::inv(unsigned a) const {
  if (a == 0) throw Error(ErrorCode::Precondition, "zero denominator");
  return inv_[a];
}

namespace {

// Dense row-major d x d matrix over F_q.
using Mat = std::vector<unsigned>;

Mat mat_mul(const FqTable& f, const Mat& a, const Mat& b, unsigned d) {
  Mat r(d * d, 0);
  for (unsigned i = 0; i < d; ++i)
    for (unsigned k = 0; k < d; ++k) {
      unsigned aik = a[i * d + k];
      if (aik == 0) continue;
      for (unsigned j = 0; j < d; ++j)
        r[i * d + j] = f.add(r[i * d + j], f.mul(aik, b[k * d + j]));
    }
  return r;
}

bool is_zero_mat(const Mat& a) {
  return std::all_of(a.begin(), a.end(), [](unsigned x) { return x == 0; });
}

// Rank by Gaussian elimination on a copy; rows x cols row-major.
unsigned mat_rank(const FqTable& f, Mat a, unsigned rows, unsigned cols) {
  unsigned rank = 0;
  for (unsigned c = 0; c < cols && rank < rows; ++c) {
    unsigned piv = rank;
    while (piv < rows && a[piv * cols + c] == 0) ++piv;
    if (piv == rows) continue;
    for (unsigned j = 0; j < cols; ++j) std::swap(a[rank * cols + j], a[piv * cols + j]);
    unsigned iv = f.inv(a[rank * cols + c]);
    for (unsigned j = 0; j < cols; ++j) a[rank * cols + j] = f.mul(a[rank * cols + j], iv);
    for (unsigned r = 0; r < rows; ++r) {
      if (r == rank) continue;
      unsigned m = a[r * cols + c];
      if (m == 0) continue;
      for (unsigned j = 0; j < cols; ++j)
        a[r * cols + j] = f.add(a[r * cols + j], f.mul(f.neg(m), a[rank * cols + j]));
    }
    ++rank;
  }
  return rank;
}

// Jordan type of a nilpotent operator from its kernel-dimension jumps:
// dim ker T^i - dim ker T^{i-1} = (number of blocks of size >= i) = conj_i.
Partition type_from_kernel_jumps(const std::vector<unsigned>& kernel_dims) {
  std::vector<unsigned> conj;
  unsigned prev = 0;
  for (unsigned k : kernel_dims) {
    if (k < prev) throw Error(ErrorCode::Precondition, "kernel dimensions must be monotone");
    if (k > prev) conj.push_back(k - prev);
    prev = k;
  }
  for (std::size_t i = 1; i < conj.size(); ++i)
    if (conj[i] > conj[i - 1])
      throw Error(ErrorCode::Precondition, "kernel jumps of a nilpotent operator must decrease");
  Partition c{conj};
  return c.conjugate();
}

Partition nilpotent_type(const FqTable& f, const Mat& a, unsigned d) {
  std::vector<unsigned> kd;
  Mat p(d * d, 0);
  for (unsigned i = 0; i < d; ++i) p[i * d + i] = 1;
  for (unsigned i = 1; i <= d; ++i) {
    p = mat_mul(f, p, a, d);
    kd.push_back(d - mat_rank(f, p, d, d));
    if (kd.back() == d) break;
  }
  return type_from_kernel_jumps(kd);
}

unsigned long pow_ul(unsigned base, unsigned exp) {
  unsigned long r = 1;
  for (unsigned i = 0; i < exp; ++i) r *= base;
  return r;
}

} // namespace

NilpotentCensus count_nilpotent_types(unsigned d, unsigned q) {
  const bool ok = (d >= 1 && d <= 2 && q <= 5) || (d == 3 && q <= 3) || (d == 4 && q == 2);
  if (!ok) throw Error(ErrorCode::SizeLimit, "matrix space too large to enumerate");
  FqTable f(q);
  NilpotentCensus out;
  const unsigned cells = d * d;
  const unsigned long total_mats = pow_ul(q, cells);
  Mat a(cells, 0);
  for (unsigned long idx = 0; idx < total_mats; ++idx) {
    unsigned long v = idx;
    for (unsigned i = 0; i < cells; ++i) {
      a[i] = static_cast<unsigned>(v % q);
      v /= q;
    }
    // Early exit: a nilpotent matrix has zero trace.
    unsigned tr = 0;
    for (unsigned i = 0; i < d; ++i) tr = f.add(tr, a[i * d + i]);
    if (tr != 0) continue;
    Mat p = a;
    for (unsigned i = 1; i < d; ++i) p = mat_mul(f, p, a, d);
    if (!is_zero_mat(p)) continue;
    ++out.by_type[nilpotent_type(f, a, d)];
    ++out.total;
  }
  return out;
}

BunP1Count bun_p1_weighted_count(long d, unsigned q, unsigned k_max) {
  if (k_max < 2) throw Error(ErrorCode::Precondition, "k_max must be at least 2");
  const Rat qr(q);
  const unsigned parity = static_cast<unsigned>(((d % 2) + 2) % 2);
  BunP1Count out;
  out.partial_sum = Rat(0);
  auto q_pow = [&](unsigned e) {
    Rat r(1);
    for (unsigned i = 0; i < e; ++i) r *= qr;
    return r;
  };
  for (unsigned k = parity; k <= k_max; k += 2) {
    if (k == 0) {
      // Aut(O(a) + O(a)) = GL(2, F_q).
      out.partial_sum += Rat(1) / ((qr * qr - 1) * (qr * qr - qr));
    } else {
      out.partial_sum += Rat(1) / ((qr - 1) * (qr - 1) * q_pow(k + 1));
    }
  }
  unsigned k0 = k_max + 1;
  if (k0 % 2 != parity) ++k0;
  out.tail_bound = (Rat(1) / ((qr - 1) * (qr - 1))) * (Rat(1) / q_pow(k0 + 1)) /
                   (Rat(1) - Rat(1) / (qr * qr));
  return out;
}

unsigned long hilb_a2_bruteforce(unsigned n, unsigned q) {
  if (n == 0) return 1;
  if (n == 1) return static_cast<unsigned long>(q) * q;
  const bool supported = (n == 2 && (q == 2 || q == 3)) || (n == 3 && q == 2);
  if (!supported)
    throw Error(ErrorCode::SizeLimit, "unsupported parameters for the ideal count");
  // Colength-n ideals correspond to pairs of commuting matrices with a cyclic
  // vector, up to base change: count triples and divide by #GL(n, F_q).
  FqTable f(q);
  const unsigned d = n;
  const unsigned cells = d * d;
  const unsigned long m = pow_ul(q, cells);
  unsigned long triples = 0;
  Mat a(cells), b(cells);
  for (unsigned long ia = 0; ia < m; ++ia) {
    unsigned long v = ia;
    for (unsigned i = 0; i < cells; ++i) {
      a[i] = static_cast<unsigned>(v % q);
      v /= q;
    }
    for (unsigned long ib = 0; ib < m; ++ib) {
      v = ib;
      for (unsigned i = 0; i < cells; ++i) {
        b[i] = static_cast<unsigned>(v % q);
        v /= q;
      }
      if (mat_mul(f, a, b, d) != mat_mul(f, b, a, d)) continue;
      // Count cyclic vectors: v whose Krylov span under words in {A, B} is
      // all of F_q^d.  Words of length < d suffice, since the span grows by
      // at least one dimension per length until it stabilizes.
      for (unsigned long iv = 1; iv < pow_ul(q, d); ++iv) {
        std::vector<unsigned> vec(d);
        unsigned long w = iv;
        for (unsigned i = 0; i < d; ++i) {
          vec[i] = static_cast<unsigned>(w % q);
          w /= q;
        }
        Mat s(vec.begin(), vec.end());
        std::vector<std::vector<unsigned>> level{vec};
        for (unsigned len = 1; len < d; ++len) {
          std::vector<std::vector<unsigned>> next;
          for (const auto& word : level)
            for (const Mat* op : {&a, &b}) {
              std::vector<unsigned> u(d, 0);
              for (unsigned i = 0; i < d; ++i) {
                unsigned acc = 0;
                for (unsigned j = 0; j < d; ++j)
                  acc = f.add(acc, f.mul((*op)[i * d + j], word[j]));
                u[i] = acc;
              }
              s.insert(s.end(), u.begin(), u.end());
              next.push_back(std::move(u));
            }
          level = std::move(next);
        }
        if (mat_rank(f, s, static_cast<unsigned>(s.size() / d), d) == d) ++triples;
      }
    }
  }
  return triples / count_invertible_matrices(d, q);
}

namespace {

// Enumerate all subspaces of F_q^d as reduced row-echelon bases, invoking the
// callback with (rows, dim).
template <class F>
void for_each_subspace(const FqTable& f, unsigned d, F&& cb) {
  const unsigned q = f.q();
  for (unsigned k = 0; k <= d; ++k) {
    // Choose pivot columns via bitmask with k bits.
    for (unsigned mask = 0; mask < (1u << d); ++mask) {
      if (static_cast<unsigned>(__builtin_popcount(mask)) != k) continue;
      std::vector<unsigned> pivots;
      for (unsigned c = 0; c < d; ++c)
        if (mask & (1u << c)) pivots.push_back(c);
      // Free entries: row i, column c with c > pivots[i] and c not a pivot.
      std::vector<std::pair<unsigned, unsigned>> free_cells;
      for (unsigned i = 0; i < k; ++i)
        for (unsigned c = pivots[i] + 1; c < d; ++c)
          if (!(mask & (1u << c))) free_cells.emplace_back(i, c);
      const unsigned long combos = pow_ul(q, static_cast<unsigned>(free_cells.size()));
      for (unsigned long fc = 0; fc < combos; ++fc) {
        Mat rows(k * d, 0);
        for (unsigned i = 0; i < k; ++i) rows[i * d + pivots[i]] = 1;
        unsigned long v = fc;
        for (const auto& [i, c] : free_cells) {
          rows[i * d + c] = static_cast<unsigned>(v % q);
          v /= q;
        }
        cb(rows, k);
      }
    }
  }
}

// Reduce a vector against RREF rows with known pivot columns; returns the
// reduction coefficients and leaves the residual in vec.
std::vector<unsigned> reduce_against(const FqTable& f, std::vector<unsigned>& vec,
                                     const Mat& rows, const std::vector<unsigned>& pivots,
                                     unsigned d) {
  std::vector<unsigned> coeffs(pivots.size(), 0);
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    unsigned c = vec[pivots[i]];
    if (c == 0) continue;
    coeffs[i] = c;
    for (unsigned j = 0; j < d; ++j)
      vec[j] = f.add(vec[j], f.mul(f.neg(c), rows[i * d + j]));
  }
  return coeffs;
}

std::vector<unsigned> pivot_columns(const Mat& rows, unsigned k, unsigned d) {
  std::vector<unsigned> pivots;
  for (unsigned i = 0; i < k; ++i)
    for (unsigned c = 0; c < d; ++c)
      if (rows[i * d + c] != 0) {
        pivots.push_back(c);
        break;
      }
  return pivots;
}

} // namespace

unsigned long hall_numbers_bruteforce(const Partition& lam, const Partition& mu,
                                      const Partition& nu, unsigned q) {
  if (lam.size() > 4 || q > 3)
    throw Error(ErrorCode::SizeLimit, "module too large to enumerate");
  if (mu.size() + nu.size() != lam.size()) return 0;
  FqTable f(q);
  const unsigned d = lam.size();
  if (d == 0) return (mu.empty() && nu.empty()) ? 1 : 0;
  // Nilpotent block matrix of Jordan type lam: T e_j = e_{j-1} within blocks.
  Mat T(d * d, 0);
  {
    unsigned base = 0;
    for (unsigned part : lam.parts) {
      for (unsigned j = 1; j < part; ++j) T[(base + j - 1) * d + (base + j)] = 1;
      base += part;
    }
  }
  unsigned long count = 0;
  for_each_subspace(f, d, [&](const Mat& rows, unsigned k) {
    if (k != nu.size()) return;
    std::vector<unsigned> pivots = pivot_columns(rows, k, d);
    // T-invariance and the matrix of T restricted to the subspace.
    Mat restr(k * k, 0);
    for (unsigned i = 0; i < k; ++i) {
      std::vector<unsigned> tv(d, 0);
      for (unsigned r = 0; r < d; ++r)
        for (unsigned c = 0; c < d; ++c)
          if (T[r * d + c] != 0)
            tv[r] = f.add(tv[r], f.mul(T[r * d + c], rows[i * d + c]));
      auto coeffs = reduce_against(f, tv, rows, pivots, d);
      if (!std::all_of(tv.begin(), tv.end(), [](unsigned x) { return x == 0; })) return;
      for (unsigned j = 0; j < k; ++j) restr[i * k + j] = coeffs[j];
    }
    // Type of the submodule.
    if (k > 0) {
      std::vector<unsigned> kd;
      Mat p(k * k, 0);
      for (unsigned i = 0; i < k; ++i) p[i * k + i] = 1;
      for (unsigned i = 1; i <= k; ++i) {
        p = mat_mul(f, p, restr, k);
        kd.push_back(k - mat_rank(f, p, k, k));
      }
      if (!(type_from_kernel_jumps(kd) == nu)) return;
    }
    // Type of the quotient, through the induced maps on V/N: the quotient
    // coordinates are the non-pivot columns after reduction.
    const unsigned qdim = d - k;
    if (qdim != mu.size()) return; // cannot match otherwise
    if (qdim > 0) {
      std::vector<unsigned> npcols;
      for (unsigned c = 0; c < d; ++c)
        if (std::find(pivots.begin(), pivots.end(), c) == pivots.end()) npcols.push_back(c);
      std::vector<unsigned> kd;
      // Powers of T composed with projection.
      Mat tp(d * d, 0);
      for (unsigned i = 0; i < d; ++i) tp[i * d + i] = 1;
      for (unsigned e = 1; e <= qdim; ++e) {
        tp = mat_mul(f, tp, T, d);
        // Matrix of the induced map: for each standard basis vector, apply
        // T^e, reduce mod the subspace, read off non-pivot coordinates.
        Mat cols(d * qdim, 0); // one row of quotient coordinates per source vector
        for (unsigned j = 0; j < d; ++j) {
          std::vector<unsigned> img(d);
          for (unsigned r = 0; r < d; ++r) img[r] = tp[r * d + j];
          reduce_against(f, img, rows, pivots, d);
          for (unsigned c = 0; c < qdim; ++c) cols[j * qdim + c] = img[npcols[c]];
        }
        unsigned rk = mat_rank(f, cols, d, qdim);
        kd.push_back(qdim - rk);
      }
      if (!(type_from_kernel_jumps(kd) == mu)) return;
    }
    ++count;
  });
  return count;
}

unsigned long count_invertible_matrices(unsigned n, unsigned q) {
  if (n > 3 || (n == 3 && q > 3))
    throw Error(ErrorCode::SizeLimit, "matrix space too large to enumerate");
  FqTable f(q);
  const unsigned cells = n * n;
  const unsigned long m = pow_ul(q, cells);
  unsigned long count = 0;
  Mat a(cells);
  for (unsigned long idx = 0; idx < m; ++idx) {
    unsigned long v = idx;
    for (unsigned i = 0; i < cells; ++i) {
      a[i] = static_cast<unsigned>(v % q);
      v /= q;
    }
    if (mat_rank(f, a, n, n) == n) ++count;
  }
  return count;
}

} // namespace motivic
