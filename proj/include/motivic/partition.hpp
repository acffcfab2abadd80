#pragma once

#include "motivic/rational.hpp"

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

namespace motivic {

// Integer partition: weakly decreasing positive parts.
struct Partition {
  std::vector<unsigned> parts;

  Partition() = default;
  explicit Partition(std::vector<unsigned> p) : parts(std::move(p)) { validate(); }

  void validate() const {
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (parts[i] == 0) throw Error(ErrorCode::Config, "partition parts must be positive");
      if (i > 0 && parts[i] > parts[i - 1])
        throw Error(ErrorCode::Config, "partition parts must be weakly decreasing");
    }
  }

  unsigned size() const { return std::accumulate(parts.begin(), parts.end(), 0u); }
  unsigned length() const { return static_cast<unsigned>(parts.size()); }
  bool empty() const { return parts.empty(); }

  bool operator==(const Partition& o) const { return parts == o.parts; }
  bool operator<(const Partition& o) const { return parts < o.parts; }

  Partition conjugate() const {
    Partition c;
    if (parts.empty()) return c;
    c.parts.assign(parts[0], 0);
    for (unsigned p : parts)
      for (unsigned i = 0; i < p; ++i) c.parts[i] += 1;
    return c;
  }

  // n(mu) = sum (i-1) mu_i.
  unsigned n_stat() const {
    unsigned acc = 0;
    for (std::size_t i = 0; i < parts.size(); ++i) acc += static_cast<unsigned>(i) * parts[i];
    return acc;
  }

  // <mu,mu> = sum of squared conjugate parts = 2 n(mu) + |mu|.
  unsigned mu_mu() const {
    Partition c = conjugate();
    unsigned acc = 0;
    for (unsigned p : c.parts) acc += p * p;
    return acc;
  }

  struct Box {
    unsigned row, col;  // 1-based, rows in decreasing-length order
    unsigned arm, leg;
  };

  // Boxes in row-major order with arm (cells to the right in the row) and
  // leg (cells in later rows, same column) lengths.
  std::vector<Box> boxes() const {
    Partition c = conjugate();
    std::vector<Box> out;
    for (unsigned i = 0; i < length(); ++i)
      for (unsigned j = 0; j < parts[i]; ++j)
        out.push_back(Box{i + 1, j + 1, parts[i] - j - 1, c.parts[j] - i - 1});
    return out;
  }

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(parts[i]);
    }
    return s + ")";
  }

  static std::vector<Partition> all_of_size(unsigned n) {
    std::vector<Partition> out;
    std::vector<unsigned> cur;
    gen(n, n, cur, out);
    return out;
  }

  // All nonempty partitions of 1..n.
  static std::vector<Partition> all_up_to(unsigned n) {
    std::vector<Partition> out;
    for (unsigned k = 1; k <= n; ++k) {
      auto v = all_of_size(k);
      out.insert(out.end(), v.begin(), v.end());
    }
    return out;
  }

  // Dominance order on partitions of equal size (partial): true iff
  // *this <= o, i.e. all partial sums of *this are <= those of o.
  bool dominated_by(const Partition& o) const {
    unsigned sa = 0, sb = 0;
    std::size_t n = std::max(parts.size(), o.parts.size());
    for (std::size_t i = 0; i < n; ++i) {
      sa += i < parts.size() ? parts[i] : 0;
      sb += i < o.parts.size() ? o.parts[i] : 0;
      if (sa > sb) return false;
    }
    return sa == sb;
  }

private:
  static void gen(unsigned n, unsigned maxpart, std::vector<unsigned>& cur,
                  std::vector<Partition>& out) {
    if (n == 0) {
      Partition p;
      p.parts = cur;
      out.push_back(p);
      return;
    }
    for (unsigned k = std::min(n, maxpart); k >= 1; --k) {
      cur.push_back(k);
      gen(n - k, k, cur, out);
      cur.pop_back();
    }
  }
};

struct PartitionStats {
  Partition mu, conjugate;
  unsigned size, n_mu, n_conj, mu_mu;
  std::vector<Partition::Box> boxes;
};

inline PartitionStats partition_stats(const Partition& mu) {
  PartitionStats s;
  s.mu = mu;
  s.conjugate = mu.conjugate();
  s.size = mu.size();
  s.n_mu = mu.n_stat();
  s.n_conj = s.conjugate.n_stat();
  s.mu_mu = mu.mu_mu();
  s.boxes = mu.boxes();
  return s;
}

} // namespace motivic
