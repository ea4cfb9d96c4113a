#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace dockalloc {

using IntVec = std::vector<long long>;

// A candidate (d, b) pair: d(i) open docks, b(i) docks holding a bike.
struct Allocation {
  IntVec d;
  IntVec b;

  long long n() const { return static_cast<long long>(d.size()); }
  long long x(long long i) const { return d[i] + b[i]; }
  IntVec x_vec() const {
    IntVec out(d.size());
    for (size_t i = 0; i < d.size(); ++i) out[i] = d[i] + b[i];
    return out;
  }
  long long d_total() const {
    long long s = 0;
    for (long long v : d) s += v;
    return s;
  }
  long long b_total() const {
    long long s = 0;
    for (long long v : b) s += v;
    return s;
  }

  friend bool operator==(const Allocation&, const Allocation&) = default;
};

// Lexicographic order on (d, b); ties in d decided by b.
inline bool alloc_less(const Allocation& a, const Allocation& b) {
  if (a.d != b.d) return a.d < b.d;
  return a.b < b.b;
}

inline long long vec_sum(std::span<const long long> v) {
  long long s = 0;
  for (long long x : v) s += x;
  return s;
}

}  // namespace dockalloc
