#pragma once

#include <algorithm>
#include <optional>
#include <queue>
#include <span>
#include <utility>
#include <vector>

#include "dockalloc/scorer.hpp"
#include "dockalloc/types.hpp"

namespace dockalloc {

// Smallest argmin of a discrete convex f over integers [lo, hi]. Uses a
// linear scan on small ranges and a binary search on the first nonnegative
// difference otherwise (valid because f is convex).
template <class F>
long long smallest_argmin_convex(const F& f, long long lo, long long hi) {
  if (hi - lo <= 4096) {
    long long best = lo;
    auto best_v = f(lo);
    for (long long t = lo + 1; t <= hi; ++t) {
      auto v = f(t);
      if (v < best_v) {
        best_v = v;
        best = t;
      }
    }
    return best;
  }
  long long a = lo, b = hi;  // invariant: first t with f(t+1)-f(t) >= 0 is in [a, b]
  while (a < b) {
    long long m = a + (b - a) / 2;
    if (f(m + 1) < f(m)) {
      a = m + 1;
    } else {
      b = m;
    }
  }
  return a;
}

// Exact bike split: minimize sum_i cost(i, x_i - b_i, b_i) over
//   b_i in {residue_i + t*lambda} with 0 <= b_i <= x_i,  sum_i b_i <= b_cap.
// Returns nullopt when no split exists. Deterministic: per-station smallest
// argmin, then greedy reduction preferring the smallest station on ties.
template <class Scorer>
std::optional<std::pair<typename Scorer::Value, IntVec>> optimal_split(
    const Scorer& sc, std::span<const long long> x, long long b_cap, long long lambda,
    std::span<const long long> residue) {
  using Value = typename Scorer::Value;
  const long long n = static_cast<long long>(x.size());
  IntVec b(n);
  long long total = 0;
  for (long long i = 0; i < n; ++i) {
    const long long r = residue.empty() ? 0 : residue[i];
    const long long cap_i = std::min(x[i], b_cap);  // b_i can never exceed the budget
    if (r > cap_i) return std::nullopt;
    const long long t_hi = (cap_i - r) / lambda;
    auto f = [&](long long t) { return sc.cost(i, x[i] - (r + t * lambda), r + t * lambda); };
    const long long t = smallest_argmin_convex(f, 0, t_hi);
    b[i] = r + t * lambda;
    total += b[i];
  }
  if (total > b_cap) {
    long long floor_total = 0;
    for (long long i = 0; i < n; ++i) floor_total += residue.empty() ? 0 : residue[i];
    if (floor_total > b_cap) return std::nullopt;
    // Greedy: repeatedly take back one lambda-step at the station whose cost
    // increase is smallest. Convexity per station makes this exact.
    using Entry = std::pair<Value, long long>;
    auto cmp = [](const Entry& a, const Entry& b) {
      if (Scorer::eq(a.first, b.first)) return a.second > b.second;
      return Scorer::less(b.first, a.first);
    };
    std::priority_queue<Entry, std::vector<Entry>, decltype(cmp)> heap(cmp);
    auto delta_down = [&](long long i) {
      return sc.cost(i, x[i] - (b[i] - lambda), b[i] - lambda) - sc.cost(i, x[i] - b[i], b[i]);
    };
    for (long long i = 0; i < n; ++i) {
      const long long r = residue.empty() ? 0 : residue[i];
      if (b[i] - lambda >= r) heap.push({delta_down(i), i});
    }
    while (total > b_cap) {
      Entry e = heap.top();
      heap.pop();
      const long long i = e.second;
      b[i] -= lambda;
      total -= lambda;
      const long long r = residue.empty() ? 0 : residue[i];
      if (b[i] - lambda >= r) heap.push({delta_down(i), i});
    }
  }
  Value v = sc.zero();
  for (long long i = 0; i < n; ++i) v = v + sc.cost(i, x[i] - b[i], b[i]);
  return std::make_pair(std::move(v), std::move(b));
}

}  // namespace dockalloc
