#pragma once

#include <cstdlib>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "dockalloc/bikesplit.hpp"
#include "dockalloc/scorer.hpp"
#include "dockalloc/types.hpp"

namespace dockalloc {

struct MoveEvent {
  enum class Kind { Exchange, LevelRaise };
  Kind kind = Kind::Exchange;
  long long lambda = 1;
  long long from_station = -1;  // x decreases here by lambda
  long long to_station = -1;    // x increases here by lambda
  Allocation before, after;
  bool improving = false;  // strictly lowered the (post-split) objective
};

using MoveObserver = std::function<void(const MoveEvent&)>;

// Lattice description for x-space searches. Bounds are inclusive and already
// aligned to the per-station grid {offset_i + t*lambda}.
struct XSpace {
  IntVec lo, hi;
  long long lambda = 1;
  long long b_cap = 0;
  IntVec b_residue;                   // empty means all-zero residues
  const std::vector<char>* side = nullptr;  // P/Q membership; null = unrestricted
  bool same_side_only = false;        // restrict exchanges to within a side
};

// Steepest-descent exchange search: repeatedly applies the best move
// x -> x - lambda*chi_from + lambda*chi_to (re-splitting bikes optimally
// after each candidate) until no move strictly improves. When xbar is given,
// candidates are compared lexicographically by (cost, l1-distance to xbar).
// Ties break toward the smallest (from, to). Returns the number of accepted
// moves; x and split are updated in place.
template <class Scorer>
long long exchange_descent(const Scorer& sc, const XSpace& space, IntVec& x, IntVec& split,
                           const IntVec* xbar, const MoveObserver* observer = nullptr) {
  using Value = typename Scorer::Value;
  const long long n = static_cast<long long>(x.size());
  auto g = [&](const IntVec& xv) {
    return optimal_split(sc, std::span<const long long>(xv), space.b_cap, space.lambda,
                         std::span<const long long>(space.b_residue));
  };
  auto dist_to_bar = [&](const IntVec& xv) {
    long long s = 0;
    for (long long i = 0; i < n; ++i) s += std::llabs(xv[i] - (*xbar)[i]);
    return s;
  };

  auto cur = g(x);
  if (!cur) throw std::invalid_argument("exchange_descent started from an unsplittable point");
  Value cur_v = cur->first;
  split = cur->second;
  long long cur_dist = xbar ? dist_to_bar(x) : 0;

  long long accepted = 0;
  for (;;) {
    bool found = false;
    long long best_from = -1, best_to = -1;
    Value best_v = cur_v;
    long long best_dist = cur_dist;
    IntVec best_split;
    for (long long from = 0; from < n; ++from) {
      if (x[from] - space.lambda < space.lo[from]) continue;
      for (long long to = 0; to < n; ++to) {
        if (to == from || x[to] + space.lambda > space.hi[to]) continue;
        if (space.same_side_only && (*space.side)[from] != (*space.side)[to]) continue;
        IntVec cand = x;
        cand[from] -= space.lambda;
        cand[to] += space.lambda;
        auto r = g(cand);
        if (!r) continue;
        long long cand_dist = xbar ? dist_to_bar(cand) : 0;
        bool better;
        if (Scorer::eq(r->first, best_v)) {
          better = xbar && cand_dist < best_dist;
        } else {
          better = Scorer::less(r->first, best_v);
        }
        if (better) {
          found = true;
          best_from = from;
          best_to = to;
          best_v = r->first;
          best_dist = cand_dist;
          best_split = std::move(r->second);
        }
      }
    }
    if (!found) break;
    MoveEvent ev;
    if (observer) {
      ev.kind = MoveEvent::Kind::Exchange;
      ev.lambda = space.lambda;
      ev.from_station = best_from;
      ev.to_station = best_to;
      ev.before.b = split;
      ev.before.d.resize(n);
      for (long long i = 0; i < n; ++i) ev.before.d[i] = x[i] - split[i];
    }
    x[best_from] -= space.lambda;
    x[best_to] += space.lambda;
    const bool improved_cost = Scorer::less(best_v, cur_v);
    cur_v = best_v;
    cur_dist = best_dist;
    split = std::move(best_split);
    ++accepted;
    if (observer) {
      ev.after.b = split;
      ev.after.d.resize(n);
      for (long long i = 0; i < n; ++i) ev.after.d[i] = x[i] - split[i];
      ev.improving = improved_cost;
      (*observer)(ev);
    }
  }
  return accepted;
}

}  // namespace dockalloc
