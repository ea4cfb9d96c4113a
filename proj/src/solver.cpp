#include "dockalloc/solver.hpp"

#include <algorithm>
#include <string>

#include "dockalloc/bikesplit.hpp"
#include "dockalloc/errors.hpp"
#include "dockalloc/scorer.hpp"

namespace dockalloc {

namespace {

struct ViewGrid {
  ScaledView view;
  IntVec lo, hi;  // grid-aligned per-station x bounds
  long long lambda;

  long long sum_lo_p() const { return side_sum(lo, true); }
  long long sum_hi_p() const { return side_sum(hi, true); }
  long long sum_lo_q() const { return side_sum(lo, false); }
  long long sum_hi_q() const { return side_sum(hi, false); }

  long long side_sum(const IntVec& v, bool p) const {
    long long s = 0;
    for (long long i = 0; i < view.drp.n(); ++i) {
      if (static_cast<bool>(view.drp.in_p[i]) == p) s += v[i];
    }
    return s;
  }
};

IntVec box_d(const Instance& inst) { return inst.u; }

IntVec box_b(const Instance& inst) {
  IntVec out(inst.u.size());
  const long long b_total = inst.total_b();
  for (size_t i = 0; i < out.size(); ++i) out[i] = std::min(inst.u[i], b_total);
  return out;
}

ViewGrid make_grid(const DrPrime& drp, long long lambda) {
  ScaledView view = scale_view(drp, lambda);
  const long long n = drp.n();
  IntVec lo(n), hi(n), offset(n);
  for (long long i = 0; i < n; ++i) {
    offset[i] = view.d_anchor_mod[i] + view.b_anchor_mod[i];
    const long long raise = std::max(0LL, (drp.ell_prime[i] - offset[i] + lambda - 1) / lambda);
    lo[i] = offset[i] + raise * lambda;
    hi[i] = drp.u_prime[i] >= offset[i]
                ? offset[i] + (drp.u_prime[i] - offset[i]) / lambda * lambda
                : offset[i] - lambda;  // empty range marker (hi < lo)
    if (hi[i] < lo[i]) {
      throw InfeasibleError("DR'(lambda) infeasible: station " + std::to_string(i) +
                            " has no grid point inside its dock bounds");
    }
  }
  return ViewGrid{std::move(view), std::move(lo), std::move(hi), lambda};
}

// Feasible gamma' levels form a lambda-grid residue class; returns the
// inclusive [floor, top] of reachable levels, intersected with the budget.
std::pair<long long, long long> level_range(const ViewGrid& g) {
  const DrPrime& drp = g.view.drp;
  const long long xbar_p = drp.x_bar_p();
  const long long xbar_q = drp.x_bar_q();
  long long lo_level = std::max(g.sum_lo_p() - xbar_p, xbar_q - g.sum_hi_q());
  long long hi_level = std::min(g.sum_hi_p() - xbar_p, xbar_q - g.sum_lo_q());
  hi_level = std::min(hi_level, drp.base.gamma);
  // Round into the reference residue class.
  const long long ref = drp.ref_level;
  auto round_up = [&](long long v) {
    long long diff = v - ref;
    long long q = diff >= 0 ? (diff + g.lambda - 1) / g.lambda : -((-diff) / g.lambda);
    return ref + q * g.lambda;
  };
  auto round_down = [&](long long v) {
    long long diff = v - ref;
    long long q = diff >= 0 ? diff / g.lambda : -(((-diff) + g.lambda - 1) / g.lambda);
    return ref + q * g.lambda;
  };
  return {round_up(lo_level), round_down(hi_level)};
}

XSpace make_space(const ViewGrid& g, bool same_side_only) {
  XSpace space;
  space.lo = g.lo;
  space.hi = g.hi;
  space.lambda = g.lambda;
  space.b_cap = g.view.drp.base.total_b();
  space.b_residue = g.view.b_anchor_mod;
  space.side = &g.view.drp.in_p;
  space.same_side_only = same_side_only;
  return space;
}

Allocation to_alloc(const IntVec& x, const IntVec& split) {
  Allocation a;
  a.b = split;
  a.d.resize(x.size());
  for (size_t i = 0; i < x.size(); ++i) a.d[i] = x[i] - split[i];
  return a;
}

// Builds the level-floor dock profile deterministically: P stations start at
// their grid lows and fill upward in station order, Q stations start at
// their grid highs and drain downward.
IntVec floor_profile(const ViewGrid& g, long long level) {
  const DrPrime& drp = g.view.drp;
  const long long n = drp.n();
  IntVec x(n);
  long long need_p = drp.x_bar_p() + level - g.sum_lo_p();
  long long need_q = g.sum_hi_q() - (drp.x_bar_q() - level);
  for (long long i = 0; i < n; ++i) x[i] = drp.in_p[i] ? g.lo[i] : g.hi[i];
  for (long long i = 0; i < n && need_p > 0; ++i) {
    if (!drp.in_p[i]) continue;
    const long long add = std::min(g.hi[i] - x[i], need_p / g.lambda * g.lambda);
    x[i] += add;
    need_p -= add;
  }
  for (long long i = 0; i < n && need_q > 0; ++i) {
    if (drp.in_p[i]) continue;
    const long long sub = std::min(x[i] - g.lo[i], need_q / g.lambda * g.lambda);
    x[i] -= sub;
    need_q -= sub;
  }
  if (need_p != 0 || need_q != 0) {
    throw InfeasibleError("DR'(lambda) infeasible at gamma' level " + std::to_string(level));
  }
  return x;
}

}  // namespace

long long ceil_log2_ratio(long long total, long long n) {
  long long k = 0;
  while (n << k < total) ++k;
  return k;
}

Allocation bike_optimize(const DrPrime& drp, const Allocation& a, long long lambda) {
  ViewGrid g = make_grid(drp, lambda);
  for (long long i = 0; i < drp.n(); ++i) {
    if (a.d[i] % lambda != g.view.d_anchor_mod[i] || a.b[i] % lambda != g.view.b_anchor_mod[i]) {
      throw PreconditionError("bike_optimize: allocation is not congruent to the view anchor");
    }
  }
  const IntVec x = a.x_vec();
  return with_model_scorer(*drp.base.cost, box_d(drp.base), box_b(drp.base),
                           [&](auto sc) -> Allocation {
    auto r = optimal_split(sc, std::span<const long long>(x), drp.base.total_b(), lambda,
                           std::span<const long long>(g.view.b_anchor_mod));
    if (!r) throw PreconditionError("bike_optimize: no feasible bike split for this x");
    auto in_v = sc.zero();
    for (long long i = 0; i < drp.n(); ++i) in_v = in_v + sc.cost(i, a.d[i], a.b[i]);
    if (!sc.less(r->first, in_v)) return a;  // already bike-optimal
    return to_alloc(x, r->second);
  });
}

Allocation solve_gamma_floor(const DrPrime& drp, long long lambda) {
  ViewGrid g = make_grid(drp, lambda);
  auto [floor_level, top_level] = level_range(g);
  if (floor_level > top_level) {
    throw InfeasibleError("DR'(lambda) has no feasible gamma' level within the budget");
  }
  IntVec x = floor_profile(g, floor_level);
  XSpace space = make_space(g, /*same_side_only=*/true);
  return with_model_scorer(*drp.base.cost, box_d(drp.base), box_b(drp.base),
                           [&](auto sc) -> Allocation {
    IntVec split;
    exchange_descent(sc, space, x, split, nullptr);
    return to_alloc(x, split);
  });
}

Allocation gamma_sweep(const DrPrime& drp, long long lambda, const Allocation& start,
                       PhaseStats* stats, const MoveObserver* observer) {
  ViewGrid g = make_grid(drp, lambda);
  auto [floor_level, top_level] = level_range(g);
  XSpace space = make_space(g, /*same_side_only=*/true);
  const long long xbar_p = drp.x_bar_p();

  return with_model_scorer(*drp.base.cost, box_d(drp.base), box_b(drp.base),
                           [&](auto sc) -> Allocation {
    using Value = decltype(sc.zero());
    IntVec x = start.x_vec();
    long long level = 0;
    for (long long i = 0; i < drp.n(); ++i) {
      if (drp.in_p[i]) level += x[i];
    }
    level -= xbar_p;
    if (level != floor_level) {
      throw PreconditionError("gamma_sweep must start at the floor level");
    }
    auto cur = optimal_split(sc, std::span<const long long>(x), space.b_cap, lambda,
                             std::span<const long long>(space.b_residue));
    if (!cur) throw PreconditionError("gamma_sweep: start point has no bike split");
    Value cur_v = cur->first;
    IntVec split = cur->second;

    IntVec best_x = x;
    IntVec best_split = split;
    Value best_v = cur_v;

    while (level + lambda <= top_level) {
      // Best compound move: raise one P station, lower one Q station.
      bool found = false;
      long long best_i = -1, best_j = -1;
      Value move_v{};
      IntVec move_split;
      for (long long i = 0; i < drp.n(); ++i) {
        if (!drp.in_p[i] || x[i] + lambda > g.hi[i]) continue;
        for (long long j = 0; j < drp.n(); ++j) {
          if (drp.in_p[j] || x[j] - lambda < g.lo[j]) continue;
          IntVec cand = x;
          cand[i] += lambda;
          cand[j] -= lambda;
          auto r = optimal_split(sc, std::span<const long long>(cand), space.b_cap, lambda,
                                 std::span<const long long>(space.b_residue));
          if (!r) continue;
          if (!found || sc.less(r->first, move_v)) {
            found = true;
            best_i = i;
            best_j = j;
            move_v = r->first;
            move_split = std::move(r->second);
          }
        }
      }
      if (!found) {
        throw InfeasibleError("gamma_sweep: no feasible move toward gamma' level " +
                              std::to_string(level + lambda));
      }
      MoveEvent ev;
      if (observer) {
        ev.kind = MoveEvent::Kind::LevelRaise;
        ev.lambda = lambda;
        ev.from_station = best_j;
        ev.to_station = best_i;
        ev.before = to_alloc(x, split);
      }
      x[best_i] += lambda;
      x[best_j] -= lambda;
      const bool improved = sc.less(move_v, cur_v);
      cur_v = move_v;
      split = std::move(move_split);
      level += lambda;
      if (stats) ++stats->gamma_steps;
      if (observer) {
        ev.after = to_alloc(x, split);
        ev.improving = improved;
        (*observer)(ev);
      }
      // Settle into the level optimum before recording it.
      long long moves = exchange_descent(sc, space, x, split, nullptr, observer);
      if (stats) stats->moves += moves + 1;
      cur = optimal_split(sc, std::span<const long long>(x), space.b_cap, lambda,
                          std::span<const long long>(space.b_residue));
      cur_v = cur->first;
      split = cur->second;
      if (sc.less(cur_v, best_v)) {
        best_v = cur_v;
        best_x = x;
        best_split = split;
      }
    }
    return to_alloc(best_x, best_split);
  });
}

std::pair<Allocation, SolveTrace> solve_scaling(const Instance& inst,
                                                const MoveObserver* observer) {
  SolveTrace trace;
  RelaxedOptimum relaxed = solve_relaxed(inst);
  if (relaxed.satisfies_l1) {
    trace.short_circuited = true;
    trace.total_phases = 0;
    trace.final_objective = relaxed.cost;
    return {relaxed.alloc, std::move(trace)};
  }

  DrPrime drp = derive_dr_prime(inst, relaxed);
  const long long k = ceil_log2_ratio(inst.total_docks(), inst.n());
  IntVec lambdas;
  for (long long e = k - 1; e >= 0; --e) lambdas.push_back(1LL << e);
  if (lambdas.empty()) lambdas.push_back(1);  // total docks <= n: single unit phase

  Allocation prev = drp.reference;
  bool have_opt_prev = false;  // reference is feasible, not known optimal
  for (long long lambda : lambdas) {
    if (have_opt_prev) drp = shrink_window(drp, prev, lambda);
    PhaseStats stats;
    stats.lambda = lambda;
    Allocation floor = solve_gamma_floor(drp, lambda);
    Allocation result = gamma_sweep(drp, lambda, floor, &stats, observer);
    stats.objective_after = objective(inst, result);
    stats.ell_snapshot = drp.ell_prime;
    stats.u_snapshot = drp.u_prime;
    stats.solution = result;
    trace.phases.push_back(std::move(stats));
    prev = result;
    have_opt_prev = true;
  }
  trace.total_phases = static_cast<long long>(trace.phases.size());
  trace.final_objective = trace.phases.back().objective_after;
  return {prev, std::move(trace)};
}

}  // namespace dockalloc
