#include "dockalloc/transform.hpp"

#include <algorithm>
#include <string>

#include "dockalloc/errors.hpp"
#include "dockalloc/localsearch.hpp"
#include "dockalloc/scorer.hpp"

namespace dockalloc {

namespace {

IntVec default_d_box(const Instance& inst) { return inst.u; }

IntVec default_b_box(const Instance& inst) {
  const long long b_total = inst.total_b();
  IntVec out(inst.u.size());
  for (size_t i = 0; i < inst.u.size(); ++i) out[i] = std::min(inst.u[i], b_total);
  return out;
}

}  // namespace

long long DrPrime::x_bar_p() const {
  long long s = 0;
  for (long long i = 0; i < n(); ++i) {
    if (in_p[i]) s += base.d_bar[i] + base.b_bar[i];
  }
  return s;
}

long long DrPrime::x_bar_q() const {
  long long s = 0;
  for (long long i = 0; i < n(); ++i) {
    if (!in_p[i]) s += base.d_bar[i] + base.b_bar[i];
  }
  return s;
}

RelaxedOptimum solve_relaxed(const Instance& inst) {
  inst.validate();
  const long long n = inst.n();
  const long long target = inst.total_docks();
  const long long ell_sum = vec_sum(inst.ell);
  const long long u_sum = vec_sum(inst.u);
  if (ell_sum > target) {
    throw InfeasibleError("relaxed problem infeasible: sum of lower bounds " +
                          std::to_string(ell_sum) + " exceeds total docks " +
                          std::to_string(target));
  }
  if (u_sum < target) {
    throw InfeasibleError("relaxed problem infeasible: sum of upper bounds " +
                          std::to_string(u_sum) + " is below total docks " +
                          std::to_string(target));
  }

  const IntVec xbar = inst.x_bar();
  // Distance-minimal feasible start: clamp x_bar into the boxes, then settle
  // the total deterministically by station order.
  IntVec x(n);
  long long sum = 0;
  for (long long i = 0; i < n; ++i) {
    x[i] = std::clamp(xbar[i], inst.ell[i], inst.u[i]);
    sum += x[i];
  }
  for (long long i = 0; i < n && sum < target; ++i) {
    const long long add = std::min(inst.u[i] - x[i], target - sum);
    x[i] += add;
    sum += add;
  }
  for (long long i = 0; i < n && sum > target; ++i) {
    const long long sub = std::min(x[i] - inst.ell[i], sum - target);
    x[i] -= sub;
    sum -= sub;
  }

  XSpace space;
  space.lo = inst.ell;
  space.hi = inst.u;
  space.lambda = 1;
  space.b_cap = inst.total_b();

  RelaxedOptimum out;
  with_model_scorer(*inst.cost, default_d_box(inst), default_b_box(inst), [&](auto sc) {
    IntVec split;
    exchange_descent(sc, space, x, split, &xbar);
    out.alloc.b = split;
    out.alloc.d.resize(n);
    for (long long i = 0; i < n; ++i) out.alloc.d[i] = x[i] - split[i];
    return 0;
  });
  out.cost = objective(inst, out.alloc);
  out.distance = l1_distance(x, xbar);
  out.satisfies_l1 = out.distance <= 2 * inst.gamma;
  return out;
}

std::vector<char> split_pq(const Instance& inst, const RelaxedOptimum& relaxed) {
  const long long n = inst.n();
  std::vector<char> in_p(n, 0);
  for (long long i = 0; i < n; ++i) {
    in_p[i] = relaxed.alloc.x(i) > inst.d_bar[i] + inst.b_bar[i] ? 1 : 0;
  }
  return in_p;
}

long long gamma_min_closed_form(const DrPrime& drp) {
  long long ell_p = 0, u_q = 0;
  for (long long i = 0; i < drp.n(); ++i) {
    if (drp.in_p[i]) {
      ell_p += drp.ell_prime[i];
    } else {
      u_q += drp.u_prime[i];
    }
  }
  return std::max({ell_p - drp.x_bar_p(), drp.x_bar_q() - u_q, 0LL});
}

long long gamma_min(const DrPrime& drp) {
  const long long v = gamma_min_closed_form(drp);
  if (v > drp.base.gamma) {
    throw InfeasibleError("DR' infeasible: gamma_min " + std::to_string(v) +
                          " exceeds gamma " + std::to_string(drp.base.gamma));
  }
  return v;
}

DrPrime derive_dr_prime(const Instance& inst, const RelaxedOptimum& relaxed) {
  inst.validate();
  DrPrime drp;
  drp.base = inst;
  drp.in_p = split_pq(inst, relaxed);
  const long long n = inst.n();
  const IntVec xbar = inst.x_bar();

  drp.ell_prime.resize(n);
  drp.u_prime.resize(n);
  for (long long i = 0; i < n; ++i) {
    if (drp.in_p[i]) {
      drp.ell_prime[i] = std::max(inst.ell[i], xbar[i]);
      drp.u_prime[i] = inst.u[i];
    } else {
      drp.ell_prime[i] = inst.ell[i];
      drp.u_prime[i] = std::min(inst.u[i], xbar[i]);
    }
    if (drp.ell_prime[i] > drp.u_prime[i]) {
      throw InfeasibleError("DR' infeasible: empty dock range at station " + std::to_string(i));
    }
  }
  drp.xi_p = drp.x_bar_p() + inst.gamma;
  drp.xi_q = drp.x_bar_q() - inst.gamma;
  drp.gamma_min = gamma_min(drp);  // throws when it exceeds gamma
  drp.ref_level = drp.gamma_min;

  // Reference: distance-minimal dock profile (level gamma_min), filled in
  // station order, bikes split optimally.
  IntVec x(n);
  long long spread_p = drp.x_bar_p() + drp.gamma_min;
  long long spread_q = drp.x_bar_q() - drp.gamma_min;
  for (long long i = 0; i < n; ++i) {
    x[i] = drp.in_p[i] ? drp.ell_prime[i] : drp.u_prime[i];
    (drp.in_p[i] ? spread_p : spread_q) -= x[i];
  }
  if (spread_p < 0 || spread_q > 0) {
    throw InfeasibleError("DR' infeasible: side totals unreachable at gamma_min");
  }
  for (long long i = 0; i < n && spread_p > 0; ++i) {
    if (!drp.in_p[i]) continue;
    const long long add = std::min(drp.u_prime[i] - x[i], spread_p);
    x[i] += add;
    spread_p -= add;
  }
  for (long long i = 0; i < n && spread_q < 0; ++i) {
    if (drp.in_p[i]) continue;
    const long long sub = std::min(x[i] - drp.ell_prime[i], -spread_q);
    x[i] -= sub;
    spread_q += sub;
  }
  if (spread_p != 0 || spread_q != 0) {
    throw InfeasibleError("DR' infeasible: side totals unreachable at gamma_min");
  }

  with_model_scorer(*inst.cost, default_d_box(inst), default_b_box(inst), [&](auto sc) {
    auto split = optimal_split(sc, std::span<const long long>(x), inst.total_b(), 1, {});
    if (!split) throw InfeasibleError("DR' infeasible: no bike split for the reference");
    drp.reference.b = split->second;
    return 0;
  });
  drp.reference.d.resize(n);
  for (long long i = 0; i < n; ++i) drp.reference.d[i] = x[i] - drp.reference.b[i];
  return drp;
}

ScaledView scale_view(const DrPrime& drp, long long lambda) {
  if (lambda < 1) throw PreconditionError("lambda must be a positive integer");
  ScaledView view;
  view.drp = drp;
  view.lambda = lambda;
  const long long n = drp.n();
  view.d_anchor_mod.resize(n);
  view.b_anchor_mod.resize(n);
  for (long long i = 0; i < n; ++i) {
    view.d_anchor_mod[i] = drp.reference.d[i] % lambda;
    view.b_anchor_mod[i] = drp.reference.b[i] % lambda;
  }
  return view;
}

DrPrime shrink_window(const DrPrime& drp, const Allocation& prev, long long lambda) {
  if (lambda < 1) throw PreconditionError("lambda must be a positive integer");
  DrPrime out = drp;
  const long long radius = 20 * drp.n() * lambda;
  for (long long i = 0; i < drp.n(); ++i) {
    const long long center = prev.x(i);
    out.ell_prime[i] = std::max(out.ell_prime[i], center - radius);
    out.u_prime[i] = std::min(out.u_prime[i], center + radius);
  }
  out.gamma_min = gamma_min(out);
  return out;
}

}  // namespace dockalloc
