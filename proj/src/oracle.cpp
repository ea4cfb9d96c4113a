#include "dockalloc/oracle.hpp"

#include <algorithm>
#include <cstdlib>

#include "dockalloc/errors.hpp"
#include "dockalloc/scorer.hpp"

namespace dockalloc {

std::string problem_kind_name(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::Dr: return "DR";
    case ProblemKind::DrPrime: return "DR'";
    case ProblemKind::DrPrimeScaled: return "DR'(lambda)";
    case ProblemKind::DrPrimeGamma: return "DR'_gamma";
  }
  return "?";
}

ProblemSpec ProblemSpec::dr(Instance inst) {
  ProblemSpec s;
  s.kind = ProblemKind::Dr;
  s.inst = std::move(inst);
  return s;
}

ProblemSpec ProblemSpec::dr_prime(DrPrime drp) {
  ProblemSpec s;
  s.kind = ProblemKind::DrPrime;
  s.inst = drp.base;
  s.drp = std::move(drp);
  return s;
}

ProblemSpec ProblemSpec::dr_prime_scaled(DrPrime drp, long long lambda) {
  ProblemSpec s = dr_prime(std::move(drp));
  s.kind = ProblemKind::DrPrimeScaled;
  s.lambda = lambda;
  return s;
}

ProblemSpec ProblemSpec::dr_prime_gamma(DrPrime drp, long long gamma_prime, long long lambda) {
  ProblemSpec s = dr_prime(std::move(drp));
  s.kind = ProblemKind::DrPrimeGamma;
  s.lambda = lambda;
  s.gamma_prime = gamma_prime;
  return s;
}

long long oracle_cap_from_env() {
  if (const char* v = std::getenv("DOCKALLOC_ORACLE_CAP")) {
    char* end = nullptr;
    long long cap = std::strtoll(v, &end, 10);
    if (end != v && cap > 0) return cap;
  }
  return ProblemSpec{}.cap;
}

namespace {

// Shared DFS state for the x-profile / bike-split enumeration.
struct Enumerator {
  Enumerator(const ProblemSpec& s, const Instance& in) : spec(s), inst(in), n(in.n()) {}

  const ProblemSpec& spec;
  const Instance& inst;
  long long n;
  IntVec x_lo, x_hi;       // per-station dock-total range
  long long x_step = 1;    // lambda for scaled views
  IntVec b_lo;             // per-station smallest bike count (residues)
  long long b_step = 1;
  IntVec xbar;
  std::vector<char> in_p;  // empty for plain DR
  long long budget2 = 0;   // 2 * gamma (DR only)
  long long xi_p = 0;      // P-side cap (DR' family)
  std::optional<long long> p_target;  // exact P sum (DR'_gamma)
  long long total = 0;     // x(N)
  long long b_cap = 0;

  // suffix sums for pruning
  IntVec suf_lo, suf_hi, suf_lo_p, suf_hi_p, suf_b_lo;

  long long nodes = 0;
  const std::function<void(const Allocation&)>* yield = nullptr;

  IntVec x, b;

  void touch() {
    if (++nodes > spec.cap) {
      throw CapExceededError("oracle enumeration exceeded cap " + std::to_string(spec.cap) +
                                 " for " + problem_kind_name(spec.kind) +
                                 " after visiting " + std::to_string(nodes) + " nodes",
                             nodes);
    }
  }

  void run(const std::function<void(const Allocation&)>& cb) {
    yield = &cb;
    x.assign(n, 0);
    b.assign(n, 0);
    dfs_x(0, 0, 0, 0);
  }

  void dfs_x(long long i, long long sum, long long p_sum, long long dist) {
    touch();
    if (i == n) {
      if (sum != total) return;
      if (!in_p.empty()) {
        if (p_sum > xi_p) return;
        if (p_target && p_sum != *p_target) return;
      } else {
        if (dist > budget2) return;
      }
      dfs_b(0, 0);
      return;
    }
    for (long long v = x_lo[i]; v <= x_hi[i]; v += x_step) {
      const long long s = sum + v;
      // total reachable window
      if (s + suf_lo[i + 1] > total || s + suf_hi[i + 1] < total) continue;
      long long ps = p_sum + (!in_p.empty() && in_p[i] ? v : 0);
      if (!in_p.empty()) {
        if (ps + suf_lo_p[i + 1] > xi_p) continue;
        if (p_target) {
          if (ps + suf_hi_p[i + 1] < *p_target || ps + suf_lo_p[i + 1] > *p_target) continue;
        }
      }
      long long d2 = dist + std::llabs(v - xbar[i]);
      if (in_p.empty() && d2 > budget2) continue;
      x[i] = v;
      dfs_x(i + 1, s, ps, d2);
    }
  }

  void dfs_b(long long i, long long bsum) {
    touch();
    if (i == n) {
      Allocation a;
      a.b = b;
      a.d.resize(n);
      for (long long t = 0; t < n; ++t) a.d[t] = x[t] - b[t];
      (*yield)(a);
      return;
    }
    for (long long v = b_lo[i]; v <= x[i]; v += b_step) {
      if (bsum + v + suf_b_lo[i + 1] > b_cap) break;
      b[i] = v;
      dfs_b(i + 1, bsum + v);
    }
  }
};

Enumerator make_enumerator(const ProblemSpec& spec) {
  const Instance& inst = spec.drp ? spec.drp->base : spec.inst;
  inst.validate();
  Enumerator e(spec, inst);
  const long long n = e.n;
  e.xbar = inst.x_bar();
  e.total = inst.total_docks();
  e.b_cap = inst.total_b();
  e.x_lo.resize(n);
  e.x_hi.resize(n);
  e.b_lo.assign(n, 0);

  switch (spec.kind) {
    case ProblemKind::Dr:
      e.x_lo = inst.ell;
      e.x_hi = inst.u;
      e.budget2 = 2 * inst.gamma;
      break;
    case ProblemKind::DrPrime:
    case ProblemKind::DrPrimeScaled:
    case ProblemKind::DrPrimeGamma: {
      const DrPrime& drp = *spec.drp;
      e.in_p = drp.in_p;
      e.xi_p = drp.xi_p;
      if (spec.kind == ProblemKind::DrPrimeScaled || spec.kind == ProblemKind::DrPrimeGamma) {
        if (spec.lambda < 1) throw PreconditionError("lambda must be positive");
        e.x_step = spec.lambda;
        e.b_step = spec.lambda;
        for (long long i = 0; i < n; ++i) {
          const long long d_res = drp.reference.d[i] % spec.lambda;
          const long long b_res = drp.reference.b[i] % spec.lambda;
          const long long off = d_res + b_res;
          e.b_lo[i] = b_res;
          const long long raise =
              std::max(0LL, (drp.ell_prime[i] - off + spec.lambda - 1) / spec.lambda);
          e.x_lo[i] = off + raise * spec.lambda;
          e.x_hi[i] = drp.u_prime[i] >= off
                          ? off + (drp.u_prime[i] - off) / spec.lambda * spec.lambda
                          : e.x_lo[i] - spec.lambda;
        }
      } else {
        e.x_lo = drp.ell_prime;
        e.x_hi = drp.u_prime;
      }
      if (spec.kind == ProblemKind::DrPrimeGamma) {
        if (!spec.gamma_prime) throw PreconditionError("DR'_gamma needs gamma_prime");
        e.p_target = drp.x_bar_p() + *spec.gamma_prime;
      }
      break;
    }
  }

  e.suf_lo.assign(n + 1, 0);
  e.suf_hi.assign(n + 1, 0);
  e.suf_lo_p.assign(n + 1, 0);
  e.suf_hi_p.assign(n + 1, 0);
  e.suf_b_lo.assign(n + 1, 0);
  for (long long i = n - 1; i >= 0; --i) {
    const bool empty_range = e.x_hi[i] < e.x_lo[i];
    e.suf_lo[i] = e.suf_lo[i + 1] + e.x_lo[i];
    e.suf_hi[i] = e.suf_hi[i + 1] + (empty_range ? e.x_lo[i] : e.x_hi[i]);
    const bool in_p = !e.in_p.empty() && e.in_p[i];
    e.suf_lo_p[i] = e.suf_lo_p[i + 1] + (in_p ? e.x_lo[i] : 0);
    e.suf_hi_p[i] = e.suf_hi_p[i + 1] + (in_p ? e.x_hi[i] : 0);
    e.suf_b_lo[i] = e.suf_b_lo[i + 1] + e.b_lo[i];
  }
  return e;
}

}  // namespace

void enumerate_feasible(const ProblemSpec& spec,
                        const std::function<void(const Allocation&)>& yield) {
  Enumerator e = make_enumerator(spec);
  e.run(yield);
}

std::pair<Rational, Allocation> brute_optimum(const ProblemSpec& spec) {
  const Instance& inst = spec.drp ? spec.drp->base : spec.inst;
  IntVec dmax = inst.u;
  IntVec bmax(inst.u.size());
  for (size_t i = 0; i < bmax.size(); ++i) bmax[i] = std::min(inst.u[i], inst.total_b());

  bool any = false;
  Allocation best_alloc;
  Rational best_value;
  with_model_scorer(*inst.cost, std::move(dmax), std::move(bmax), [&](auto sc) {
    using Value = decltype(sc.zero());
    Value best{};
    enumerate_feasible(spec, [&](const Allocation& a) {
      Value v = sc.zero();
      for (long long i = 0; i < inst.n(); ++i) v = v + sc.cost(i, a.d[i], a.b[i]);
      if (!any || sc.less(v, best) || (sc.eq(v, best) && alloc_less(a, best_alloc))) {
        any = true;
        best = v;
        best_alloc = a;
      }
    });
    if (any) best_value = sc.to_rational(best);
    return 0;
  });
  if (!any) {
    throw InfeasibleError("empty feasible set for " + problem_kind_name(spec.kind));
  }
  return {best_value, best_alloc};
}

OptimaSet all_optima(const ProblemSpec& spec) {
  const Instance& inst = spec.drp ? spec.drp->base : spec.inst;
  IntVec dmax = inst.u;
  IntVec bmax(inst.u.size());
  for (size_t i = 0; i < bmax.size(); ++i) bmax[i] = std::min(inst.u[i], inst.total_b());

  OptimaSet out;
  out.kind = spec.kind;
  bool any = false;
  with_model_scorer(*inst.cost, std::move(dmax), std::move(bmax), [&](auto sc) {
    using Value = decltype(sc.zero());
    Value best{};
    enumerate_feasible(spec, [&](const Allocation& a) {
      Value v = sc.zero();
      for (long long i = 0; i < inst.n(); ++i) v = v + sc.cost(i, a.d[i], a.b[i]);
      if (!any || sc.less(v, best)) {
        any = true;
        best = v;
        out.optima.clear();
        out.optima.push_back(a);
      } else if (sc.eq(v, best)) {
        out.optima.push_back(a);
      }
    });
    if (any) out.optimal_value = sc.to_rational(best);
    return 0;
  });
  if (!any) {
    throw InfeasibleError("empty feasible set for " + problem_kind_name(spec.kind));
  }
  std::sort(out.optima.begin(), out.optima.end(), alloc_less);
  return out;
}

Allocation min_distance_optimum(const ProblemSpec& spec, const Allocation& anchor) {
  return min_distance_optimum(all_optima(spec), anchor);
}

Allocation min_distance_optimum(const OptimaSet& optima, const Allocation& anchor) {
  if (optima.optima.empty()) throw InfeasibleError("min_distance_optimum over an empty set");
  const Allocation* best = nullptr;
  long long best_dist = 0;
  for (const Allocation& cand : optima.optima) {
    const long long dist =
        l1_distance(cand.d, anchor.d) + l1_distance(cand.b, anchor.b);
    if (!best || dist < best_dist) {
      best = &cand;
      best_dist = dist;
    }
  }
  return *best;
}

}  // namespace dockalloc
