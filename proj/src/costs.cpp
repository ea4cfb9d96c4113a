#include "dockalloc/costs.hpp"

#include <algorithm>
#include <string>

namespace dockalloc {

Rational eval_convex(const ConvexSpec& spec, long long t) {
  if (const auto* q = std::get_if<QuadraticSpec>(&spec)) {
    Rational tt(t);
    return q->a * tt * tt + q->b * tt + q->c;
  }
  const auto& pl = std::get<PiecewiseLinearSpec>(spec);
  if (t < 0) throw DomainError("piecewise-linear cost evaluated at negative t");
  // f(t) = f(0) + sum of segment slopes over [0, t).
  Rational v = pl.value_at_origin;
  long long seg_start = 0;
  for (size_t k = 0; k <= pl.breakpoints.size(); ++k) {
    long long seg_end =
        (k < pl.breakpoints.size()) ? pl.breakpoints[k] : std::max(t, seg_start);
    long long lo = seg_start, hi = std::min(t, seg_end);
    if (hi > lo) v += pl.slopes[k] * Rational(hi - lo);
    if (t <= seg_end) break;
    seg_start = seg_end;
  }
  return v;
}

bool convex_spec_valid(const ConvexSpec& spec) {
  if (const auto* q = std::get_if<QuadraticSpec>(&spec)) {
    return q->a.sign() >= 0;
  }
  const auto& pl = std::get<PiecewiseLinearSpec>(spec);
  if (pl.slopes.size() != pl.breakpoints.size() + 1) return false;
  for (size_t k = 0; k + 1 < pl.breakpoints.size(); ++k) {
    if (pl.breakpoints[k] >= pl.breakpoints[k + 1]) return false;
  }
  if (!pl.breakpoints.empty() && pl.breakpoints.front() <= 0) return false;
  for (size_t k = 0; k + 1 < pl.slopes.size(); ++k) {
    if (pl.slopes[k] > pl.slopes[k + 1]) return false;
  }
  return true;
}

Rational CostModel::eval(long long station, long long d, long long b) const {
  if (station < 0 || station >= station_count()) {
    throw DomainError("cost station index " + std::to_string(station) + " out of range");
  }
  if (d < 0 || b < 0) {
    throw DomainError("cost at station " + std::to_string(station) + " evaluated at (" +
                      std::to_string(d) + ", " + std::to_string(b) + "): negative coordinate");
  }
  const StationCost& sc = stations_[station];
  if (const auto* sep = std::get_if<SeparableConvexCost>(&sc)) {
    return eval_convex(sep->phi, d) + eval_convex(sep->psi, b) + eval_convex(sep->theta, d + b);
  }
  const auto& tab = std::get<TableCost>(sc);
  if (d > tab.d_max || b > tab.b_max) {
    throw DomainError("table cost at station " + std::to_string(station) +
                      " has no entry for (" + std::to_string(d) + ", " + std::to_string(b) + ")");
  }
  return tab.at(d, b);
}

std::optional<std::pair<long long, long long>> CostModel::domain_box(long long station) const {
  if (const auto* tab = std::get_if<TableCost>(&stations_[station])) {
    return std::make_pair(tab->d_max, tab->b_max);
  }
  return std::nullopt;
}

std::shared_ptr<const CostModel> CostModel::zero(long long n) {
  QuadraticSpec z{Rational(0), Rational(0), Rational(0)};
  std::vector<StationCost> stations(n, SeparableConvexCost{z, z, z});
  return std::make_shared<const CostModel>(std::move(stations));
}

std::optional<MultimodularityViolation> validate_multimodular(const CostModel& cost,
                                                              long long station,
                                                              long long d_max, long long b_max) {
  auto c = [&](long long d, long long b) { return cost.eval(station, d, b); };
  for (long long alpha = 0; alpha <= d_max; ++alpha) {
    for (long long beta = 0; beta <= b_max; ++beta) {
      // (1): c(a+1, b+1) - c(a+1, b) >= c(a, b+1) - c(a, b)   for a,b >= 0
      if (alpha + 1 <= d_max && beta + 1 <= b_max) {
        Rational lhs = c(alpha + 1, beta + 1) - c(alpha + 1, beta);
        Rational rhs = c(alpha, beta + 1) - c(alpha, beta);
        if (lhs < rhs) {
          return MultimodularityViolation{station, alpha, beta, 1, lhs, rhs};
        }
      }
      // (2): c(a-1, b+1) - c(a-1, b) >= c(a, b) - c(a, b-1)   for a,b >= 1
      if (alpha >= 1 && beta >= 1 && beta + 1 <= b_max) {
        Rational lhs = c(alpha - 1, beta + 1) - c(alpha - 1, beta);
        Rational rhs = c(alpha, beta) - c(alpha, beta - 1);
        if (lhs < rhs) {
          return MultimodularityViolation{station, alpha, beta, 2, lhs, rhs};
        }
      }
      // (3): c(a+1, b-1) - c(a, b-1) >= c(a, b) - c(a-1, b)   for a,b >= 1
      if (alpha >= 1 && beta >= 1 && alpha + 1 <= d_max) {
        Rational lhs = c(alpha + 1, beta - 1) - c(alpha, beta - 1);
        Rational rhs = c(alpha, beta) - c(alpha - 1, beta);
        if (lhs < rhs) {
          return MultimodularityViolation{station, alpha, beta, 3, lhs, rhs};
        }
      }
    }
  }
  return std::nullopt;
}

std::optional<DiagConvexityViolation> diag_convexity(const CostModel& cost, long long station,
                                                     long long x_fixed) {
  if (x_fixed < 0) throw DomainError("diag_convexity with negative total");
  auto c_hat = [&](long long beta) { return cost.eval(station, x_fixed - beta, beta); };
  // Clamp the beta window so (x - beta - 1, beta + 1) and (x - beta + 1,
  // beta - 1) stay inside a table's grid.
  long long lo = 1, hi = x_fixed - 1;
  if (auto box = cost.domain_box(station)) {
    if (x_fixed > box->first + box->second) {
      throw DomainError("diag_convexity total exceeds the table domain");
    }
    lo = std::max(lo, x_fixed - box->first + 1);
    hi = std::min(hi, box->second - 1);
  }
  for (long long beta = lo; beta <= hi; ++beta) {
    Rational lhs = c_hat(beta + 1) + c_hat(beta - 1);
    Rational rhs = c_hat(beta) * Rational(2);
    if (lhs < rhs) {
      return DiagConvexityViolation{station, beta, lhs, rhs};
    }
  }
  return std::nullopt;
}

namespace {

int sign_of(long long v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

Rational total_cost(const CostModel& cost, const IntVec& d, const IntVec& b) {
  Rational s(0);
  for (size_t i = 0; i < d.size(); ++i) {
    s += cost.eval(static_cast<long long>(i), d[i], b[i]);
  }
  return s;
}

void require_support(bool ok, const char* name, const char* condition) {
  if (!ok) {
    throw PreconditionError(std::string("exchange index ") + name +
                            " violates its support condition: " + condition);
  }
}

}  // namespace

std::vector<ExchangeCheck> check_exchange_inequalities(const CostModel& cost, const Allocation& a,
                                                       const Allocation& a2,
                                                       const ExchangeIndices& idx) {
  if (a.n() != a2.n()) throw DimensionError("allocations differ in length");
  const long long n = a.n();
  IntVec dd(n), db(n), dx(n);
  for (long long t = 0; t < n; ++t) {
    dd[t] = a.d[t] - a2.d[t];
    db[t] = a.b[t] - a2.b[t];
    dx[t] = dd[t] + db[t];
  }
  auto check_range = [&](std::optional<long long> v, const char* name) {
    if (v && (*v < 0 || *v >= n)) {
      throw PreconditionError(std::string("exchange index ") + name + " out of range");
    }
  };
  check_range(idx.i, "i");
  check_range(idx.j, "j");
  check_range(idx.h, "h");
  check_range(idx.k, "k");
  check_range(idx.s, "s");
  if (idx.i) {
    require_support(sign_of(dd[*idx.i]) > 0 && sign_of(dx[*idx.i]) > 0, "i",
                    "i in supp+(d-d') and supp+(x-x')");
  }
  if (idx.j) {
    require_support(sign_of(db[*idx.j]) < 0 && sign_of(dx[*idx.j]) < 0, "j",
                    "j in supp-(b-b') and supp-(x-x')");
  }
  if (idx.h) {
    require_support(sign_of(dd[*idx.h]) < 0 && sign_of(dx[*idx.h]) < 0, "h",
                    "h in supp-(d-d') and supp-(x-x')");
  }
  if (idx.k) {
    require_support(sign_of(db[*idx.k]) > 0 && sign_of(dx[*idx.k]) > 0, "k",
                    "k in supp+(b-b') and supp+(x-x')");
  }
  if (idx.s) {
    require_support(sign_of(dd[*idx.s]) < 0 && sign_of(db[*idx.s]) > 0, "s",
                    "s in supp-(d-d') and supp+(b-b')");
  }

  Rational base = total_cost(cost, a.d, a.b) + total_cost(cost, a2.d, a2.b);
  std::vector<ExchangeCheck> out;
  auto moved = [&](IntVec v, long long at, long long delta) {
    v[at] += delta;
    return v;
  };
  // (3): move a dock unit i -> h in a, h -> i in a2.
  if (idx.i && idx.h) {
    Rational rhs = total_cost(cost, moved(moved(a.d, *idx.i, -1), *idx.h, +1), a.b) +
                   total_cost(cost, moved(moved(a2.d, *idx.i, +1), *idx.h, -1), a2.b);
    out.push_back({3, base, rhs, base >= rhs});
  }
  // (4): move a bike unit k -> j in a, j -> k in a2.
  if (idx.j && idx.k) {
    Rational rhs = total_cost(cost, a.d, moved(moved(a.b, *idx.j, +1), *idx.k, -1)) +
                   total_cost(cost, a2.d, moved(moved(a2.b, *idx.j, -1), *idx.k, +1));
    out.push_back({4, base, rhs, base >= rhs});
  }
  // (5): drop a dock at i, add a bike at j in a; reverse in a2.
  if (idx.i && idx.j) {
    Rational rhs = total_cost(cost, moved(a.d, *idx.i, -1), moved(a.b, *idx.j, +1)) +
                   total_cost(cost, moved(a2.d, *idx.i, +1), moved(a2.b, *idx.j, -1));
    out.push_back({5, base, rhs, base >= rhs});
  }
  // (6): as (5) but routed through s (dock gained, bike lost at s).
  if (idx.i && idx.j && idx.s) {
    Rational rhs =
        total_cost(cost, moved(moved(a.d, *idx.i, -1), *idx.s, +1),
                   moved(moved(a.b, *idx.j, +1), *idx.s, -1)) +
        total_cost(cost, moved(moved(a2.d, *idx.i, +1), *idx.s, -1),
                   moved(moved(a2.b, *idx.j, -1), *idx.s, +1));
    out.push_back({6, base, rhs, base >= rhs});
  }
  // (7): dock unit i -> h and bike unit k -> j in a; reverse in a2.
  if (idx.i && idx.j && idx.h && idx.k) {
    Rational rhs =
        total_cost(cost, moved(moved(a.d, *idx.i, -1), *idx.h, +1),
                   moved(moved(a.b, *idx.j, +1), *idx.k, -1)) +
        total_cost(cost, moved(moved(a2.d, *idx.i, +1), *idx.h, -1),
                   moved(moved(a2.b, *idx.j, -1), *idx.k, +1));
    out.push_back({7, base, rhs, base >= rhs});
  }
  return out;
}

}  // namespace dockalloc
