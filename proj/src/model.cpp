#include "dockalloc/model.hpp"

#include <algorithm>
#include <cstdlib>

#include "dockalloc/errors.hpp"

namespace dockalloc {

void Instance::validate() const {
  const size_t nn = d_bar.size();
  if (b_bar.size() != nn || ell.size() != nn || u.size() != nn) {
    throw DimensionError("instance vectors differ in length");
  }
  if (nn == 0) throw DimensionError("instance needs at least one station");
  if (gamma < 0) throw PreconditionError("gamma must be nonnegative");
  for (size_t i = 0; i < nn; ++i) {
    if (d_bar[i] < 0 || b_bar[i] < 0 || ell[i] < 0 || u[i] < 0) {
      throw PreconditionError("negative entry at station " + std::to_string(i));
    }
    if (ell[i] > u[i]) {
      throw PreconditionError("ell > u at station " + std::to_string(i));
    }
  }
  if (!cost) throw PreconditionError("instance has no cost model");
  if (cost->station_count() != static_cast<long long>(nn)) {
    throw DimensionError("cost model station count does not match n");
  }
}

FeasibilityVerdict check_feasible_dr(const Instance& inst, const Allocation& a) {
  const long long n = inst.n();
  if (a.n() != n || static_cast<long long>(a.b.size()) != n) {
    throw DimensionError("allocation length does not match instance");
  }
  FeasibilityVerdict v;
  auto flag = [&](std::string id, long long station, long long observed, long long required) {
    v.violations.push_back({std::move(id), station, observed, required});
  };

  long long x_total = 0, b_total = 0, dist = 0;
  for (long long i = 0; i < n; ++i) {
    if (a.d[i] < 0) flag("nonneg_d", i, a.d[i], 0);
    if (a.b[i] < 0) flag("nonneg_b", i, a.b[i], 0);
    const long long xi = a.x(i);
    if (xi < inst.ell[i]) flag("lower_bound", i, xi, inst.ell[i]);
    if (xi > inst.u[i]) flag("upper_bound", i, xi, inst.u[i]);
    x_total += xi;
    b_total += a.b[i];
    dist += std::llabs(xi - (inst.d_bar[i] + inst.b_bar[i]));
  }
  const long long target = inst.total_docks();
  if (x_total != target) flag("total_docks", -1, x_total, target);
  if (b_total > inst.total_b()) flag("bike_budget", -1, b_total, inst.total_b());
  if (dist > 2 * inst.gamma) flag("l1_budget", -1, dist, 2 * inst.gamma);

  v.feasible = v.violations.empty();
  return v;
}

long long l1_distance(std::span<const long long> x, std::span<const long long> y) {
  if (x.size() != y.size()) throw DimensionError("l1_distance on vectors of different length");
  long long s = 0;
  for (size_t i = 0; i < x.size(); ++i) s += std::llabs(x[i] - y[i]);
  return s;
}

long long linf_distance(std::span<const long long> x, std::span<const long long> y) {
  if (x.size() != y.size()) throw DimensionError("linf_distance on vectors of different length");
  long long m = 0;
  for (size_t i = 0; i < x.size(); ++i) m = std::max(m, std::llabs(x[i] - y[i]));
  return m;
}

Rational objective(const Instance& inst, const Allocation& a) {
  if (a.n() != inst.n()) throw DimensionError("allocation length does not match instance");
  Rational total(0);
  for (long long i = 0; i < inst.n(); ++i) {
    total += inst.cost->eval(i, a.d[i], a.b[i]);
  }
  return total;
}

}  // namespace dockalloc
