#include "dockalloc/gen.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "dockalloc/errors.hpp"

namespace dockalloc {

long long uniform_int(std::mt19937_64& rng, long long lo, long long hi) {
  if (lo > hi) throw PreconditionError("uniform_int with empty range");
  const std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
  if (range == 0) return lo + static_cast<long long>(rng());  // full 64-bit range
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % range;
  std::uint64_t v;
  do {
    v = rng();
  } while (v >= limit);
  return lo + static_cast<long long>(v % range);
}

namespace {

// Quadratic a*(t - m)^2 expanded to coefficient form.
QuadraticSpec centered_quadratic(long long a, long long m) {
  return QuadraticSpec{Rational(a), Rational(-2 * a * m), Rational(a * m * m)};
}

ConvexSpec sample_convex(std::mt19937_64& rng, long long t_max, long long curv_max) {
  if (uniform_int(rng, 0, 3) == 0 && t_max >= 2) {
    PiecewiseLinearSpec pl;
    const long long k = uniform_int(rng, 0, 2);
    IntVec bps;
    for (long long b = 0; b < k; ++b) bps.push_back(uniform_int(rng, 1, t_max - 1));
    std::sort(bps.begin(), bps.end());
    bps.erase(std::unique(bps.begin(), bps.end()), bps.end());
    pl.breakpoints = std::move(bps);
    const long long den = uniform_int(rng, 1, 2);
    Rational slope(uniform_int(rng, -3, 0), den);
    pl.slopes.push_back(slope);
    for (size_t b = 0; b < pl.breakpoints.size(); ++b) {
      slope += Rational(uniform_int(rng, 0, 3), den);
      pl.slopes.push_back(slope);
    }
    pl.value_at_origin = Rational(uniform_int(rng, 0, 6), 1);
    return pl;
  }
  return centered_quadratic(uniform_int(rng, 0, curv_max), uniform_int(rng, 0, t_max));
}

StationCost sample_table(std::mt19937_64& rng, long long d_max, long long b_max,
                         const GenOptions& opts) {
  for (long long attempt = 0; attempt < opts.table_retry_cap; ++attempt) {
    const QuadraticSpec phi = centered_quadratic(uniform_int(rng, 1, 2), uniform_int(rng, 0, d_max));
    const QuadraticSpec psi = centered_quadratic(uniform_int(rng, 1, 2), uniform_int(rng, 0, b_max));
    const QuadraticSpec theta =
        centered_quadratic(uniform_int(rng, 1, 2), uniform_int(rng, 0, d_max + b_max));
    TableCost tab;
    tab.d_max = d_max;
    tab.b_max = b_max;
    tab.values.resize((d_max + 1) * (b_max + 1));
    for (long long d = 0; d <= d_max; ++d) {
      for (long long b = 0; b <= b_max; ++b) {
        Rational v = eval_convex(ConvexSpec{phi}, d) + eval_convex(ConvexSpec{psi}, b) +
                     eval_convex(ConvexSpec{theta}, d + b);
        v += opts.table_noise * Rational(uniform_int(rng, -1, 1));
        tab.at(d, b) = v;
      }
    }
    CostModel probe({tab});
    if (!validate_multimodular(probe, 0, d_max, b_max)) {
      return tab;
    }
  }
  throw InfeasibleError("table sampling hit the rejection cap (" +
                        std::to_string(opts.table_retry_cap) +
                        " attempts); lower the noise or raise the cap");
}

}  // namespace

std::vector<Instance> generate_instances(const GenOptions& opts) {
  if (opts.n < 1 || opts.u_max < 1 || opts.gamma_max < 0 || opts.count < 0) {
    throw PreconditionError("invalid generator parameters");
  }
  std::mt19937_64 rng(opts.seed);
  std::vector<Instance> out;
  out.reserve(opts.count);
  for (long long k = 0; k < opts.count; ++k) {
    Instance inst;
    inst.u.resize(opts.n);
    inst.ell.resize(opts.n);
    inst.d_bar.resize(opts.n);
    inst.b_bar.resize(opts.n);
    for (long long i = 0; i < opts.n; ++i) {
      inst.u[i] = uniform_int(rng, 1, opts.u_max);
      inst.ell[i] = uniform_int(rng, 0, std::min(inst.u[i], 2LL));
      // Initial allocation inside the box keeps the relaxed problem feasible.
      inst.d_bar[i] = uniform_int(rng, 0, inst.u[i]);
      inst.b_bar[i] = uniform_int(rng, 0, inst.u[i] - inst.d_bar[i]);
    }
    inst.gamma = uniform_int(rng, 0, opts.gamma_max);

    const long long b_total = inst.total_b();
    std::vector<StationCost> stations;
    stations.reserve(opts.n);
    for (long long i = 0; i < opts.n; ++i) {
      if (opts.family == CostFamily::SeparableConvex) {
        stations.push_back(SeparableConvexCost{
            sample_convex(rng, inst.u[i], 2),
            sample_convex(rng, std::min(inst.u[i], std::max(b_total, 1LL)), 2),
            sample_convex(rng, inst.u[i], 1)});
      } else {
        stations.push_back(
            sample_table(rng, inst.u[i], std::min(inst.u[i], b_total), opts));
      }
    }
    inst.cost = std::make_shared<const CostModel>(std::move(stations));
    inst.validate();
    out.push_back(std::move(inst));
  }
  return out;
}

}  // namespace dockalloc
