#pragma once

#include <memory>
#include <vector>

#include "dockalloc/gen.hpp"
#include "dockalloc/model.hpp"

namespace dockalloc::testutil {

inline ConvexSpec quad(long long a, long long b, long long c) {
  return QuadraticSpec{Rational(a), Rational(b), Rational(c)};
}

inline ConvexSpec zero_spec() { return quad(0, 0, 0); }

inline SeparableConvexCost separable(ConvexSpec phi, ConvexSpec psi, ConvexSpec theta) {
  return SeparableConvexCost{std::move(phi), std::move(psi), std::move(theta)};
}

// The two-station instance used across the suites: d_bar=(2,1), b_bar=(1,2),
// ell=0, u=6, c_1(d,b) = (d-4)^2 + (b-1)^2, c_2(d,b) = d^2 + b^2.
inline Instance make_e1(long long gamma = 2) {
  Instance inst;
  inst.d_bar = {2, 1};
  inst.b_bar = {1, 2};
  inst.ell = {0, 0};
  inst.u = {6, 6};
  inst.gamma = gamma;
  inst.cost = std::make_shared<const CostModel>(std::vector<StationCost>{
      separable(quad(1, -8, 16), quad(1, -2, 1), zero_spec()),
      separable(quad(1, 0, 0), quad(1, 0, 0), zero_spec())});
  return inst;
}

// Same data with gamma = 1: the relaxed optimum (distance 4) violates the
// budget, so the full DR' pipeline runs.
inline Instance make_e2() { return make_e1(1); }

inline std::vector<Instance> small_corpus(std::uint64_t seed, long long count,
                                          CostFamily family = CostFamily::SeparableConvex,
                                          long long n = 3, long long u_max = 6,
                                          long long gamma_max = 4) {
  GenOptions opts;
  opts.seed = seed;
  opts.count = count;
  opts.family = family;
  opts.n = n;
  opts.u_max = u_max;
  opts.gamma_max = gamma_max;
  return generate_instances(opts);
}

}  // namespace dockalloc::testutil
