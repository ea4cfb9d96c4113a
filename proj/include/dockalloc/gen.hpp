#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "dockalloc/model.hpp"

namespace dockalloc {

enum class CostFamily { SeparableConvex, Table };

struct GenOptions {
  std::uint64_t seed = 1;
  long long n = 3;
  long long u_max = 6;
  long long gamma_max = 4;
  CostFamily family = CostFamily::SeparableConvex;
  long long count = 1;

  // Table sampling: base grids are strictly convex, then perturbed by
  // {-1,0,1} * noise and re-validated; with the default 1/4 the slack always
  // absorbs the perturbation. Larger noise exercises the rejection path.
  Rational table_noise = Rational(1, 4);
  long long table_retry_cap = 32;
};

// Deterministic per seed: the k-th instance of a run depends only on
// (seed, options), never on the platform's distribution implementations.
std::vector<Instance> generate_instances(const GenOptions& opts);

// Uniform integer in [lo, hi] from raw engine output (rejection sampling);
// stable across platforms.
long long uniform_int(std::mt19937_64& rng, long long lo, long long hi);

}  // namespace dockalloc
