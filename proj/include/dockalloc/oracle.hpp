#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dockalloc/model.hpp"
#include "dockalloc/transform.hpp"

namespace dockalloc {

enum class ProblemKind { Dr, DrPrime, DrPrimeScaled, DrPrimeGamma };

std::string problem_kind_name(ProblemKind kind);

// Desk-scale enumeration target. DrPrime variants carry the derived problem;
// DrPrimeScaled adds the congruence grid, DrPrimeGamma pins the gamma' level
// exactly (on the lambda-grid when lambda > 1).
struct ProblemSpec {
  ProblemKind kind = ProblemKind::Dr;
  Instance inst;
  std::optional<DrPrime> drp;
  long long lambda = 1;
  std::optional<long long> gamma_prime;
  long long cap = 10'000'000;

  static ProblemSpec dr(Instance inst);
  static ProblemSpec dr_prime(DrPrime drp);
  static ProblemSpec dr_prime_scaled(DrPrime drp, long long lambda);
  static ProblemSpec dr_prime_gamma(DrPrime drp, long long gamma_prime, long long lambda = 1);
};

struct OptimaSet {
  ProblemKind kind = ProblemKind::Dr;
  Rational optimal_value;
  std::vector<Allocation> optima;  // complete over the enumerated space
};

// Streams exactly the feasible allocations. Throws CapExceededError once the
// search touches more than spec.cap nodes.
void enumerate_feasible(const ProblemSpec& spec,
                        const std::function<void(const Allocation&)>& yield);

// Exact argmin; ties broken toward the lexicographically smallest (d, b).
// Throws InfeasibleError when the feasible set is empty.
std::pair<Rational, Allocation> brute_optimum(const ProblemSpec& spec);

OptimaSet all_optima(const ProblemSpec& spec);

// The optimum minimizing ||d* - d||_1 + ||b* - b||_1 against the anchor;
// ties broken lexicographically.
Allocation min_distance_optimum(const OptimaSet& optima, const Allocation& anchor);
Allocation min_distance_optimum(const ProblemSpec& spec, const Allocation& anchor);

// Reads DOCKALLOC_ORACLE_CAP, falling back to the default cap.
long long oracle_cap_from_env();

}  // namespace dockalloc
