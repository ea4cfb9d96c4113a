#pragma once

#include <memory>
#include <string>
#include <vector>

#include "dockalloc/costs.hpp"
#include "dockalloc/rational.hpp"
#include "dockalloc/types.hpp"

namespace dockalloc {

// Problem data for DR. Station indices are 0-based everywhere. The initial
// allocation (d_bar, b_bar) is not required to be feasible for DR itself.
struct Instance {
  IntVec d_bar, b_bar;  // initial open docks / docks with bikes
  IntVec ell, u;        // per-station bounds on d + b
  long long gamma = 0;  // half the l1 reallocation budget
  std::shared_ptr<const CostModel> cost;

  long long n() const { return static_cast<long long>(d_bar.size()); }
  long long total_d() const { return vec_sum(d_bar); }  // D
  long long total_b() const { return vec_sum(b_bar); }  // B
  long long total_docks() const { return total_d() + total_b(); }
  IntVec x_bar() const {
    IntVec out(d_bar.size());
    for (size_t i = 0; i < d_bar.size(); ++i) out[i] = d_bar[i] + b_bar[i];
    return out;
  }

  // Structural invariants: equal lengths, nonnegative data, ell <= u,
  // cost model covering n stations. Throws on violation.
  void validate() const;
};

struct ConstraintViolation {
  std::string constraint;  // e.g. "total_docks", "l1_budget", "upper_bound"
  long long station = -1;  // -1 for instance-wide constraints
  long long observed = 0;
  long long required = 0;
};

struct FeasibilityVerdict {
  bool feasible = true;
  std::vector<ConstraintViolation> violations;
};

// Checks every DR constraint and reports all violations.
FeasibilityVerdict check_feasible_dr(const Instance& inst, const Allocation& a);

long long l1_distance(std::span<const long long> x, std::span<const long long> y);
long long linf_distance(std::span<const long long> x, std::span<const long long> y);

// Exact total cost sum c_i(d(i), b(i)).
Rational objective(const Instance& inst, const Allocation& a);

}  // namespace dockalloc
