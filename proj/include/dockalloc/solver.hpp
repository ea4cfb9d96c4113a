#pragma once

#include <utility>
#include <vector>

#include "dockalloc/localsearch.hpp"
#include "dockalloc/model.hpp"
#include "dockalloc/transform.hpp"

namespace dockalloc {

struct PhaseStats {
  long long lambda = 1;
  long long moves = 0;        // accepted local-search moves in this phase
  long long gamma_steps = 0;  // level raises performed by the sweep
  Rational objective_after;
  IntVec ell_snapshot, u_snapshot;
  Allocation solution;  // phase result (optimal for this view at desk scale)
};

struct SolveTrace {
  std::vector<PhaseStats> phases;
  long long total_phases = 0;
  Rational final_objective;
  bool short_circuited = false;  // relaxed optimum already met the budget
};

// Re-splits bikes optimally with x = d + b fixed, congruent to the view
// anchors mod lambda, b(N) <= B. Returns the input unchanged when it is
// already bike-optimal.
Allocation bike_optimize(const DrPrime& drp, const Allocation& a, long long lambda);

// Distance-then-cost optimum at the lowest reachable gamma' grid level.
Allocation solve_gamma_floor(const DrPrime& drp, long long lambda);

// Steepest-descent sweep over gamma' levels (floor, floor + lambda, ...,
// largest grid level <= gamma). Returns the best allocation over all
// visited levels (earliest level wins ties).
Allocation gamma_sweep(const DrPrime& drp, long long lambda, const Allocation& start,
                       PhaseStats* stats = nullptr, const MoveObserver* observer = nullptr);

// Full proximity-scaling pipeline.
std::pair<Allocation, SolveTrace> solve_scaling(const Instance& inst,
                                                const MoveObserver* observer = nullptr);

// Smallest k >= 0 with n * 2^k >= total; the scaling phase count for
// total > n.
long long ceil_log2_ratio(long long total, long long n);

}  // namespace dockalloc
