#pragma once

#include <vector>

#include "dockalloc/model.hpp"
#include "dockalloc/rational.hpp"
#include "dockalloc/types.hpp"

namespace dockalloc {

// Optimum of the relaxed problem (DR without the l1-distance constraint),
// chosen with minimal ||x - x_bar||_1 among cost-minimal allocations.
struct RelaxedOptimum {
  Allocation alloc;
  Rational cost;
  long long distance = 0;  // ||x - x_bar||_1
  bool satisfies_l1 = false;
};

// The derived problem DR': P/Q split, side totals xi_P / xi_Q, tightened
// bounds, a fixed feasible reference (congruence anchor for every scaled
// view), and the distance floor gamma_min.
//
// shrink_window keeps the reference untouched: its residues define the
// scaled views and must survive window tightening; a window produced from a
// genuine DR'(2*lambda) optimum keeps at least one optimum of every finer
// view, but not necessarily the reference point itself.
struct DrPrime {
  Instance base;
  std::vector<char> in_p;  // in_p[i] != 0 iff station i is in P
  long long xi_p = 0, xi_q = 0;
  IntVec ell_prime, u_prime;
  Allocation reference;       // feasible for DR' as derived; distance 2*ref_level
  long long gamma_min = 0;    // closed-form value at derivation time
  long long ref_level = 0;    // (1/2)||x_ref - x_bar||_1, residue class of all levels

  long long n() const { return base.n(); }
  long long x_bar_p() const;
  long long x_bar_q() const;
};

// Congruence-restricted view DR'(lambda).
struct ScaledView {
  DrPrime drp;
  long long lambda = 1;
  IntVec d_anchor_mod, b_anchor_mod;  // reference residues per station
};

// Cost-minimal allocation of the relaxed problem; among cost-minimal points
// the l1 distance to x_bar is minimal. Throws InfeasibleError with a
// certificate naming the failing bound sum.
RelaxedOptimum solve_relaxed(const Instance& inst);

// P = stations whose dock total strictly increases in the relaxed optimum.
std::vector<char> split_pq(const Instance& inst, const RelaxedOptimum& relaxed);

// Builds DR' from the relaxed optimum. Throws InfeasibleError when
// gamma_min exceeds gamma.
DrPrime derive_dr_prime(const Instance& inst, const RelaxedOptimum& relaxed);

// Closed form max{ell'(P) - x_bar(P), x_bar(Q) - u'(Q), 0}; equals the
// definitional minimum half-distance over DR' feasible points.
long long gamma_min_closed_form(const DrPrime& drp);

// As the operation: recomputes the closed form and errors when it exceeds
// the budget.
long long gamma_min(const DrPrime& drp);

ScaledView scale_view(const DrPrime& drp, long long lambda);

// Tightens ell'/u' to [x_prev - 20*n*lambda, x_prev + 20*n*lambda]; prev must
// be optimal for DR'(2*lambda).
DrPrime shrink_window(const DrPrime& drp, const Allocation& prev, long long lambda);

}  // namespace dockalloc
