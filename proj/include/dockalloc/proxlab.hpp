#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "dockalloc/model.hpp"
#include "dockalloc/oracle.hpp"
#include "dockalloc/transform.hpp"

namespace dockalloc {

// Station sets I_1..I_6 classifying coordinate differences between a scaled
// optimum a and the min-distance exact optimum a_star, thresholded at lambda.
// All checks in this module assume a_star is the optimum minimizing
// ||d* - d||_1 + ||b* - b||_1 (oracle::min_distance_optimum); an arbitrary
// optimum would invalidate the lemma verdicts.
struct ISets {
  std::array<std::vector<long long>, 6> full;    // I1..I6 as sorted station lists
  std::array<std::vector<long long>, 6> p_side;  // I_t ∩ P
  std::array<std::vector<long long>, 6> q_side;  // I_t ∩ Q

  bool empty(int t) const { return full[t - 1].empty(); }
  bool empty_p(int t) const { return p_side[t - 1].empty(); }
  bool empty_q(int t) const { return q_side[t - 1].empty(); }
};

ISets compute_isets(const DrPrime& drp, long long lambda, const Allocation& a,
                    const Allocation& a_star);

// Which of the case predicates P1..P4 / Q1..Q4 / N1..N4 hold.
struct CaseLabel {
  std::array<bool, 4> p{};
  std::array<bool, 4> q{};
  std::array<bool, 4> n{};

  std::string p_string() const;
  std::string q_string() const;
  std::string n_string() const;
};

CaseLabel classify_cases(const ISets& isets, long long b_total_diff, long long d_total_diff,
                         long long lambda);

struct CaseBoundVerdict {
  bool ok = true;
  bool forbidden = false;      // P3-Q4 or P4-Q3 realized
  long long applied_bound = 0; // tightest bound among realized combinations
  std::vector<std::string> failures;
};

// Applies the per-combination distance bounds (4/8/10 * lambda * n) plus the
// N-case bounds to the anchored distance ||x - x*||_1, and flags forbidden
// combinations.
CaseBoundVerdict verify_case_bounds(long long anchor_dist_l1, const CaseLabel& label,
                                    long long lambda, long long n);

struct ProximityReport;
CaseBoundVerdict verify_case_bounds(const ProximityReport& report, const CaseLabel& label);

struct LemmaVerdict {
  bool ok = true;
  std::vector<std::string> failures;  // witness dumps
};

// Pairwise and conditional emptiness lemmas plus both four-set claims.
LemmaVerdict verify_emptiness_lemmas(const ISets& isets, long long b_total_diff,
                                     long long lambda);

struct MonoDecVerdict {
  bool ok = true;
  long long tuples = 0;  // index tuples satisfying the clause hypotheses
  long long chains = 0;  // strict comparisons evaluated
  std::vector<std::string> failures;
};

// Strict-decrease chains, clause 1..5. Vacuous pass when no tuple qualifies.
MonoDecVerdict verify_mono_dec(const DrPrime& drp, long long lambda, const Allocation& a,
                               const Allocation& a_star, int clause);

struct ProximityOptions {
  bool check_nu = false;  // also verify the composed-scale bound
  long long nu = 2;
  long long cap = 10'000'000;
};

struct ProximityReport {
  std::string instance_id;
  long long lambda = 1;
  long long n = 0;
  bool trivial = false;  // relaxed optimum met the budget; nothing to verify

  // Worst case over all DR'(lambda) optima of the min over DR' optima.
  long long dist_l1 = 0;
  long long dist_linf = 0;
  long long bound_l1 = 0;   // 10 * lambda * n
  long long bound_linf = 0;

  // Anchored quantities for the worst scaled optimum (largest anchor dist).
  long long anchor_dist_l1 = 0;
  CaseLabel label;
  long long table1_bound = 0;

  long long scaled_optima = 0;
  long long exact_optima = 0;

  bool pass_theorem = true;
  bool pass_linf = true;
  bool pass_cases = true;
  bool pass_lemmas = true;
  bool pass_nu = true;
  bool forbidden_seen = false;

  bool pass() const {
    return pass_theorem && pass_linf && pass_cases && pass_lemmas && pass_nu && !forbidden_seen;
  }
};

// Checks the scaled proximity bound for every DR'(lambda) optimum against
// the oracle's complete DR' optima list, with case classification and the
// emptiness lemmas along the way.
ProximityReport verify_proximity(const Instance& inst, long long lambda,
                                 const ProximityOptions& opts = {});

}  // namespace dockalloc
