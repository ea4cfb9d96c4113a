// Acceptance suite: exercises every headline guarantee end to end at desk
// scale against the brute-force oracle, one PASS/FAIL line per criterion.
// Exact arithmetic throughout; no tolerances anywhere.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "dockalloc/errors.hpp"
#include "dockalloc/gen.hpp"
#include "dockalloc/io.hpp"
#include "dockalloc/oracle.hpp"
#include "dockalloc/proxlab.hpp"
#include "dockalloc/solver.hpp"

using namespace dockalloc;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
  std::cout << "[criterion " << criterion << "] " << (pass ? "PASS" : "FAIL") << " - " << detail
            << "\n";
  if (!pass) ++g_failures;
}

std::vector<Instance> acceptance_corpus(std::uint64_t seed_base, long long per_bucket,
                                        CostFamily family, long long gamma_max) {
  std::vector<Instance> out;
  for (long long n = 2; n <= 4; ++n) {
    GenOptions opts;
    opts.seed = seed_base + static_cast<std::uint64_t>(n);
    opts.n = n;
    opts.u_max = 8;
    opts.gamma_max = gamma_max;
    opts.family = family;
    opts.count = per_bucket;
    auto bucket = generate_instances(opts);
    out.insert(out.end(), bucket.begin(), bucket.end());
  }
  return out;
}

struct Pipeline {
  Instance inst;
  bool feasible = false;
  Allocation solution;
  SolveTrace trace;
  bool violating = false;  // relaxed optimum broke the budget
  std::optional<DrPrime> drp;
};

Pipeline run_pipeline(const Instance& inst) {
  Pipeline p;
  p.inst = inst;
  try {
    auto [alloc, trace] = solve_scaling(inst);
    p.feasible = true;
    p.solution = alloc;
    p.trace = std::move(trace);
    if (!p.trace.short_circuited) {
      p.violating = true;
      p.drp = derive_dr_prime(inst, solve_relaxed(inst));
    }
  } catch (const InfeasibleError&) {
    p.feasible = false;
  }
  return p;
}

std::string run_and_capture(const std::string& cmd, int* exit_code) {
  const fs::path out = fs::temp_directory_path() / "dockalloc_acceptance_capture";
  const int status = std::system((cmd + " > " + out.string() + " 2>&1").c_str());
  *exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(out, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

// Criterion 1: solver/oracle equivalence on DR and every intermediate view.
// Criteria 7 and 8 reuse the same pipelines, so they are computed alongside.
struct CorpusFindings {
  long long solved = 0;
  long long mismatches = 0;
  long long infeasible_agree = 0;
  long long infeasible_disagree = 0;
  long long view_checks = 0;
  long long view_mismatches = 0;
  // criterion 7
  long long violating = 0;
  long long tight_failures = 0;
  long long value_gap_failures = 0;
  // criterion 8
  long long phase_formula_failures = 0;
  long long step_formula_failures = 0;
  long long monotone_failures = 0;
  long long gamma_min_failures = 0;
  long long single_phase_edge = 0;
  double seconds = 0;
};

static CorpusFindings scan_corpus(const std::vector<Instance>& corpus) {
  CorpusFindings f;
  const auto started = std::chrono::steady_clock::now();
  for (const Instance& inst : corpus) {
    Pipeline p = run_pipeline(inst);
    if (!p.feasible) {
      try {
        brute_optimum(ProblemSpec::dr(inst));
        ++f.infeasible_disagree;
      } catch (const InfeasibleError&) {
        ++f.infeasible_agree;
      }
      continue;
    }
    // DR equivalence, streaming the oracle once.
    auto [dr_value, dr_witness] = brute_optimum(ProblemSpec::dr(inst));
    ++f.solved;
    if (!(dr_value == p.trace.final_objective)) ++f.mismatches;

    if (!p.violating) continue;
    const DrPrime& drp = *p.drp;
    ++f.violating;

    // Criterion 7: every DR optimum sits exactly at the budget, and DR'
    // shares the optimal value.
    {
      bool tight = true;
      const IntVec xbar = inst.x_bar();
      enumerate_feasible(ProblemSpec::dr(inst), [&](const Allocation& a) {
        if (objective(inst, a) == dr_value &&
            l1_distance(a.x_vec(), xbar) != 2 * inst.gamma) {
          tight = false;
        }
      });
      if (!tight) ++f.tight_failures;
      auto [drp_value, w] = brute_optimum(ProblemSpec::dr_prime(drp));
      if (!(drp_value == dr_value)) ++f.value_gap_failures;
    }

    // Criterion 1 (views) and criterion 8 (structure).
    const long long k = ceil_log2_ratio(inst.total_docks(), inst.n());
    if (k == 0) {
      ++f.single_phase_edge;
      if (p.trace.total_phases != 1) ++f.phase_formula_failures;
    } else if (p.trace.total_phases != k) {
      ++f.phase_formula_failures;
    }
    Rational prev_obj;
    bool first = true;
    for (const PhaseStats& ph : p.trace.phases) {
      auto [view_value, vw] = brute_optimum(ProblemSpec::dr_prime_scaled(drp, ph.lambda));
      ++f.view_checks;
      if (!(view_value == ph.objective_after)) ++f.view_mismatches;
      if (ph.gamma_steps != (inst.gamma - drp.gamma_min) / ph.lambda) ++f.step_formula_failures;
      if (!first && ph.objective_after > prev_obj) ++f.monotone_failures;
      prev_obj = ph.objective_after;
      first = false;
    }
    // gamma_min closed form vs the definitional minimum.
    long long min_level = -1;
    enumerate_feasible(ProblemSpec::dr_prime(drp), [&](const Allocation& a) {
      const long long lvl = l1_distance(a.x_vec(), inst.x_bar()) / 2;
      if (min_level < 0 || lvl < min_level) min_level = lvl;
    });
    if (min_level != drp.gamma_min) ++f.gamma_min_failures;
  }
  f.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return f;
}

int main() {
  std::cout << "dock reallocation acceptance suite\n";
  const auto t0 = std::chrono::steady_clock::now();

  // ---- corpora ----------------------------------------------------------
  auto corpus_sep = acceptance_corpus(11000, 130, CostFamily::SeparableConvex, 6);
  auto corpus_tab = acceptance_corpus(12000, 130, CostFamily::Table, 6);
  std::vector<Instance> corpus = corpus_sep;
  corpus.insert(corpus.end(), corpus_tab.begin(), corpus_tab.end());

  // ---- criteria 1, 7, 8 --------------------------------------------------
  CorpusFindings f = scan_corpus(corpus);
  {
    std::ostringstream os;
    os << f.solved << " solved instances (need >= 500), " << f.mismatches
       << " DR mismatches, " << f.view_checks << " view checks with " << f.view_mismatches
       << " mismatches, " << f.infeasible_agree << " infeasible (solver and oracle agree), "
       << f.infeasible_disagree << " disagreements, " << f.seconds << "s";
    report(1, f.solved >= 500 && f.mismatches == 0 && f.view_mismatches == 0 &&
                  f.infeasible_disagree == 0 && f.seconds < 120.0,
           os.str());
  }

  // ---- criteria 2-5: proximity lab over violating instances --------------
  long long reports = 0, theorem_fail = 0, linf_fail = 0, nu_checked = 0, nu_fail = 0;
  long long forbidden_seen = 0, case_fail = 0, lemma_fail = 0, occurrence_fail = 0;
  long long skipped = 0, lab_instances = 0;
  {
    // Small gamma makes budget violations common; both families contribute.
    auto lab = acceptance_corpus(13000, 150, CostFamily::SeparableConvex, 2);
    auto lab_tab = acceptance_corpus(14000, 150, CostFamily::Table, 2);
    lab.insert(lab.end(), lab_tab.begin(), lab_tab.end());
    lab.insert(lab.end(), corpus.begin(), corpus.end());
    for (const Instance& inst : lab) {
      if (lab_instances >= 230) break;
      bool counted = false;
      for (long long lambda : {2LL, 4LL}) {
        ProximityOptions opts;
        opts.check_nu = lambda == 2;  // composed check at (lambda, nu) = (2, 2)
        ProximityReport rep;
        try {
          rep = verify_proximity(inst, lambda, opts);
        } catch (const InfeasibleError&) {
          ++skipped;
          continue;
        } catch (const CapExceededError&) {
          ++skipped;
          continue;
        }
        if (rep.trivial) continue;
        ++reports;
        if (!counted) {
          counted = true;
          ++lab_instances;
        }
        if (!rep.pass_theorem) ++theorem_fail;
        if (!rep.pass_linf) ++linf_fail;
        if (opts.check_nu) {
          ++nu_checked;
          if (!rep.pass_nu) ++nu_fail;
        }
        if (rep.forbidden_seen) ++forbidden_seen;
        if (!rep.pass_cases) ++case_fail;
        if (!rep.pass_lemmas) ++lemma_fail;
        const bool any_p = rep.label.p[0] || rep.label.p[1] || rep.label.p[2] || rep.label.p[3];
        const bool any_q = rep.label.q[0] || rep.label.q[1] || rep.label.q[2] || rep.label.q[3];
        if (!any_p || !any_q) ++occurrence_fail;
      }
    }
  }
  {
    std::ostringstream os;
    os << lab_instances << " instances (need >= 200) across " << reports
       << " (instance, lambda) reports, " << theorem_fail << " l1-bound failures, " << linf_fail
       << " linf failures, " << nu_checked << " composed-scale checks with " << nu_fail
       << " failures, " << skipped << " skipped";
    report(2, lab_instances >= 200 && theorem_fail == 0 && linf_fail == 0 && nu_checked >= 200 &&
                  nu_fail == 0,
           os.str());
  }

  // Criterion 3: forbidden combinations never realized; a planted
  // non-optimal anchor makes the checker fire (negative control).
  bool control_fires = false;
  {
    DrPrime drp;
    drp.base.d_bar = {1, 1, 1, 1};
    drp.base.b_bar = {0, 0, 0, 0};
    drp.base.ell = {0, 0, 0, 0};
    drp.base.u = {9, 9, 9, 9};
    drp.base.gamma = 1;
    drp.base.cost = CostModel::zero(4);
    drp.in_p = {1, 1, 0, 0};
    Allocation a{{1, 0, 0, 0}, {0, 0, 0, 1}};
    Allocation fake{{0, 0, 1, 0}, {0, 1, 0, 0}};  // deliberately non-optimal anchor
    ISets is = compute_isets(drp, 1, a, fake);
    CaseLabel label = classify_cases(is, a.b_total() - fake.b_total(),
                                     a.d_total() - fake.d_total(), 1);
    CaseBoundVerdict v = verify_case_bounds(2, label, 1, 4);
    LemmaVerdict lv = verify_emptiness_lemmas(is, a.b_total() - fake.b_total(), 1);
    control_fires = v.forbidden && !v.ok && !lv.ok;
  }
  {
    std::ostringstream os;
    os << forbidden_seen << " forbidden combinations over " << reports
       << " reports; negative control " << (control_fires ? "fires" : "SILENT");
    report(3, forbidden_seen == 0 && control_fires && lab_instances >= 200, os.str());
  }

  report(4, case_fail == 0 && lab_instances >= 200,
         std::to_string(case_fail) + " per-case bound failures over " + std::to_string(reports) +
             " reports");
  {
    std::ostringstream os;
    os << occurrence_fail << " occurrence failures, " << lemma_fail
       << " emptiness-lemma failures over " << reports << " reports";
    report(5, occurrence_fail == 0 && lemma_fail == 0 && lab_instances >= 200, os.str());
  }

  // ---- criterion 6: multimodularity machinery ----------------------------
  {
    long long sep_checked = 0, sep_failures = 0;
    for (const Instance& inst : corpus_sep) {
      for (long long i = 0; i < inst.n(); ++i) {
        if (validate_multimodular(*inst.cost, i, 12, 12)) ++sep_failures;
        ++sep_checked;
      }
    }
    // Concave-theta counterexample with its pinned violation location.
    CostModel concave({SeparableConvexCost{
        QuadraticSpec{Rational(0), Rational(0), Rational(0)},
        QuadraticSpec{Rational(0), Rational(0), Rational(0)},
        QuadraticSpec{Rational(-1), Rational(0), Rational(0)}}});
    auto viol = validate_multimodular(concave, 0, 4, 4);
    const bool counterexample_ok = viol && viol->inequality_id == 1 && viol->alpha == 0 &&
                                   viol->beta == 0 && viol->lhs == Rational(-3) &&
                                   viol->rhs == Rational(-1);

    long long exchange_checked = 0, exchange_failures = 0;
    std::mt19937_64 rng(15000);
    for (const Instance& inst : corpus_tab) {
      if (exchange_checked >= 1400) break;
      for (int rep_i = 0; rep_i < 10; ++rep_i) {
        Allocation a, a2;
        a.d.resize(inst.n());
        a.b.resize(inst.n());
        a2.d.resize(inst.n());
        a2.b.resize(inst.n());
        for (long long i = 0; i < inst.n(); ++i) {
          auto box = inst.cost->domain_box(i);
          a.d[i] = uniform_int(rng, 0, box->first);
          a.b[i] = uniform_int(rng, 0, box->second);
          a2.d[i] = uniform_int(rng, 0, box->first);
          a2.b[i] = uniform_int(rng, 0, box->second);
        }
        ExchangeIndices idx;
        for (long long t = 0; t < inst.n(); ++t) {
          const long long dd = a.d[t] - a2.d[t];
          const long long db = a.b[t] - a2.b[t];
          const long long dx = dd + db;
          if (!idx.i && dd > 0 && dx > 0) idx.i = t;
          if (!idx.j && db < 0 && dx < 0) idx.j = t;
          if (!idx.h && dd < 0 && dx < 0) idx.h = t;
          if (!idx.k && db > 0 && dx > 0) idx.k = t;
          if (!idx.s && dd < 0 && db > 0) idx.s = t;
        }
        for (const ExchangeCheck& c : check_exchange_inequalities(*inst.cost, a, a2, idx)) {
          ++exchange_checked;
          if (!c.holds) ++exchange_failures;
        }
      }
    }

    long long diag_checked = 0, diag_failures = 0;
    for (const Instance& inst : corpus_tab) {
      for (long long i = 0; i < inst.n(); ++i) {
        auto box = inst.cost->domain_box(i);
        for (long long x = 0; x <= box->first + box->second; ++x) {
          if (diag_convexity(*inst.cost, i, x)) ++diag_failures;
          ++diag_checked;
        }
      }
    }

    std::ostringstream os;
    os << sep_checked << " separable stations validated on 12x12 (" << sep_failures
       << " failures); counterexample " << (counterexample_ok ? "located" : "MISSED") << "; "
       << exchange_checked << " exchange checks (" << exchange_failures << " failures); "
       << diag_checked << " diagonal-convexity scans (" << diag_failures << " failures)";
    report(6, sep_failures == 0 && counterexample_ok && exchange_checked >= 1000 &&
                  exchange_failures == 0 && diag_failures == 0,
           os.str());
  }

  // ---- criterion 7 -------------------------------------------------------
  {
    std::ostringstream os;
    os << f.violating << " budget-violating instances: " << f.tight_failures
       << " with a DR optimum off the exact budget, " << f.value_gap_failures
       << " with DR != DR' value";
    report(7, f.violating >= 100 && f.tight_failures == 0 && f.value_gap_failures == 0, os.str());
  }

  // ---- criterion 8 -------------------------------------------------------
  {
    std::ostringstream os;
    os << f.phase_formula_failures << " phase-count failures (" << f.single_phase_edge
       << " at the D+B <= n edge), " << f.step_formula_failures << " sweep-count failures, "
       << f.monotone_failures << " monotonicity failures, " << f.gamma_min_failures
       << " gamma_min mismatches";
    report(8, f.phase_formula_failures == 0 && f.step_formula_failures == 0 &&
                  f.monotone_failures == 0 && f.gamma_min_failures == 0,
           os.str());
  }

  // ---- criterion 9: byte-identical reruns through the CLI ----------------
  {
    const char* bin = std::getenv("DOCKALLOC_BIN");
    bool pass = bin != nullptr;
    std::string detail;
    if (!bin) {
      detail = "DOCKALLOC_BIN not set";
    } else {
      const fs::path root = fs::temp_directory_path() / "dockalloc_acceptance";
      fs::remove_all(root);
      fs::create_directories(root);
      const std::string gen_args = " --seed 99 -n 3 --u-max 6 --gamma-max 2 --count 6";
      int rc1 = 0, rc2 = 0;
      run_and_capture(std::string(bin) + " gen -o " + (root / "a").string() + gen_args, &rc1);
      run_and_capture(std::string(bin) + " gen -o " + (root / "b").string() + gen_args, &rc2);
      bool gen_same = rc1 == 0 && rc2 == 0;
      for (int k = 0; k < 6 && gen_same; ++k) {
        char name[32];
        std::snprintf(name, sizeof(name), "inst_%04d.json", k);
        std::ifstream fa(root / "a" / name, std::ios::binary);
        std::ifstream fb(root / "b" / name, std::ios::binary);
        std::ostringstream sa, sb;
        sa << fa.rdbuf();
        sb << fb.rdbuf();
        gen_same = !sa.str().empty() && sa.str() == sb.str();
      }
      const std::string inst0 = (root / "a" / "inst_0000.json").string();
      std::string solve1 = run_and_capture(std::string(bin) + " solve " + inst0 + " --trace", &rc1);
      std::string solve2 = run_and_capture(std::string(bin) + " solve " + inst0 + " --trace", &rc2);
      const bool solve_same = rc1 == rc2 && !solve1.empty() && solve1 == solve2;
      const std::string verify_cmd = std::string(bin) + " verify " + (root / "a").string() +
                                     " --lambda 2 --fixed-wall-ms --out ";
      run_and_capture(verify_cmd + (root / "r1.csv").string(), &rc1);
      run_and_capture(verify_cmd + (root / "r2.csv").string(), &rc2);
      std::ifstream c1(root / "r1.csv", std::ios::binary), c2(root / "r2.csv", std::ios::binary);
      std::ostringstream s1, s2;
      s1 << c1.rdbuf();
      s2 << c2.rdbuf();
      const bool verify_same = !s1.str().empty() && s1.str() == s2.str();
      pass = gen_same && solve_same && verify_same;
      detail = std::string("gen ") + (gen_same ? "identical" : "DIFFERS") + ", solve+trace " +
               (solve_same ? "identical" : "DIFFERS") + ", verify CSV " +
               (verify_same ? "identical" : "DIFFERS");
    }
    report(9, pass, detail);
  }

  const double total =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::cout << (g_failures == 0 ? "ALL CRITERIA PASSED" : "FAILURES PRESENT") << " (" << total
            << "s total)\n";
  return g_failures == 0 ? 0 : 1;
}
