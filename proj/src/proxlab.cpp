#include "dockalloc/proxlab.hpp"

#include <algorithm>
#include <sstream>

#include "dockalloc/errors.hpp"

namespace dockalloc {

ISets compute_isets(const DrPrime& drp, long long lambda, const Allocation& a,
                    const Allocation& a_star) {
  if (a.n() != drp.n() || a_star.n() != drp.n()) {
    throw DimensionError("compute_isets: allocation length mismatch");
  }
  ISets out;
  for (long long i = 0; i < drp.n(); ++i) {
    const long long dd = a.d[i] - a_star.d[i];
    const long long db = a.b[i] - a_star.b[i];
    const long long dx = dd + db;
    const bool member[6] = {
        dd >= lambda && db <= -lambda,   // I1
        dd <= -lambda && db >= lambda,   // I2
        dx >= lambda && dd >= lambda,    // I3
        dx <= -lambda && dd <= -lambda,  // I4
        dx >= lambda && db >= lambda,    // I5
        dx <= -lambda && db <= -lambda,  // I6
    };
    for (int t = 0; t < 6; ++t) {
      if (!member[t]) continue;
      out.full[t].push_back(i);
      (drp.in_p[i] ? out.p_side[t] : out.q_side[t]).push_back(i);
    }
  }
  return out;
}

namespace {

std::string join_cases(const std::array<bool, 4>& flags, char prefix) {
  std::string out;
  for (int c = 0; c < 4; ++c) {
    if (!flags[c]) continue;
    if (!out.empty()) out += '+';
    out += prefix;
    out += static_cast<char>('1' + c);
  }
  return out;
}

}  // namespace

std::string CaseLabel::p_string() const { return join_cases(p, 'P'); }
std::string CaseLabel::q_string() const { return join_cases(q, 'Q'); }
std::string CaseLabel::n_string() const { return join_cases(n, 'N'); }

CaseLabel classify_cases(const ISets& is, long long b_total_diff, long long d_total_diff,
                         long long lambda) {
  CaseLabel label;
  // Side cases; side(t) is emptiness of I_t restricted to the side.
  auto classify_side = [&](auto empty_side) -> std::array<bool, 4> {
    std::array<bool, 4> c{};
    c[0] = empty_side(4) && empty_side(6);
    c[1] = empty_side(3) && empty_side(5);
    c[2] = !empty_side(3) && !empty_side(6) && is.empty(2) && empty_side(4) && empty_side(5) &&
           b_total_diff > -lambda && d_total_diff < lambda;
    c[3] = !empty_side(4) && !empty_side(5) && is.empty(1) && empty_side(3) && empty_side(6) &&
           b_total_diff < lambda && d_total_diff > -lambda;
    return c;
  };
  label.p = classify_side([&](int t) { return is.empty_p(t); });
  label.q = classify_side([&](int t) { return is.empty_q(t); });
  label.n[0] = is.empty(4) && is.empty(6);
  label.n[1] = is.empty(3) && is.empty(5);
  label.n[2] = is.empty(2) && is.empty(4) && is.empty(5) && b_total_diff > -lambda &&
               d_total_diff < lambda;
  label.n[3] = is.empty(1) && is.empty(3) && is.empty(6) && b_total_diff < lambda &&
               d_total_diff > -lambda;
  return label;
}

CaseBoundVerdict verify_case_bounds(long long anchor_dist_l1, const CaseLabel& label,
                                    long long lambda, long long n) {
  CaseBoundVerdict v;
  v.applied_bound = 10 * lambda * n;
  bool any_combo = false;
  for (int p = 0; p < 4; ++p) {
    if (!label.p[p]) continue;
    for (int q = 0; q < 4; ++q) {
      if (!label.q[q]) continue;
      any_combo = true;
      if ((p == 2 && q == 3) || (p == 3 && q == 2)) {
        v.forbidden = true;
        v.ok = false;
        std::ostringstream os;
        os << "forbidden combination P" << p + 1 << "-Q" << q + 1 << " realized";
        v.failures.push_back(os.str());
        continue;
      }
      long long bound;
      if (p <= 1 && q <= 1) {
        bound = 4 * lambda * n;
      } else if (p == q) {
        bound = 8 * lambda * n;
      } else {
        bound = 10 * lambda * n;
      }
      v.applied_bound = std::min(v.applied_bound, bound);
      if (anchor_dist_l1 >= bound) {
        v.ok = false;
        std::ostringstream os;
        os << "P" << p + 1 << "-Q" << q + 1 << " bound " << bound << " violated: ||x-x*||_1 = "
           << anchor_dist_l1;
        v.failures.push_back(os.str());
      }
    }
  }
  if (!any_combo) {
    v.ok = false;
    v.failures.push_back("no (P-case, Q-case) combination realized");
  }
  // N-case bounds: < 4*lambda*n under N1/N2, < 8*lambda*n under N3/N4.
  for (int c = 0; c < 4; ++c) {
    if (!label.n[c]) continue;
    const long long bound = (c <= 1 ? 4 : 8) * lambda * n;
    if (anchor_dist_l1 >= bound) {
      v.ok = false;
      std::ostringstream os;
      os << "N" << c + 1 << " bound " << bound << " violated: ||x-x*||_1 = " << anchor_dist_l1;
      v.failures.push_back(os.str());
    }
  }
  return v;
}

CaseBoundVerdict verify_case_bounds(const ProximityReport& report, const CaseLabel& label) {
  return verify_case_bounds(report.anchor_dist_l1, label, report.lambda, report.n);
}

namespace {

std::string dump_sets(const ISets& is) {
  std::ostringstream os;
  for (int t = 1; t <= 6; ++t) {
    os << " I" << t << "={";
    for (size_t k = 0; k < is.full[t - 1].size(); ++k) {
      if (k) os << ",";
      os << is.full[t - 1][k];
    }
    os << "}";
  }
  return os.str();
}

}  // namespace

LemmaVerdict verify_emptiness_lemmas(const ISets& is, long long b_total_diff, long long lambda) {
  LemmaVerdict v;
  auto fail = [&](const std::string& what) {
    v.ok = false;
    v.failures.push_back(what + dump_sets(is));
  };
  struct Side {
    const char* name;
    bool (ISets::*empty)(int) const;
  };
  const Side sides[2] = {{"P", &ISets::empty_p}, {"Q", &ISets::empty_q}};
  for (const Side& s : sides) {
    if (!(is.*(s.empty))(3) && !(is.*(s.empty))(4)) {
      fail(std::string("I3^") + s.name + " and I4^" + s.name + " both nonempty");
    }
    if (!(is.*(s.empty))(5) && !(is.*(s.empty))(6)) {
      fail(std::string("I5^") + s.name + " and I6^" + s.name + " both nonempty");
    }
    if (!is.empty(1) && !(is.*(s.empty))(4) && !(is.*(s.empty))(5)) {
      fail(std::string("I1 nonempty but I4^") + s.name + ", I5^" + s.name + " both nonempty");
    }
    if (b_total_diff >= lambda && !(is.*(s.empty))(4) && !(is.*(s.empty))(5)) {
      fail(std::string("b(N)-b*(N) >= lambda but I4^") + s.name + ", I5^" + s.name +
           " both nonempty");
    }
    if (!is.empty(2) && !(is.*(s.empty))(3) && !(is.*(s.empty))(6)) {
      fail(std::string("I2 nonempty but I3^") + s.name + ", I6^" + s.name + " both nonempty");
    }
    if (b_total_diff <= -lambda && !(is.*(s.empty))(3) && !(is.*(s.empty))(6)) {
      fail(std::string("b(N)-b*(N) <= -lambda but I3^") + s.name + ", I6^" + s.name +
           " both nonempty");
    }
  }
  if (!is.empty_p(3) && !is.empty_p(6) && !is.empty_q(4) && !is.empty_q(5)) {
    fail("I3^P, I6^P, I4^Q, I5^Q all nonempty");
  }
  if (!is.empty_p(4) && !is.empty_p(5) && !is.empty_q(3) && !is.empty_q(6)) {
    fail("I4^P, I5^P, I3^Q, I6^Q all nonempty");
  }
  return v;
}

namespace {

struct Supports {
  // Stations grouped by the sign patterns used in the mono-dec clauses.
  std::vector<long long> d_up_x_up;      // supp+(d-d*) ∩ supp+(x-x*)
  std::vector<long long> d_down_x_down;  // supp-(d-d*) ∩ supp-(x-x*)
  std::vector<long long> b_down_x_down;  // supp-(b-b*) ∩ supp-(x-x*)
  std::vector<long long> b_up_x_up;      // supp+(b-b*) ∩ supp+(x-x*)
  std::vector<long long> d_up_b_down;    // supp+(d-d*) ∩ supp-(b-b*)
};

Supports make_supports(const Allocation& a, const Allocation& a_star) {
  Supports s;
  for (long long i = 0; i < a.n(); ++i) {
    const long long dd = a.d[i] - a_star.d[i];
    const long long db = a.b[i] - a_star.b[i];
    const long long dx = dd + db;
    if (dd > 0 && dx > 0) s.d_up_x_up.push_back(i);
    if (dd < 0 && dx < 0) s.d_down_x_down.push_back(i);
    if (db < 0 && dx < 0) s.b_down_x_down.push_back(i);
    if (db > 0 && dx > 0) s.b_up_x_up.push_back(i);
    if (dd > 0 && db < 0) s.d_up_b_down.push_back(i);
  }
  return s;
}

}  // namespace

MonoDecVerdict verify_mono_dec(const DrPrime& drp, long long lambda, const Allocation& a,
                               const Allocation& a_star, int clause) {
  if (clause < 1 || clause > 5) throw PreconditionError("mono-dec clause must be in 1..5");
  MonoDecVerdict v;
  const Instance& inst = drp.base;
  const Supports sup = make_supports(a, a_star);
  auto same_side = [&](long long i, long long j) { return drp.in_p[i] == drp.in_p[j]; };
  auto cost_of = [&](const IntVec& d, const IntVec& b) {
    Rational s(0);
    for (long long t = 0; t < inst.n(); ++t) s += inst.cost->eval(t, d[t], b[t]);
    return s;
  };
  const long long b_total_diff = a.b_total() - a_star.b_total();

  // Evaluates the chain value at step t for the clause-specific direction
  // and asserts strict decrease along 0..steps.
  auto run_chain = [&](long long steps, const std::string& who,
                       const std::function<Rational(long long)>& at) {
    ++v.tuples;
    Rational prev = at(0);
    for (long long t = 1; t <= steps; ++t) {
      Rational cur = at(t);
      ++v.chains;
      if (!(prev > cur)) {
        v.ok = false;
        v.failures.push_back("chain not strictly decreasing at step " + std::to_string(t) +
                             " for " + who + ": " + prev.str() + " -> " + cur.str());
      }
      prev = cur;
    }
  };

  switch (clause) {
    case 1:
      for (long long i : sup.d_up_x_up) {
        for (long long h : sup.d_down_x_down) {
          if (!same_side(i, h)) continue;
          // The supports must persist along the chain, so the x-gaps bound
          // the admissible range alongside the d-gaps.
          const long long xi = a.x(i) - a_star.x(i);
          const long long xh = a_star.x(h) - a.x(h);
          const long long span =
              std::min({a.d[i] - a_star.d[i], a_star.d[h] - a.d[h], xi, xh});
          if (span < 1) continue;
          run_chain(span, "(i)", [&](long long t) {
            IntVec d = a.d;
            d[i] -= t;
            d[h] += t;
            return cost_of(d, a.b);
          });
        }
      }
      break;
    case 2:
      for (long long j : sup.b_down_x_down) {
        for (long long k : sup.b_up_x_up) {
          if (!same_side(j, k)) continue;
          const long long xj = a_star.x(j) - a.x(j);
          const long long xk = a.x(k) - a_star.x(k);
          const long long span =
              std::min({a_star.b[j] - a.b[j], a.b[k] - a_star.b[k], xj, xk});
          if (span < 1) continue;
          run_chain(span, "(ii)", [&](long long t) {
            IntVec b = a.b;
            b[j] += t;
            b[k] -= t;
            return cost_of(a.d, b);
          });
        }
      }
      break;
    case 3:
      for (long long i : sup.d_down_x_down) {
        for (long long j : sup.b_up_x_up) {
          if (!same_side(i, j)) continue;
          const long long span = std::min(
              {a_star.d[i] - a.d[i], a.b[j] - a_star.b[j], b_total_diff,
               a_star.x(i) - a.x(i), a.x(j) - a_star.x(j)});
          if (span < 1) continue;
          run_chain(span, "(iii)", [&](long long t) {
            IntVec d = a.d;
            IntVec b = a.b;
            d[i] += t;
            b[j] -= t;
            return cost_of(d, b);
          });
        }
      }
      break;
    case 4:
      for (long long i : sup.d_down_x_down) {
        for (long long j : sup.b_up_x_up) {
          if (!same_side(i, j)) continue;
          for (long long s : sup.d_up_b_down) {
            const long long span =
                std::min({a_star.d[i] - a.d[i], a.b[j] - a_star.b[j],
                          a.d[s] - a_star.d[s], a_star.b[s] - a.b[s],
                          a_star.x(i) - a.x(i), a.x(j) - a_star.x(j)});
            if (span < 1) continue;
            run_chain(span, "(iv)", [&](long long t) {
              IntVec d = a.d;
              IntVec b = a.b;
              d[s] -= t;
              d[i] += t;
              b[s] += t;
              b[j] -= t;
              return cost_of(d, b);
            });
          }
        }
      }
      break;
    case 5:
      for (long long i : sup.d_up_x_up) {
        for (long long j : sup.b_down_x_down) {
          for (long long h : sup.d_down_x_down) {
            for (long long k : sup.b_up_x_up) {
              const bool pattern_a =
                  drp.in_p[i] && drp.in_p[j] && !drp.in_p[h] && !drp.in_p[k];
              const bool pattern_b =
                  !drp.in_p[i] && !drp.in_p[j] && drp.in_p[h] && drp.in_p[k];
              if (!pattern_a && !pattern_b) continue;
              const long long span =
                  std::min({a.d[i] - a_star.d[i], a_star.b[j] - a.b[j],
                            a_star.d[h] - a.d[h], a.b[k] - a_star.b[k],
                            a.x(i) - a_star.x(i), a_star.x(j) - a.x(j),
                            a_star.x(h) - a.x(h), a.x(k) - a_star.x(k)});
              if (span < 1) continue;
              run_chain(span, "(v)", [&](long long t) {
                IntVec d = a.d;
                IntVec b = a.b;
                d[i] -= t;
                d[h] += t;
                b[j] += t;
                b[k] -= t;
                return cost_of(d, b);
              });
            }
          }
        }
      }
      break;
  }
  (void)lambda;
  return v;
}

ProximityReport verify_proximity(const Instance& inst, long long lambda,
                                 const ProximityOptions& opts) {
  ProximityReport rep;
  rep.lambda = lambda;
  rep.n = inst.n();
  rep.bound_l1 = 10 * lambda * inst.n();
  rep.bound_linf = 10 * lambda * inst.n();

  RelaxedOptimum relaxed = solve_relaxed(inst);
  if (relaxed.satisfies_l1) {
    rep.trivial = true;
    return rep;
  }
  DrPrime drp = derive_dr_prime(inst, relaxed);

  ProblemSpec exact_spec = ProblemSpec::dr_prime(drp);
  exact_spec.cap = opts.cap;
  OptimaSet exact = all_optima(exact_spec);
  ProblemSpec scaled_spec = ProblemSpec::dr_prime_scaled(drp, lambda);
  scaled_spec.cap = opts.cap;
  OptimaSet scaled = all_optima(scaled_spec);
  rep.exact_optima = static_cast<long long>(exact.optima.size());
  rep.scaled_optima = static_cast<long long>(scaled.optima.size());

  bool have_worst = false;
  for (const Allocation& a : scaled.optima) {
    const IntVec ax = a.x_vec();
    long long min_l1 = -1, min_linf = -1;
    for (const Allocation& star : exact.optima) {
      const IntVec sx = star.x_vec();
      const long long d1 = l1_distance(ax, sx);
      const long long di = linf_distance(ax, sx);
      if (min_l1 < 0 || d1 < min_l1) min_l1 = d1;
      if (min_linf < 0 || di < min_linf) min_linf = di;
    }
    rep.dist_l1 = std::max(rep.dist_l1, min_l1);
    rep.dist_linf = std::max(rep.dist_linf, min_linf);
    if (min_l1 >= rep.bound_l1) rep.pass_theorem = false;
    if (min_linf >= rep.bound_linf) rep.pass_linf = false;

    const Allocation anchor = min_distance_optimum(exact, a);
    const long long anchor_dist = l1_distance(ax, anchor.x_vec());
    const ISets isets = compute_isets(drp, lambda, a, anchor);
    const long long b_diff = a.b_total() - anchor.b_total();
    const long long d_diff = a.d_total() - anchor.d_total();
    const CaseLabel label = classify_cases(isets, b_diff, d_diff, lambda);
    const CaseBoundVerdict bounds = verify_case_bounds(anchor_dist, label, lambda, inst.n());
    const LemmaVerdict lemmas = verify_emptiness_lemmas(isets, b_diff, lambda);
    if (!bounds.ok) rep.pass_cases = false;
    if (bounds.forbidden) rep.forbidden_seen = true;
    if (!lemmas.ok) rep.pass_lemmas = false;
    if (!have_worst || anchor_dist > rep.anchor_dist_l1) {
      have_worst = true;
      rep.anchor_dist_l1 = anchor_dist;
      rep.label = label;
      rep.table1_bound = bounds.applied_bound;
    }
  }

  if (opts.check_nu) {
    ProblemSpec coarse_spec = ProblemSpec::dr_prime_scaled(drp, lambda * opts.nu);
    coarse_spec.cap = opts.cap;
    OptimaSet coarse = all_optima(coarse_spec);
    const long long nu_bound = 10 * lambda * opts.nu * inst.n();
    for (const Allocation& a : coarse.optima) {
      const IntVec ax = a.x_vec();
      long long min_l1 = -1;
      for (const Allocation& star : scaled.optima) {
        const long long d1 = l1_distance(ax, star.x_vec());
        if (min_l1 < 0 || d1 < min_l1) min_l1 = d1;
      }
      if (min_l1 >= nu_bound) rep.pass_nu = false;
    }
  }
  return rep;
}

}  // namespace dockalloc
