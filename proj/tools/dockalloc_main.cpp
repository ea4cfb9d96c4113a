#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dockalloc/errors.hpp"
#include "dockalloc/gen.hpp"
#include "dockalloc/io.hpp"
#include "dockalloc/oracle.hpp"
#include "dockalloc/proxlab.hpp"
#include "dockalloc/solver.hpp"

namespace fs = std::filesystem;
using namespace dockalloc;

namespace {

constexpr int kExitParse = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitOracleMismatch = 4;

void print_allocation(std::ostream& os, const Allocation& a) {
  os << "d = [";
  for (long long i = 0; i < a.n(); ++i) os << (i ? " " : "") << a.d[i];
  os << "]\nb = [";
  for (long long i = 0; i < a.n(); ++i) os << (i ? " " : "") << a.b[i];
  os << "]\n";
}

std::vector<fs::path> corpus_files(const std::string& dir) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  return files;
}

int cmd_gen(const std::string& out_dir, std::uint64_t seed, long long n, long long u_max,
            long long gamma_max, const std::string& family, long long count) {
  GenOptions opts;
  opts.seed = seed;
  opts.n = n;
  opts.u_max = u_max;
  opts.gamma_max = gamma_max;
  opts.count = count;
  if (family == "separable_convex") {
    opts.family = CostFamily::SeparableConvex;
  } else if (family == "table") {
    opts.family = CostFamily::Table;
  } else {
    std::cerr << "unknown cost family '" << family << "'\n";
    return kExitParse;
  }
  fs::create_directories(out_dir);
  auto instances = generate_instances(opts);
  for (size_t k = 0; k < instances.size(); ++k) {
    char name[32];
    std::snprintf(name, sizeof(name), "inst_%04zu.json", k);
    save_instance_file(instances[k], (fs::path(out_dir) / name).string());
  }
  std::cout << "wrote " << instances.size() << " instance(s) to " << out_dir << "\n";
  return 0;
}

int cmd_solve(const std::string& file, bool oracle_check, bool show_trace) {
  Instance inst = load_instance_file(file);
  auto [alloc, trace] = solve_scaling(inst);
  std::cout << "objective = " << trace.final_objective.str() << "\n";
  print_allocation(std::cout, alloc);
  std::cout << "phases = " << trace.total_phases
            << (trace.short_circuited ? " (relaxed optimum met the budget)" : "") << "\n";
  if (show_trace) {
    for (const PhaseStats& ph : trace.phases) {
      std::cout << "  lambda=" << ph.lambda << " gamma_steps=" << ph.gamma_steps
                << " moves=" << ph.moves << " objective=" << ph.objective_after.str()
                << " window=[";
      for (long long i = 0; i < static_cast<long long>(ph.ell_snapshot.size()); ++i) {
        std::cout << (i ? " " : "") << ph.ell_snapshot[i] << ".." << ph.u_snapshot[i];
      }
      std::cout << "]\n";
    }
  }
  if (oracle_check) {
    ProblemSpec spec = ProblemSpec::dr(inst);
    spec.cap = oracle_cap_from_env();
    auto [value, witness] = brute_optimum(spec);
    if (!(value == trace.final_objective)) {
      std::cerr << "oracle mismatch: solver " << trace.final_objective.str() << " vs oracle "
                << value.str() << "\n";
      return kExitOracleMismatch;
    }
    std::cout << "oracle check passed (" << value.str() << ")\n";
  }
  return 0;
}

int cmd_oracle(const std::string& file, const std::string& problem, long long lambda,
               bool list_optima) {
  Instance inst = load_instance_file(file);
  if (problem != "dr" && problem != "drp" && problem != "drp-lambda") {
    std::cerr << "unknown problem '" << problem << "' (want dr | drp | drp-lambda)\n";
    return kExitParse;
  }
  ProblemSpec spec = ProblemSpec::dr(inst);
  if (problem != "dr") {
    RelaxedOptimum relaxed = solve_relaxed(inst);
    DrPrime drp = derive_dr_prime(inst, relaxed);
    spec = problem == "drp" ? ProblemSpec::dr_prime(drp)
                            : ProblemSpec::dr_prime_scaled(drp, lambda);
  }
  spec.cap = oracle_cap_from_env();
  OptimaSet set = all_optima(spec);
  std::cout << problem_kind_name(spec.kind) << " optimum = " << set.optimal_value.str() << " ("
            << set.optima.size() << " optimal allocation(s))\n";
  print_allocation(std::cout, set.optima.front());
  if (list_optima) {
    for (const Allocation& a : set.optima) print_allocation(std::cout << "--\n", a);
  }
  return 0;
}

int cmd_verify(const std::string& dir, std::vector<long long> lambdas, const std::string& out_csv,
               bool fixed_wall_ms) {
  if (lambdas.empty()) lambdas = {2, 4};
  std::ofstream csv(out_csv, std::ios::binary);
  if (!csv) {
    std::cerr << "cannot write " << out_csv << "\n";
    return kExitParse;
  }
  csv << kReportHeader << "\n";
  long long rows = 0, failed = 0, skipped = 0;
  for (const fs::path& file : corpus_files(dir)) {
    Instance inst;
    try {
      inst = load_instance_file(file.string());
    } catch (const ParseError& e) {
      std::cerr << file.string() << ": " << e.what() << "\n";
      return kExitParse;
    }
    for (long long lambda : lambdas) {
      const auto started = std::chrono::steady_clock::now();
      ReportRow row;
      row.instance_id = file.stem().string();
      row.n = inst.n();
      row.d_total = inst.total_d();
      row.b_total = inst.total_b();
      row.gamma = inst.gamma;
      row.lambda = lambda;
      try {
        ProximityOptions opts;
        opts.cap = oracle_cap_from_env();
        ProximityReport rep = verify_proximity(inst, lambda, opts);
        auto [alloc, trace] = solve_scaling(inst);
        long long steps = 0;
        for (const PhaseStats& ph : trace.phases) steps += ph.gamma_steps;
        row.phases = std::to_string(trace.total_phases);
        row.gamma_steps = std::to_string(steps);
        row.bound = std::to_string(rep.bound_l1);
        if (rep.trivial) {
          row.dist_l1 = "0";
          row.dist_linf = "0";
          row.pass = "1";
        } else {
          row.dist_l1 = std::to_string(rep.dist_l1);
          row.dist_linf = std::to_string(rep.dist_linf);
          row.p_cases = rep.label.p_string();
          row.q_cases = rep.label.q_string();
          row.n_cases = rep.label.n_string();
          row.table1_bound = std::to_string(rep.table1_bound);
          row.pass = rep.pass() ? "1" : "0";
          if (!rep.pass()) ++failed;
        }
      } catch (const CapExceededError& e) {
        row.pass = "skip";
        ++skipped;
        std::cerr << row.instance_id << " lambda=" << lambda << ": " << e.what() << "\n";
      } catch (const InfeasibleError&) {
        row.pass = "skip";
        ++skipped;
      }
      row.wall_ms = fixed_wall_ms
                        ? 0
                        : std::chrono::duration_cast<std::chrono::milliseconds>(
                              std::chrono::steady_clock::now() - started)
                              .count();
      csv << report_row_csv(row) << "\n";
      ++rows;
    }
  }
  std::cout << rows << " row(s), " << failed << " failed, " << skipped << " skipped -> "
            << out_csv << "\n";
  return failed == 0 ? 0 : 1;
}

int cmd_diagnose(const std::string& file, long long lambda) {
  Instance inst = load_instance_file(file);
  RelaxedOptimum relaxed = solve_relaxed(inst);
  std::cout << "relaxed optimum cost " << relaxed.cost.str() << ", distance " << relaxed.distance
            << (relaxed.satisfies_l1 ? " (within budget; DR' machinery is vacuous)" : "") << "\n";
  if (relaxed.satisfies_l1) return 0;

  DrPrime drp = derive_dr_prime(inst, relaxed);
  std::cout << "P = {";
  bool first = true;
  for (long long i = 0; i < drp.n(); ++i) {
    if (!drp.in_p[i]) continue;
    std::cout << (first ? "" : ",") << i;
    first = false;
  }
  std::cout << "}  xi_P=" << drp.xi_p << " xi_Q=" << drp.xi_q << " gamma_min=" << drp.gamma_min
            << "\n";

  ProblemSpec exact_spec = ProblemSpec::dr_prime(drp);
  exact_spec.cap = oracle_cap_from_env();
  OptimaSet exact = all_optima(exact_spec);
  ProblemSpec scaled_spec = ProblemSpec::dr_prime_scaled(drp, lambda);
  scaled_spec.cap = exact_spec.cap;
  OptimaSet scaled = all_optima(scaled_spec);
  std::cout << "DR' optimum " << exact.optimal_value.str() << " (" << exact.optima.size()
            << " optima), DR'(" << lambda << ") optimum " << scaled.optimal_value.str() << " ("
            << scaled.optima.size() << " optima)\n";

  bool all_ok = true;
  for (const Allocation& a : scaled.optima) {
    const Allocation anchor = min_distance_optimum(exact, a);
    const ISets isets = compute_isets(drp, lambda, a, anchor);
    const long long b_diff = a.b_total() - anchor.b_total();
    const long long d_diff = a.d_total() - anchor.d_total();
    const CaseLabel label = classify_cases(isets, b_diff, d_diff, lambda);
    const long long dist = l1_distance(a.x_vec(), anchor.x_vec());
    const CaseBoundVerdict bounds = verify_case_bounds(dist, label, lambda, inst.n());
    const LemmaVerdict lemmas = verify_emptiness_lemmas(isets, b_diff, lambda);
    std::cout << "scaled optimum ";
    for (long long i = 0; i < a.n(); ++i) std::cout << a.x(i) << (i + 1 < a.n() ? "," : "");
    std::cout << " | dist=" << dist << " cases " << label.p_string() << " " << label.q_string()
              << " " << label.n_string() << " bound " << bounds.applied_bound
              << (bounds.ok ? " ok" : " VIOLATED") << (lemmas.ok ? "" : " LEMMA-VIOLATED") << "\n";
    for (int t = 1; t <= 6; ++t) {
      std::cout << "  I" << t << " = {";
      for (size_t m = 0; m < isets.full[t - 1].size(); ++m) {
        std::cout << (m ? "," : "") << isets.full[t - 1][m];
      }
      std::cout << "}\n";
    }
    for (int clause = 1; clause <= 5; ++clause) {
      MonoDecVerdict md = verify_mono_dec(drp, lambda, a, anchor, clause);
      std::cout << "  mono-dec clause " << clause << ": " << (md.ok ? "ok" : "VIOLATED") << " ("
                << md.tuples << " tuple(s), " << md.chains << " comparison(s))\n";
      all_ok = all_ok && md.ok;
    }
    all_ok = all_ok && bounds.ok && lemmas.ok;
  }
  std::cout << (all_ok ? "all checks passed\n" : "CHECKS FAILED\n");
  return all_ok ? 0 : 1;
}

int cmd_bench(const std::string& dir) {
  double total_ms = 0;
  long long solved = 0;
  for (const fs::path& file : corpus_files(dir)) {
    Instance inst = load_instance_file(file.string());
    const auto started = std::chrono::steady_clock::now();
    auto [alloc, trace] = solve_scaling(inst);
    const double ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - started)
                          .count();
    total_ms += ms;
    ++solved;
    std::cout << file.stem().string() << ": " << ms << " ms, " << trace.total_phases
              << " phase(s), objective " << trace.final_objective.str() << "\n";
  }
  std::cout << "solved " << solved << " instance(s) in " << total_ms << " ms\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dock reallocation solver and proximity lab"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("gen", "generate random instances");
  std::string gen_dir = "corpus";
  std::uint64_t seed = 1;
  long long n = 3, u_max = 6, gamma_max = 4, count = 1;
  std::string family = "separable_convex";
  gen->add_option("-o,--out", gen_dir, "output directory");
  gen->add_option("--seed", seed, "RNG seed");
  gen->add_option("-n", n, "stations per instance");
  gen->add_option("--u-max", u_max, "upper bound cap");
  gen->add_option("--gamma-max", gamma_max, "gamma cap");
  gen->add_option("--cost-family", family, "separable_convex | table");
  gen->add_option("--count", count, "number of instances");

  auto* solve = app.add_subcommand("solve", "solve one instance file");
  std::string solve_file;
  bool oracle_check = false, show_trace = false;
  solve->add_option("file", solve_file, "instance JSON")->required();
  solve->add_flag("--oracle-check", oracle_check, "compare against brute force");
  solve->add_flag("--trace", show_trace, "print the phase trace");

  auto* oracle = app.add_subcommand("oracle", "brute-force optimum of an instance");
  std::string oracle_file, problem = "dr";
  long long oracle_lambda = 2;
  bool list_optima = false;
  oracle->add_option("file", oracle_file, "instance JSON")->required();
  oracle->add_option("--problem", problem, "dr | drp | drp-lambda");
  oracle->add_option("--lambda", oracle_lambda, "lambda for drp-lambda");
  oracle->add_flag("--all", list_optima, "list every optimal allocation");

  auto* verify = app.add_subcommand("verify", "verify proximity bounds over a corpus");
  std::string verify_dir, out_csv = "report.csv";
  std::vector<long long> lambdas;
  bool fixed_wall_ms = false;
  verify->add_option("corpus", verify_dir, "instance directory")->required();
  verify->add_option("--lambda", lambdas, "lambda values (default 2 4)");
  verify->add_option("--out", out_csv, "CSV output path");
  verify->add_flag("--fixed-wall-ms", fixed_wall_ms, "write wall_ms=0 for reproducible output");

  auto* diagnose = app.add_subcommand("diagnose", "case/lemma report for one instance");
  std::string diag_file;
  long long diag_lambda = 2;
  diagnose->add_option("file", diag_file, "instance JSON")->required();
  diagnose->add_option("--lambda", diag_lambda, "scale parameter");

  auto* bench = app.add_subcommand("bench", "time the solver over a corpus");
  std::string bench_dir;
  bench->add_option("corpus", bench_dir, "instance directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return cmd_gen(gen_dir, seed, n, u_max, gamma_max, family, count);
    if (solve->parsed()) return cmd_solve(solve_file, oracle_check, show_trace);
    if (oracle->parsed()) return cmd_oracle(oracle_file, problem, oracle_lambda, list_optima);
    if (verify->parsed()) return cmd_verify(verify_dir, lambdas, out_csv, fixed_wall_ms);
    if (diagnose->parsed()) return cmd_diagnose(diag_file, diag_lambda);
    if (bench->parsed()) return cmd_bench(bench_dir);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const CapExceededError& e) {
    std::cerr << "oracle cap exceeded: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
