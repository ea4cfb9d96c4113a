#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "dockalloc/errors.hpp"
#include "dockalloc/gen.hpp"
#include "dockalloc/model.hpp"
#include "testutil.hpp"

using namespace dockalloc;
using namespace dockalloc::testutil;

namespace {

// c(d,b) = -(d+b)^2: concave theta, the canonical multimodularity failure.
CostModel concave_theta_model() {
  return CostModel({separable(zero_spec(), zero_spec(), quad(-1, 0, 0))});
}

CostModel table_from(const CostModel& src, long long station, long long d_max, long long b_max) {
  TableCost tab;
  tab.d_max = d_max;
  tab.b_max = b_max;
  tab.values.resize((d_max + 1) * (b_max + 1));
  for (long long d = 0; d <= d_max; ++d) {
    for (long long b = 0; b <= b_max; ++b) tab.at(d, b) = src.eval(station, d, b);
  }
  return CostModel({std::move(tab)});
}

}  // namespace

TEST_CASE("eval: zero separable model") {
  CostModel m({separable(zero_spec(), zero_spec(), zero_spec())});
  for (long long d = 0; d <= 5; ++d) {
    for (long long b = 0; b <= 5; ++b) CHECK(m.eval(0, d, b) == Rational(0));
  }
}

TEST_CASE("eval: quadratic phi only") {
  CostModel m({separable(quad(1, -8, 16), zero_spec(), zero_spec())});
  CHECK(m.eval(0, 2, 0) == Rational(4));
  CHECK(m.eval(0, 2, 3) == Rational(4));  // psi = theta = 0
  CHECK(m.eval(0, 4, 1) == Rational(0));
}

TEST_CASE("eval: table lookup and domain error") {
  TableCost tab;
  tab.d_max = 3;
  tab.b_max = 1;
  tab.values.assign(8, Rational(1));
  tab.at(3, 1) = Rational(7, 2);
  CostModel m({std::move(tab)});
  CHECK(m.eval(0, 3, 1) == Rational(7, 2));
  CHECK_THROWS_AS(m.eval(0, 4, 0), DomainError);
  CHECK_THROWS_AS(m.eval(0, 0, 2), DomainError);
  CHECK_THROWS_AS(m.eval(0, -1, 0), DomainError);
  try {
    m.eval(0, 4, 0);
  } catch (const DomainError& e) {
    // The error names both the station and the offending point.
    CHECK(std::string(e.what()).find("station 0") != std::string::npos);
    CHECK(std::string(e.what()).find("(4, 0)") != std::string::npos);
  }
}

TEST_CASE("eval: piecewise-linear values") {
  PiecewiseLinearSpec pl;
  pl.breakpoints = {2, 4};
  pl.slopes = {Rational(-2), Rational(0), Rational(3, 2)};
  pl.value_at_origin = Rational(5);
  CHECK(convex_spec_valid(ConvexSpec{pl}));
  CostModel m({separable(ConvexSpec{pl}, zero_spec(), zero_spec())});
  CHECK(m.eval(0, 0, 0) == Rational(5));
  CHECK(m.eval(0, 1, 0) == Rational(3));
  CHECK(m.eval(0, 2, 0) == Rational(1));
  CHECK(m.eval(0, 3, 0) == Rational(1));
  CHECK(m.eval(0, 4, 0) == Rational(1));
  CHECK(m.eval(0, 6, 0) == Rational(4));
}

TEST_CASE("validator: linear cost has zero second differences") {
  CostModel m({separable(quad(0, 2, 0), quad(0, 3, 0), zero_spec())});
  CHECK_FALSE(validate_multimodular(m, 0, 8, 8));
}

TEST_CASE("validator: separable convex always passes (exhaustive scan)") {
  auto corpus = small_corpus(101, 40, CostFamily::SeparableConvex, 2, 12);
  for (const Instance& inst : corpus) {
    for (long long i = 0; i < inst.n(); ++i) {
      CAPTURE(i);
      CHECK_FALSE(validate_multimodular(*inst.cost, i, 12, 12));
    }
  }
}

TEST_CASE("validator: concave theta fails inequality 1 at the origin") {
  CostModel m = concave_theta_model();
  auto v = validate_multimodular(m, 0, 4, 4);
  REQUIRE(v.has_value());
  CHECK(v->inequality_id == 1);
  CHECK(v->alpha == 0);
  CHECK(v->beta == 0);
  CHECK(v->lhs == Rational(-3));
  CHECK(v->rhs == Rational(-1));
}

TEST_CASE("validator: reports the lexicographically first violation") {
  // Corrupt a single interior entry of an otherwise valid table.
  CostModel base({separable(quad(1, 0, 0), quad(1, 0, 0), quad(1, 0, 0))});
  CostModel tab = table_from(base, 0, 5, 5);
  TableCost broken = std::get<TableCost>(tab.station(0));
  broken.at(3, 3) += Rational(100);
  CostModel m({broken});
  auto v = validate_multimodular(m, 0, 5, 5);
  REQUIRE(v.has_value());
  // Scanning (alpha, beta, id) in order, the spike at (3,3) is first seen by
  // inequality 1 at (2,3): lhs = c(3,4)-c(3,3)-100 = -80 vs rhs = 18.
  CHECK(v->alpha == 2);
  CHECK(v->beta == 3);
  CHECK(v->inequality_id == 1);
  CHECK(v->lhs == Rational(-80));
  CHECK(v->rhs == Rational(18));
}

TEST_CASE("diag convexity: linear ok, validated tables ok, corrupted fails") {
  CostModel lin({separable(quad(0, 2, 0), quad(0, -1, 0), zero_spec())});
  for (long long x = 0; x <= 8; ++x) CHECK_FALSE(diag_convexity(lin, 0, x));

  auto corpus = small_corpus(55, 10, CostFamily::Table, 2, 6);
  for (const Instance& inst : corpus) {
    for (long long i = 0; i < inst.n(); ++i) {
      auto box = inst.cost->domain_box(i);
      REQUIRE(box);
      for (long long x = 0; x <= box->first; ++x) {
        CHECK_FALSE(diag_convexity(*inst.cost, i, x));
      }
    }
  }

  CostModel base({separable(quad(1, 0, 0), quad(1, 0, 0), zero_spec())});
  TableCost bad = std::get<TableCost>(table_from(base, 0, 4, 4).station(0));
  bad.at(2, 2) -= Rational(50);  // dent on the diagonal d+b = 4
  CostModel m({bad});
  CHECK(validate_multimodular(m, 0, 4, 4).has_value());
  CHECK(diag_convexity(m, 0, 4).has_value());
}

TEST_CASE("exchange inequalities: E1 dock swap, computed sides") {
  Instance inst = make_e1();
  Allocation a{{3, 0}, {1, 2}};
  Allocation a2{{2, 1}, {1, 2}};
  ExchangeIndices idx;
  idx.i = 0;
  idx.h = 1;
  auto checks = check_exchange_inequalities(*inst.cost, a, a2, idx);
  REQUIRE(checks.size() == 1);
  CHECK(checks[0].inequality == 3);
  CHECK(checks[0].lhs == Rational(14));
  CHECK(checks[0].rhs == Rational(14));
  CHECK(checks[0].holds);
}

TEST_CASE("exchange inequalities: no indices means vacuous pass") {
  Instance inst = make_e1();
  Allocation a{{3, 0}, {1, 2}};
  auto checks = check_exchange_inequalities(*inst.cost, a, a, {});
  CHECK(checks.empty());
}

TEST_CASE("exchange inequalities: support preconditions are enforced") {
  Instance inst = make_e1();
  Allocation a{{3, 0}, {1, 2}};
  Allocation a2{{2, 1}, {1, 2}};
  ExchangeIndices idx;
  idx.i = 1;  // station 1 has d falling, not rising
  CHECK_THROWS_AS(check_exchange_inequalities(*inst.cost, a, a2, idx), PreconditionError);
  ExchangeIndices bad;
  bad.h = 7;
  CHECK_THROWS_AS(check_exchange_inequalities(*inst.cost, a, a2, bad), PreconditionError);
}

TEST_CASE("exchange inequalities: 1000 randomized configurations over validated tables") {
  auto corpus = small_corpus(77, 25, CostFamily::Table, 4, 6);
  std::mt19937_64 rng(99);
  long long evaluated = 0;
  for (const Instance& inst : corpus) {
    for (int rep = 0; rep < 60 && evaluated < 1200; ++rep) {
      const long long n = inst.n();
      Allocation a, a2;
      a.d.resize(n);
      a.b.resize(n);
      a2.d.resize(n);
      a2.b.resize(n);
      for (long long i = 0; i < n; ++i) {
        auto box = inst.cost->domain_box(i);
        a.d[i] = uniform_int(rng, 0, box->first);
        a.b[i] = uniform_int(rng, 0, box->second);
        a2.d[i] = uniform_int(rng, 0, box->first);
        a2.b[i] = uniform_int(rng, 0, box->second);
      }
      // Collect candidate indices from the realized supports.
      ExchangeIndices idx;
      for (long long t = 0; t < n; ++t) {
        const long long dd = a.d[t] - a2.d[t];
        const long long db = a.b[t] - a2.b[t];
        const long long dx = dd + db;
        if (!idx.i && dd > 0 && dx > 0) idx.i = t;
        if (!idx.j && db < 0 && dx < 0) idx.j = t;
        if (!idx.h && dd < 0 && dx < 0) idx.h = t;
        if (!idx.k && db > 0 && dx > 0) idx.k = t;
        if (!idx.s && dd < 0 && db > 0) idx.s = t;
      }
      auto checks = check_exchange_inequalities(*inst.cost, a, a2, idx);
      for (const auto& c : checks) {
        CAPTURE(c.inequality);
        CHECK(c.holds);
        ++evaluated;
      }
    }
  }
  CHECK(evaluated >= 1000);
}

TEST_CASE("table generation rejection cap raises an explicit error") {
  GenOptions opts;
  opts.seed = 5;
  opts.n = 2;
  opts.u_max = 5;
  opts.family = CostFamily::Table;
  opts.count = 1;
  opts.table_noise = Rational(50);  // swamps the convexity slack
  opts.table_retry_cap = 8;
  CHECK_THROWS_AS(generate_instances(opts), InfeasibleError);
}
