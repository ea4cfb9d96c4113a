#pragma once

#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "dockalloc/errors.hpp"
#include "dockalloc/rational.hpp"
#include "dockalloc/types.hpp"

namespace dockalloc {

// a*t^2 + b*t + c with a >= 0.
struct QuadraticSpec {
  Rational a, b, c;
  friend bool operator==(const QuadraticSpec&, const QuadraticSpec&) = default;
};

// Piecewise-linear convex function on Z+. slopes[k] applies on the segment
// [breakpoints[k-1], breakpoints[k]) with implicit breakpoints[-1] = 0;
// slopes must be nondecreasing and breakpoints strictly increasing.
struct PiecewiseLinearSpec {
  IntVec breakpoints;
  std::vector<Rational> slopes;  // size = breakpoints.size() + 1
  Rational value_at_origin;
  friend bool operator==(const PiecewiseLinearSpec&, const PiecewiseLinearSpec&) = default;
};

using ConvexSpec = std::variant<QuadraticSpec, PiecewiseLinearSpec>;

Rational eval_convex(const ConvexSpec& spec, long long t);
bool convex_spec_valid(const ConvexSpec& spec);

// c_i(d, b) = phi(d) + psi(b) + theta(d + b).
struct SeparableConvexCost {
  ConvexSpec phi, psi, theta;
};

// Dense grid of exact values over d in [0, d_max], b in [0, b_max].
struct TableCost {
  long long d_max = 0;
  long long b_max = 0;
  std::vector<Rational> values;  // row-major: values[d * (b_max + 1) + b]

  const Rational& at(long long d, long long b) const { return values[d * (b_max + 1) + b]; }
  Rational& at(long long d, long long b) { return values[d * (b_max + 1) + b]; }
};

using StationCost = std::variant<SeparableConvexCost, TableCost>;

// Per-station cost family. Construction does not validate multimodularity;
// loaders call validate_multimodular explicitly so the validator can also be
// exercised on deliberately broken models.
class CostModel {
 public:
  explicit CostModel(std::vector<StationCost> stations) : stations_(std::move(stations)) {}

  long long station_count() const { return static_cast<long long>(stations_.size()); }
  const StationCost& station(long long i) const { return stations_[i]; }

  // Exact c_i(d, b); throws DomainError outside the station's domain.
  Rational eval(long long station, long long d, long long b) const;

  // Largest box on which the station is evaluable, or nullopt if unbounded.
  std::optional<std::pair<long long, long long>> domain_box(long long station) const;

  static std::shared_ptr<const CostModel> zero(long long n);

 private:
  std::vector<StationCost> stations_;
};

struct MultimodularityViolation {
  long long station = 0;
  long long alpha = 0, beta = 0;
  int inequality_id = 0;  // 1..3, matching the defining inequalities
  Rational lhs, rhs;      // violated means lhs < rhs
};

// Exhaustively checks the three multimodularity inequalities at every (alpha,
// beta) inside the box, honoring each inequality's side conditions. Returns
// the lexicographically first violation (alpha, beta, inequality_id) or
// nullopt.
std::optional<MultimodularityViolation> validate_multimodular(const CostModel& cost,
                                                              long long station,
                                                              long long d_max, long long b_max);

struct DiagConvexityViolation {
  long long station = 0;
  long long beta = 0;  // c_hat(beta+1) + c_hat(beta-1) < 2*c_hat(beta)
  Rational lhs, rhs;
};

// Checks discrete convexity of c_hat(beta) = c_i(x_fixed - beta, beta) for
// 1 <= beta <= x_fixed - 1.
std::optional<DiagConvexityViolation> diag_convexity(const CostModel& cost, long long station,
                                                     long long x_fixed);

// Index tuple for the exchange inequalities. Any subset may be provided;
// only the inequalities whose indices are all present are evaluated.
struct ExchangeIndices {
  std::optional<long long> i, j, h, k, s;
};

struct ExchangeCheck {
  int inequality = 0;  // 3..7
  Rational lhs, rhs;   // inequality asserts lhs >= rhs
  bool holds = false;
};

// Evaluates the exchange inequalities for (a, a2) at the given indices.
// Throws PreconditionError naming the first index failing its
// support-membership condition.
std::vector<ExchangeCheck> check_exchange_inequalities(const CostModel& cost, const Allocation& a,
                                                       const Allocation& a2,
                                                       const ExchangeIndices& idx);

}  // namespace dockalloc
