#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "dockalloc/costs.hpp"
#include "dockalloc/rational.hpp"
#include "dockalloc/types.hpp"

namespace dockalloc {

// Dense exact memo of per-station costs over [0..dmax_i] x [0..bmax_i].
// When every denominator divides a common 64-bit denominator and the scaled
// numerators fit in 64 bits, an integer fast path is exposed; objective sums
// then reduce to 128-bit integer accumulation with exact comparisons.
class CostMemo {
 public:
  CostMemo(const CostModel& model, IntVec d_max, IntVec b_max);

  long long station_count() const { return static_cast<long long>(d_max_.size()); }
  long long d_max(long long i) const { return d_max_[i]; }
  long long b_max(long long i) const { return b_max_[i]; }

  const Rational& rat(long long i, long long d, long long b) const {
    return rat_[offset_[i] + d * (b_max_[i] + 1) + b];
  }

  bool fast() const { return fast_; }
  long long scaled(long long i, long long d, long long b) const {
    return scaled_[offset_[i] + d * (b_max_[i] + 1) + b];
  }
  Rational from_scaled(__int128 total) const { return Rational::make(total, common_den_); }

 private:
  IntVec d_max_, b_max_;
  std::vector<size_t> offset_;
  std::vector<Rational> rat_;
  std::vector<long long> scaled_;
  long long common_den_ = 1;
  bool fast_ = false;
};

// Objective-accumulation policy: exact 128-bit integers over a common
// denominator.
struct ScaledScore {
  using Value = __int128;
  const CostMemo* memo;

  Value zero() const { return 0; }
  Value cost(long long i, long long d, long long b) const { return memo->scaled(i, d, b); }
  Rational to_rational(Value v) const { return memo->from_scaled(v); }
  static bool less(Value a, Value b) { return a < b; }
  static bool eq(Value a, Value b) { return a == b; }
};

// Fallback policy: plain rational arithmetic, memoized when a memo is given.
struct RationalScore {
  using Value = Rational;
  const CostMemo* memo = nullptr;   // may be null
  const CostModel* model = nullptr; // used when memo is null

  Value zero() const { return Rational(0); }
  Value cost(long long i, long long d, long long b) const {
    return memo ? memo->rat(i, d, b) : model->eval(i, d, b);
  }
  Rational to_rational(const Value& v) const { return v; }
  static bool less(const Value& a, const Value& b) { return a < b; }
  static bool eq(const Value& a, const Value& b) { return a == b; }
};

// Runs f with the fastest exact scorer available for this memo.
template <class F>
auto with_scorer(const CostMemo& memo, F&& f) {
  if (memo.fast()) {
    return f(ScaledScore{&memo});
  }
  return f(RationalScore{&memo, nullptr});
}

inline constexpr __int128 kMemoEntryCap = 1 << 22;

// Memoizes when the evaluation box is small enough, otherwise evaluates the
// model directly (slower, still exact). The memo outlives the call.
template <class F>
auto with_model_scorer(const CostModel& model, IntVec d_max, IntVec b_max, F&& f) {
  __int128 entries = 0;
  for (size_t i = 0; i < d_max.size(); ++i) {
    entries += static_cast<__int128>(d_max[i] + 1) * (b_max[i] + 1);
  }
  if (entries <= kMemoEntryCap) {
    CostMemo memo(model, std::move(d_max), std::move(b_max));
    return with_scorer(memo, f);
  }
  return f(RationalScore{nullptr, &model});
}

}  // namespace dockalloc
