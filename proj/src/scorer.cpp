#include "dockalloc/scorer.hpp"

#include <limits>
#include <numeric>

#include "dockalloc/errors.hpp"

namespace dockalloc {

namespace {

// lcm with overflow detection; returns 0 on overflow.
long long safe_lcm(long long a, long long b) {
  long long g = std::gcd(a, b);
  __int128 l = static_cast<__int128>(a / g) * b;
  if (l > std::numeric_limits<long long>::max()) return 0;
  return static_cast<long long>(l);
}

}  // namespace

CostMemo::CostMemo(const CostModel& model, IntVec d_max, IntVec b_max)
    : d_max_(std::move(d_max)), b_max_(std::move(b_max)) {
  const long long n = station_count();
  offset_.resize(n + 1);
  offset_[0] = 0;
  for (long long i = 0; i < n; ++i) {
    offset_[i + 1] = offset_[i] + static_cast<size_t>(d_max_[i] + 1) * (b_max_[i] + 1);
  }
  rat_.resize(offset_[n]);
  long long den = 1;
  for (long long i = 0; i < n; ++i) {
    for (long long d = 0; d <= d_max_[i]; ++d) {
      for (long long b = 0; b <= b_max_[i]; ++b) {
        const Rational v = model.eval(i, d, b);
        rat_[offset_[i] + d * (b_max_[i] + 1) + b] = v;
        if (den != 0) den = safe_lcm(den, v.den());
      }
    }
  }
  if (den == 0) return;  // denominators too wild; rational path only

  scaled_.resize(rat_.size());
  for (size_t k = 0; k < rat_.size(); ++k) {
    __int128 s = static_cast<__int128>(rat_[k].num()) * (den / rat_[k].den());
    if (s < std::numeric_limits<long long>::min() || s > std::numeric_limits<long long>::max()) {
      scaled_.clear();
      return;
    }
    scaled_[k] = static_cast<long long>(s);
  }
  common_den_ = den;
  fast_ = true;
}

}  // namespace dockalloc
