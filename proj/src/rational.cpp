#include "dockalloc/rational.hpp"

#include <limits>

namespace dockalloc {

namespace {

__int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

constexpr __int128 kI64Min = std::numeric_limits<long long>::min();
constexpr __int128 kI64Max = std::numeric_limits<long long>::max();

long long narrow(__int128 v) {
  if (v < kI64Min || v > kI64Max) {
    throw std::overflow_error("rational arithmetic overflowed 64 bits");
  }
  return static_cast<long long>(v);
}

}  // namespace

Rational Rational::make(__int128 num, __int128 den) {
  if (den == 0) {
    throw std::domain_error("rational with zero denominator");
  }
  if (den < 0) {
    num = -num;
    den = -den;
  }
  __int128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  Rational r;
  r.num_ = narrow(num);
  r.den_ = narrow(den);
  return r;
}

Rational Rational::operator-() const { return make(-static_cast<__int128>(num_), den_); }

Rational& Rational::operator+=(const Rational& o) {
  __int128 n = static_cast<__int128>(num_) * o.den_ + static_cast<__int128>(o.num_) * den_;
  __int128 d = static_cast<__int128>(den_) * o.den_;
  *this = make(n, d);
  return *this;
}

Rational& Rational::operator-=(const Rational& o) {
  __int128 n = static_cast<__int128>(num_) * o.den_ - static_cast<__int128>(o.num_) * den_;
  __int128 d = static_cast<__int128>(den_) * o.den_;
  *this = make(n, d);
  return *this;
}

Rational& Rational::operator*=(const Rational& o) {
  __int128 n = static_cast<__int128>(num_) * o.num_;
  __int128 d = static_cast<__int128>(den_) * o.den_;
  *this = make(n, d);
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.num_ == 0) {
    throw std::domain_error("rational division by zero");
  }
  __int128 n = static_cast<__int128>(num_) * o.den_;
  __int128 d = static_cast<__int128>(den_) * o.num_;
  *this = make(n, d);
  return *this;
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

}  // namespace dockalloc
