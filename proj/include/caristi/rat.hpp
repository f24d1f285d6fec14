#pragma once

#include <gmpxx.h>

#include <compare>
#include <iosfwd>
#include <optional>
#include <string>

namespace caristi {

// Exact rational number, always in lowest terms with positive denominator.
// Arithmetic and comparisons are exact; the canonical text form is "p/q"
// ("p" when the denominator is 1), no whitespace, optional leading '-'.
class Rat {
 public:
  Rat() : v_(0) {}
  Rat(long n) : v_(n) {}  // implicit on purpose: lets integer literals mix in
  Rat(long num, long den);
  Rat(const mpz_class& num, const mpz_class& den);

  static Rat from_mpq(mpq_class v);
  static Rat pow2(long e);  // 2^e, e may be negative
  static std::optional<Rat> parse(const std::string& s);
  static Rat parse_or_throw(const std::string& s);  // std::invalid_argument on bad text

  std::string str() const;
  double approx() const { return v_.get_d(); }  // for diagnostics only

  int sign() const { return sgn(v_); }
  bool is_zero() const { return sgn(v_) == 0; }
  bool is_integer() const { return v_.get_den() == 1; }
  const mpz_class num() const { return v_.get_num(); }
  const mpz_class den() const { return v_.get_den(); }

  Rat operator-() const { return from_mpq(mpq_class(-v_)); }
  Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
  Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
  Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
  Rat& operator/=(const Rat& o);  // std::domain_error on zero divisor

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

  friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    int c = cmp(a.v_, b.v_);
    return c < 0   ? std::strong_ordering::less
           : c > 0 ? std::strong_ordering::greater
                   : std::strong_ordering::equal;
  }

 private:
  mpq_class v_;
};

Rat abs(const Rat& a);
Rat min(const Rat& a, const Rat& b);
Rat max(const Rat& a, const Rat& b);

// Smallest integer n with x <= 2^n. Handy for precision bookkeeping.
long ceil_log2(const Rat& x);  // requires x > 0

std::ostream& operator<<(std::ostream& os, const Rat& r);

}  // namespace caristi
