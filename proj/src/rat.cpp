#include "caristi/rat.hpp"

#include <cctype>
#include <ostream>
#include <stdexcept>

namespace caristi {

Rat::Rat(long num, long den) {
  if (den == 0) throw std::domain_error("Rat: zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rat::Rat(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw std::domain_error("Rat: zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rat Rat::from_mpq(mpq_class v) {
  v.canonicalize();
  Rat r;
  r.v_ = std::move(v);
  return r;
}

Rat Rat::pow2(long e) {
  mpz_class p = mpz_class(1) << static_cast<unsigned long>(e < 0 ? -e : e);
  return e < 0 ? Rat(mpz_class(1), p) : Rat(p, mpz_class(1));
}

Rat& Rat::operator/=(const Rat& o) {
  if (o.is_zero()) throw std::domain_error("Rat: division by zero");
  v_ /= o.v_;
  return *this;
}

namespace {
bool all_digits(const std::string& s, std::size_t from, std::size_t to) {
  if (from >= to) return false;
  for (std::size_t i = from; i < to; ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}
}  // namespace

std::optional<Rat> Rat::parse(const std::string& s) {
  std::size_t pos = 0;
  bool neg = false;
  if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) {
    neg = s[pos] == '-';
    ++pos;
  }
  std::size_t slash = s.find('/', pos);
  std::size_t num_end = slash == std::string::npos ? s.size() : slash;
  if (!all_digits(s, pos, num_end)) return std::nullopt;
  mpz_class num(s.substr(pos, num_end - pos));
  mpz_class den(1);
  if (slash != std::string::npos) {
    if (!all_digits(s, slash + 1, s.size())) return std::nullopt;
    den = mpz_class(s.substr(slash + 1));
    if (den == 0) return std::nullopt;
  }
  if (neg) num = -num;
  return Rat(num, den);
}

Rat Rat::parse_or_throw(const std::string& s) {
  auto r = parse(s);
  if (!r) throw std::invalid_argument("Rat: bad rational literal '" + s + "'");
  return *r;
}

std::string Rat::str() const { return v_.get_str(); }

Rat abs(const Rat& a) { return a.sign() < 0 ? -a : a; }
Rat min(const Rat& a, const Rat& b) { return b < a ? b : a; }
Rat max(const Rat& a, const Rat& b) { return a < b ? b : a; }

long ceil_log2(const Rat& x) {
  if (x.sign() <= 0) throw std::domain_error("ceil_log2: nonpositive argument");
  // 2^n >= p/q  <=>  q*2^n >= p  (p,q > 0). Walk n from a size-based guess.
  long n = static_cast<long>(mpz_sizeinbase(x.num().get_mpz_t(), 2)) -
           static_cast<long>(mpz_sizeinbase(x.den().get_mpz_t(), 2)) - 1;
  while (Rat::pow2(n) < x) ++n;
  while (n > -(1L << 30) && !(Rat::pow2(n - 1) < x)) --n;
  return n;
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

}  // namespace caristi
