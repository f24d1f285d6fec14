#include "caristi/space.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

namespace caristi {

// ---------------------------------------------------------------------------
// pairing
// ---------------------------------------------------------------------------

std::uint64_t pair64(std::uint64_t a, std::uint64_t b) {
  std::uint64_t w = a + b;
  return w * (w + 1) / 2 + b;
}

std::pair<std::uint64_t, std::uint64_t> unpair64(std::uint64_t n) {
  // w = floor((sqrt(8n+1)-1)/2), safe under double rounding with the guards
  std::uint64_t w = static_cast<std::uint64_t>(
      (std::sqrt(8.0 * static_cast<double>(n) + 1.0) - 1.0) / 2.0);
  while (w > 0 && w * (w + 1) / 2 > n) --w;
  while ((w + 1) * (w + 2) / 2 <= n) ++w;
  std::uint64_t b = n - w * (w + 1) / 2;
  return {w - b, b};
}

mpz_class pair_z(const mpz_class& a, const mpz_class& b) {
  mpz_class w = a + b;
  return w * (w + 1) / 2 + b;
}

std::pair<mpz_class, mpz_class> unpair_z(const mpz_class& n) {
  mpz_class s = 8 * n + 1, r;
  mpz_sqrt(r.get_mpz_t(), s.get_mpz_t());
  mpz_class w = (r - 1) / 2;
  while (w > 0 && w * (w + 1) / 2 > n) --w;
  while ((w + 1) * (w + 2) / 2 <= n) ++w;
  mpz_class b = n - w * (w + 1) / 2;
  return {w - b, b};
}

// ---------------------------------------------------------------------------
// rational codes
// ---------------------------------------------------------------------------

std::optional<Rat> rat_decode(const mpz_class& index) {
  if (index == 0) return Rat(0);
  mpz_class m = index - 1;
  bool neg = mpz_odd_p(m.get_mpz_t()) != 0;
  auto [i, j] = unpair_z(m / 2);
  mpz_class p = i + 1, q = j + 1;
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
  if (g != 1) return std::nullopt;
  if (neg) p = -p;
  return Rat(p, q);
}

mpz_class rat_code(const Rat& q) {
  if (q.is_zero()) return 0;
  mpz_class p = abs(q.num());
  mpz_class d = q.den();
  return 1 + 2 * pair_z(p - 1, d - 1) + (q.sign() < 0 ? 1 : 0);
}

namespace {

mpz_class floor_q(const Rat& x) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), x.num().get_mpz_t(), x.den().get_mpz_t());
  return q;
}

// Simplest rational strictly inside (lo, hi), 0 <= lo, hi possibly absent
// (meaning +infinity). "Simplest" = minimal denominator, then numerator; by
// the Stern-Brocot subtree argument it is coordinatewise minimal, hence the
// least-code fraction of its sign class.
Rat simplest_nonneg(const Rat& lo, const std::optional<Rat>& hi) {
  mpz_class n = floor_q(lo) + 1;
  if (!hi || Rat(n, mpz_class(1)) < *hi) return Rat(n, mpz_class(1));
  mpz_class w = floor_q(lo);
  Rat flo = lo - Rat(w, mpz_class(1));
  Rat fhi = *hi - Rat(w, mpz_class(1));
  std::optional<Rat> upper;
  if (!flo.is_zero()) upper = Rat(1) / flo;
  Rat inner = simplest_nonneg(Rat(1) / fhi, upper);
  return Rat(w, mpz_class(1)) + Rat(1) / inner;
}

}  // namespace

Rat least_code_rational_between(const Rat& lo, const Rat& hi) {
  if (!(lo < hi))
    throw Error(ErrorCode::BadInput,
                "least_code_rational_between: empty interval (" + lo.str() + ", " + hi.str() + ")");
  if (lo.sign() < 0 && hi.sign() > 0) return Rat(0);
  if (hi.sign() <= 0) return -simplest_nonneg(-hi, std::optional<Rat>(-lo));
  return simplest_nonneg(lo, std::optional<Rat>(hi));
}

// ---------------------------------------------------------------------------
// stems and code points
// ---------------------------------------------------------------------------

Stem Stem::of(std::vector<std::uint32_t> ds) {
  while (!ds.empty() && ds.back() == 0) ds.pop_back();
  Stem s;
  s.digits = std::move(ds);
  return s;
}

std::string stem_str(const Stem& s) { return stem_str_padded(s, 0); }

std::string stem_str_padded(const Stem& s, std::size_t upto) {
  std::size_t len = std::max(s.size(), upto);
  if (len == 0) return "()";
  std::ostringstream os;
  std::size_t i = 0;
  bool first = true;
  while (i < len) {
    std::uint32_t d = s.at(i);
    std::size_t j = i;
    while (j < len && s.at(j) == d) ++j;
    if (!first) os << ' ';
    first = false;
    if (j - i >= 2)
      os << d << '^' << (j - i);
    else
      os << d;
    i = j;
  }
  return os.str();
}

const Stem& CodePoint::as_stem() const {
  if (!is_stem()) throw Error(ErrorCode::BadInput, "code point is not a stem");
  return std::get<Stem>(v_);
}

const Rat& CodePoint::as_rational() const {
  if (!is_rational()) throw Error(ErrorCode::BadInput, "code point is not a rational");
  return std::get<Rat>(v_);
}

std::uint64_t CodePoint::as_finite() const {
  if (!is_finite()) throw Error(ErrorCode::BadInput, "code point is not a finite index");
  return std::get<std::uint64_t>(v_);
}

const std::vector<CodePoint>& CodePoint::as_tuple() const {
  if (!is_tuple()) throw Error(ErrorCode::BadInput, "code point is not a tuple");
  return std::get<std::vector<CodePoint>>(v_);
}

// ---------------------------------------------------------------------------
// space codes
// ---------------------------------------------------------------------------

SpaceCode SpaceCode::cantor() {
  SpaceCode s;
  s.kind_ = SpaceKind::Cantor;
  return s;
}

SpaceCode SpaceCode::baire() {
  SpaceCode s;
  s.kind_ = SpaceKind::Baire;
  return s;
}

SpaceCode SpaceCode::interval(Rat lo, Rat hi) {
  if (!(lo < hi))
    throw Error(ErrorCode::BadInput,
                "interval space needs lo < hi, got [" + lo.str() + ", " + hi.str() + "]");
  SpaceCode s;
  s.kind_ = SpaceKind::Interval;
  s.lo_ = std::move(lo);
  s.hi_ = std::move(hi);
  return s;
}

SpaceCode SpaceCode::finite_ultrametric(std::vector<std::string> labels,
                                        std::vector<std::vector<Rat>> table) {
  std::size_t n = labels.size();
  if (n == 0) throw Error(ErrorCode::BadInput, "finite space needs at least one point");
  if (table.size() != n)
    throw Error(ErrorCode::BadInput, "distance table is not square");
  for (const auto& row : table)
    if (row.size() != n) throw Error(ErrorCode::BadInput, "distance table is not square");
  for (std::size_t i = 0; i < n; ++i) {
    if (!table[i][i].is_zero())
      throw Error(ErrorCode::BadInput, "nonzero diagonal at " + labels[i]);
    for (std::size_t j = 0; j < n; ++j) {
      if (!(table[i][j] == table[j][i]))
        throw Error(ErrorCode::BadInput, "asymmetric distances at " + labels[i] + "," + labels[j]);
      if (i != j && table[i][j].sign() <= 0)
        throw Error(ErrorCode::BadInput, "nonpositive distance at " + labels[i] + "," + labels[j]);
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (table[i][k] > max(table[i][j], table[j][k]))
          throw Error(ErrorCode::NotUltrametric,
                      "d(" + labels[i] + "," + labels[k] + ") > max(d(" + labels[i] + "," +
                          labels[j] + "), d(" + labels[j] + "," + labels[k] + "))");
  SpaceCode s;
  s.kind_ = SpaceKind::FiniteUltrametric;
  s.labels_ = std::move(labels);
  s.table_ = std::move(table);
  return s;
}

SpaceCode SpaceCode::product(SpaceCode left, SpaceCode right) {
  SpaceCode s;
  s.kind_ = SpaceKind::Product;
  s.left_ = std::make_shared<const SpaceCode>(std::move(left));
  s.right_ = std::make_shared<const SpaceCode>(std::move(right));
  return s;
}

bool SpaceCode::ultrametric() const {
  switch (kind_) {
    case SpaceKind::Cantor:
    case SpaceKind::Baire:
    case SpaceKind::FiniteUltrametric:
      return true;
    case SpaceKind::Interval:
      return false;
    case SpaceKind::Product:
      return left_->ultrametric() && right_->ultrametric();
  }
  return false;
}

bool SpaceCode::compact() const {
  switch (kind_) {
    case SpaceKind::Cantor:
    case SpaceKind::Interval:
    case SpaceKind::FiniteUltrametric:
      return true;
    case SpaceKind::Baire:
      return false;
    case SpaceKind::Product:
      return left_->compact() && right_->compact();
  }
  return false;
}

bool SpaceCode::valid_point(const CodePoint& p) const {
  switch (kind_) {
    case SpaceKind::Cantor: {
      if (!p.is_stem()) return false;
      for (auto d : p.as_stem().digits)
        if (d > 1) return false;
      return true;
    }
    case SpaceKind::Baire:
      return p.is_stem();
    case SpaceKind::Interval:
      return p.is_rational() && !(p.as_rational() < lo_) && !(hi_ < p.as_rational());
    case SpaceKind::FiniteUltrametric:
      return p.is_finite() && p.as_finite() < labels_.size();
    case SpaceKind::Product:
      return p.is_tuple() && p.as_tuple().size() == 2 && left_->valid_point(p.as_tuple()[0]) &&
             right_->valid_point(p.as_tuple()[1]);
  }
  return false;
}

void SpaceCode::require_point(const CodePoint& p) const {
  if (!valid_point(p))
    throw Error(ErrorCode::BadInput, "code point does not belong to " + describe());
}

Rat SpaceCode::dist(const CodePoint& x, const CodePoint& y) const {
  require_point(x);
  require_point(y);
  switch (kind_) {
    case SpaceKind::Cantor:
    case SpaceKind::Baire: {
      const Stem& a = x.as_stem();
      const Stem& b = y.as_stem();
      if (a == b) return Rat(0);
      std::size_t bound = std::max(a.size(), b.size());
      for (std::size_t i = 0; i < bound; ++i)
        if (a.at(i) != b.at(i)) return Rat::pow2(-static_cast<long>(i));
      return Rat(0);  // unreachable: canonical stems differing must disagree
    }
    case SpaceKind::Interval:
      return abs(x.as_rational() - y.as_rational());
    case SpaceKind::FiniteUltrametric:
      return table_[x.as_finite()][y.as_finite()];
    case SpaceKind::Product:
      return max(left_->dist(x.as_tuple()[0], y.as_tuple()[0]),
                 right_->dist(x.as_tuple()[1], y.as_tuple()[1]));
  }
  throw Error(ErrorCode::BadInput, "bad space kind");
}

namespace {

Rat dyadic_at(const Rat& lo, const Rat& hi, std::uint64_t m) {
  if (m == 0) return lo;
  if (m == 1) return hi;
  std::uint64_t c = m - 2;
  unsigned k = 1;
  std::uint64_t count = 1;
  while (c >= count) {
    c -= count;
    ++k;
    count <<= 1;
  }
  mpz_class num(2 * c + 1);
  mpz_class den = mpz_class(1) << k;
  return lo + (hi - lo) * Rat(num, den);
}

}  // namespace

CodePoint SpaceCode::point_at(std::uint64_t index) const {
  switch (kind_) {
    case SpaceKind::Cantor: {
      std::uint64_t m = index + 1;
      int width = std::bit_width(m);
      std::vector<std::uint32_t> ds;
      for (int b = width - 2; b >= 0; --b) ds.push_back((m >> b) & 1u);
      return CodePoint::stem(std::move(ds));
    }
    case SpaceKind::Baire: {
      std::vector<std::uint32_t> ds;
      std::uint64_t n = index;
      while (n != 0) {
        auto [h, t] = unpair64(n - 1);
        ds.push_back(static_cast<std::uint32_t>(h));
        n = t;
      }
      return CodePoint::stem(std::move(ds));
    }
    case SpaceKind::Interval: {
      if (index % 2 == 0) return CodePoint::rational(dyadic_at(lo_, hi_, index / 2));
      std::uint64_t m = (index - 1) / 2;
      auto q = rat_decode(mpz_class(static_cast<unsigned long>(m)));
      if (q && !(*q < lo_) && !(hi_ < *q)) return CodePoint::rational(*q);
      return CodePoint::rational(dyadic_at(lo_, hi_, m % 64));
    }
    case SpaceKind::FiniteUltrametric:
      return CodePoint::finite(index % labels_.size());
    case SpaceKind::Product: {
      auto [a, b] = unpair64(index);
      return CodePoint::tuple({left_->point_at(a), right_->point_at(b)});
    }
  }
  throw Error(ErrorCode::BadInput, "bad space kind");
}

CodePoint SpaceCode::recurring_point_at(std::uint64_t index) const {
  return point_at(unpair64(index).first);
}

std::string SpaceCode::describe() const {
  switch (kind_) {
    case SpaceKind::Cantor: return "cantor";
    case SpaceKind::Baire: return "baire";
    case SpaceKind::Interval: return "interval[" + lo_.str() + "," + hi_.str() + "]";
    case SpaceKind::FiniteUltrametric:
      return "finite{" + std::to_string(labels_.size()) + "}";
    case SpaceKind::Product:
      return "product(" + left_->describe() + ", " + right_->describe() + ")";
  }
  return "?";
}

bool SpaceCode::same(const SpaceCode& other) const {
  if (kind_ != other.kind_) return false;
  switch (kind_) {
    case SpaceKind::Cantor:
    case SpaceKind::Baire:
      return true;
    case SpaceKind::Interval:
      return lo_ == other.lo_ && hi_ == other.hi_;
    case SpaceKind::FiniteUltrametric:
      return labels_ == other.labels_ && table_ == other.table_;
    case SpaceKind::Product:
      return left_->same(*other.left_) && right_->same(*other.right_);
  }
  return false;
}

std::string code_point_str(const SpaceCode& space, const CodePoint& p) {
  switch (space.kind()) {
    case SpaceKind::Cantor:
    case SpaceKind::Baire:
      return stem_str(p.as_stem());
    case SpaceKind::Interval:
      return p.as_rational().str();
    case SpaceKind::FiniteUltrametric:
      return space.labels()[p.as_finite()];
    case SpaceKind::Product:
      return "(" + code_point_str(space.left(), p.as_tuple()[0]) + ", " +
             code_point_str(space.right(), p.as_tuple()[1]) + ")";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// balls
// ---------------------------------------------------------------------------

bool ball_subset_plus(const SpaceCode& s, const Ball& inner, const Ball& outer) {
  return s.dist(inner.center, outer.center) + inner.radius < outer.radius;
}

bool closed_ball_subset_plus(const SpaceCode& s, const Ball& inner, const Ball& outer) {
  return !(outer.radius < s.dist(inner.center, outer.center) + inner.radius);
}

bool closed_ball_nested(const SpaceCode& s, const Ball& inner, const Ball& outer) {
  if (!s.ultrametric())
    throw Error(ErrorCode::NotUltrametric,
                "closed-ball nesting needs an ultrametric space, got " + s.describe());
  return !(outer.radius < max(s.dist(inner.center, outer.center), inner.radius));
}

// ---------------------------------------------------------------------------
// axiom spot-checks and sampling
// ---------------------------------------------------------------------------

CodePoint sample_code_point(const SpaceCode& s, SampleRng& rng, const SampleOptions& opt) {
  switch (s.kind()) {
    case SpaceKind::Cantor: {
      std::size_t len = rng.below(opt.max_len + 1);
      std::vector<std::uint32_t> ds(len);
      for (auto& d : ds) d = rng.coin() ? 1u : 0u;
      return CodePoint::stem(std::move(ds));
    }
    case SpaceKind::Baire: {
      std::size_t len = rng.below(opt.max_len + 1);
      std::vector<std::uint32_t> ds(len);
      for (auto& d : ds) d = static_cast<std::uint32_t>(rng.below(opt.max_digit + 1));
      return CodePoint::stem(std::move(ds));
    }
    case SpaceKind::Interval: {
      mpz_class den = mpz_class(1) << opt.dyadic_bits;
      mpz_class num(static_cast<unsigned long>(rng.below((1u << opt.dyadic_bits) + 1)));
      return CodePoint::rational(s.lo() + (s.hi() - s.lo()) * Rat(num, den));
    }
    case SpaceKind::FiniteUltrametric:
      return CodePoint::finite(rng.below(s.finite_size()));
    case SpaceKind::Product:
      return CodePoint::tuple(
          {sample_code_point(s.left(), rng, opt), sample_code_point(s.right(), rng, opt)});
  }
  throw Error(ErrorCode::BadInput, "bad space kind");
}

MetricCheckReport check_metric_axioms(const SpaceCode& s, std::size_t sample_size,
                                      std::uint64_t seed) {
  SampleRng rng(seed);
  std::vector<CodePoint> pts;
  for (std::uint64_t i = 0; i < std::min<std::size_t>(sample_size, 8); ++i)
    pts.push_back(s.point_at(i));
  while (pts.size() < sample_size) pts.push_back(sample_code_point(s, rng));

  MetricCheckReport rep;
  rep.points = pts.size();
  auto note = [&](const std::string& msg) {
    if (rep.violations.size() < 16) rep.violations.push_back(msg);
  };

  std::size_t n = pts.size();
  std::vector<std::vector<Rat>> d(n, std::vector<Rat>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) d[i][j] = s.dist(pts[i], pts[j]);

  for (std::size_t i = 0; i < n; ++i) {
    if (!d[i][i].is_zero()) note("d(x,x) != 0 at " + code_point_str(s, pts[i]));
    for (std::size_t j = 0; j < n; ++j) {
      if (d[i][j].sign() < 0)
        note("negative distance " + code_point_str(s, pts[i]) + "," + code_point_str(s, pts[j]));
      if (!(d[i][j] == d[j][i]))
        note("asymmetry at " + code_point_str(s, pts[i]) + "," + code_point_str(s, pts[j]));
      if (d[i][j].is_zero() != (pts[i] == pts[j]))
        note("identity of indiscernibles fails at " + code_point_str(s, pts[i]) + "," +
             code_point_str(s, pts[j]));
    }
  }

  bool ultra = s.ultrametric();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        ++rep.triples;
        Rat rhs = ultra ? max(d[i][j], d[j][k]) : d[i][j] + d[j][k];
        if (d[i][k] > rhs)
          note(std::string(ultra ? "strong " : "") + "triangle fails at " +
               code_point_str(s, pts[i]) + "," + code_point_str(s, pts[j]) + "," +
               code_point_str(s, pts[k]));
      }
  return rep;
}

}  // namespace caristi
