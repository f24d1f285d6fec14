#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "caristi/errors.hpp"
#include "caristi/rat.hpp"
#include "caristi/rng.hpp"

namespace caristi {

// ---------------------------------------------------------------------------
// Pairing. One fixed bijection N^2 -> N used everywhere an index carries two
// coordinates: rational codes, product enumerations, sequence projections.
// <a,b> = (a+b)(a+b+1)/2 + b.
// ---------------------------------------------------------------------------
std::uint64_t pair64(std::uint64_t a, std::uint64_t b);
std::pair<std::uint64_t, std::uint64_t> unpair64(std::uint64_t n);
mpz_class pair_z(const mpz_class& a, const mpz_class& b);
std::pair<mpz_class, mpz_class> unpair_z(const mpz_class& n);

// ---------------------------------------------------------------------------
// Fixed enumeration of Q. Index 0 is 0; index n >= 1 decodes by writing
// n-1 = 2*<i,j> + s: the candidate is (i+1)/(j+1), negated when s = 1, and the
// slot is a gap unless gcd(i+1, j+1) = 1. rat_code inverts rat_decode.
// ---------------------------------------------------------------------------
std::optional<Rat> rat_decode(const mpz_class& index);
mpz_class rat_code(const Rat& q);

// The rational with least code strictly inside (lo, hi). Requires lo < hi.
// Least code = lexicographically least (num+den, den) among reduced fractions
// in the interval, signs resolved toward 0 first; computed by Stern-Brocot
// descent rather than brute enumeration.
Rat least_code_rational_between(const Rat& lo, const Rat& hi);

// ---------------------------------------------------------------------------
// Code points
// ---------------------------------------------------------------------------

// Finite stem of a sequence space, standing for the point stem⌢0^ω. Canonical
// form has no trailing zeros, so equal points compare equal structurally.
struct Stem {
  std::vector<std::uint32_t> digits;

  static Stem of(std::vector<std::uint32_t> ds);
  std::uint32_t at(std::size_t i) const { return i < digits.size() ? digits[i] : 0u; }
  std::size_t size() const { return digits.size(); }
  bool empty() const { return digits.empty(); }
  bool operator==(const Stem&) const = default;
};

// run-length rendering: "()" for the empty stem, otherwise e.g. "0^5 1 0^3"
std::string stem_str(const Stem& s);
std::string stem_str_padded(const Stem& s, std::size_t upto);

class CodePoint {
 public:
  CodePoint() : v_(Rat(0)) {}

  static CodePoint of_stem(Stem s) { return CodePoint(std::move(s)); }
  static CodePoint stem(std::vector<std::uint32_t> digits) {
    return CodePoint(Stem::of(std::move(digits)));
  }
  static CodePoint rational(Rat q) { return CodePoint(std::move(q)); }
  static CodePoint finite(std::uint64_t index) { return CodePoint(index); }
  static CodePoint tuple(std::vector<CodePoint> parts) { return CodePoint(std::move(parts)); }

  bool is_stem() const { return std::holds_alternative<Stem>(v_); }
  bool is_rational() const { return std::holds_alternative<Rat>(v_); }
  bool is_finite() const { return std::holds_alternative<std::uint64_t>(v_); }
  bool is_tuple() const { return std::holds_alternative<std::vector<CodePoint>>(v_); }

  const Stem& as_stem() const;
  const Rat& as_rational() const;
  std::uint64_t as_finite() const;
  const std::vector<CodePoint>& as_tuple() const;

  bool operator==(const CodePoint&) const = default;

 private:
  explicit CodePoint(Stem s) : v_(std::move(s)) {}
  explicit CodePoint(Rat q) : v_(std::move(q)) {}
  explicit CodePoint(std::uint64_t i) : v_(i) {}
  explicit CodePoint(std::vector<CodePoint> t) : v_(std::move(t)) {}

  std::variant<Stem, Rat, std::uint64_t, std::vector<CodePoint>> v_;
};

// ---------------------------------------------------------------------------
// Space codes
// ---------------------------------------------------------------------------

enum class SpaceKind { Cantor, Baire, Interval, FiniteUltrametric, Product };

class SpaceCode {
 public:
  SpaceCode() = default;  // defaults to the cantor space

  static SpaceCode cantor();
  static SpaceCode baire();
  static SpaceCode unit_interval() { return interval(Rat(0), Rat(1)); }
  static SpaceCode interval(Rat lo, Rat hi);  // BadInput unless lo < hi
  // validates symmetry, identity and the strong triangle inequality
  static SpaceCode finite_ultrametric(std::vector<std::string> labels,
                                      std::vector<std::vector<Rat>> table);
  static SpaceCode product(SpaceCode left, SpaceCode right);  // max metric

  SpaceKind kind() const { return kind_; }
  bool is_sequence() const {
    return kind_ == SpaceKind::Cantor || kind_ == SpaceKind::Baire;
  }
  bool ultrametric() const;
  bool compact() const;

  const Rat& lo() const { return lo_; }
  const Rat& hi() const { return hi_; }
  std::size_t finite_size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<std::vector<Rat>>& table() const { return table_; }
  const SpaceCode& left() const { return *left_; }
  const SpaceCode& right() const { return *right_; }

  bool valid_point(const CodePoint& p) const;
  void require_point(const CodePoint& p) const;  // BadInput with description

  // exact distance between code points
  Rat dist(const CodePoint& x, const CodePoint& y) const;

  // Canonical enumeration of a dense set of code points (with repeats).
  // Sequence spaces enumerate all stems, intervals interleave the dyadic walk
  // with the fixed rational enumeration, products pair coordinates.
  CodePoint point_at(std::uint64_t index) const;
  // Same range, but every value of point_at recurs at infinitely many indices.
  CodePoint recurring_point_at(std::uint64_t index) const;

  std::string describe() const;
  bool same(const SpaceCode& other) const;  // structural equality

 private:
  SpaceKind kind_ = SpaceKind::Cantor;
  Rat lo_, hi_;                            // Interval
  std::vector<std::string> labels_;        // FiniteUltrametric
  std::vector<std::vector<Rat>> table_;    // FiniteUltrametric
  std::shared_ptr<const SpaceCode> left_, right_;  // Product
};

std::string code_point_str(const SpaceCode& space, const CodePoint& p);

// ---------------------------------------------------------------------------
// Balls and inclusion certificates
// ---------------------------------------------------------------------------

struct Ball {
  CodePoint center;
  Rat radius;
};

// d(inner.center, outer.center) + inner.radius < outer.radius. Certifies that
// the open inner ball sits strictly inside the open outer ball.
bool ball_subset_plus(const SpaceCode& s, const Ball& inner, const Ball& outer);
// same with <=, for closed-in-closed inclusion in general spaces
bool closed_ball_subset_plus(const SpaceCode& s, const Ball& inner, const Ball& outer);
// Ultrametric closed-ball nesting: max{d(centers), inner.radius} <= outer.radius.
// Throws NotUltrametric when the space does not carry the strong triangle law.
bool closed_ball_nested(const SpaceCode& s, const Ball& inner, const Ball& outer);

// ---------------------------------------------------------------------------
// Metric axiom spot-checks over a seeded sample (exact arithmetic throughout)
// ---------------------------------------------------------------------------

struct MetricCheckReport {
  std::size_t points = 0;
  std::size_t triples = 0;
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

MetricCheckReport check_metric_axioms(const SpaceCode& s, std::size_t sample_size,
                                      std::uint64_t seed);

struct SampleOptions {
  std::size_t max_len = 10;     // sequence stems
  std::uint32_t max_digit = 6;  // Baire digits range over 0..max_digit
  unsigned dyadic_bits = 8;     // interval points are k/2^dyadic_bits
};

CodePoint sample_code_point(const SpaceCode& s, SampleRng& rng,
                            const SampleOptions& opt = {});

}  // namespace caristi
