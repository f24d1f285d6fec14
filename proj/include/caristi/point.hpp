#pragma once

#include <functional>
#include <map>
#include <memory>

#include "caristi/space.hpp"

namespace caristi {

// A point presented by a fast-converging sequence of code points:
// d(approx(i), limit) <= 2^-i. Optionally carries the exact code point it
// denotes, in which case every certified computation is exact.
class Point {
 public:
  using Oracle = std::function<CodePoint(int)>;

  static Point at(CodePoint exact);
  static Point from_oracle(Oracle oracle);
  static Point from_oracle(Oracle oracle, CodePoint exact);

  bool has_exact() const { return s_->exact.has_value(); }
  const CodePoint& exact() const;  // BadInput when the point is oracle-only

  // memoized; wraps oracle exceptions in OracleFailure
  CodePoint approx(int i) const;

 private:
  struct State {
    std::optional<CodePoint> exact;
    Oracle oracle;
    std::map<int, CodePoint> memo;
  };
  explicit Point(std::shared_ptr<State> s) : s_(std::move(s)) {}
  std::shared_ptr<State> s_;
};

// value together with a certified error bound: |value - truth| <= slack
struct Approx {
  Rat value;
  Rat slack;
  Rat lower() const { return value - slack; }
  Rat upper() const { return value + slack; }
};

// distance estimates at precision index i (slack 0 on exact descriptions)
Approx dist_to_code(const SpaceCode& s, const Point& x, const CodePoint& a, int i);
Approx dist_points(const SpaceCode& s, const Point& x, const Point& y, int i);

// headline approximation: evaluates at index i+2, guaranteed within 2^-(i+1)
Rat dist(const SpaceCode& s, const Point& x, const Point& y, int i);

enum class Verdict { In, Out, Unknown };

// certified membership in open/closed balls at precision index i; exact
// descriptions decide exactly (open-ball boundary counts as Out)
Verdict in_open_ball(const SpaceCode& s, const Point& x, const Ball& b, int i);
Verdict in_closed_ball(const SpaceCode& s, const Point& x, const Ball& b, int i);

}  // namespace caristi
