#include "caristi/point.hpp"

namespace caristi {

Point Point::at(CodePoint exact) {
  auto s = std::make_shared<State>();
  s->exact = std::move(exact);
  return Point(std::move(s));
}

Point Point::from_oracle(Oracle oracle) {
  auto s = std::make_shared<State>();
  s->oracle = std::move(oracle);
  return Point(std::move(s));
}

Point Point::from_oracle(Oracle oracle, CodePoint exact) {
  auto s = std::make_shared<State>();
  s->oracle = std::move(oracle);
  s->exact = std::move(exact);
  return Point(std::move(s));
}

const CodePoint& Point::exact() const {
  if (!s_->exact) throw Error(ErrorCode::BadInput, "point has no exact description");
  return *s_->exact;
}

CodePoint Point::approx(int i) const {
  if (!s_->oracle) return *s_->exact;  // exact points approximate themselves
  auto it = s_->memo.find(i);
  if (it != s_->memo.end()) return it->second;
  CodePoint cp = [&] {
    try {
      return s_->oracle(i);
    } catch (const Error&) {
      throw;
    } catch (const std::exception& e) {
      throw Error(ErrorCode::OracleFailure, e.what(), i);
    }
  }();
  s_->memo.emplace(i, cp);
  return cp;
}

Approx dist_to_code(const SpaceCode& s, const Point& x, const CodePoint& a, int i) {
  if (x.has_exact()) return {s.dist(x.exact(), a), Rat(0)};
  return {s.dist(x.approx(i), a), Rat::pow2(-i)};
}

Approx dist_points(const SpaceCode& s, const Point& x, const Point& y, int i) {
  if (x.has_exact()) return dist_to_code(s, y, x.exact(), i);
  if (y.has_exact()) return dist_to_code(s, x, y.exact(), i);
  return {s.dist(x.approx(i), y.approx(i)), Rat::pow2(-i + 1)};
}

Rat dist(const SpaceCode& s, const Point& x, const Point& y, int i) {
  return dist_points(s, x, y, i + 2).value;
}

Verdict in_open_ball(const SpaceCode& s, const Point& x, const Ball& b, int i) {
  Approx d = dist_to_code(s, x, b.center, i);
  if (d.upper() < b.radius) return Verdict::In;
  if (!(d.lower() < b.radius)) return Verdict::Out;  // exact points land here on the boundary
  return Verdict::Unknown;
}

Verdict in_closed_ball(const SpaceCode& s, const Point& x, const Ball& b, int i) {
  Approx d = dist_to_code(s, x, b.center, i);
  if (!(b.radius < d.upper())) return Verdict::In;
  if (b.radius < d.lower()) return Verdict::Out;
  return Verdict::Unknown;
}

}  // namespace caristi
