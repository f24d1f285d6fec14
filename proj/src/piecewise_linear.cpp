#include "caristi/piecewise_linear.hpp"

#include <algorithm>

#include "caristi/errors.hpp"

namespace caristi {

PiecewiseLinear::PiecewiseLinear(std::vector<std::pair<Rat, Rat>> knots)
    : knots_(std::move(knots)) {
  if (knots_.size() < 2)
    throw Error(ErrorCode::BadInput, "piecewise-linear function needs at least two knots");
  for (std::size_t i = 1; i < knots_.size(); ++i)
    if (!(knots_[i - 1].first < knots_[i].first))
      throw Error(ErrorCode::BadInput, "piecewise-linear knots must strictly increase in x");
}

Rat PiecewiseLinear::operator()(const Rat& x) const {
  if (x < xmin() || xmax() < x)
    throw Error(ErrorCode::BadInput,
                "piecewise-linear evaluation outside [" + xmin().str() + ", " + xmax().str() +
                    "] at " + x.str());
  auto it = std::lower_bound(knots_.begin(), knots_.end(), x,
                             [](const auto& k, const Rat& v) { return k.first < v; });
  if (it != knots_.end() && it->first == x) return it->second;
  const auto& hi = *it;
  const auto& lo = *(it - 1);
  return lo.second + (hi.second - lo.second) * (x - lo.first) / (hi.first - lo.first);
}

std::pair<Rat, Rat> PiecewiseLinear::range_on(const Rat& a, const Rat& b) const {
  Rat lo = max(a, xmin()), hi = min(b, xmax());
  if (hi < lo)
    throw Error(ErrorCode::BadInput, "range_on: interval misses the function's domain");
  Rat vmin = (*this)(lo), vmax = vmin;
  auto take = [&](const Rat& v) {
    if (v < vmin) vmin = v;
    if (vmax < v) vmax = v;
  };
  take((*this)(hi));
  for (const auto& [x, y] : knots_)
    if (lo < x && x < hi) take(y);
  return {vmin, vmax};
}

Rat PiecewiseLinear::lipschitz() const {
  Rat best(0);
  for (std::size_t i = 1; i < knots_.size(); ++i) {
    Rat slope = abs((knots_[i].second - knots_[i - 1].second) /
                    (knots_[i].first - knots_[i - 1].first));
    best = max(best, slope);
  }
  return best;
}

ContinuousCode code_from_piecewise_linear(SpaceCode domain, SpaceCode codomain,
                                          PiecewiseLinear f, int radius_levels) {
  if (domain.kind() != SpaceKind::Interval || codomain.kind() != SpaceKind::Interval)
    throw Error(ErrorCode::BadInput, "piecewise-linear codes need interval spaces");
  if (f.xmin() != domain.lo() || f.xmax() != domain.hi())
    throw Error(ErrorCode::BadInput, "piecewise-linear domain does not match the space");
  {
    auto [mn, mx] = f.range_on(f.xmin(), f.xmax());
    if (mn < codomain.lo() || codomain.hi() < mx)
      throw Error(ErrorCode::BadInput, "piecewise-linear image leaves the codomain");
  }
  auto gen = [domain, codomain, f, radius_levels](std::size_t slot) -> std::optional<ContClause> {
    std::uint64_t pt = slot / static_cast<std::size_t>(radius_levels);
    long level = static_cast<long>(slot % static_cast<std::size_t>(radius_levels));
    Rat c = domain.point_at(pt).as_rational();
    Rat t = Rat::pow2(-level);
    auto [lo, hi] = f.range_on(c - t, c + t);
    Rat mid = (lo + hi) / Rat(2);
    return ContClause{CodePoint::rational(c), t, CodePoint::rational(mid), (hi - lo) / Rat(2)};
  };
  return ContinuousCode(std::move(domain), std::move(codomain), std::move(gen));
}

}  // namespace caristi
