#pragma once

#include <utility>
#include <vector>

#include "caristi/continuous.hpp"
#include "caristi/rat.hpp"

namespace caristi {

// Exact piecewise-linear function on a rational interval, affine between
// consecutive knots. The workhorse for interval-space maps and potentials:
// evaluation, exact range over subintervals, and compilation to ball-to-ball
// codes all stay in Q.
class PiecewiseLinear {
 public:
  // knots (x, f(x)) with strictly increasing x; at least two
  explicit PiecewiseLinear(std::vector<std::pair<Rat, Rat>> knots);

  const std::vector<std::pair<Rat, Rat>>& knots() const { return knots_; }
  const Rat& xmin() const { return knots_.front().first; }
  const Rat& xmax() const { return knots_.back().first; }

  Rat operator()(const Rat& x) const;  // BadInput outside [xmin, xmax]

  // exact [min, max] of the function over [a, b] ∩ [xmin, xmax]
  std::pair<Rat, Rat> range_on(const Rat& a, const Rat& b) const;

  // sup |f(x) - f(y)| / |x - y|: exact Lipschitz constant
  Rat lipschitz() const;

  bool operator==(const PiecewiseLinear& o) const { return knots_ == o.knots_; }

 private:
  std::vector<std::pair<Rat, Rat>> knots_;
};

// Compile to a clause generator over (domain point index, radius level):
// slot n covers the ball around domain.point_at(n / levels) of radius
// 2^-(n % levels), with the exact image range as certified output ball.
// The function must map its domain interval into the codomain interval.
ContinuousCode code_from_piecewise_linear(SpaceCode domain, SpaceCode codomain,
                                          PiecewiseLinear f, int radius_levels = 24);

}  // namespace caristi
