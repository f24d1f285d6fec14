#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "caristi/continuous.hpp"
#include "caristi/point.hpp"

namespace caristi {

// Borel set code: a finite well-founded op tree over open-ball leaves.
// Unions may be empty (the empty set); intersections may not.
class BorelCode {
 public:
  enum class Op { Leaf, Union, Inter };

  static BorelCode leaf(Ball b);
  static BorelCode uni(std::vector<BorelCode> children);
  static BorelCode inter(std::vector<BorelCode> children);

  Op op() const { return op_; }
  const Ball& ball() const;
  const std::vector<BorelCode>& children() const;
  std::size_t node_count() const;

 private:
  BorelCode() = default;
  Op op_ = Op::Leaf;
  std::shared_ptr<const Ball> ball_;
  std::shared_ptr<const std::vector<BorelCode>> kids_;
};

enum class SetVerdict { In, Out, Unknown };

// Three-valued membership. Leaves on exactly-described points decide by the
// trichotomy d < r / d > r / d = r (boundary stays Unknown at any budget);
// oracle points compare against d(x_budget, a) with 2^-budget slack. Unions
// and intersections combine verdicts in the Kleene fashion.
SetVerdict eval_borel_membership(const SpaceCode& s, const BorelCode& c, const Point& x,
                                 int budget);

// Normal form: same-op runs spliced together, single-child internal nodes
// collapsed, and the root wrapped into a union when it is not one. Membership
// verdicts are preserved exactly.
BorelCode clean_normalize(const BorelCode& c);

}  // namespace caristi
