#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "caristi/point.hpp"

namespace caristi {

// One lower-bound certificate: on the open ball B(a, r), the value is >= q.
// q may be negative; lsc codes promise lower semicontinuity, not sign.
struct LscClause {
  CodePoint a;
  Rat r;
  Rat q;
};

class LscCode {
 public:
  using Generator = std::function<std::optional<LscClause>(std::size_t)>;

  LscCode(SpaceCode domain, std::vector<LscClause> clauses, bool potential);
  LscCode(SpaceCode domain, Generator gen, bool potential);

  const SpaceCode& domain() const { return dom_; }
  // a potential certifies >= 0 on the whole space on top of its clauses
  bool potential() const { return potential_; }
  std::optional<std::size_t> finite_size() const;
  std::optional<LscClause> clause(std::size_t slot) const;

 private:
  SpaceCode dom_;
  std::shared_ptr<const std::vector<LscClause>> list_;
  Generator gen_;
  bool potential_;
};

// Greatest lower bound certified by the first `budget` clause slots (plus the
// implicit >= 0 of potentials). Throws NotInDomain when nothing applies and
// the code is not a potential.
Rat eval_lsc(const LscCode& psi, const Point& x, std::size_t budget);

// At this budget, eval_lsc at exactly-described points returns the coded
// function's value itself (every clause slot was scanned).
bool lsc_eval_exact(const LscCode& psi, std::size_t budget);

}  // namespace caristi
