#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "caristi/point.hpp"

namespace caristi {

// One certified evaluation fact: on the open ball B(a, r) of the domain, the
// function lands in the open ball of radius q around b in the codomain.
// Radius 0 is allowed and reads as "the value is exactly b".
struct ContClause {
  CodePoint a;
  Rat r;
  CodePoint b;
  Rat q;
};

// Ball-to-ball code of a continuous function. Clauses come either as a finite
// list or as a generator over slot indices; generators may leave gaps
// (nullopt) at slots that carry no clause.
class ContinuousCode {
 public:
  using Generator = std::function<std::optional<ContClause>(std::size_t)>;

  ContinuousCode(SpaceCode domain, SpaceCode codomain, std::vector<ContClause> clauses);
  ContinuousCode(SpaceCode domain, SpaceCode codomain, Generator gen);

  const SpaceCode& domain() const { return dom_; }
  const SpaceCode& codomain() const { return cod_; }
  std::optional<std::size_t> finite_size() const;
  std::optional<ContClause> clause(std::size_t slot) const;

 private:
  SpaceCode dom_, cod_;
  std::shared_ptr<const std::vector<ContClause>> list_;
  Generator gen_;
};

// Exact nonempty-intersection test for open balls (kind-aware: ultrametric
// balls overlap iff d < max radius, interval balls iff d < sum).
bool balls_overlap(const SpaceCode& s, const Ball& b1, const Ball& b2);

// First clause among slots [0, budget) that certifiably applies to x and has
// certified output radius <= eps. Oracle-only points escalate precision up to
// index 32 and treat remaining Unknowns as non-applicable.
std::optional<ContClause> applicable_clause(const ContinuousCode& phi, const Point& x,
                                            const Rat& eps, std::size_t budget);

// Certified evaluation. Throws NotInDomain (budget error, detail = budget)
// when no applicable clause of radius <= eps shows up. The returned point's
// approximation at index i re-scans for a clause of radius <= min(eps, 2^-(i+1))
// and raises BudgetExhausted if the budget stops producing them.
Point eval_continuous(const ContinuousCode& phi, const Point& x, const Rat& eps,
                      std::size_t budget);

// Pairwise coherence of clauses on overlapping balls: images must sit within
// q + q' of each other. Scans slot pairs below the budget.
struct Cf1Report {
  std::size_t pairs = 0;
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};
Cf1Report check_cf1(const ContinuousCode& phi, std::size_t budget);

}  // namespace caristi
