#include "caristi/continuous.hpp"

namespace caristi {

ContinuousCode::ContinuousCode(SpaceCode domain, SpaceCode codomain,
                               std::vector<ContClause> clauses)
    : dom_(std::move(domain)), cod_(std::move(codomain)) {
  for (const auto& c : clauses) {
    dom_.require_point(c.a);
    cod_.require_point(c.b);
    if (c.r.sign() <= 0) throw Error(ErrorCode::BadInput, "clause with nonpositive domain radius");
    if (c.q.sign() < 0) throw Error(ErrorCode::BadInput, "clause with negative output radius");
  }
  list_ = std::make_shared<const std::vector<ContClause>>(std::move(clauses));
}

ContinuousCode::ContinuousCode(SpaceCode domain, SpaceCode codomain, Generator gen)
    : dom_(std::move(domain)), cod_(std::move(codomain)), gen_(std::move(gen)) {}

std::optional<std::size_t> ContinuousCode::finite_size() const {
  if (list_) return list_->size();
  return std::nullopt;
}

std::optional<ContClause> ContinuousCode::clause(std::size_t slot) const {
  if (list_) {
    if (slot >= list_->size()) return std::nullopt;
    return (*list_)[slot];
  }
  return gen_(slot);
}

bool balls_overlap(const SpaceCode& s, const Ball& b1, const Ball& b2) {
  if (s.kind() == SpaceKind::Product) {
    const auto& t1 = b1.center.as_tuple();
    const auto& t2 = b2.center.as_tuple();
    return balls_overlap(s.left(), Ball{t1[0], b1.radius}, Ball{t2[0], b2.radius}) &&
           balls_overlap(s.right(), Ball{t1[1], b1.radius}, Ball{t2[1], b2.radius});
  }
  Rat d = s.dist(b1.center, b2.center);
  if (s.ultrametric()) return d < max(b1.radius, b2.radius);
  return d < b1.radius + b2.radius;
}

namespace {

// certified applicability of x to the clause's domain ball
bool clause_applies(const SpaceCode& dom, const Point& x, const ContClause& c) {
  if (x.has_exact()) return in_open_ball(dom, x, Ball{c.a, c.r}, 0) == Verdict::In;
  for (int prec : {4, 8, 16, 24, 32}) {
    switch (in_open_ball(dom, x, Ball{c.a, c.r}, prec)) {
      case Verdict::In: return true;
      case Verdict::Out: return false;
      case Verdict::Unknown: break;
    }
  }
  return false;  // cannot certify: err toward skipping the clause
}

}  // namespace

std::optional<ContClause> applicable_clause(const ContinuousCode& phi, const Point& x,
                                            const Rat& eps, std::size_t budget) {
  auto size = phi.finite_size();
  std::size_t stop = size ? std::min(budget, *size) : budget;
  for (std::size_t slot = 0; slot < stop; ++slot) {
    auto c = phi.clause(slot);
    if (!c) continue;
    if (c->q > eps) continue;
    if (clause_applies(phi.domain(), x, *c)) return c;
  }
  return std::nullopt;
}

Point eval_continuous(const ContinuousCode& phi, const Point& x, const Rat& eps,
                      std::size_t budget) {
  auto first = applicable_clause(phi, x, eps, budget);
  if (!first)
    throw Error(ErrorCode::NotInDomain,
                "no applicable clause of radius <= " + eps.str() + " within budget " +
                    std::to_string(budget),
                static_cast<long long>(budget));
  return Point::from_oracle([phi, x, eps, budget](int i) {
    Rat target = min(eps, Rat::pow2(-i - 1));
    auto c = applicable_clause(phi, x, target, budget);
    if (!c)
      throw Error(ErrorCode::BudgetExhausted,
                  "no applicable clause of radius <= " + target.str() + " within budget " +
                      std::to_string(budget),
                  static_cast<long long>(budget));
    return c->b;
  });
}

Cf1Report check_cf1(const ContinuousCode& phi, std::size_t budget) {
  Cf1Report rep;
  auto size = phi.finite_size();
  std::size_t stop = size ? std::min(budget, *size) : budget;
  std::vector<ContClause> cs;
  for (std::size_t slot = 0; slot < stop; ++slot)
    if (auto c = phi.clause(slot)) cs.push_back(*c);
  for (std::size_t i = 0; i < cs.size(); ++i)
    for (std::size_t j = i + 1; j < cs.size(); ++j) {
      if (!balls_overlap(phi.domain(), Ball{cs[i].a, cs[i].r}, Ball{cs[j].a, cs[j].r})) continue;
      ++rep.pairs;
      Rat gap = phi.codomain().dist(cs[i].b, cs[j].b);
      if (gap > cs[i].q + cs[j].q && rep.violations.size() < 16)
        rep.violations.push_back(
            "clauses " + std::to_string(i) + "," + std::to_string(j) +
            " overlap but images are " + gap.str() + " apart, beyond " +
            (cs[i].q + cs[j].q).str());
    }
  return rep;
}

}  // namespace caristi
