#include "caristi/lsc.hpp"

namespace caristi {

LscCode::LscCode(SpaceCode domain, std::vector<LscClause> clauses, bool potential)
    : dom_(std::move(domain)), potential_(potential) {
  for (const auto& c : clauses) {
    dom_.require_point(c.a);
    if (c.r.sign() <= 0)
      throw Error(ErrorCode::BadInput, "lsc clause with nonpositive ball radius");
  }
  list_ = std::make_shared<const std::vector<LscClause>>(std::move(clauses));
}

LscCode::LscCode(SpaceCode domain, Generator gen, bool potential)
    : dom_(std::move(domain)), gen_(std::move(gen)), potential_(potential) {}

std::optional<std::size_t> LscCode::finite_size() const {
  if (list_) return list_->size();
  return std::nullopt;
}

std::optional<LscClause> LscCode::clause(std::size_t slot) const {
  if (list_) {
    if (slot >= list_->size()) return std::nullopt;
    return (*list_)[slot];
  }
  return gen_(slot);
}

namespace {

bool lsc_clause_applies(const SpaceCode& dom, const Point& x, const LscClause& c) {
  if (x.has_exact()) return in_open_ball(dom, x, Ball{c.a, c.r}, 0) == Verdict::In;
  for (int prec : {4, 8, 16, 24, 32}) {
    switch (in_open_ball(dom, x, Ball{c.a, c.r}, prec)) {
      case Verdict::In: return true;
      case Verdict::Out: return false;
      case Verdict::Unknown: break;
    }
  }
  return false;
}

}  // namespace

Rat eval_lsc(const LscCode& psi, const Point& x, std::size_t budget) {
  std::optional<Rat> best;
  if (psi.potential()) best = Rat(0);
  auto size = psi.finite_size();
  std::size_t stop = size ? std::min(budget, *size) : budget;
  for (std::size_t slot = 0; slot < stop; ++slot) {
    auto c = psi.clause(slot);
    if (!c) continue;
    if (best && !(c->q > *best)) continue;  // cannot improve; skip the ball test
    if (lsc_clause_applies(psi.domain(), x, *c)) best = c->q;
  }
  if (!best)
    throw Error(ErrorCode::NotInDomain,
                "no lsc clause applies within budget " + std::to_string(budget),
                static_cast<long long>(budget));
  return *best;
}

bool lsc_eval_exact(const LscCode& psi, std::size_t budget) {
  auto size = psi.finite_size();
  return size.has_value() && *size <= budget;
}

}  // namespace caristi
