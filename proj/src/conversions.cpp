#include "caristi/conversions.hpp"

#include <map>
#include <memory>

namespace caristi {

Rat chi_of_dist(const Rat& r, const Rat& eps, const Rat& d) {
  if (eps.sign() <= 0 || Rat(1) < eps)
    throw Error(ErrorCode::BadInput, "chi needs 0 < eps <= 1");
  if (!(d < r)) return Rat(0);
  if (d < r * (Rat(1) - eps)) return Rat(1);
  return Rat(1) / eps - d / (eps * r);
}

Rat chi_eps(const SpaceCode& s, const Ball& B, const Rat& eps, const CodePoint& x) {
  return chi_of_dist(B.radius, eps, s.dist(x, B.center));
}

Rat lsc_stage_value(const LscCode& psi, std::size_t n, const CodePoint& x) {
  psi.domain().require_point(x);
  Rat eps = Rat::pow2(-static_cast<long>(n) - 1);
  Rat best(0);
  for (std::size_t slot = 0; slot < n; ++slot) {
    auto c = psi.clause(slot);
    if (!c || c->q.sign() <= 0) continue;
    best = max(best, c->q * chi_eps(psi.domain(), Ball{c->a, c->r}, eps, x));
  }
  return best;
}

ContinuousCode lsc_stage_code(const LscCode& psi, std::size_t n, int radius_levels) {
  // materialize the first n slots once; stages only ever look at those
  auto clauses = std::make_shared<std::vector<LscClause>>();
  Rat m(1);
  for (std::size_t slot = 0; slot < n; ++slot) {
    auto c = psi.clause(slot);
    if (!c || c->q.sign() <= 0) continue;
    m = max(m, c->q);
    clauses->push_back(*c);
  }
  SpaceCode dom = psi.domain();
  SpaceCode cod = SpaceCode::interval(Rat(0), m);
  Rat eps = Rat::pow2(-static_cast<long>(n) - 1);
  auto gen = [dom, clauses, eps, radius_levels](std::size_t slot) -> std::optional<ContClause> {
    CodePoint c = dom.point_at(slot / static_cast<std::size_t>(radius_levels));
    Rat t = Rat::pow2(-static_cast<long>(slot % static_cast<std::size_t>(radius_levels)));
    Rat lo(0), hi(0);
    for (const auto& cl : *clauses) {
      Rat d = dom.dist(cl.a, c);
      Rat dlo = max(Rat(0), d - t), dhi = d + t;
      lo = max(lo, cl.q * chi_of_dist(cl.r, eps, dhi));  // chi falls as d grows
      hi = max(hi, cl.q * chi_of_dist(cl.r, eps, dlo));
    }
    return ContClause{c, t, CodePoint::rational((lo + hi) / Rat(2)), (hi - lo) / Rat(2)};
  };
  return ContinuousCode(std::move(dom), std::move(cod), std::move(gen));
}

std::vector<ContinuousCode> lsc_to_monotone_limit(const LscCode& psi, std::size_t count) {
  std::vector<ContinuousCode> out;
  out.reserve(count);
  for (std::size_t n = 0; n < count; ++n) out.push_back(lsc_stage_code(psi, n));
  return out;
}

void check_stage_monotone(const std::vector<ContinuousCode>& stages,
                          const std::vector<CodePoint>& sample, std::size_t budget) {
  for (const auto& x : sample) {
    Point p = Point::at(x);
    std::optional<Rat> prev_lo;
    for (std::size_t k = 0; k < stages.size(); ++k) {
      auto c = applicable_clause(stages[k], p, Rat(1, 64), budget);
      if (!c) continue;  // budget ran dry here; nothing to certify
      Rat lo = c->b.as_rational() - c->q;
      Rat hi = c->b.as_rational() + c->q;
      if (prev_lo && hi < *prev_lo)
        throw Error(ErrorCode::NotMonotone,
                    "stage " + std::to_string(k) + " certifiably drops below stage " +
                        std::to_string(k - 1) + " at " +
                        code_point_str(stages[k].domain(), x),
                    static_cast<long long>(k));
      if (!prev_lo || *prev_lo < lo) prev_lo = lo;
    }
  }
}

LscCode monotone_limit_to_lsc(SpaceCode domain, const std::vector<ContinuousCode>& stages,
                              std::size_t per_stage_budget, bool potential) {
  std::vector<LscClause> out;
  for (const auto& st : stages) {
    auto size = st.finite_size();
    std::size_t stop = size ? std::min(per_stage_budget, *size) : per_stage_budget;
    for (std::size_t slot = 0; slot < stop; ++slot) {
      auto c = st.clause(slot);
      if (!c) continue;
      out.push_back(LscClause{c->a, c->r, c->b.as_rational() - c->q});
    }
  }
  return LscCode(std::move(domain), std::move(out), potential);
}

// ---------------------------------------------------------------------------

BorelCode BorelFunctionCode::preimage(const Ball& codomain_ball) const {
  cod_.require_point(codomain_ball.center);
  if (codomain_ball.radius.sign() <= 0)
    throw Error(ErrorCode::BadInput, "preimage query needs a positive radius");
  return pre_(codomain_ball);
}

BorelFunctionCode continuous_to_borel(const ContinuousCode& phi, std::size_t clause_budget) {
  return BorelFunctionCode(
      phi.domain(), phi.codomain(), [phi, clause_budget](const Ball& B) {
        std::vector<BorelCode> leaves;
        auto size = phi.finite_size();
        std::size_t stop = size ? std::min(clause_budget, *size) : clause_budget;
        for (std::size_t slot = 0; slot < stop; ++slot) {
          auto c = phi.clause(slot);
          if (!c) continue;
          // d(b, center) + q <= R puts the open ball B(b, q) inside open
          // B(center, R); a radius-0 promise means f lands exactly on b,
          // which needs the strict d < R instead.
          Rat d = phi.codomain().dist(c->b, B.center);
          bool inside = c->q.sign() == 0 ? d < B.radius : d + c->q <= B.radius;
          if (inside) leaves.push_back(BorelCode::leaf(Ball{c->a, c->r}));
        }
        return BorelCode::uni(std::move(leaves));
      });
}

Ball nth_ball(const SpaceCode& s, std::size_t k, int radius_levels) {
  return Ball{s.point_at(k / static_cast<std::size_t>(radius_levels)),
              Rat::pow2(-static_cast<long>(k % static_cast<std::size_t>(radius_levels)))};
}

namespace {

std::vector<Ball> flatten_open_preimage(const BorelFunctionCode& ups, const Ball& B) {
  BorelCode norm = clean_normalize(ups.preimage(B));
  std::vector<Ball> out;
  for (const auto& child : norm.children()) {
    if (child.op() != BorelCode::Op::Leaf)
      throw Error(ErrorCode::NotOpenPreimage,
                  "preimage of the ball around " + code_point_str(ups.codomain(), B.center) +
                      " radius " + B.radius.str() + " is not a union of balls");
    out.push_back(child.ball());
  }
  return out;
}

}  // namespace

ContinuousCode borel_to_continuous(const BorelFunctionCode& ups, int radius_levels,
                                   std::size_t leaves_per_ball, std::size_t probe_balls) {
  auto cache = std::make_shared<std::map<std::size_t, std::vector<Ball>>>();
  auto leaves_of = [ups, cache, radius_levels](std::size_t k) -> const std::vector<Ball>& {
    auto it = cache->find(k);
    if (it == cache->end())
      it = cache->emplace(k, flatten_open_preimage(ups, nth_ball(ups.codomain(), k, radius_levels)))
               .first;
    return it->second;
  };
  for (std::size_t k = 0; k < probe_balls; ++k) leaves_of(k);
  SpaceCode dom = ups.domain(), cod = ups.codomain();
  auto gen = [ups, cod, leaves_of, leaves_per_ball,
              radius_levels](std::size_t slot) -> std::optional<ContClause> {
    std::size_t k = slot / leaves_per_ball;
    std::size_t j = slot % leaves_per_ball;
    Ball B = nth_ball(cod, k, radius_levels);
    const auto& leaves = leaves_of(k);
    if (j >= leaves.size()) return std::nullopt;
    return ContClause{leaves[j].center, leaves[j].radius, B.center, B.radius};
  };
  return ContinuousCode(std::move(dom), std::move(cod), std::move(gen));
}

}  // namespace caristi
