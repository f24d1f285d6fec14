#include "caristi/borel.hpp"

namespace caristi {

BorelCode BorelCode::leaf(Ball b) {
  if (b.radius.sign() <= 0)
    throw Error(ErrorCode::BadInput, "borel leaf needs a positive radius");
  BorelCode c;
  c.op_ = Op::Leaf;
  c.ball_ = std::make_shared<const Ball>(std::move(b));
  return c;
}

BorelCode BorelCode::uni(std::vector<BorelCode> children) {
  BorelCode c;
  c.op_ = Op::Union;
  c.kids_ = std::make_shared<const std::vector<BorelCode>>(std::move(children));
  return c;
}

BorelCode BorelCode::inter(std::vector<BorelCode> children) {
  if (children.empty())
    throw Error(ErrorCode::BadInput, "borel intersection needs at least one child");
  BorelCode c;
  c.op_ = Op::Inter;
  c.kids_ = std::make_shared<const std::vector<BorelCode>>(std::move(children));
  return c;
}

const Ball& BorelCode::ball() const {
  if (op_ != Op::Leaf) throw Error(ErrorCode::BadInput, "not a borel leaf");
  return *ball_;
}

const std::vector<BorelCode>& BorelCode::children() const {
  if (op_ == Op::Leaf) throw Error(ErrorCode::BadInput, "borel leaf has no children");
  return *kids_;
}

std::size_t BorelCode::node_count() const {
  if (op_ == Op::Leaf) return 1;
  std::size_t n = 1;
  for (const auto& k : *kids_) n += k.node_count();
  return n;
}

SetVerdict eval_borel_membership(const SpaceCode& s, const BorelCode& c, const Point& x,
                                 int budget) {
  switch (c.op()) {
    case BorelCode::Op::Leaf: {
      const Ball& b = c.ball();
      if (x.has_exact()) {
        Rat d = s.dist(x.exact(), b.center);
        if (d < b.radius) return SetVerdict::In;
        if (b.radius < d) return SetVerdict::Out;
        return SetVerdict::Unknown;  // exactly on the boundary sphere
      }
      Approx d = dist_to_code(s, x, b.center, budget);
      if (d.upper() < b.radius) return SetVerdict::In;
      if (b.radius < d.lower()) return SetVerdict::Out;
      return SetVerdict::Unknown;
    }
    case BorelCode::Op::Union: {
      bool unknown = false;
      for (const auto& k : c.children()) {
        switch (eval_borel_membership(s, k, x, budget)) {
          case SetVerdict::In: return SetVerdict::In;
          case SetVerdict::Unknown: unknown = true; break;
          case SetVerdict::Out: break;
        }
      }
      return unknown ? SetVerdict::Unknown : SetVerdict::Out;
    }
    case BorelCode::Op::Inter: {
      bool unknown = false;
      for (const auto& k : c.children()) {
        switch (eval_borel_membership(s, k, x, budget)) {
          case SetVerdict::Out: return SetVerdict::Out;
          case SetVerdict::Unknown: unknown = true; break;
          case SetVerdict::In: break;
        }
      }
      return unknown ? SetVerdict::Unknown : SetVerdict::In;
    }
  }
  throw Error(ErrorCode::BadInput, "bad borel op");
}

namespace {

BorelCode normalize_rec(const BorelCode& c) {
  if (c.op() == BorelCode::Op::Leaf) return c;
  std::vector<BorelCode> kids;
  for (const auto& k : c.children()) {
    BorelCode nk = normalize_rec(k);
    if (nk.op() == c.op() && nk.op() != BorelCode::Op::Leaf) {
      for (const auto& g : nk.children()) kids.push_back(g);  // splice same-op runs
    } else {
      kids.push_back(std::move(nk));
    }
  }
  if (kids.size() == 1) return kids[0];
  return c.op() == BorelCode::Op::Union ? BorelCode::uni(std::move(kids))
                                        : BorelCode::inter(std::move(kids));
}

}  // namespace

BorelCode clean_normalize(const BorelCode& c) {
  BorelCode n = normalize_rec(c);
  if (n.op() != BorelCode::Op::Union) return BorelCode::uni({std::move(n)});
  return n;
}

}  // namespace caristi
