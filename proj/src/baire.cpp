#include "caristi/baire.hpp"

namespace caristi {

BaireCode BaireCode::leaf(ContinuousCode f) {
  BaireCode c;
  c.dom_ = f.domain();
  c.cod_ = f.codomain();
  c.fn_ = std::make_shared<const ContinuousCode>(std::move(f));
  return c;
}

BaireCode BaireCode::limit(std::vector<BaireCode> children) {
  if (children.empty()) throw Error(ErrorCode::BadInput, "baire limit needs children");
  BaireCode c;
  c.dom_ = children.front().domain();
  c.cod_ = children.front().codomain();
  c.kids_ = std::make_shared<const std::vector<BaireCode>>(std::move(children));
  return c;
}

BaireCode BaireCode::limit_gen(SpaceCode domain, SpaceCode codomain, Generator gen) {
  BaireCode c;
  c.dom_ = std::move(domain);
  c.cod_ = std::move(codomain);
  c.gen_ = std::move(gen);
  return c;
}

const ContinuousCode& BaireCode::fn() const {
  if (!fn_) throw Error(ErrorCode::BadInput, "baire limit node has no leaf function");
  return *fn_;
}

BaireCode BaireCode::child(std::size_t i) const {
  if (fn_) throw Error(ErrorCode::BadInput, "baire leaf has no children");
  if (kids_) return (*kids_)[std::min(i, kids_->size() - 1)];  // stabilized tail
  return gen_(i);
}

std::optional<std::size_t> BaireCode::presented_width() const {
  if (kids_) return kids_->size();
  return std::nullopt;
}

namespace {

// precision index whose two-sided slack certifies within eps/4
int precision_for(const Rat& eps) {
  int prec = 2;
  while (Rat::pow2(-prec + 1) > eps / Rat(4) && prec < 48) ++prec;
  return prec;
}

}  // namespace

BaireEvalResult eval_baire(const BaireCode& xi, const Point& x, std::size_t width,
                           const Rat& eps, std::size_t leaf_budget) {
  if (eps.sign() <= 0) throw Error(ErrorCode::BadInput, "eval_baire needs a positive tolerance");
  if (xi.is_leaf())
    return {eval_continuous(xi.fn(), x, eps, leaf_budget), Rat(0), 0};
  if (width < 2)
    throw Error(ErrorCode::BadInput, "limit evaluation needs width >= 2");

  std::vector<Point> vals;
  vals.reserve(width);
  for (std::size_t i = 0; i < width; ++i)
    vals.push_back(eval_baire(xi.child(i), x, width, eps, leaf_budget).value);

  int prec = precision_for(eps);
  const SpaceCode& cod = xi.codomain();
  // certified upper bounds on consecutive gaps, walking back from the tail
  std::vector<std::optional<Rat>> gap(width - 1);
  for (std::size_t i = 0; i + 1 < width; ++i) {
    Approx a = dist_points(cod, vals[i], vals[i + 1], prec);
    if (!(eps < a.upper())) gap[i] = a.upper();
  }
  if (!gap[width - 2])
    throw Error(ErrorCode::DivergenceBudget,
                "limit tail not certified within " + eps.str() + " at width " +
                    std::to_string(width),
                static_cast<long long>(width));
  std::size_t from = width - 1;
  while (from > 0 && gap[from - 1]) --from;
  return {vals[width - 1], *gap[width - 2], from};
}

}  // namespace caristi
