#pragma once

#include <functional>
#include <memory>
#include <optional>

#include "caristi/continuous.hpp"

namespace caristi {

// Baire-class function code: either a continuous leaf or a pointwise limit of
// a sequence of lower-rank codes. Finite limit presentations clamp child
// indices past the end to the last child (a stabilized tail); generator
// presentations produce children on demand.
class BaireCode {
 public:
  using Generator = std::function<BaireCode(std::size_t)>;

  static BaireCode leaf(ContinuousCode f);
  static BaireCode limit(std::vector<BaireCode> children);  // nonempty
  static BaireCode limit_gen(SpaceCode domain, SpaceCode codomain, Generator gen);

  bool is_leaf() const { return fn_ != nullptr; }
  const ContinuousCode& fn() const;
  BaireCode child(std::size_t i) const;
  std::optional<std::size_t> presented_width() const;  // finite presentations only

  const SpaceCode& domain() const { return dom_; }
  const SpaceCode& codomain() const { return cod_; }

 private:
  BaireCode() = default;
  SpaceCode dom_, cod_;
  std::shared_ptr<const ContinuousCode> fn_;
  std::shared_ptr<const std::vector<BaireCode>> kids_;
  Generator gen_;
};

struct BaireEvalResult {
  Point value;                 // evaluation of the last examined child
  Rat tolerance;               // certified bound on the final consecutive gap
  std::size_t stabilized_from; // earliest index of the certified final run
};

// Evaluate a limit code by evaluating children 0..width-1 at x and certifying
// that the tail has settled: consecutive evaluations from some index on agree
// within eps (at least the last pair must, otherwise DivergenceBudget with
// detail = width). Leaves evaluate directly with tolerance 0.
BaireEvalResult eval_baire(const BaireCode& xi, const Point& x, std::size_t width,
                           const Rat& eps, std::size_t leaf_budget);

}  // namespace caristi
