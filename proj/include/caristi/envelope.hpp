#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "caristi/lsc.hpp"
#include "caristi/rng.hpp"

namespace caristi {

// draws one candidate point from a space; descent and spot-check routines
// consume a deterministic stream of these
using PointSampler = std::function<CodePoint(SampleRng&)>;

PointSampler default_sampler(const SpaceCode& s, SampleOptions opts = {});

// discretized Lipschitz regularization of a coded potential: the sample
// carries certified lower values, and the envelope interpolates them with an
// alpha-Lipschitz penalty
struct EnvelopeApprox {
  Rat alpha;
  std::vector<CodePoint> sample;
  std::vector<Rat> lower_values;
};

EnvelopeApprox envelope(const SpaceCode& s, const LscCode& v, const Rat& alpha,
                        std::vector<CodePoint> sample, std::size_t budget);

// min over the sample of lower_value + alpha * d(x, y); exact
Rat envelope_value(const SpaceCode& s, const EnvelopeApprox& env, const CodePoint& x);

struct DescentOptions {
  std::size_t round_size = 64;
  std::size_t budget = 4096;
  std::uint64_t seed = 0;
  std::size_t max_rounds = 0;  // 0: derive from the starting value when possible
};

struct DescentStep {
  CodePoint x;
  Rat v_lower;
  std::size_t step = 0;
};

struct DescentResult {
  CodePoint x_star;
  Rat v_lower;
  std::vector<DescentStep> trace;
  std::size_t rounds = 0;
};

// greedy variational descent: each accepted move y satisfies the exact
// certificate d(x, y) + delta <= V(x) - V(y), so V drops by at least delta
// per step; stops at the first round with no acceptable candidate
DescentResult ekeland_descent(const SpaceCode& s, const LscCode& v, const CodePoint& x0,
                              const Rat& delta, const PointSampler& sampler,
                              DescentOptions opts = {});

struct CriticalityCheck {
  std::size_t tried = 0;
  std::size_t violations = 0;
  std::optional<CodePoint> witness;
  bool ok() const { return violations == 0; }
};

// spot-check that no sampled candidate satisfies the descent certificate at x
CriticalityCheck check_delta_critical(const SpaceCode& s, const LscCode& v,
                                      const CodePoint& x, const Rat& delta,
                                      const PointSampler& sampler, std::uint64_t seed,
                                      std::size_t count, std::size_t budget);

// the envelope at a critical point reproduces the potential's value up to tol
bool critical_transfer_check(const SpaceCode& s, const LscCode& v, const Rat& alpha,
                             const std::vector<CodePoint>& sample, const CodePoint& xstar,
                             const Rat& tol, std::size_t budget);

}  // namespace caristi
