#pragma once

#include <functional>

#include "caristi/borel.hpp"
#include "caristi/continuous.hpp"
#include "caristi/lsc.hpp"

namespace caristi {

// ---------------------------------------------------------------------------
// lower semicontinuity <-> monotone limits of continuous stages
// ---------------------------------------------------------------------------

// ramp profile as a function of the distance d to the ball center: 1 while
// d <= r(1-eps), 0 from r on, linearly interpolated by 1/eps - d/(eps r)
// in the shell. Requires 0 < eps <= 1.
Rat chi_of_dist(const Rat& r, const Rat& eps, const Rat& d);
Rat chi_eps(const SpaceCode& s, const Ball& B, const Rat& eps, const CodePoint& x);

// Stage-n approximant W_n(x) = max(0, max_{slot i < n} q_i * chi^n_{B_i}(x))
// with chi^n the eps = 2^-(n+1) ramp; clauses with q <= 0 contribute nothing.
// Exact at code points.
Rat lsc_stage_value(const LscCode& psi, std::size_t n, const CodePoint& x);

// The same stage as a ball-to-ball code. Slot m covers the ball around
// domain.point_at(m / radius_levels) of radius 2^-(m % radius_levels); the
// certified output interval is the exact enclosure of W_n over that ball.
ContinuousCode lsc_stage_code(const LscCode& psi, std::size_t n, int radius_levels = 24);

// stages 0..count-1 of the monotone presentation
std::vector<ContinuousCode> lsc_to_monotone_limit(const LscCode& psi, std::size_t count);

// Throws NotMonotone when a later stage certifiably drops below an earlier one
// at a sample point (certified intervals strictly separated).
void check_stage_monotone(const std::vector<ContinuousCode>& stages,
                          const std::vector<CodePoint>& sample, std::size_t budget);

// Each stage clause (a, t, b, s) certifies the bound b - s on B(a, t); the
// collected clauses form an lsc code again. Stages are scanned up to
// per_stage_budget slots each and materialized into a finite clause list.
LscCode monotone_limit_to_lsc(SpaceCode domain, const std::vector<ContinuousCode>& stages,
                              std::size_t per_stage_budget, bool potential);

// ---------------------------------------------------------------------------
// continuous <-> borel-presented functions
// ---------------------------------------------------------------------------

// A function presented by preimages: every codomain ball maps to a borel code
// of its preimage.
class BorelFunctionCode {
 public:
  using PreimageFn = std::function<BorelCode(const Ball&)>;

  BorelFunctionCode(SpaceCode domain, SpaceCode codomain, PreimageFn pre)
      : dom_(std::move(domain)), cod_(std::move(codomain)), pre_(std::move(pre)) {}

  BorelCode preimage(const Ball& codomain_ball) const;
  const SpaceCode& domain() const { return dom_; }
  const SpaceCode& codomain() const { return cod_; }

 private:
  SpaceCode dom_, cod_;
  PreimageFn pre_;
};

// preimage(B) = union of the domain balls of clauses whose certified image
// lands strictly inside B (d(b, B.center) + q < B.radius), scanning
// clause_budget slots per query.
BorelFunctionCode continuous_to_borel(const ContinuousCode& phi, std::size_t clause_budget);

// canonical ball enumeration: slot k is the ball around point_at(k / levels)
// with radius 2^-(k % levels)
Ball nth_ball(const SpaceCode& s, std::size_t k, int radius_levels = 24);

// Rebuild a ball-to-ball code from open preimages. Slot n pairs leaf
// n % leaves_per_ball of the flattened preimage of codomain ball
// n / leaves_per_ball with that ball. Preimages whose normal form is not a
// plain union of balls raise NotOpenPreimage; the first probe_balls preimages
// are checked eagerly, the rest on demand.
ContinuousCode borel_to_continuous(const BorelFunctionCode& ups, int radius_levels = 24,
                                   std::size_t leaves_per_ball = 64,
                                   std::size_t probe_balls = 16);

}  // namespace caristi
