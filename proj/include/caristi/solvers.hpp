#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "caristi/baire.hpp"
#include "caristi/conversions.hpp"
#include "caristi/envelope.hpp"

namespace caristi {

// exact self-map on code points, given by whichever rule fits the space kind:
// stems for sequence spaces, rationals for intervals, a lookup table for
// finite spaces
struct MapCode {
  std::function<Stem(const Stem&)> stem_rule;
  std::function<Rat(const Rat&)> rational_rule;
  std::vector<std::size_t> table;

  bool has_exact(const CodePoint& x) const;
  CodePoint apply_exact(const CodePoint& x) const;  // BadInput when no rule fits
};

struct UltrametricProblem {
  SpaceCode space;
  MapCode f;
  std::optional<CodePoint> realizer;  // known fixed point, when one is available
};

// one stage of the ball descent: the ball B(a, rho) with rho = d(a, f(a)),
// and b = f(a) seeding the next stage. witness is the least precision z at
// which finite-precision radius estimates already certify the strict drop
// from the previous stage (rho_prev - rho > 2 * 2^-z); -1 for the first stage.
struct DescentStage {
  CodePoint a;
  CodePoint b;
  Rat rho;
  long witness = -1;
};

// follow the orbit a, f(a), f(f(a)), ... for up to n stages, certifying the
// strict radius decrease at every stage; stops early at a fixed point
std::vector<DescentStage> build_descent_sequence(const UltrametricProblem& p,
                                                 const CodePoint& start, std::size_t n);

struct BallStep {
  CodePoint center;
  Rat radius;
  std::uint64_t index = 0;  // enumeration index that produced this center
};

struct UltraSolveResult {
  CodePoint x_star;
  Rat residual;
  std::size_t accepted_steps = 0;
  std::uint64_t enumerated = 0;
  std::vector<BallStep> ball_trace;
};

// search the canonical enumeration of the space for centers of ever-smaller
// invariant balls B(c, d(c, f(c))), keeping the chain exactly nested, until
// the radius drops to 2^-k. NoProgress after n_max enumerated candidates.
UltraSolveResult priess_crampe_solve(const UltrametricProblem& p, long k,
                                     std::uint64_t n_max);

struct ContractionReport {
  std::size_t checked = 0;
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

// spot-check d(f(x), f(y)) < d(x, y) on sampled pairs with x != y
ContractionReport check_strictly_contracting(const UltrametricProblem& p,
                                             std::size_t samples, std::uint64_t seed);

// a map presented at every level we handle: always an exact rule, and
// optionally continuous / limit / preimage presentations of the same map
struct FunctionCode {
  MapCode exact;
  std::optional<ContinuousCode> continuous;
  std::optional<BaireCode> baire;
  std::optional<BorelFunctionCode> borel;
};

struct CaristiSystem {
  SpaceCode space;
  FunctionCode f;
  LscCode v{SpaceCode::cantor(), std::vector<LscClause>{}, true};  // zero potential by default
  std::function<Rat(const CodePoint&)> v_exact;  // exact potential, when available
};

// exact potential value at a code point: v_exact if present, else the coded
// value of a finite code. BadInput when neither path is decisive.
Rat caristi_potential_value(const CaristiSystem& sys, const CodePoint& x);

struct CaristiOrbit {
  CodePoint x_star;
  Rat residual;  // d(x_star, f(x_star))
  std::vector<CodePoint> orbit;
  std::vector<Rat> values;
  std::size_t steps = 0;
};

// iterate x_{n+1} = f(x_n) while certifying, exactly, that each step obeys
// d(x_n, x_{n+1}) <= V(x_n) - V(x_{n+1}) and that the telescoped bound
// d(x_n, x_m) <= V(x_n) - V(x_m) holds for every pair along the orbit. Stops
// once the step size is at most eps; BudgetExhausted after n_max steps.
CaristiOrbit banach_caristi_iterate(const CaristiSystem& sys, const CodePoint& x0,
                                    const Rat& eps, std::size_t n_max);

enum class CheckVerdict { Pass, Fail, Indeterminate };

const char* check_verdict_name(CheckVerdict v);

struct CaristiCheckEntry {
  CodePoint x;
  Rat d_x_fx;
  std::optional<Rat> v_x;
  std::optional<Rat> v_fx;
  CheckVerdict verdict = CheckVerdict::Indeterminate;
  bool fixed_point = false;
};

struct CaristiReport {
  std::vector<CaristiCheckEntry> entries;
  std::size_t pass = 0;
  std::size_t fail = 0;
  std::size_t indeterminate = 0;
  bool ok() const { return fail == 0; }
};

// sample points and check the descent inequality d(x, f(x)) <= V(x) - V(f(x)).
// Exact potential values make the verdict decisive; otherwise coded lower
// values decide only when the code is finite and the budget covers it.
CaristiReport verify_caristi(const CaristiSystem& sys, std::size_t samples,
                             std::uint64_t seed, std::size_t budget,
                             const PointSampler& sampler = nullptr);

}  // namespace caristi
