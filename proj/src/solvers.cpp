#include "caristi/solvers.hpp"

#include "caristi/errors.hpp"

namespace caristi {

bool MapCode::has_exact(const CodePoint& x) const {
  if (x.is_stem()) return static_cast<bool>(stem_rule);
  if (x.is_rational()) return static_cast<bool>(rational_rule);
  if (x.is_finite()) return !table.empty();
  return false;
}

CodePoint MapCode::apply_exact(const CodePoint& x) const {
  if (x.is_stem() && stem_rule) return CodePoint::of_stem(stem_rule(x.as_stem()));
  if (x.is_rational() && rational_rule) return CodePoint::rational(rational_rule(x.as_rational()));
  if (x.is_finite() && !table.empty()) {
    auto i = x.as_finite();
    if (i >= table.size()) throw Error(ErrorCode::BadInput, "map table too small");
    return CodePoint::finite(table[i]);
  }
  throw Error(ErrorCode::BadInput, "no exact map rule for this point kind");
}

namespace {

CodePoint apply_checked(const UltrametricProblem& p, const CodePoint& x) {
  CodePoint y = p.f.apply_exact(x);
  p.space.require_point(y);
  return y;
}

}  // namespace

std::vector<DescentStage> build_descent_sequence(const UltrametricProblem& p,
                                                 const CodePoint& start, std::size_t n) {
  if (!p.space.ultrametric())
    throw Error(ErrorCode::NotUltrametric, "descent sequences need an ultrametric space");
  p.space.require_point(start);

  std::vector<DescentStage> out;
  CodePoint a = start;
  std::optional<Rat> prev_rho;
  for (std::size_t i = 0; i < n; ++i) {
    CodePoint b = apply_checked(p, a);
    Rat rho = p.space.dist(a, b);
    DescentStage st{a, b, rho, -1};
    if (prev_rho) {
      Rat drop = *prev_rho - rho;
      if (drop.sign() <= 0)
        throw Error(ErrorCode::NoProgress, "orbit radius failed to shrink",
                    static_cast<long long>(i));
      long z = 0;
      while (!(Rat::pow2(1 - z) < drop)) ++z;  // least finite-precision witness
      st.witness = z;
      if (!closed_ball_nested(p.space, Ball{a, rho}, Ball{out.back().a, *prev_rho}))
        throw Error(ErrorCode::NestingViolation, "descent balls failed to nest",
                    static_cast<long long>(i));
    }
    out.push_back(std::move(st));
    if (rho.is_zero()) break;  // fixed point reached
    prev_rho = rho;
    a = b;
  }
  return out;
}

UltraSolveResult priess_crampe_solve(const UltrametricProblem& p, long k,
                                     std::uint64_t n_max) {
  if (!p.space.ultrametric())
    throw Error(ErrorCode::NotUltrametric, "ball descent needs an ultrametric space");
  if (n_max == 0) throw Error(ErrorCode::BadInput, "need at least one candidate");

  Rat target = Rat::pow2(-k);
  UltraSolveResult res;
  CodePoint c = p.space.point_at(0);
  res.enumerated = 1;
  CodePoint fc = apply_checked(p, c);
  Rat r = p.space.dist(c, fc);
  res.ball_trace.push_back({c, r, 0});

  for (std::uint64_t n = 1; r > target && n < n_max; ++n) {
    CodePoint y = p.space.point_at(n);
    ++res.enumerated;
    if (p.space.dist(c, y) > r) continue;  // outside the current closed ball
    Rat rho = p.space.dist(y, apply_checked(p, y));
    if (!(rho < r)) continue;
    if (!closed_ball_nested(p.space, Ball{y, rho}, Ball{c, r}))
      throw Error(ErrorCode::NestingViolation, "candidate ball escapes the chain",
                  static_cast<long long>(n));
    c = y;
    r = rho;
    ++res.accepted_steps;
    res.ball_trace.push_back({c, r, n});
  }
  if (r > target)
    throw Error(ErrorCode::NoProgress, "enumeration budget exhausted before target radius",
                static_cast<long long>(n_max));

  res.x_star = c;
  res.residual = r;
  // the realizer is the deepest center; recheck it against the whole chain
  for (const auto& step : res.ball_trace)
    if (p.space.dist(step.center, res.x_star) > step.radius)
      throw Error(ErrorCode::NestingViolation, "final center escapes a recorded ball");
  if (p.realizer && p.space.dist(res.x_star, *p.realizer) > res.residual)
    throw Error(ErrorCode::BadInput, "declared fixed point lies outside the final ball");
  return res;
}

ContractionReport check_strictly_contracting(const UltrametricProblem& p,
                                             std::size_t samples, std::uint64_t seed) {
  ContractionReport rep;
  SampleRng rng(seed);
  for (std::size_t t = 0; t < samples; ++t) {
    CodePoint x = sample_code_point(p.space, rng);
    CodePoint y = sample_code_point(p.space, rng);
    Rat dxy = p.space.dist(x, y);
    if (dxy.is_zero()) continue;
    ++rep.checked;
    Rat dfxy = p.space.dist(apply_checked(p, x), apply_checked(p, y));
    if (!(dfxy < dxy) && rep.violations.size() < 16)
      rep.violations.push_back("d(f(x),f(y)) = " + dfxy.str() + " !< " + dxy.str() + " at x = " +
                               code_point_str(p.space, x) + ", y = " +
                               code_point_str(p.space, y));
  }
  return rep;
}

Rat caristi_potential_value(const CaristiSystem& sys, const CodePoint& x) {
  if (sys.v_exact) return sys.v_exact(x);
  auto size = sys.v.finite_size();
  if (size) return eval_lsc(sys.v, Point::at(x), *size);
  throw Error(ErrorCode::BadInput, "no exact potential evaluation available");
}

CaristiOrbit banach_caristi_iterate(const CaristiSystem& sys, const CodePoint& x0,
                                    const Rat& eps, std::size_t n_max) {
  if (eps.sign() < 0) throw Error(ErrorCode::BadInput, "negative stopping tolerance");
  sys.space.require_point(x0);

  CaristiOrbit res;
  res.orbit.push_back(x0);
  res.values.push_back(caristi_potential_value(sys, x0));

  for (std::size_t n = 0;; ++n) {
    const CodePoint& x = res.orbit.back();
    const Rat& vx = res.values.back();
    CodePoint y = sys.f.exact.apply_exact(x);
    sys.space.require_point(y);
    Rat d = sys.space.dist(x, y);
    Rat vy = caristi_potential_value(sys, y);
    if (vx - vy < d)
      throw Error(ErrorCode::CaristiViolation, "step exceeds the potential drop",
                  static_cast<long long>(n));
    if (d <= eps) {
      res.x_star = x;
      res.residual = d;
      break;
    }
    if (n + 1 >= n_max)
      throw Error(ErrorCode::BudgetExhausted, "orbit did not settle in n_max steps",
                  static_cast<long long>(n_max));
    res.orbit.push_back(y);
    res.values.push_back(vy);
    ++res.steps;
  }

  // telescoped certificates across the whole recorded orbit
  for (std::size_t i = 0; i < res.orbit.size(); ++i)
    for (std::size_t j = i + 1; j < res.orbit.size(); ++j)
      if (res.values[i] - res.values[j] < sys.space.dist(res.orbit[i], res.orbit[j]))
        throw Error(ErrorCode::CaristiViolation, "orbit pair exceeds the potential drop",
                    static_cast<long long>(i));
  return res;
}

const char* check_verdict_name(CheckVerdict v) {
  switch (v) {
    case CheckVerdict::Pass: return "pass";
    case CheckVerdict::Fail: return "fail";
    default: return "indeterminate";
  }
}

CaristiReport verify_caristi(const CaristiSystem& sys, std::size_t samples,
                             std::uint64_t seed, std::size_t budget,
                             const PointSampler& sampler) {
  PointSampler draw = sampler ? sampler : default_sampler(sys.space);
  bool coded_decisive = false;
  if (auto size = sys.v.finite_size()) coded_decisive = budget >= *size;

  CaristiReport rep;
  SampleRng rng(seed);
  for (std::size_t t = 0; t < samples; ++t) {
    CaristiCheckEntry e;
    e.x = draw(rng);
    if (!sys.f.exact.has_exact(e.x)) {
      ++rep.indeterminate;
      rep.entries.push_back(std::move(e));
      continue;
    }
    CodePoint fx = sys.f.exact.apply_exact(e.x);
    e.d_x_fx = sys.space.dist(e.x, fx);
    e.fixed_point = e.d_x_fx.is_zero();

    bool decisive = false;
    try {
      if (sys.v_exact) {
        e.v_x = sys.v_exact(e.x);
        e.v_fx = sys.v_exact(fx);
        decisive = true;
      } else {
        e.v_x = eval_lsc(sys.v, Point::at(e.x), budget);
        e.v_fx = eval_lsc(sys.v, Point::at(fx), budget);
        decisive = coded_decisive;  // lower values settle it only for covered finite codes
      }
    } catch (const Error& err) {
      if (!err.budget()) throw;
    }

    if (decisive && e.v_x && e.v_fx)
      e.verdict = (*e.v_x - *e.v_fx < e.d_x_fx) ? CheckVerdict::Fail : CheckVerdict::Pass;
    switch (e.verdict) {
      case CheckVerdict::Pass: ++rep.pass; break;
      case CheckVerdict::Fail: ++rep.fail; break;
      default: ++rep.indeterminate; break;
    }
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

}  // namespace caristi
