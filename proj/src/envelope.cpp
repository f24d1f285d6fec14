#include "caristi/envelope.hpp"

#include "caristi/errors.hpp"

namespace caristi {

PointSampler default_sampler(const SpaceCode& s, SampleOptions opts) {
  return [s, opts](SampleRng& rng) { return sample_code_point(s, rng, opts); };
}

EnvelopeApprox envelope(const SpaceCode& s, const LscCode& v, const Rat& alpha,
                        std::vector<CodePoint> sample, std::size_t budget) {
  if (sample.empty()) throw Error(ErrorCode::EmptySample, "envelope needs sample points");
  if (alpha.sign() < 0) throw Error(ErrorCode::BadInput, "negative lipschitz scale");
  EnvelopeApprox env;
  env.alpha = alpha;
  env.lower_values.reserve(sample.size());
  for (const auto& y : sample) {
    s.require_point(y);
    env.lower_values.push_back(eval_lsc(v, Point::at(y), budget));
  }
  env.sample = std::move(sample);
  return env;
}

Rat envelope_value(const SpaceCode& s, const EnvelopeApprox& env, const CodePoint& x) {
  if (env.sample.empty()) throw Error(ErrorCode::EmptySample, "empty envelope");
  std::optional<Rat> best;
  for (std::size_t i = 0; i < env.sample.size(); ++i) {
    Rat cand = env.lower_values[i] + env.alpha * s.dist(x, env.sample[i]);
    if (!best || cand < *best) best = cand;
  }
  return *best;
}

namespace {

// evaluate a candidate, treating budget shortfalls as "unusable candidate"
std::optional<Rat> try_eval(const LscCode& v, const CodePoint& y, std::size_t budget) {
  try {
    return eval_lsc(v, Point::at(y), budget);
  } catch (const Error& e) {
    if (e.budget()) return std::nullopt;
    throw;
  }
}

}  // namespace

DescentResult ekeland_descent(const SpaceCode& s, const LscCode& v, const CodePoint& x0,
                              const Rat& delta, const PointSampler& sampler,
                              DescentOptions opts) {
  if (delta.sign() <= 0) throw Error(ErrorCode::BadInput, "descent step must be positive");
  if (opts.round_size == 0) throw Error(ErrorCode::BadInput, "empty descent rounds");
  s.require_point(x0);

  DescentResult res;
  res.x_star = x0;
  res.v_lower = eval_lsc(v, Point::at(x0), opts.budget);
  res.trace.push_back({x0, res.v_lower, 0});

  std::size_t cap = opts.max_rounds;
  if (cap == 0) {
    if (v.potential() && res.v_lower.sign() >= 0) {
      // each accepted round lowers V by at least delta, and V stays >= 0
      Rat q = res.v_lower / delta;
      mpz_class fl;
      mpz_fdiv_q(fl.get_mpz_t(), q.num().get_mpz_t(), q.den().get_mpz_t());
      cap = static_cast<std::size_t>(mpz_get_ui(fl.get_mpz_t())) + 2;
    } else {
      cap = 4096;
    }
  }

  SampleRng rng(opts.seed);
  for (std::size_t round = 1;; ++round) {
    if (round > cap) throw Error(ErrorCode::NoProgress, "descent round cap hit",
                                 static_cast<long long>(res.rounds));
    ++res.rounds;
    std::optional<CodePoint> pick;
    std::optional<Rat> pick_v;
    for (std::size_t k = 0; k < opts.round_size; ++k) {
      CodePoint y = sampler(rng);
      auto vy = try_eval(v, y, opts.budget);
      if (!vy) continue;
      // exact acceptance certificate
      if (s.dist(res.x_star, y) + delta <= res.v_lower - *vy) {
        if (!pick_v || *vy < *pick_v) {
          pick = y;
          pick_v = *vy;
        }
      }
    }
    if (!pick) break;  // the round certified no candidate: stop here
    res.x_star = *pick;
    res.v_lower = *pick_v;
    res.trace.push_back({res.x_star, res.v_lower, res.trace.size()});
  }
  return res;
}

CriticalityCheck check_delta_critical(const SpaceCode& s, const LscCode& v,
                                      const CodePoint& x, const Rat& delta,
                                      const PointSampler& sampler, std::uint64_t seed,
                                      std::size_t count, std::size_t budget) {
  if (delta.sign() <= 0) throw Error(ErrorCode::BadInput, "criticality step must be positive");
  s.require_point(x);
  Rat vx = eval_lsc(v, Point::at(x), budget);
  CriticalityCheck rep;
  SampleRng rng(seed);
  for (std::size_t k = 0; k < count; ++k) {
    CodePoint y = sampler(rng);
    auto vy = try_eval(v, y, budget);
    if (!vy) continue;
    ++rep.tried;
    if (s.dist(x, y) + delta <= vx - *vy) {
      ++rep.violations;
      if (!rep.witness) rep.witness = y;
    }
  }
  return rep;
}

bool critical_transfer_check(const SpaceCode& s, const LscCode& v, const Rat& alpha,
                             const std::vector<CodePoint>& sample, const CodePoint& xstar,
                             const Rat& tol, std::size_t budget) {
  auto env = envelope(s, v, alpha, sample, budget);
  Rat at_star = envelope_value(s, env, xstar);
  Rat direct = eval_lsc(v, Point::at(xstar), budget);
  return abs(at_star - direct) <= tol;
}

}  // namespace caristi
