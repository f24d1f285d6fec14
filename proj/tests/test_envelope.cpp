#include "caristi/envelope.hpp"

#include "doctest.h"

using namespace caristi;

namespace {

// step potential: 1 on [0,1/2], 2 on (1/2,1]
LscCode step_potential() {
  auto I = SpaceCode::unit_interval();
  std::vector<LscClause> cs{
      {CodePoint::rational(Rat(3, 4)), Rat(1, 4), Rat(2)},
      {CodePoint::rational(Rat(1, 2)), Rat(2), Rat(1)},
      {CodePoint::rational(Rat(1)), Rat(1, 3), Rat(2)},
  };
  return LscCode(I, cs, true);
}

std::vector<CodePoint> grid16() {
  std::vector<CodePoint> g;
  for (int k = 0; k <= 16; ++k) g.push_back(CodePoint::rational(Rat(k, 16)));
  return g;
}

PointSampler dyadic64() {
  return [](SampleRng& r) {
    return CodePoint::rational(Rat(static_cast<long>(r.below(65)), 64));
  };
}

}  // namespace

TEST_CASE("envelopes sit below the potential and are alpha-lipschitz") {
  auto v = step_potential();
  auto I = v.domain();
  auto g = grid16();
  auto env = envelope(I, v, Rat(2), g, 16);
  REQUIRE(env.lower_values.size() == g.size());

  for (std::size_t i = 0; i < g.size(); ++i) {
    Rat ve = envelope_value(I, env, g[i]);
    CHECK(!(env.lower_values[i] < ve));  // env <= V at every sample point
    for (std::size_t j = 0; j < g.size(); ++j) {
      Rat gap = abs(ve - envelope_value(I, env, g[j]));
      CHECK(!(Rat(2) * I.dist(g[i], g[j]) < gap));  // exact 2-lipschitz
    }
  }

  // monotone in the scale
  std::vector<Rat> alphas{Rat(0), Rat(1), Rat(2), Rat(4)};
  for (std::size_t a = 0; a + 1 < alphas.size(); ++a) {
    auto lo = envelope(I, v, alphas[a], g, 16);
    auto hi = envelope(I, v, alphas[a + 1], g, 16);
    for (const auto& x : g)
      CHECK(!(envelope_value(I, hi, x) < envelope_value(I, lo, x)));
  }

  // scale zero collapses to the sample minimum
  auto flat = envelope(I, v, Rat(0), g, 16);
  CHECK(envelope_value(I, flat, CodePoint::rational(Rat(1))) == Rat(1));

  // constants are reproduced at sample points for any scale
  LscCode c(I, {{CodePoint::rational(Rat(1, 2)), Rat(2), Rat(7, 3)}}, false);
  auto envc = envelope(I, c, Rat(4), g, 4);
  for (const auto& x : g) CHECK(envelope_value(I, envc, x) == Rat(7, 3));

  CHECK_THROWS_AS(envelope(I, v, Rat(2), {}, 16), Error);
  CHECK_THROWS_AS(envelope(I, v, Rat(-1), g, 16), Error);
}

TEST_CASE("descent walks the step potential down and stops at criticality") {
  auto v = step_potential();
  auto I = v.domain();
  DescentOptions opts;
  opts.seed = 99;
  auto res = ekeland_descent(I, v, CodePoint::rational(Rat(1)), Rat(1, 4), dyadic64(), opts);

  CHECK(res.v_lower == Rat(1));
  Rat xs = res.x_star.as_rational();
  CHECK(!(xs < Rat(1, 4)));
  CHECK(!(Rat(1, 2) < xs));
  CHECK(res.trace.size() == 2);
  CHECK(res.rounds == 2);
  // every accepted move certifies a drop of at least delta
  for (std::size_t i = 0; i + 1 < res.trace.size(); ++i)
    CHECK(!(res.trace[i].v_lower - Rat(1, 4) < res.trace[i + 1].v_lower));
  // rounds bound: ceil(V(x0)/delta) + 1
  CHECK(res.rounds <= 9);

  auto crit = check_delta_critical(I, v, res.x_star, Rat(1, 4), dyadic64(), 1234, 200, 16);
  CHECK(crit.ok());
  CHECK(crit.tried == 200);

  // a non-critical point yields witnesses
  auto bad = check_delta_critical(I, v, CodePoint::rational(Rat(1)), Rat(1, 4), dyadic64(),
                                  1234, 200, 16);
  CHECK(!bad.ok());
  REQUIRE(bad.witness.has_value());
  Rat w = bad.witness->as_rational();
  CHECK(!(w < Rat(1, 4)));
  CHECK(!(Rat(1, 2) < w));
}

TEST_CASE("round caps surface as budget errors") {
  auto v = step_potential();
  auto I = v.domain();
  DescentOptions opts;
  opts.seed = 99;
  opts.max_rounds = 1;
  try {
    ekeland_descent(I, v, CodePoint::rational(Rat(1)), Rat(1, 4), dyadic64(), opts);
    FAIL("expected NoProgress");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoProgress);
    CHECK(e.budget());
  }
  CHECK_THROWS_AS(
      ekeland_descent(I, v, CodePoint::rational(Rat(1)), Rat(0), dyadic64(), opts), Error);
}

TEST_CASE("critical transfer matches the potential only at critical points") {
  auto v = step_potential();
  auto I = v.domain();
  auto g = grid16();
  CHECK(critical_transfer_check(I, v, Rat(2), g, CodePoint::rational(Rat(3, 8)),
                                Rat::pow2(-6), 16));
  // 9/16 sits on the expensive side next to the cheap plateau: gap 7/8
  CHECK(!critical_transfer_check(I, v, Rat(2), g, CodePoint::rational(Rat(9, 16)),
                                 Rat::pow2(-6), 16));
}

TEST_CASE("default sampler arms produce valid points") {
  for (auto s : {SpaceCode::cantor(), SpaceCode::baire(), SpaceCode::unit_interval()}) {
    auto f = default_sampler(s);
    SampleRng rng(7);
    for (int i = 0; i < 50; ++i) CHECK(s.valid_point(f(rng)));
  }
}
