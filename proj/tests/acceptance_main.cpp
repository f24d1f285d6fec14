// acceptance checks: one PASS/FAIL line per criterion, nonzero exit when any
// fail. argv[1] names the command-line binary used by the determinism check.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "caristi/conversions.hpp"
#include "caristi/envelope.hpp"
#include "caristi/gadgets.hpp"
#include "caristi/kb.hpp"
#include "caristi/solvers.hpp"
#include "gen.hpp"

using namespace caristi;

namespace {

int failures = 0;

struct Check {
  bool ok = true;
  std::string note;
  std::size_t count = 0;

  void require(bool cond, const std::string& msg) {
    ++count;
    if (!cond && ok) {
      ok = false;
      note = msg;
    }
  }
};

void report(int n, const char* label, const Check& c) {
  if (c.ok)
    std::printf("PASS criterion-%d %s (%zu checks)\n", n, label, c.count);
  else
    std::printf("FAIL criterion-%d %s: %s\n", n, label, c.note.c_str());
  if (!c.ok) ++failures;
}

// ---- shared corpora ------------------------------------------------------

std::vector<FiniteTree> tree_corpus() {
  std::vector<FiniteTree> ts;
  SampleRng rng(4242);
  for (int i = 0; i < 20; ++i) {
    FiniteTree t = testgen::random_binary_tree(rng, 8, 40);
    std::vector<TreeNode> nodes = t.nodes();
    nodes.push_back({0});  // keep a supported length-1 node for sampling
    ts.push_back(FiniteTree(std::move(nodes)));
  }
  return ts;
}

LscCode step_potential() {
  return LscCode(SpaceCode::unit_interval(),
                 std::vector<LscClause>{
                     {CodePoint::rational(Rat(3, 4)), Rat(1, 4), Rat(2)},
                     {CodePoint::rational(Rat(1, 2)), Rat(2), Rat(1)},
                     {CodePoint::rational(Rat(1)), Rat(1, 3), Rat(2)},
                 },
                 true);
}

LscCode const_potential() {
  return LscCode(SpaceCode::unit_interval(),
                 std::vector<LscClause>{{CodePoint::rational(Rat(1, 2)), Rat(2), Rat(1)}}, true);
}

// random step potential with dyadic plateaus inside [0, 3/4]; the region
// above 3/4 stays uncovered, so the floor value 0 is attained there
LscCode random_step_potential(SampleRng& rng) {
  std::vector<LscClause> cs;
  std::size_t n = 3 + rng.below(3);
  for (std::size_t i = 0; i < n; ++i) {
    Rat center(static_cast<long>(rng.below(41)), 64);
    Rat radius = Rat::pow2(-static_cast<long>(3 + rng.below(3)));
    Rat q(static_cast<long>(1 + rng.below(8)), 4);
    cs.push_back({CodePoint::rational(center), radius, q});
  }
  return LscCode(SpaceCode::unit_interval(), std::move(cs), true);
}

struct PotentialCase {
  std::string name;
  LscCode v;
  CodePoint x0;
  Rat plateau_min;  // exact global minimum, attained on a plateau
};

std::vector<PotentialCase> potential_corpus() {
  std::vector<PotentialCase> out;
  out.push_back({"step", step_potential(), CodePoint::rational(Rat(1)), Rat(1)});
  out.push_back({"const", const_potential(), CodePoint::rational(Rat(1)), Rat(1)});
  SampleRng rng(606);
  for (int i = 0; i < 3; ++i) {
    LscCode v = random_step_potential(rng);
    CodePoint x0 = v.clause(0)->a;
    out.push_back({"random-" + std::to_string(i), std::move(v), x0, Rat(0)});
  }
  return out;
}

// locally constant test maps on the binary-sequence space, as finite clause
// lists covering every canonical stem of depth <= 4 at radii down to 2^-23
ContinuousCode stem_rewrite_code(const std::function<std::vector<std::uint32_t>(
                                     std::vector<std::uint32_t>, int)>& image,
                                 int shift) {
  auto C = SpaceCode::cantor();
  std::vector<ContClause> cs;
  for (std::uint64_t idx = 0; idx <= (1ull << 6); ++idx) {
    Stem s = C.point_at(idx).as_stem();
    if (s.size() > 4) continue;
    for (int k = static_cast<int>(s.size()); k <= 23; ++k) {
      std::vector<std::uint32_t> img = image(s.digits, k);
      cs.push_back(ContClause{CodePoint::of_stem(s), Rat::pow2(-k), CodePoint::stem(img),
                              Rat::pow2(-k - shift)});
    }
  }
  return ContinuousCode(C, C, std::move(cs));
}

std::vector<std::pair<std::string, ContinuousCode>> function_corpus() {
  auto prepend = [](std::uint32_t d) {
    return [d](std::vector<std::uint32_t> s, int) {
      s.insert(s.begin(), d);
      return s;
    };
  };
  auto flip_first = [](std::vector<std::uint32_t> s, int) {
    if (s.empty()) s.push_back(0);
    s[0] = 1 - s[0];
    return s;
  };
  auto swap_first = [](std::vector<std::uint32_t> s, int) {
    while (s.size() < 2) s.push_back(0);
    std::swap(s[0], s[1]);
    return s;
  };
  auto to_zero = [](std::vector<std::uint32_t>, int) { return std::vector<std::uint32_t>{}; };

  std::vector<std::pair<std::string, ContinuousCode>> out;
  out.push_back({"prepend0", stem_rewrite_code(prepend(0), 1)});
  out.push_back({"prepend1", stem_rewrite_code(prepend(1), 1)});
  out.push_back({"flip-first", stem_rewrite_code(flip_first, 0)});
  out.push_back({"swap-first-two", stem_rewrite_code(swap_first, 0)});
  out.push_back({"constant-zero", stem_rewrite_code(to_zero, 1)});
  return out;
}

Rat ceil_div(const Rat& q) {  // smallest integer >= q, as a Rat
  mpz_class c;
  mpz_cdiv_q(c.get_mpz_t(), q.num().get_mpz_t(), q.den().get_mpz_t());
  return Rat(c, mpz_class(1));
}

// ---- criteria ------------------------------------------------------------

void criterion1() {
  Check c;
  auto C = SpaceCode::cantor();
  MapCode f;
  f.stem_rule = [](const Stem& s) {
    std::vector<std::uint32_t> v = s.digits;
    v.insert(v.begin(), 0);
    return Stem::of(std::move(v));
  };
  UltrametricProblem p{C, std::move(f), std::nullopt};

  auto t0 = std::chrono::steady_clock::now();
  UltraSolveResult r = priess_crampe_solve(p, 20, 1ull << 22);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  c.require(r.residual <= Rat::pow2(-20), "residual above 2^-20");
  c.require(r.x_star.is_stem() && r.x_star.as_stem().digits.empty(),
            "solution disagrees with the all-zero sequence");
  c.require(secs < 1.0, "solve took " + std::to_string(secs) + "s");
  for (std::size_t i = 0; i + 1 < r.ball_trace.size(); ++i) {
    const auto& a = r.ball_trace[i];
    const auto& b = r.ball_trace[i + 1];
    c.require(b.radius <= a.radius, "ball radius grew along the chain");
    c.require(C.dist(a.center, b.center) <= a.radius, "next center escapes the closed ball");
  }
  report(1, "nested-ball solver on the zero-prepend map", c);
}

void criterion2() {
  Check c;
  SampleRng rng(171717);
  for (const auto& tree : tree_corpus()) {
    CantorGadget g(tree);

    // structural lemmas for every leaf that has a successor
    for (const auto& leaf : g.leaves()) {
      std::size_t i;
      try {
        i = g.pivot(leaf);
      } catch (const Error& e) {
        c.require(e.code() == ErrorCode::TreeTooShallow, "unexpected pivot failure");
        continue;
      }
      auto a_here = g.avoid_set(leaf);
      auto a_next = g.avoid_set(g.leaf_after(leaf));
      c.require(!std::binary_search(a_here.begin(), a_here.end(), i),
                "pivot listed as avoidable at its own leaf");
      c.require(std::binary_search(a_next.begin(), a_next.end(), i),
                "pivot not avoidable at the next leaf");
      for (std::size_t j : a_here)
        if (j < i)
          c.require(std::binary_search(a_next.begin(), a_next.end(), j),
                    "below-pivot avoidable index dropped at the next leaf");
    }

    PointSampler sampler = g.skeleton_sampler();
    for (int k = 0; k < 200; ++k) {
      CodePoint x = sampler(rng);
      const Stem& xs = x.as_stem();
      Rat vx = g.v_exact(xs);
      CodePoint fx = g.f_exact(xs);
      Rat d = g.space().dist(x, fx);
      Rat vfx = g.v_exact(fx.as_stem());
      c.require(d > Rat(0), "map fixed a point");
      c.require(vx - vfx >= d, "descent inequality failed");
      auto cls = g.classify(xs);
      if (!cls.escape) {
        std::size_t i = g.pivot(cls.cell);
        c.require(d == Rat::pow2(-2 * static_cast<long>(i) - 1),
                  "leaf-cell step distance off the pivot formula");
      }
    }
  }
  report(2, "binary-tree gadget on seeded trees", c);
}

void criterion3() {
  Check c;
  SampleRng rng(90210);
  SampleOptions opts;
  opts.max_len = 6;
  opts.max_digit = 16;
  for (int round = 0; round < 4; ++round) {
    BaireGadget g(testgen::random_permutation(rng, 64));
    auto sampler = g.sampler(opts);
    for (int k = 0; k < 200; ++k) {
      CodePoint x = sampler(rng);
      const Stem& xs = x.as_stem();
      TreeNode sigma = g.longest_tree_prefix(xs);
      TreeNode next = g.successor(sigma);
      c.require(next.size() > sigma.size(), "successor failed to extend");
      for (std::size_t n = 0; n < sigma.size(); ++n)
        if (sigma[n] > 0) c.require(next[n] == sigma[n], "transcribed entry lost");

      CodePoint fx = g.f_exact(xs);
      Rat d = g.space().dist(x, fx);
      c.require(d > Rat(0), "map fixed a point");

      bool is_prefix = std::equal(sigma.begin(), sigma.end(), next.begin());
      Rat expect;
      if (is_prefix) {
        std::size_t j = sigma.size();
        std::vector<std::uint32_t> xd = xs.digits;
        xd.resize(next.size() + 1, 0);
        while (j < next.size() && xd[j] == next[j]) ++j;
        expect = Rat::pow2(-static_cast<long>(j));
      } else {
        std::size_t j = 0;
        while (sigma[j] == next[j]) ++j;
        expect = Rat::pow2(-static_cast<long>(j));
      }
      c.require(d == expect, "step distance off the case analysis");
      c.require(g.v_exact(xs) - g.v_exact(fx.as_stem()) >= d, "descent inequality failed");
    }
  }
  report(3, "transcript gadget on seeded injections", c);
}

void criterion4() {
  Check c;
  std::vector<Rat> thresholds;
  for (long n = 0; n < 8; ++n) thresholds.push_back(Rat(1) - Rat::pow2(-n));
  IntervalGadget g(thresholds);
  c.require(g.stages() == 7, "expected stages 0..6");

  for (std::size_t s = 0; s < g.stages(); ++s) {
    auto ladder = g.ladder(s);
    c.require(ladder.front() == Rat(1), "ladder top is not 1");
    c.require(ladder.back() == thresholds[s], "ladder bottom misses the threshold");
    for (std::size_t i = 0; i + 1 < ladder.size(); ++i)
      c.require(ladder[i + 1] < ladder[i], "ladder fails to decrease");
  }

  for (std::size_t s = 0; s + 1 < g.stages(); ++s) {
    auto vs = g.v_stage(s);
    auto vnext = g.v_stage(s + 1);
    for (int k = 0; k <= 100; ++k) {
      Rat x(k, 100);
      c.require(vs(x) <= vnext(x), "stage potentials not pointwise nondecreasing");
    }
  }

  // below the first threshold every stage >= 1 jumps straight to 1 and the
  // potential drop pays exactly 2 - 1 = 1 for it
  for (std::size_t s = 1; s < g.stages(); ++s) {
    auto vs = g.v_stage(s);
    auto fs = g.f_stage(s);
    std::vector<Rat> xs{Rat(0)};
    for (int k = 0; k <= 100; ++k)
      if (Rat(k, 100) < thresholds[0]) xs.push_back(Rat(k, 100));
    for (const Rat& x : xs) {
      Rat fx = fs(x);
      c.require(fx == Rat(1), "map below the threshold misses 1");
      Rat d = abs(fx - x);
      Rat drop = vs(x) - vs(fx);
      c.require(drop == Rat(1), "potential drop is not exactly 2 - 1");
      c.require(d <= Rat(1), "step distance above 1");
      c.require(d <= drop || d == drop, "descent certificate failed");
    }
  }
  report(4, "interval staircase stages and ladders", c);
}

void criterion5() {
  Check c;
  struct Case {
    const char* name;
    Rat fixed;
    CodePoint x0;
    std::function<Rat(const Rat&)> f;
    std::function<Rat(const Rat&)> v;
  };
  std::vector<Case> cases;
  cases.push_back({"halve", Rat(0), CodePoint::rational(Rat(1)),
                   [](const Rat& x) { return x / Rat(2); },
                   [](const Rat& x) { return Rat(2) * x; }});
  cases.push_back({"toward-one", Rat(1), CodePoint::rational(Rat(0)),
                   [](const Rat& x) { return (x + Rat(1)) / Rat(2); },
                   [](const Rat& x) { return Rat(2) * (Rat(1) - x); }});

  for (const auto& cs : cases) {
    CaristiSystem sys;
    sys.space = SpaceCode::unit_interval();
    sys.f.exact.rational_rule = cs.f;
    sys.v_exact = [&cs](const CodePoint& p) { return cs.v(p.as_rational()); };

    CaristiOrbit orbit = banach_caristi_iterate(sys, cs.x0, Rat::pow2(-11), 64);
    c.require(orbit.steps <= 12, std::string(cs.name) + ": too many iterations");
    c.require(abs(orbit.x_star.as_rational() - cs.fixed) <= Rat::pow2(-10),
              std::string(cs.name) + ": not within 2^-10 of the fixed point");
    Rat walked(0);
    for (std::size_t i = 0; i + 1 < orbit.orbit.size(); ++i) {
      Rat d = sys.space.dist(orbit.orbit[i], orbit.orbit[i + 1]);
      walked += d;
      c.require(orbit.values[i + 1] <= orbit.values[i],
                std::string(cs.name) + ": potential increased");
      c.require(d <= orbit.values[i] - orbit.values[i + 1],
                std::string(cs.name) + ": step outran the potential drop");
    }
    c.require(walked <= orbit.values.front() - orbit.values.back(),
              std::string(cs.name) + ": telescoped bound failed");
  }
  report(5, "certified contraction orbits", c);
}

struct DescentOutcome {
  CodePoint x_star;
  Rat v_lower;
  std::size_t rounds = 0;
  Rat v_start;
};

std::vector<DescentOutcome> run_descents(const std::vector<PotentialCase>& pots, const Rat& delta) {
  std::vector<DescentOutcome> out;
  for (const auto& pc : pots) {
    const SpaceCode& I = pc.v.domain();
    DescentOptions opts;
    opts.round_size = 128;
    opts.budget = 4096;
    opts.seed = 77;
    DescentResult r = ekeland_descent(I, pc.v, pc.x0, delta, default_sampler(I), opts);
    out.push_back({r.x_star, r.v_lower, r.rounds, r.trace.front().v_lower});
  }
  return out;
}

void criterion6(const std::vector<PotentialCase>& pots,
                const std::vector<DescentOutcome>& descents) {
  Check c;
  const Rat grid_step = Rat::pow2(-8);
  std::vector<Rat> alphas{Rat(0), Rat(1), Rat(2), Rat(4)};

  for (std::size_t pi = 0; pi < pots.size(); ++pi) {
    const auto& pc = pots[pi];
    const SpaceCode& I = pc.v.domain();
    std::vector<CodePoint> grid;
    for (int k = 0; k <= 256; ++k) grid.push_back(CodePoint::rational(Rat(k) * grid_step));

    std::vector<std::vector<Rat>> env_vals;  // per alpha, per grid point
    for (const Rat& a : alphas) {
      EnvelopeApprox env = envelope(I, pc.v, a, grid, 4096);
      std::vector<Rat> vals;
      for (const auto& x : grid) vals.push_back(envelope_value(I, env, x));
      env_vals.push_back(std::move(vals));
    }

    for (std::size_t gi = 0; gi < grid.size(); ++gi) {
      Rat vx = eval_lsc(pc.v, Point::at(grid[gi]), 4096);
      for (std::size_t ai = 0; ai < alphas.size(); ++ai) {
        c.require(env_vals[ai][gi] <= vx, pc.name + ": envelope above the potential");
        if (ai > 0)
          c.require(env_vals[ai - 1][gi] <= env_vals[ai][gi],
                    pc.name + ": envelope not monotone in alpha");
      }
      if (pc.name == "const")
        for (std::size_t ai = 0; ai < alphas.size(); ++ai)
          c.require(env_vals[ai][gi] == Rat(1), "constant potential envelope differs from it");
    }

    // exact alpha-Lipschitz bound over every grid pair
    for (std::size_t ai = 0; ai < alphas.size(); ++ai)
      for (std::size_t gi = 0; gi < grid.size(); ++gi)
        for (std::size_t gj = gi + 1; gj < grid.size(); ++gj) {
          Rat gap = abs(env_vals[ai][gi] - env_vals[ai][gj]);
          Rat lim = alphas[ai] * I.dist(grid[gi], grid[gj]);
          if (gap > lim) {
            c.require(false, pc.name + ": envelope breaks the Lipschitz bound");
            gi = gj = grid.size();
            break;
          }
          ++c.count;
        }

    // transfer at the descent output, alpha = 2
    std::vector<CodePoint> sample = grid;
    sample.push_back(descents[pi].x_star);
    c.require(critical_transfer_check(I, pc.v, Rat(2), sample, descents[pi].x_star,
                                      Rat::pow2(-6), 4096),
              pc.name + ": envelope value drifted at the descent output");
  }
  report(6, "envelope bounds, Lipschitz and transfer", c);
}

void criterion7(const std::vector<PotentialCase>& pots,
                const std::vector<DescentOutcome>& descents, const Rat& delta) {
  Check c;
  for (std::size_t pi = 0; pi < pots.size(); ++pi) {
    const auto& pc = pots[pi];
    const auto& d = descents[pi];
    Rat cap = ceil_div(d.v_start / delta) + Rat(1);
    c.require(Rat(static_cast<long>(d.rounds)) <= cap, pc.name + ": round bound exceeded");
    c.require(d.v_lower == pc.plateau_min, pc.name + ": descent missed the minimum plateau");

    auto crit = check_delta_critical(pc.v.domain(), pc.v, d.x_star, delta,
                                     default_sampler(pc.v.domain()), 9000 + pi, 500, 4096);
    c.require(crit.tried == 500, pc.name + ": criticality check skipped samples");
    c.require(crit.violations == 0, pc.name + ": descent output not delta-critical");
  }
  report(7, "descent termination and criticality", c);
}

void criterion8() {
  Check c;
  auto C = SpaceCode::cantor();

  // continuous -> preimage family -> continuous, to 2^-20 at sampled points
  SampleRng rng(31337);
  SampleOptions opts;
  opts.max_len = 4;
  for (const auto& [name, phi] : function_corpus()) {
    auto ups = continuous_to_borel(phi, 1 << 20);
    auto back = borel_to_continuous(ups, 25, 64, 8);
    PointSampler sampler = default_sampler(C, opts);
    for (int k = 0; k < 100; ++k) {
      CodePoint x = sampler(rng);
      Point y1 = eval_continuous(phi, Point::at(x), Rat::pow2(-21), 1 << 20);
      Point y2 = eval_continuous(back, Point::at(x), Rat::pow2(-21), 1 << 22);
      Rat gap = C.dist(y1.approx(21), y2.approx(21));
      c.require(gap <= Rat::pow2(-20), name + ": round trip drifted past 2^-20");
    }
  }

  // lsc -> monotone stages -> lsc, to 2^-10 at plateau-interior points
  for (const auto& pc : potential_corpus()) {
    const SpaceCode& I = pc.v.domain();
    auto stages = lsc_to_monotone_limit(pc.v, 12);
    LscCode recon = monotone_limit_to_lsc(I, stages, 1 << 14, true);
    std::size_t budget = recon.finite_size() ? *recon.finite_size() : 4096;
    for (int k = 0; k < 64; ++k) {
      CodePoint x = CodePoint::rational(Rat(2 * k + 1, 128));
      Rat vx = eval_lsc(pc.v, Point::at(x), 4096);
      Rat rx = eval_lsc(recon, Point::at(x), budget);
      c.require(rx <= vx, pc.name + ": reconstruction overshoots");
      c.require(vx - rx <= Rat::pow2(-10), pc.name + ": reconstruction below 2^-10 band");
    }
  }

  // normalization preserves membership verdicts on an exhaustive finite space
  std::vector<std::string> labels;
  for (int i = 0; i < 64; ++i) labels.push_back("p" + std::to_string(i));
  std::vector<std::vector<Rat>> table(64, std::vector<Rat>(64, Rat(0)));
  for (int i = 0; i < 64; ++i)
    for (int j = 0; j < 64; ++j) {
      if (i == j) continue;
      int k = 5;
      while (k >= 0 && ((i >> k) & 1) == ((j >> k) & 1)) --k;
      table[i][j] = Rat::pow2(-(5 - k));  // shared high bits shrink the distance
    }
  auto F = SpaceCode::finite_ultrametric(labels, table);

  SampleRng brng(5151);
  std::function<BorelCode(std::size_t)> gen = [&](std::size_t depth) -> BorelCode {
    if (depth == 0 || brng.below(3) == 0)
      return BorelCode::leaf(Ball{F.point_at(brng.below(64)), Rat::pow2(-(long)brng.below(7))});
    std::vector<BorelCode> kids;
    std::size_t n = 2 + brng.below(2);
    for (std::size_t i = 0; i < n; ++i) kids.push_back(gen(depth - 1));
    return brng.coin() ? BorelCode::uni(std::move(kids)) : BorelCode::inter(std::move(kids));
  };
  for (int t = 0; t < 30; ++t) {
    BorelCode code = gen(3);
    BorelCode norm = clean_normalize(code);
    for (std::size_t i = 0; i < 64; ++i) {
      auto x = Point::at(F.point_at(i));
      c.require(eval_borel_membership(F, code, x, 20) == eval_borel_membership(F, norm, x, 20),
                "normalization changed a membership verdict");
    }
  }
  report(8, "code conversions round trip", c);
}

void criterion9() {
  Check c;
  std::vector<FiniteTree> corpus = tree_corpus();
  corpus.push_back(FiniteTree({{0}, {1}}));

  for (const auto& t : corpus) {
    const auto& nodes = t.nodes();
    if (nodes.size() > 50) continue;
    for (const auto& a : nodes)
      for (const auto& b : nodes) {
        int ab = kb_compare(a, b);
        c.require(kb_compare(b, a) == -ab, "comparison is not antisymmetric");
        c.require((ab == 0) == (a == b), "distinct nodes compare equal");
      }
    for (const auto& a : nodes)
      for (const auto& b : nodes)
        for (const auto& d : nodes)
          if (kb_compare(a, b) <= 0 && kb_compare(b, d) <= 0)
            c.require(kb_compare(a, d) <= 0, "comparison is not transitive");
  }

  auto order = kb_sort({{}, {0}, {1}});
  std::vector<std::vector<std::uint32_t>> expect{{0}, {1}, {}};
  c.require(order == expect, "three-node linearization is off");
  report(9, "descending-path order is total", c);
}

void criterion10() {
  Check c;
  SampleRng rng(2024);
  for (int inst = 0; inst < 50; ++inst) {
    std::size_t ntrees = 1 + rng.below(3);
    std::vector<FiniteTree> trees;
    for (std::size_t i = 0; i < ntrees; ++i) {
      std::vector<TreeNode> nodes{{}};
      std::size_t grow = 4 + rng.below(12);
      for (std::size_t s = 0; s < grow; ++s) {
        TreeNode child = nodes[rng.below(nodes.size())];
        if (child.size() >= 5) continue;
        child.push_back(rng.below(3));
        nodes.push_back(std::move(child));
      }
      trees.push_back(FiniteTree(std::move(nodes)));
    }
    std::vector<std::uint32_t> digits(rng.below(20), 0);
    for (auto& d : digits) d = rng.below(3);
    auto x = Point::at(CodePoint::stem(std::move(digits)));

    DefectBounds prev;
    bool have_prev = false;
    for (std::size_t depth = 0; depth <= 8; ++depth) {
      DefectBounds b = path_defect_potential(trees, x, depth);
      c.require(b.lo <= b.hi, "lower bound above upper bound");
      if (have_prev) {
        c.require(prev.lo <= b.lo, "lower bound decreased with depth");
        c.require(b.hi <= prev.hi, "upper bound increased with depth");
        for (std::size_t i = 0; i < ntrees; ++i)
          c.require(!prev.decided[i] || b.decided[i], "a decided projection reopened");
      }
      bool all = std::all_of(b.decided.begin(), b.decided.end(), [](bool d) { return d; });
      if (all) c.require(b.lo == b.hi, "bounds stay apart after every projection decided");
      prev = b;
      have_prev = true;
    }
    c.require(std::all_of(prev.decided.begin(), prev.decided.end(), [](bool d) { return d; }),
              "finite trees left a projection undecided");
  }
  report(10, "path-defect interval bounds", c);
}

void criterion11(const char* cli) {
  Check c;
  if (!cli) {
    c.require(false, "no command-line binary given (pass its path as argv[1])");
    report(11, "deterministic reports", c);
    return;
  }
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / ("accept-" + std::to_string(::getpid()));
  fs::create_directories(dir);

  std::ofstream(dir / "t.json") << "{\"tree\": [[0,0],[0,1,0],[1,0]]}\n";
  std::ofstream(dir / "inj.json")
      << "{\"injection\": [[0,3],[1,0],[2,2],[3,5],[4,1],[5,4]]}\n";
  std::ofstream(dir / "c.json") << "{\"c\": [\"1/3\", \"1/2\", \"3/4\"]}\n";
  std::ofstream(dir / "pot.json")
      << "{\"kind\": \"lsc\", \"domain\": {\"kind\": \"interval\"}, \"potential\": true,\n"
         " \"clauses\": [[\"3/4\", \"1/4\", \"2\"], [\"1/2\", \"2\", \"1\"]]}\n";

  auto slurp = [](const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
  };

  std::vector<std::string> invocations{
      "solve-ultrametric --space cantor --map shift0 --precision 20",
      "gadget cantor --tree " + (dir / "t.json").string() + " --samples 200 --seed 7 --verify",
      "gadget baire --injection " + (dir / "inj.json").string() + " --samples 60 --seed 3 --verify",
      "gadget interval --c " + (dir / "c.json").string() + " --samples 40 --seed 1 --verify",
      "descent --map " + (dir / "pot.json").string() + " --precision 5 --samples 64 --seed 9",
      "kb --tree " + (dir / "t.json").string(),
  };
  for (std::size_t i = 0; i < invocations.size(); ++i) {
    fs::path out1 = dir / ("out" + std::to_string(i) + "a.json");
    fs::path out2 = dir / ("out" + std::to_string(i) + "b.json");
    std::string base = "\"" + std::string(cli) + "\" " + invocations[i];
    int rc1 = std::system((base + " > " + out1.string() + " 2>/dev/null").c_str());
    int rc2 = std::system((base + " > " + out2.string() + " 2>/dev/null").c_str());
    c.require(rc1 == 0 && rc2 == 0, "run exited nonzero: " + invocations[i]);
    std::string a = slurp(out1), b = slurp(out2);
    c.require(!a.empty() && a == b, "reports differ across runs: " + invocations[i]);
  }
  fs::remove_all(dir);
  report(11, "deterministic reports", c);
}

}  // namespace

int main(int argc, char** argv) {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();

  const Rat delta = Rat::pow2(-6);
  auto pots = potential_corpus();
  auto descents = run_descents(pots, delta);
  criterion6(pots, descents);
  criterion7(pots, descents, delta);

  criterion8();
  criterion9();
  criterion10();
  criterion11(argc > 1 ? argv[1] : nullptr);

  if (failures) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
