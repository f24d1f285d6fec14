// batch front end: load spaces, codes, and gadget inputs, run the solvers and
// verifiers, and emit exact JSON reports on stdout. Exit 0 when no check
// failed, 1 on failures, 2 on unusable input. Budget shortfalls count as
// indeterminate, which only --strict turns into a nonzero exit.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "caristi/json_io.hpp"
#include "caristi/kb.hpp"

using namespace caristi;

namespace {

struct Options {
  std::string space;
  std::string map;
  std::string tree_file;
  std::string injection_file;
  std::string c_file;
  long precision = 8;
  std::size_t samples = 100;
  std::uint64_t seed = 1;
  std::size_t budget = 4096;
  bool strict = false;
  bool verify = false;
  std::string out;
  std::string gadget_kind;
};

struct Tally {
  std::size_t pass = 0;
  std::size_t fail = 0;
  std::size_t indeterminate = 0;

  void add(CheckVerdict v) {
    if (v == CheckVerdict::Pass) ++pass;
    else if (v == CheckVerdict::Fail) ++fail;
    else ++indeterminate;
  }
  void check(bool ok) { ok ? ++pass : ++fail; }
  json to_json() const {
    return json{{"pass", pass}, {"fail", fail}, {"indeterminate", indeterminate}};
  }
};

int finish(json& report, const Tally& t, const Options& o) {
  report["summary"] = t.to_json();
  std::string text = report.dump(2);
  text.push_back('\n');
  if (!o.out.empty()) {
    std::ofstream f(o.out, std::ios::binary);
    if (!f) {
      std::cerr << "cannot write " << o.out << "\n";
      return 2;
    }
    f << text;
  }
  std::fwrite(text.data(), 1, text.size(), stdout);
  if (t.fail > 0) return 1;
  if (o.strict && t.indeterminate > 0) return 1;
  return 0;
}

std::string bound_str(const Rat& q) { return "<= " + q.str(); }

SpaceCode space_by_name(const std::string& name) {
  if (name.empty() || name == "cantor") return SpaceCode::cantor();
  if (name == "baire") return SpaceCode::baire();
  if (name == "interval" || name == "unit") return SpaceCode::unit_interval();
  return space_from_json(load_json_file(name));
}

MapCode map_by_name(const std::string& name) {
  MapCode m;
  if (name == "shift0" || name == "shift1") {
    std::uint32_t digit = name == "shift1" ? 1 : 0;
    m.stem_rule = [digit](const Stem& s) {
      std::vector<std::uint32_t> v = s.digits;
      v.insert(v.begin(), digit);
      return Stem::of(std::move(v));
    };
    return m;
  }
  if (name == "flip") {
    m.stem_rule = [](const Stem& s) {
      std::vector<std::uint32_t> v = s.digits;
      if (v.empty()) v.push_back(1);
      else v[0] = v[0] == 0 ? 1 : 0;
      return Stem::of(std::move(v));
    };
    return m;
  }
  if (name == "identity") {
    m.stem_rule = [](const Stem& s) { return s; };
    m.rational_rule = [](const Rat& x) { return x; };
    return m;
  }
  if (name == "halve") {
    m.rational_rule = [](const Rat& x) { return x / Rat(2); };
    return m;
  }
  if (name == "toward1") {
    m.rational_rule = [](const Rat& x) { return (x + Rat(1)) / Rat(2); };
    return m;
  }
  throw Error(ErrorCode::BadInput, "unknown map \"" + name + "\"");
}

// named self-verifying systems on the unit interval
CaristiSystem system_by_name(const std::string& name) {
  CaristiSystem sys;
  sys.space = SpaceCode::unit_interval();
  if (name == "halve") {
    sys.f.exact.rational_rule = [](const Rat& x) { return x / Rat(2); };
    sys.v_exact = [](const CodePoint& p) { return Rat(2) * p.as_rational(); };
    return sys;
  }
  if (name == "toward1") {
    sys.f.exact.rational_rule = [](const Rat& x) { return (x + Rat(1)) / Rat(2); };
    sys.v_exact = [](const CodePoint& p) { return Rat(2) * (Rat(1) - p.as_rational()); };
    return sys;
  }
  throw Error(ErrorCode::BadInput, "unknown system \"" + name + "\" (try halve, toward1)");
}

// named potentials on the unit interval, plus lsc documents from disk
LscCode potential_by_name(const std::string& name) {
  if (name.empty() || name == "step") {
    return LscCode(SpaceCode::unit_interval(),
                   std::vector<LscClause>{
                       {CodePoint::rational(Rat(3, 4)), Rat(1, 4), Rat(2)},
                       {CodePoint::rational(Rat(1, 2)), Rat(2), Rat(1)},
                       {CodePoint::rational(Rat(1)), Rat(1, 3), Rat(2)},
                   },
                   true);
  }
  if (name == "wells") {
    return LscCode(SpaceCode::unit_interval(),
                   std::vector<LscClause>{
                       {CodePoint::rational(Rat(1, 4)), Rat(1, 8), Rat(1, 2)},
                       {CodePoint::rational(Rat(3, 4)), Rat(1, 8), Rat(1, 2)},
                   },
                   true);
  }
  return lsc_from_json(load_json_file(name));
}

CodePoint default_start(const SpaceCode& s) {
  switch (s.kind()) {
    case SpaceKind::Interval: return CodePoint::rational(s.hi());
    case SpaceKind::FiniteUltrametric: return CodePoint::finite(s.finite_size() - 1);
    case SpaceKind::Cantor:
    case SpaceKind::Baire: return CodePoint::stem({1});
    case SpaceKind::Product: return s.point_at(1);
  }
  return s.point_at(0);
}

json point_json(const SpaceCode& s, const CodePoint& p) {
  json j = code_point_to_json(p);
  (void)s;
  return j;
}

json caristi_entries(const SpaceCode& s, const CaristiReport& rep, std::size_t* fixed_points) {
  json entries = json::array();
  std::size_t fixed = 0;
  for (const auto& e : rep.entries) {
    json row = json::object();
    row["x"] = point_json(s, e.x);
    row["d"] = rat_to_json(e.d_x_fx);
    row["v_x"] = e.v_x ? json(rat_to_json(*e.v_x)) : json(nullptr);
    row["v_fx"] = e.v_fx ? json(rat_to_json(*e.v_fx)) : json(nullptr);
    row["verdict"] = check_verdict_name(e.verdict);
    row["fixed_point"] = e.fixed_point;
    if (e.fixed_point) ++fixed;
    entries.push_back(std::move(row));
  }
  if (fixed_points) *fixed_points = fixed;
  return entries;
}

int run_solve(const Options& o, json& report, Tally& t) {
  SpaceCode space = space_by_name(o.space);
  std::string map_name = o.map.empty() ? "shift0" : o.map;
  UltrametricProblem p{space, map_by_name(map_name), std::nullopt};
  long k = o.precision;
  std::uint64_t n_max = o.budget > 4096 ? o.budget : (std::uint64_t(8) << std::min(k, 40L));

  report["space"] = o.space.empty() ? "cantor" : o.space;
  report["map"] = map_name;
  report["precision"] = k;
  try {
    UltraSolveResult r = priess_crampe_solve(p, k, n_max);
    if (r.x_star.is_stem())
      report["fixed_point_stem"] = stem_str_padded(r.x_star.as_stem(), static_cast<std::size_t>(k));
    report["fixed_point"] = point_json(space, r.x_star);
    report["residual"] = bound_str(Rat::pow2(-k));
    report["residual_exact"] = rat_to_json(r.residual);
    report["iterations"] = r.enumerated;
    report["accepted_steps"] = r.accepted_steps;
    json trace = json::array();
    for (const auto& b : r.ball_trace)
      trace.push_back(json{{"center", point_json(space, b.center)},
                           {"radius", rat_to_json(b.radius)},
                           {"index", b.index}});
    report["ball_trace"] = std::move(trace);
    t.check(r.residual <= Rat::pow2(-k));
  } catch (const Error& e) {
    if (!e.budget()) throw;
    report["error"] = e.what();
    ++t.indeterminate;
  }
  return finish(report, t, o);
}

int run_iterate(const Options& o, json& report, Tally& t) {
  std::string name = o.map.empty() ? "halve" : o.map;
  CaristiSystem sys = system_by_name(name);
  CodePoint x0 = name == "toward1" ? CodePoint::rational(Rat(0)) : CodePoint::rational(Rat(1));
  Rat eps = Rat::pow2(-o.precision);

  report["map"] = name;
  report["x0"] = point_json(sys.space, x0);
  report["eps"] = rat_to_json(eps);
  try {
    CaristiOrbit orbit = banach_caristi_iterate(sys, x0, eps, o.budget);
    json rows = json::array();
    for (std::size_t i = 0; i < orbit.orbit.size(); ++i) {
      json row{{"i", i},
               {"x", point_json(sys.space, orbit.orbit[i])},
               {"v", rat_to_json(orbit.values[i])}};
      if (i + 1 < orbit.orbit.size())
        row["step"] = rat_to_json(sys.space.dist(orbit.orbit[i], orbit.orbit[i + 1]));
      rows.push_back(std::move(row));
      if (i + 1 < orbit.orbit.size()) ++t.pass;  // each transition carries an exact certificate
    }
    report["orbit"] = std::move(rows);
    report["steps"] = orbit.steps;
    report["x_star"] = point_json(sys.space, orbit.x_star);
    report["residual"] = bound_str(eps);
    report["residual_exact"] = rat_to_json(orbit.residual);
    ++t.pass;  // the telescoped all-pairs certificate
  } catch (const Error& e) {
    report["error"] = e.what();
    if (e.budget()) ++t.indeterminate;
    else ++t.fail;
  }
  return finish(report, t, o);
}

int run_descent(const Options& o, json& report, Tally& t) {
  LscCode v = potential_by_name(o.map);
  const SpaceCode& space = v.domain();
  Rat delta = Rat::pow2(-o.precision);
  PointSampler sampler = default_sampler(space);
  CodePoint x0 = default_start(space);

  DescentOptions opts;
  opts.round_size = o.samples;
  opts.budget = o.budget;
  opts.seed = o.seed;

  report["potential"] = o.map.empty() ? "step" : o.map;
  report["delta"] = rat_to_json(delta);
  report["x0"] = point_json(space, x0);
  try {
    DescentResult r = ekeland_descent(space, v, x0, delta, sampler, opts);
    json rows = json::array();
    for (std::size_t i = 0; i < r.trace.size(); ++i) {
      const auto& s = r.trace[i];
      json row{{"x", point_json(space, s.x)}, {"V_lower", rat_to_json(s.v_lower)}};
      row["step"] = i == 0 ? rat_to_json(Rat(0))
                           : rat_to_json(space.dist(r.trace[i - 1].x, s.x));
      rows.push_back(std::move(row));
      if (i > 0) ++t.pass;  // accepted moves carry the exact descent certificate
    }
    report["trace"] = std::move(rows);
    report["rounds"] = r.rounds;
    report["x_star"] = point_json(space, r.x_star);
    report["v_lower"] = rat_to_json(r.v_lower);

    auto crit = check_delta_critical(space, v, r.x_star, delta, sampler, o.seed + 1, o.samples,
                                     o.budget);
    json cj{{"tried", crit.tried}, {"violations", crit.violations}};
    if (crit.witness) cj["witness"] = point_json(space, *crit.witness);
    report["criticality"] = std::move(cj);
    t.check(crit.ok());
  } catch (const Error& e) {
    report["error"] = e.what();
    if (e.budget()) ++t.indeterminate;
    else ++t.fail;
  }
  return finish(report, t, o);
}

int run_envelope(const Options& o, json& report, Tally& t) {
  LscCode v = potential_by_name(o.map);
  const SpaceCode& space = v.domain();
  if (space.kind() != SpaceKind::Interval)
    throw Error(ErrorCode::BadInput, "envelope report needs an interval potential");

  long bits = std::min(o.precision, 12L);
  std::uint64_t den = std::uint64_t(1) << bits;
  std::vector<CodePoint> grid;
  for (std::uint64_t k = 0; k <= den; ++k)
    grid.push_back(CodePoint::rational(space.lo() + Rat(static_cast<long>(k), 1) *
                                                        (space.hi() - space.lo()) /
                                                        Rat(static_cast<long>(den), 1)));
  std::vector<CodePoint> sample = grid;
  SampleRng rng(o.seed);
  PointSampler sampler = default_sampler(space);
  for (std::size_t i = 0; i < o.samples; ++i) sample.push_back(sampler(rng));

  std::vector<Rat> alphas{Rat(0), Rat(1), Rat(2), Rat(4)};
  std::vector<EnvelopeApprox> envs;
  for (const auto& a : alphas) envs.push_back(envelope(space, v, a, sample, o.budget));

  report["potential"] = o.map.empty() ? "step" : o.map;
  report["grid_step"] = rat_to_json(Rat::pow2(-bits) * (space.hi() - space.lo()));
  json alist = json::array();
  for (const auto& a : alphas) alist.push_back(rat_to_json(a));
  report["alphas"] = std::move(alist);

  bool exact_v = lsc_eval_exact(v, o.budget);
  json rows = json::array();
  for (std::size_t gi = 0; gi < grid.size(); ++gi) {
    const CodePoint& x = grid[gi];
    json row{{"x", rat_to_json(x.as_rational())}};
    bool ok = true;
    Rat prev;
    json vals = json::array();
    for (std::size_t ai = 0; ai < alphas.size(); ++ai) {
      Rat ev = envelope_value(space, envs[ai], x);
      vals.push_back(rat_to_json(ev));
      if (ai > 0 && ev < prev) ok = false;  // envelopes grow with alpha
      prev = ev;
    }
    row["env"] = std::move(vals);
    if (exact_v) {
      Rat vx = eval_lsc(v, Point::at(x), o.budget);
      row["v"] = rat_to_json(vx);
      if (prev > vx) ok = false;  // largest envelope still sits below the potential
    }
    row["verdict"] = ok ? "pass" : "fail";
    t.check(ok);
    rows.push_back(std::move(row));
  }
  report["entries"] = std::move(rows);

  // exact alpha-Lipschitz bound across consecutive grid points
  bool lip_ok = true;
  for (std::size_t ai = 0; ai < alphas.size(); ++ai) {
    for (std::size_t gi = 0; gi + 1 < grid.size(); ++gi) {
      Rat a = envelope_value(space, envs[ai], grid[gi]);
      Rat b = envelope_value(space, envs[ai], grid[gi + 1]);
      Rat gap = a < b ? b - a : a - b;
      if (gap > alphas[ai] * space.dist(grid[gi], grid[gi + 1])) {
        lip_ok = false;
        break;
      }
    }
  }
  report["lipschitz"] = lip_ok ? "pass" : "fail";
  t.check(lip_ok);
  return finish(report, t, o);
}

int run_gadget(const Options& o, json& report, Tally& t) {
  report["kind"] = o.gadget_kind;
  if (o.gadget_kind == "cantor") {
    if (o.tree_file.empty()) throw Error(ErrorCode::BadInput, "gadget cantor needs --tree");
    FiniteTree tree = tree_from_json(load_json_file(o.tree_file));
    CantorGadget g(tree);
    report["system"] = json{{"space", space_to_json(g.space())},
                            {"v", lsc_to_json(g.v_code())},
                            {"f", continuous_to_json(g.f_code())}};
    report["exact"] = json{{"kind", "cantor"}, {"tree", tree_to_json(tree)["tree"]}};
    if (o.verify) {
      try {
        auto rep = verify_caristi(g.as_system(), o.samples, o.seed, o.budget,
                                  g.skeleton_sampler());
        std::size_t fixed = 0;
        report["entries"] = caristi_entries(g.space(), rep, &fixed);
        report["fixed_points"] = fixed;
        t.pass += rep.pass;
        t.fail += rep.fail;
        t.indeterminate += rep.indeterminate;
      } catch (const Error& e) {
        if (!e.budget()) throw;
        report["error"] = e.what();
        ++t.indeterminate;
      }
    }
    return finish(report, t, o);
  }
  if (o.gadget_kind == "baire") {
    if (o.injection_file.empty()) throw Error(ErrorCode::BadInput, "gadget baire needs --injection");
    InjectionTable h = injection_from_json(load_json_file(o.injection_file));
    BaireGadget g(h);
    report["system"] = json{{"space", space_to_json(g.space())},
                            {"v", nullptr},
                            {"f", nullptr},
                            {"note", "map and potential are transcript-driven; see exact"}};
    report["exact"] = json{{"kind", "baire"}, {"injection", injection_to_json(h)["injection"]},
                           {"stem_bound", g.stem_bound()}};
    if (o.verify) {
      auto rep = verify_caristi(g.as_system(), o.samples, o.seed, o.budget, g.sampler());
      std::size_t fixed = 0;
      report["entries"] = caristi_entries(g.space(), rep, &fixed);
      report["fixed_points"] = fixed;
      t.pass += rep.pass;
      t.fail += rep.fail;
      t.indeterminate += rep.indeterminate;
    }
    return finish(report, t, o);
  }
  if (o.gadget_kind == "interval") {
    if (o.c_file.empty()) throw Error(ErrorCode::BadInput, "gadget interval needs --c");
    IntervalGadget g(thresholds_from_json(load_json_file(o.c_file)));
    report["exact"] = json{{"kind", "interval"},
                           {"c", thresholds_to_json(g.thresholds())["c"]}};
    report["stages"] = g.stages();
    json ladders = json::array();
    for (std::size_t n = 0; n < g.stages(); ++n) {
      json l = json::array();
      for (const auto& q : g.ladder(n)) l.push_back(rat_to_json(q));
      ladders.push_back(std::move(l));
    }
    report["ladders"] = std::move(ladders);
    if (o.verify) {
      json rows = json::array();
      std::size_t grid_n = std::max<std::size_t>(o.samples, 2);
      for (std::size_t n = 0; n < g.stages(); ++n) {
        auto ladder = g.ladder(n);
        bool ends_ok = ladder.front() == Rat(1) && ladder.back() == g.thresholds()[n];
        rows.push_back(json{{"stage", n}, {"check", "ladder-endpoints"},
                            {"verdict", ends_ok ? "pass" : "fail"}});
        t.check(ends_ok);

        auto vn = g.v_stage(n);
        auto fn = g.f_stage(n);
        if (n + 1 < g.stages()) {
          auto vnext = g.v_stage(n + 1);
          bool mono = true;
          for (std::size_t k = 0; k <= grid_n; ++k) {
            Rat x(static_cast<long>(k), static_cast<long>(grid_n));
            if (vnext(x) < vn(x)) { mono = false; break; }
          }
          rows.push_back(json{{"stage", n}, {"check", "stage-monotone"},
                              {"verdict", mono ? "pass" : "fail"}});
          t.check(mono);
        }

        // below the threshold the map jumps to 1 and the potential pays for it
        bool cert = true;
        for (std::size_t k = 0; k <= grid_n; ++k) {
          Rat x = g.thresholds()[n] * Rat(static_cast<long>(k), static_cast<long>(grid_n));
          Rat d = fn(x) - x;
          if (d < Rat(0)) d = Rat(0) - d;
          if (d > vn(x) - vn(fn(x))) { cert = false; break; }
        }
        rows.push_back(json{{"stage", n}, {"check", "below-threshold-descent"},
                            {"verdict", cert ? "pass" : "fail"}});
        t.check(cert);
      }
      report["entries"] = std::move(rows);
    }
    return finish(report, t, o);
  }
  throw Error(ErrorCode::BadInput, "unknown gadget kind \"" + o.gadget_kind +
                                       "\" (try cantor, baire, interval)");
}

int run_verify(const Options& o, json& report, Tally& t) {
  CaristiSystem sys;
  PointSampler sampler;
  if (!o.tree_file.empty()) {
    CantorGadget g(tree_from_json(load_json_file(o.tree_file)));
    sys = g.as_system();
    sampler = g.skeleton_sampler();
    report["system"] = "cantor-gadget";
  } else if (!o.injection_file.empty()) {
    BaireGadget g(injection_from_json(load_json_file(o.injection_file)));
    sys = g.as_system();
    sampler = g.sampler();
    report["system"] = "baire-gadget";
  } else {
    std::string name = o.map.empty() ? "halve" : o.map;
    sys = system_by_name(name);
    sampler = default_sampler(sys.space);
    report["system"] = name;
  }
  auto rep = verify_caristi(sys, o.samples, o.seed, o.budget, sampler);
  std::size_t fixed = 0;
  report["entries"] = caristi_entries(sys.space, rep, &fixed);
  report["fixed_points"] = fixed;
  t.pass += rep.pass;
  t.fail += rep.fail;
  t.indeterminate += rep.indeterminate;
  return finish(report, t, o);
}

int run_convert(const Options& o, json& report, Tally& t) {
  if (o.map.empty()) throw Error(ErrorCode::BadInput, "convert needs --map <code.json>");
  json doc = load_json_file(o.map);
  SampleRng rng(o.seed);

  if (doc.is_object() && doc.contains("potential")) {
    LscCode v = lsc_from_json(doc);
    const SpaceCode& space = v.domain();
    std::size_t stages = static_cast<std::size_t>(std::max(1L, o.precision));
    auto stage_codes = lsc_to_monotone_limit(v, stages);
    LscCode back = monotone_limit_to_lsc(space, stage_codes, o.budget, v.potential());

    report["direction"] = "lsc->monotone-stages->lsc";
    report["stages"] = stages;
    PointSampler sampler = default_sampler(space);
    std::size_t exact_budget = o.budget;
    if (auto n = v.finite_size()) exact_budget = std::max(exact_budget, *n);
    std::size_t back_budget = o.budget;
    if (auto n = back.finite_size()) back_budget = std::max(back_budget, *n);

    json rows = json::array();
    for (std::size_t i = 0; i < o.samples; ++i) {
      CodePoint x = sampler(rng);
      json row{{"x", point_json(space, x)}};
      try {
        Rat orig = eval_lsc(v, Point::at(x), exact_budget);
        Rat prev(0);
        bool mono = true;
        for (std::size_t n = 0; n < stages; ++n) {
          Rat w = lsc_stage_value(v, n, x);
          if (n > 0 && w < prev) mono = false;
          prev = w;
        }
        Rat recon = eval_lsc(back, Point::at(x), back_budget);
        row["v"] = rat_to_json(orig);
        row["stage_last"] = rat_to_json(prev);
        row["reconstructed"] = rat_to_json(recon);
        bool ok = mono && prev <= orig && recon <= orig;
        row["verdict"] = ok ? "pass" : "fail";
        t.check(ok);
      } catch (const Error& e) {
        if (!e.budget()) throw;
        row["verdict"] = "indeterminate";
        row["error"] = e.what();
        ++t.indeterminate;
      }
      rows.push_back(std::move(row));
    }
    report["entries"] = std::move(rows);
    return finish(report, t, o);
  }

  ContinuousCode phi = continuous_from_json(doc);
  report["direction"] = "continuous->borel-preimages->continuous";
  BorelFunctionCode pre = continuous_to_borel(phi, o.budget);
  ContinuousCode back = borel_to_continuous(pre);
  Rat eps = Rat::pow2(-o.precision);
  report["eps"] = rat_to_json(eps);
  PointSampler sampler = default_sampler(phi.domain());
  int prec = static_cast<int>(o.precision);

  json rows = json::array();
  for (std::size_t i = 0; i < o.samples; ++i) {
    CodePoint x = sampler(rng);
    json row{{"x", point_json(phi.domain(), x)}};
    try {
      Point y1 = eval_continuous(phi, Point::at(x), eps, o.budget);
      Point y2 = eval_continuous(back, Point::at(x), eps, o.budget);
      // approx(p-1) refines at min(eps, 2^-p) = eps, so finite clause lists suffice
      Rat gap = phi.codomain().dist(y1.approx(prec - 1), y2.approx(prec - 1));
      row["gap"] = rat_to_json(gap);
      bool ok = gap <= Rat::pow2(2 - o.precision);
      row["verdict"] = ok ? "pass" : "fail";
      t.check(ok);
    } catch (const Error& e) {
      if (!e.budget()) throw;
      row["verdict"] = "indeterminate";
      row["error"] = e.what();
      ++t.indeterminate;
    }
    rows.push_back(std::move(row));
  }
  report["entries"] = std::move(rows);
  return finish(report, t, o);
}

int run_kb(const Options& o, json& report, Tally& t) {
  if (o.tree_file.empty()) throw Error(ErrorCode::BadInput, "kb needs --tree");
  FiniteTree tree = tree_from_json(load_json_file(o.tree_file));
  std::vector<std::vector<std::uint32_t>> nodes(tree.nodes().begin(), tree.nodes().end());
  auto order = kb_sort(nodes);

  json rows = json::array();
  for (const auto& node : order) {
    json digits = json::array();
    for (auto d : node) digits.push_back(d);
    rows.push_back(std::move(digits));
  }
  report["order"] = std::move(rows);

  bool total = true;
  for (const auto& a : nodes)
    for (const auto& b : nodes) {
      int ab = kb_compare(a, b);
      if (kb_compare(b, a) != -ab) total = false;
      if ((ab == 0) != (a == b)) total = false;
    }
  for (std::size_t i = 0; i + 1 < order.size(); ++i)
    if (kb_compare(order[i], order[i + 1]) != -1) total = false;
  if (nodes.size() <= 50) {
    for (const auto& a : nodes)
      for (const auto& b : nodes)
        for (const auto& c : nodes)
          if (kb_compare(a, b) <= 0 && kb_compare(b, c) <= 0 && kb_compare(a, c) > 0)
            total = false;
  }
  report["total_order"] = total ? "pass" : "fail";
  t.check(total);
  return finish(report, t, o);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact fixed-point and variational toolkit"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&o](CLI::App* c) {
    c->add_option("--space", o.space, "cantor|baire|interval or a space JSON file");
    c->add_option("--map", o.map, "named map/potential/system or a code JSON file");
    c->add_option("--tree", o.tree_file, "finite tree JSON file");
    c->add_option("--injection", o.injection_file, "injection JSON file");
    c->add_option("--c", o.c_file, "threshold sequence JSON file");
    c->add_option("--precision", o.precision, "target exponent: bounds are 2^-precision")
        ->check(CLI::Range(1L, 64L));
    c->add_option("--samples", o.samples, "sample/grid count");
    c->add_option("--seed", o.seed, "seed for every random draw in the run");
    c->add_option("--budget", o.budget, "clause/step budget")->check(CLI::PositiveNumber);
    c->add_flag("--strict", o.strict, "indeterminate entries also fail the run");
    c->add_option("--out", o.out, "also write the report to this file");
    return c;
  };

  auto* solve = add_common(app.add_subcommand("solve-ultrametric",
                                              "nested-ball search for a fixed point"));
  auto* iterate = add_common(app.add_subcommand("iterate",
                                                "certified orbit of a named contraction"));
  auto* descent = add_common(app.add_subcommand("descent", "variational descent on a potential"));
  auto* envelope_cmd = add_common(app.add_subcommand("envelope",
                                                     "Lipschitz envelope table for a potential"));
  auto* gadget = add_common(app.add_subcommand("gadget",
                                               "build a fixed-point-free system from input data"));
  gadget->add_option("kind", o.gadget_kind, "cantor|baire|interval")->required();
  gadget->add_flag("--verify", o.verify, "sample-check the descent inequality");
  auto* verify = add_common(app.add_subcommand("verify", "sample-check a system"));
  auto* convert = add_common(app.add_subcommand("convert", "round-trip a code through conversions"));
  add_common(app.add_subcommand("kb", "Kleene-Brouwer linearization of a tree"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  json report = json::object();
  Tally t;
  std::string command;
  try {
    if (solve->parsed()) command = "solve-ultrametric";
    else if (iterate->parsed()) command = "iterate";
    else if (descent->parsed()) command = "descent";
    else if (envelope_cmd->parsed()) command = "envelope";
    else if (gadget->parsed()) command = "gadget";
    else if (verify->parsed()) command = "verify";
    else if (convert->parsed()) command = "convert";
    else command = "kb";
    report["command"] = command;
    report["seed"] = o.seed;

    if (command == "solve-ultrametric") return run_solve(o, report, t);
    if (command == "iterate") return run_iterate(o, report, t);
    if (command == "descent") return run_descent(o, report, t);
    if (command == "envelope") return run_envelope(o, report, t);
    if (command == "gadget") return run_gadget(o, report, t);
    if (command == "verify") return run_verify(o, report, t);
    if (command == "convert") return run_convert(o, report, t);
    return run_kb(o, report, t);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::BadInput) {
      std::cerr << e.what() << "\n";
      return 2;
    }
    report["error"] = e.what();
    if (e.budget()) ++t.indeterminate;
    else ++t.fail;
    return finish(report, t, o);
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
}
