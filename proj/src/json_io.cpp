#include "caristi/json_io.hpp"

#include <fstream>
#include <sstream>

namespace caristi {

namespace {

[[noreturn]] void bad(const std::string& path, const std::string& msg) {
  throw Error(ErrorCode::BadInput, path + ": " + msg);
}

const json& field(const json& j, const char* key, const std::string& path) {
  if (!j.is_object()) bad(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) bad(path, std::string("missing field \"") + key + "\"");
  return *it;
}

const json& need_array(const json& j, const std::string& path) {
  if (!j.is_array()) bad(path, "expected an array");
  return j;
}

std::uint64_t need_uint(const json& j, const std::string& path) {
  if (!j.is_number_unsigned()) bad(path, "expected a non-negative integer");
  return j.get<std::uint64_t>();
}

std::string idx(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

std::string key(const std::string& path, const char* k) { return path + "." + k; }

}  // namespace

json rat_to_json(const Rat& q) { return q.str(); }

Rat rat_from_json(const json& j, const std::string& path) {
  if (!j.is_string()) bad(path, "expected a rational as a \"p/q\" string");
  auto q = Rat::parse(j.get<std::string>());
  if (!q) bad(path, "not a rational: \"" + j.get<std::string>() + "\"");
  return *q;
}

json space_to_json(const SpaceCode& s) {
  json j = json::object();
  switch (s.kind()) {
    case SpaceKind::Cantor:
      j["kind"] = "cantor";
      break;
    case SpaceKind::Baire:
      j["kind"] = "baire";
      break;
    case SpaceKind::Interval:
      j["kind"] = "interval";
      j["lo"] = rat_to_json(s.lo());
      j["hi"] = rat_to_json(s.hi());
      break;
    case SpaceKind::FiniteUltrametric: {
      j["kind"] = "finite_ultrametric";
      j["points"] = s.labels();
      json rows = json::array();
      for (const auto& row : s.table()) {
        json r = json::array();
        for (const auto& d : row) r.push_back(rat_to_json(d));
        rows.push_back(std::move(r));
      }
      j["dist"] = std::move(rows);
      break;
    }
    case SpaceKind::Product:
      j["kind"] = "product";
      j["left"] = space_to_json(s.left());
      j["right"] = space_to_json(s.right());
      break;
  }
  return j;
}

SpaceCode space_from_json(const json& j, const std::string& path) {
  const json& k = field(j, "kind", path);
  if (!k.is_string()) bad(key(path, "kind"), "expected a string");
  std::string kind = k.get<std::string>();
  if (kind == "cantor") return SpaceCode::cantor();
  if (kind == "baire") return SpaceCode::baire();
  if (kind == "interval") {
    Rat lo(0), hi(1);
    if (j.contains("lo")) lo = rat_from_json(j.at("lo"), key(path, "lo"));
    if (j.contains("hi")) hi = rat_from_json(j.at("hi"), key(path, "hi"));
    if (!(lo < hi)) bad(path, "interval needs lo < hi");
    return SpaceCode::interval(lo, hi);
  }
  if (kind == "finite_ultrametric") {
    const json& pts = need_array(field(j, "points", path), key(path, "points"));
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (!pts[i].is_string()) bad(idx(key(path, "points"), i), "expected a label string");
      labels.push_back(pts[i].get<std::string>());
    }
    const json& dist = need_array(field(j, "dist", path), key(path, "dist"));
    if (dist.size() != labels.size()) bad(key(path, "dist"), "need one row per point");
    std::vector<std::vector<Rat>> table;
    for (std::size_t i = 0; i < dist.size(); ++i) {
      const json& row = need_array(dist[i], idx(key(path, "dist"), i));
      if (row.size() != labels.size()) bad(idx(key(path, "dist"), i), "need one entry per point");
      std::vector<Rat> r;
      for (std::size_t c = 0; c < row.size(); ++c)
        r.push_back(rat_from_json(row[c], idx(idx(key(path, "dist"), i), c)));
      table.push_back(std::move(r));
    }
    return SpaceCode::finite_ultrametric(std::move(labels), std::move(table));
  }
  if (kind == "product")
    return SpaceCode::product(space_from_json(field(j, "left", path), key(path, "left")),
                              space_from_json(field(j, "right", path), key(path, "right")));
  bad(key(path, "kind"), "unknown space kind \"" + kind + "\"");
}

json code_point_to_json(const CodePoint& p) {
  if (p.is_stem()) {
    json digits = json::array();
    for (auto d : p.as_stem().digits) digits.push_back(d);
    return digits;
  }
  if (p.is_rational()) return rat_to_json(p.as_rational());
  if (p.is_finite()) return p.as_finite();
  json parts = json::array();
  for (const auto& q : p.as_tuple()) parts.push_back(code_point_to_json(q));
  return json{{"tuple", std::move(parts)}};
}

CodePoint code_point_from_json(const json& j, const std::string& path) {
  if (j.is_string()) return CodePoint::rational(rat_from_json(j, path));
  if (j.is_number_unsigned()) return CodePoint::finite(j.get<std::uint64_t>());
  if (j.is_array()) {
    std::vector<std::uint32_t> digits;
    for (std::size_t i = 0; i < j.size(); ++i) {
      std::uint64_t d = need_uint(j[i], idx(path, i));
      if (d > 0xffffffffull) bad(idx(path, i), "digit out of range");
      digits.push_back(static_cast<std::uint32_t>(d));
    }
    return CodePoint::stem(std::move(digits));
  }
  if (j.is_object() && j.contains("tuple")) {
    const json& parts = need_array(j.at("tuple"), key(path, "tuple"));
    std::vector<CodePoint> t;
    for (std::size_t i = 0; i < parts.size(); ++i)
      t.push_back(code_point_from_json(parts[i], idx(key(path, "tuple"), i)));
    return CodePoint::tuple(std::move(t));
  }
  bad(path, "expected a code point (string, digit array, index, or {\"tuple\": ...})");
}

json continuous_to_json(const ContinuousCode& f) {
  auto n = f.finite_size();
  if (!n)
    throw Error(ErrorCode::BadInput, "generator-backed continuous code has no document form");
  json clauses = json::array();
  for (std::size_t i = 0; i < *n; ++i) {
    auto c = f.clause(i);
    if (!c) continue;
    clauses.push_back(json::array({code_point_to_json(c->a), rat_to_json(c->r),
                                   code_point_to_json(c->b), rat_to_json(c->q)}));
  }
  return json{{"domain", space_to_json(f.domain())},
              {"codomain", space_to_json(f.codomain())},
              {"clauses", std::move(clauses)}};
}

ContinuousCode continuous_from_json(const json& j, const std::string& path) {
  SpaceCode dom = space_from_json(field(j, "domain", path), key(path, "domain"));
  SpaceCode cod = space_from_json(field(j, "codomain", path), key(path, "codomain"));
  const json& rows = need_array(field(j, "clauses", path), key(path, "clauses"));
  std::vector<ContClause> clauses;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::string rp = idx(key(path, "clauses"), i);
    const json& row = need_array(rows[i], rp);
    if (row.size() != 4) bad(rp, "expected [a, \"r\", b, \"q\"]");
    clauses.push_back(ContClause{code_point_from_json(row[0], idx(rp, 0)),
                                 rat_from_json(row[1], idx(rp, 1)),
                                 code_point_from_json(row[2], idx(rp, 2)),
                                 rat_from_json(row[3], idx(rp, 3))});
  }
  return ContinuousCode(std::move(dom), std::move(cod), std::move(clauses));
}

json lsc_to_json(const LscCode& v) {
  auto n = v.finite_size();
  if (!n) throw Error(ErrorCode::BadInput, "generator-backed lsc code has no document form");
  json clauses = json::array();
  for (std::size_t i = 0; i < *n; ++i) {
    auto c = v.clause(i);
    if (!c) continue;
    clauses.push_back(
        json::array({code_point_to_json(c->a), rat_to_json(c->r), rat_to_json(c->q)}));
  }
  return json{{"domain", space_to_json(v.domain())},
              {"potential", v.potential()},
              {"clauses", std::move(clauses)}};
}

LscCode lsc_from_json(const json& j, const std::string& path) {
  SpaceCode dom = space_from_json(field(j, "domain", path), key(path, "domain"));
  const json& pot = field(j, "potential", path);
  if (!pot.is_boolean()) bad(key(path, "potential"), "expected a boolean");
  const json& rows = need_array(field(j, "clauses", path), key(path, "clauses"));
  std::vector<LscClause> clauses;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::string rp = idx(key(path, "clauses"), i);
    const json& row = need_array(rows[i], rp);
    if (row.size() != 3) bad(rp, "expected [a, \"r\", \"q\"]");
    clauses.push_back(LscClause{code_point_from_json(row[0], idx(rp, 0)),
                                rat_from_json(row[1], idx(rp, 1)),
                                rat_from_json(row[2], idx(rp, 2))});
  }
  return LscCode(std::move(dom), std::move(clauses), pot.get<bool>());
}

json borel_to_json(const BorelCode& c) {
  switch (c.op()) {
    case BorelCode::Op::Leaf:
      return json{{"ball", json::array({code_point_to_json(c.ball().center),
                                        rat_to_json(c.ball().radius)})}};
    case BorelCode::Op::Union:
    case BorelCode::Op::Inter: {
      json kids = json::array();
      for (const auto& k : c.children()) kids.push_back(borel_to_json(k));
      return json{{"op", c.op() == BorelCode::Op::Union ? "union" : "inter"},
                  {"children", std::move(kids)}};
    }
  }
  throw Error(ErrorCode::BadInput, "corrupt borel node");
}

BorelCode borel_from_json(const json& j, const std::string& path) {
  if (!j.is_object()) bad(path, "expected a borel node object");
  if (j.contains("ball")) {
    const json& b = need_array(j.at("ball"), key(path, "ball"));
    if (b.size() != 2) bad(key(path, "ball"), "expected [center, \"radius\"]");
    return BorelCode::leaf(Ball{code_point_from_json(b[0], idx(key(path, "ball"), 0)),
                                rat_from_json(b[1], idx(key(path, "ball"), 1))});
  }
  const json& op = field(j, "op", path);
  if (!op.is_string()) bad(key(path, "op"), "expected \"union\" or \"inter\"");
  const json& kids = need_array(field(j, "children", path), key(path, "children"));
  std::vector<BorelCode> children;
  for (std::size_t i = 0; i < kids.size(); ++i)
    children.push_back(borel_from_json(kids[i], idx(key(path, "children"), i)));
  std::string o = op.get<std::string>();
  if (o == "union") return BorelCode::uni(std::move(children));
  if (o == "inter") {
    if (children.empty()) bad(key(path, "children"), "intersection needs children");
    return BorelCode::inter(std::move(children));
  }
  bad(key(path, "op"), "unknown op \"" + o + "\"");
}

json baire_to_json(const BaireCode& x) {
  if (x.is_leaf()) return json{{"leaf", continuous_to_json(x.fn())}};
  auto w = x.presented_width();
  if (!w) throw Error(ErrorCode::BadInput, "generator-backed baire code has no document form");
  json kids = json::array();
  for (std::size_t i = 0; i < *w; ++i) kids.push_back(baire_to_json(x.child(i)));
  return json{{"limit", std::move(kids)}};
}

BaireCode baire_from_json(const json& j, const std::string& path) {
  if (!j.is_object()) bad(path, "expected a baire node object");
  if (j.contains("leaf"))
    return BaireCode::leaf(continuous_from_json(j.at("leaf"), key(path, "leaf")));
  const json& kids = need_array(field(j, "limit", path), key(path, "limit"));
  if (kids.empty()) bad(key(path, "limit"), "limit needs children");
  std::vector<BaireCode> children;
  for (std::size_t i = 0; i < kids.size(); ++i)
    children.push_back(baire_from_json(kids[i], idx(key(path, "limit"), i)));
  return BaireCode::limit(std::move(children));
}

json tree_to_json(const FiniteTree& t) {
  json nodes = json::array();
  for (const auto& node : t.nodes()) {
    json digits = json::array();
    for (auto d : node) digits.push_back(d);
    nodes.push_back(std::move(digits));
  }
  return json{{"tree", std::move(nodes)}};
}

FiniteTree tree_from_json(const json& j, const std::string& path) {
  const json& rows = need_array(field(j, "tree", path), key(path, "tree"));
  std::vector<TreeNode> nodes;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::string rp = idx(key(path, "tree"), i);
    const json& row = need_array(rows[i], rp);
    TreeNode node;
    for (std::size_t d = 0; d < row.size(); ++d) {
      std::uint64_t v = need_uint(row[d], idx(rp, d));
      if (v > 0xffffffffull) bad(idx(rp, d), "digit out of range");
      node.push_back(static_cast<std::uint32_t>(v));
    }
    nodes.push_back(std::move(node));
  }
  return FiniteTree(std::move(nodes));
}

json injection_to_json(const InjectionTable& h) {
  json pairs = json::array();
  for (const auto& [m, hm] : h.pairs()) pairs.push_back(json::array({m, hm}));
  return json{{"injection", std::move(pairs)}};
}

InjectionTable injection_from_json(const json& j, const std::string& path) {
  const json& rows = need_array(field(j, "injection", path), key(path, "injection"));
  std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::string rp = idx(key(path, "injection"), i);
    const json& row = need_array(rows[i], rp);
    if (row.size() != 2) bad(rp, "expected [m, h(m)]");
    pairs.push_back({need_uint(row[0], idx(rp, 0)), need_uint(row[1], idx(rp, 1))});
  }
  try {
    return InjectionTable(std::move(pairs));
  } catch (const Error& e) {
    bad(key(path, "injection"), e.what());
  }
}

json thresholds_to_json(const std::vector<Rat>& c) {
  json vals = json::array();
  for (const auto& q : c) vals.push_back(rat_to_json(q));
  return json{{"c", std::move(vals)}};
}

std::vector<Rat> thresholds_from_json(const json& j, const std::string& path) {
  const json& vals = need_array(field(j, "c", path), key(path, "c"));
  std::vector<Rat> c;
  for (std::size_t i = 0; i < vals.size(); ++i)
    c.push_back(rat_from_json(vals[i], idx(key(path, "c"), i)));
  return c;
}

json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::BadInput, origin + ": " + e.what());
  }
}

json load_json_file(const std::string& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error(ErrorCode::BadInput, "cannot read file: " + file);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json_text(buf.str(), file);
}

}  // namespace caristi
