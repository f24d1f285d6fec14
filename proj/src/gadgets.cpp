#include "caristi/gadgets.hpp"

#include <algorithm>

#include "caristi/errors.hpp"

namespace caristi {

FiniteTree::FiniteTree(std::vector<TreeNode> input_nodes) {
  set_.insert(TreeNode{});
  for (auto& node : input_nodes)
    for (std::size_t len = 1; len <= node.size(); ++len)
      set_.insert(TreeNode(node.begin(), node.begin() + len));
  sorted_.assign(set_.begin(), set_.end());
}

bool FiniteTree::contains(const TreeNode& node) const { return set_.count(node) > 0; }

std::size_t FiniteTree::depth() const {
  std::size_t d = 0;
  for (const auto& n : sorted_) d = std::max(d, n.size());
  return d;
}

bool FiniteTree::has_node_of_length(std::size_t len) const {
  for (const auto& n : sorted_)
    if (n.size() == len) return true;
  return false;
}

std::uint32_t FiniteTree::max_digit() const {
  std::uint32_t m = 0;
  for (const auto& n : sorted_)
    for (auto d : n) m = std::max(m, d);
  return m;
}

TreeNode zero_interleave(const TreeNode& s) {
  TreeNode out;
  out.reserve(2 * s.size());
  for (auto d : s) {
    out.push_back(0);
    out.push_back(d);
  }
  return out;
}

namespace {

bool is_prefix(const TreeNode& p, const TreeNode& whole) {
  return p.size() <= whole.size() && std::equal(p.begin(), p.end(), whole.begin());
}

TreeNode padded_prefix(const Stem& x, std::size_t len) {
  TreeNode p(x.digits.begin(), x.digits.begin() + std::min(len, x.digits.size()));
  p.resize(len, 0);
  return p;
}

}  // namespace

CantorGadget::CantorGadget(FiniteTree tree)
    : tree_(std::move(tree)), space_(SpaceCode::cantor()) {
  if (tree_.max_digit() > 1)
    throw Error(ErrorCode::BadInput, "binary tree nodes must use digits 0 and 1");

  for (const auto& node : tree_.nodes()) {
    TreeNode child = node;
    child.push_back(0);
    bool leaf = !tree_.contains(child);
    child.back() = 1;
    leaf = leaf && !tree_.contains(child);
    if (leaf) {
      leaves_.push_back(node);
      interleaved_leaves_[zero_interleave(node)] = node;
    }
  }

  // minimal cylinders that leave the interleaved tree: extend a proper prefix
  // of some interleaved node by one digit so that no interleaved node of an
  // eligible length keeps it as a prefix
  std::set<TreeNode> escape_set;
  for (const auto& node : tree_.nodes()) {
    TreeNode t = zero_interleave(node);
    for (std::size_t len = std::max<std::size_t>(node.size(), 1); len <= t.size(); ++len) {
      TreeNode tau(t.begin(), t.begin() + (len - 1));
      tau.push_back(0);
      for (std::uint32_t b = 0; b < 2; ++b) {
        tau.back() = b;
        bool inside = false;
        for (const auto& other : tree_.nodes())
          if (other.size() <= tau.size() && is_prefix(tau, zero_interleave(other))) {
            inside = true;
            break;
          }
        if (!inside) escape_set.insert(tau);
      }
    }
  }
  escapes_.assign(escape_set.begin(), escape_set.end());
}

std::vector<std::size_t> CantorGadget::avoid_set(const TreeNode& leaf) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < leaf.size(); ++i) {
    TreeNode flipped(leaf.begin(), leaf.begin() + i);
    flipped.push_back(1 - leaf[i]);
    bool extended = false;
    for (const auto& node : tree_.nodes())
      if (node.size() == leaf.size() + 1 && is_prefix(flipped, node)) {
        extended = true;
        break;
      }
    if (!extended) out.push_back(i);
  }
  return out;
}

bool CantorGadget::supported(const TreeNode& leaf) const {
  return tree_.has_node_of_length(leaf.size() + 1);
}

std::size_t CantorGadget::pivot(const TreeNode& leaf) const {
  auto avoid = avoid_set(leaf);
  for (std::size_t i = leaf.size(); i-- > 0;)
    if (std::find(avoid.begin(), avoid.end(), i) == avoid.end()) return i;
  throw Error(ErrorCode::TreeTooShallow, "no node one level deeper than this leaf");
}

TreeNode CantorGadget::leaf_after(const TreeNode& leaf) const {
  std::size_t i = pivot(leaf);
  TreeNode target(leaf.begin(), leaf.begin() + i);
  target.push_back(1 - leaf[i]);
  for (const auto& cand : leaves_)  // lex order
    if (cand.size() > leaf.size() && is_prefix(target, cand)) return cand;
  throw Error(ErrorCode::TreeTooShallow, "no deeper leaf past the pivot flip");
}

const TreeNode& CantorGadget::first_leaf() const {
  if (leaves_.empty()) throw Error(ErrorCode::TreeTooShallow, "tree has no leaves");
  return leaves_.front();
}

CantorGadget::Classified CantorGadget::classify(const Stem& x) const {
  std::size_t bound = 2 * tree_.depth() + 2;
  for (std::size_t k = 0; k <= bound; ++k) {
    TreeNode p = padded_prefix(x, k);
    auto it = interleaved_leaves_.find(p);
    if (it != interleaved_leaves_.end()) return {false, it->second};
    if (std::binary_search(escapes_.begin(), escapes_.end(), p)) return {true, p};
  }
  throw Error(ErrorCode::TreeTooShallow, "classification walk exhausted");
}

Rat CantorGadget::v_exact(const Stem& x) const {
  auto c = classify(x);
  if (c.escape) return Rat(3);
  Rat v(2);
  for (auto i : avoid_set(c.cell)) v -= Rat::pow2(-2 * static_cast<long>(i));
  return v;
}

CodePoint CantorGadget::f_exact(const Stem& x) const {
  auto c = classify(x);
  if (c.escape) return CodePoint::stem(zero_interleave(first_leaf()));
  return CodePoint::stem(zero_interleave(leaf_after(c.cell)));
}

namespace {

Rat cylinder_radius(std::size_t prefix_len) {
  return Rat::pow2(1 - static_cast<long>(prefix_len));
}

}  // namespace

LscCode CantorGadget::v_code() const {
  std::vector<LscClause> cs;
  for (const auto& leaf : leaves_) {
    Rat v(2);
    for (auto i : avoid_set(leaf)) v -= Rat::pow2(-2 * static_cast<long>(i));
    cs.push_back({CodePoint::stem(zero_interleave(leaf)), cylinder_radius(2 * leaf.size()), v});
  }
  for (const auto& tau : escapes_)
    cs.push_back({CodePoint::stem(tau), cylinder_radius(tau.size()), Rat(3)});
  return LscCode(space_, std::move(cs), true);
}

ContinuousCode CantorGadget::f_code() const {
  std::vector<ContClause> cs;
  for (const auto& leaf : leaves_) {
    if (!supported(leaf)) continue;
    cs.push_back({CodePoint::stem(zero_interleave(leaf)), cylinder_radius(2 * leaf.size()),
                  CodePoint::stem(zero_interleave(leaf_after(leaf))), Rat(0)});
  }
  if (!escapes_.empty()) {
    CodePoint eta = CodePoint::stem(zero_interleave(first_leaf()));
    for (const auto& tau : escapes_)
      cs.push_back({CodePoint::stem(tau), cylinder_radius(tau.size()), eta, Rat(0)});
  }
  return ContinuousCode(space_, space_, std::move(cs));
}

PointSampler CantorGadget::skeleton_sampler() const {
  std::vector<TreeNode> cells;
  for (const auto& leaf : leaves_)
    if (supported(leaf)) cells.push_back(zero_interleave(leaf));
  cells.insert(cells.end(), escapes_.begin(), escapes_.end());
  if (cells.empty())
    throw Error(ErrorCode::TreeTooShallow, "no cylinder admits the map");
  return [cells](SampleRng& rng) {
    TreeNode digits = cells[rng.below(cells.size())];
    std::size_t extra = rng.below(4);
    for (std::size_t j = 0; j < extra; ++j) digits.push_back(static_cast<std::uint32_t>(rng.coin()));
    return CodePoint::stem(std::move(digits));
  };
}

CaristiSystem CantorGadget::as_system() const {
  CaristiSystem sys;
  sys.space = space_;
  CantorGadget g = *this;
  sys.f.exact.stem_rule = [g](const Stem& s) { return g.f_exact(s).as_stem(); };
  sys.f.continuous = f_code();
  sys.v = v_code();
  sys.v_exact = [g](const CodePoint& x) { return g.v_exact(x.as_stem()); };
  return sys;
}

InjectionTable::InjectionTable(std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs)
    : pairs_(std::move(pairs)) {
  for (const auto& [m, n] : pairs_) {
    if (!by_arg_.emplace(m, n).second)
      throw Error(ErrorCode::BadInput, "duplicate argument in injection table");
    if (!by_value_.emplace(n, m).second)
      throw Error(ErrorCode::BadInput, "duplicate value in injection table");
    max_value_ = std::max(max_value_, n);
  }
  std::sort(pairs_.begin(), pairs_.end());
}

std::optional<std::uint64_t> InjectionTable::value(std::uint64_t m) const {
  auto it = by_arg_.find(m);
  if (it == by_arg_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::uint64_t> InjectionTable::preimage(std::uint64_t n) const {
  auto it = by_value_.find(n);
  if (it == by_value_.end()) return std::nullopt;
  return it->second;
}

BaireGadget::BaireGadget(InjectionTable h, std::size_t stem_bound)
    : h_(std::move(h)), stem_bound_(stem_bound), space_(SpaceCode::baire()) {
  if (stem_bound_ == 0) throw Error(ErrorCode::BadInput, "transcript bound must be positive");
}

bool BaireGadget::in_tree(const TreeNode& digits) const {
  std::size_t L = digits.size();
  for (std::size_t n = 0; n < L; ++n) {
    if (digits[n] == 0) continue;
    auto img = h_.value(digits[n] - 1);
    if (!img || *img != n) return false;  // digit claims an edge the injection lacks
  }
  for (std::size_t m = 0; m < L; ++m) {
    auto img = h_.value(m);
    if (img && *img < L && digits[*img] != m + 1) return false;  // edge below L not transcribed
  }
  return true;
}

TreeNode BaireGadget::longest_tree_prefix(const Stem& x) const {
  for (std::size_t L = 1; L <= stem_bound_; ++L)
    if (!in_tree(padded_prefix(x, L))) return padded_prefix(x, L - 1);
  throw Error(ErrorCode::TableExhausted, "transcript walk never left the tree",
              static_cast<long long>(stem_bound_));
}

TreeNode BaireGadget::successor(const TreeNode& sigma) const {
  if (!in_tree(sigma)) throw Error(ErrorCode::BadInput, "not a transcript prefix");
  std::uint64_t k = sigma.size();
  for (auto d : sigma) k = std::max(k, static_cast<std::uint64_t>(d));
  TreeNode out(static_cast<std::size_t>(k) + 1, 0);
  for (std::uint64_t n = 0; n <= k; ++n) {
    auto m = h_.preimage(n);
    if (m && *m <= k) out[static_cast<std::size_t>(n)] = static_cast<std::uint32_t>(*m) + 1;
  }
  if (!in_tree(out))
    throw Error(ErrorCode::BadInput, "successor escaped the tree");  // cannot happen
  return out;
}

Rat BaireGadget::v_exact(const Stem& x) const {
  TreeNode sigma = longest_tree_prefix(x);
  Rat v = Rat(1) + Rat::pow2(1 - static_cast<long>(sigma.size()));
  for (std::size_t n = 0; n < sigma.size(); ++n)
    if (sigma[n] > 0) v -= Rat::pow2(-static_cast<long>(n));
  return v;
}

CodePoint BaireGadget::f_exact(const Stem& x) const {
  return CodePoint::stem(successor(longest_tree_prefix(x)));
}

PointSampler BaireGadget::sampler(SampleOptions opts) const {
  BaireGadget g = *this;
  return [g, opts](SampleRng& rng) {
    for (int attempt = 0; attempt < 64; ++attempt) {
      CodePoint x = sample_code_point(g.space_, rng, opts);
      try {
        g.longest_tree_prefix(x.as_stem());
        return x;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::TableExhausted) throw;  // redraw full transcripts
      }
    }
    throw Error(ErrorCode::TableExhausted, "sampler kept drawing full transcripts");
  };
}

CaristiSystem BaireGadget::as_system() const {
  CaristiSystem sys;
  sys.space = space_;
  BaireGadget g = *this;
  sys.f.exact.stem_rule = [g](const Stem& s) { return g.f_exact(s).as_stem(); };
  sys.v = LscCode(space_, std::vector<LscClause>{}, false);  // no coded form; values may dip below 0
  sys.v_exact = [g](const CodePoint& x) { return g.v_exact(x.as_stem()); };
  return sys;
}

IntervalGadget::IntervalGadget(std::vector<Rat> thresholds)
    : c_(std::move(thresholds)), space_(SpaceCode::unit_interval()) {
  if (c_.size() < 2) throw Error(ErrorCode::BadInput, "need at least two thresholds");
  for (std::size_t i = 0; i + 1 < c_.size(); ++i)
    if (!(c_[i] < c_[i + 1]))
      throw Error(ErrorCode::BadInput, "thresholds must increase strictly");
  if (c_.front().sign() < 0 || Rat(1) < c_.back())
    throw Error(ErrorCode::BadInput, "thresholds must lie inside the unit interval");
}

void IntervalGadget::require_stage(std::size_t n) const {
  if (n + 1 >= c_.size())
    throw Error(ErrorCode::StageOutOfRange, "stage needs the next threshold",
                static_cast<long long>(n));
}

std::vector<Rat> IntervalGadget::ladder(std::size_t n) const {
  require_stage(n);
  std::vector<Rat> q{Rat(1)};
  for (std::size_t i = 0; i <= n; ++i)
    q.push_back(least_code_rational_between(c_[n], q.back()));
  q.push_back(c_[n]);
  return q;
}

PiecewiseLinear IntervalGadget::v_stage(std::size_t n) const {
  require_stage(n);
  std::vector<std::pair<Rat, Rat>> knots;
  if (c_[n].sign() > 0) knots.push_back({Rat(0), Rat(2)});
  knots.push_back({c_[n], Rat(2)});
  knots.push_back({c_[n + 1], c_[n + 1]});
  if (c_[n + 1] < Rat(1)) knots.push_back({Rat(1), Rat(1)});
  return PiecewiseLinear(std::move(knots));
}

PiecewiseLinear IntervalGadget::f_stage(std::size_t n) const {
  std::vector<Rat> q = ladder(n);  // strictly decreasing, q.front()=1, q.back()=c_n
  std::vector<std::pair<Rat, Rat>> knots;
  if (c_[n].sign() > 0) knots.push_back({Rat(0), Rat(1)});
  knots.push_back({c_[n], Rat(1)});
  // each rung maps onto the next lower rung: f(q_{i+1}) = q_{i+2}, f(q_i) = q_{i+1}
  for (std::size_t i = q.size() - 1; i-- > 0;) knots.push_back({q[i], q[i + 1]});
  return PiecewiseLinear(std::move(knots));
}

ContinuousCode IntervalGadget::v_stage_code(std::size_t n, int levels) const {
  return code_from_piecewise_linear(space_, SpaceCode::interval(Rat(0), Rat(2)), v_stage(n),
                                    levels);
}

ContinuousCode IntervalGadget::f_stage_code(std::size_t n, int levels) const {
  return code_from_piecewise_linear(space_, space_, f_stage(n), levels);
}

BaireCode IntervalGadget::f_code(int levels) const {
  std::vector<BaireCode> kids;
  for (std::size_t n = 0; n < stages(); ++n)
    kids.push_back(BaireCode::leaf(f_stage_code(n, levels)));
  return BaireCode::limit(std::move(kids));
}

DefectBounds path_defect_potential(const std::vector<FiniteTree>& trees, const Point& x,
                                   std::size_t depth) {
  DefectBounds out{Rat(0), Rat(0), {}};
  if (trees.empty()) return out;

  Stem digits;
  if (depth > 0) {
    long prec = static_cast<long>(pair64(depth - 1, trees.size() - 1)) + 1;
    digits = x.approx(prec).as_stem();  // agreement covers every inspected digit
  }

  for (std::size_t i = 0; i < trees.size(); ++i) {
    TreeNode proj(depth, 0);
    for (std::size_t n = 0; n < depth; ++n) {
      std::uint64_t idx = pair64(n, i);
      proj[n] = idx < digits.size() ? digits.digits[idx] : 0;
    }
    bool off = !trees[i].contains(proj);
    out.decided.push_back(off);
    Rat w = Rat::pow2(-static_cast<long>(i));
    if (off) out.lo += w;
    out.hi += w;
  }
  return out;
}

}  // namespace caristi
