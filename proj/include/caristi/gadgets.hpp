#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "caristi/piecewise_linear.hpp"
#include "caristi/solvers.hpp"

namespace caristi {

// tree nodes are raw digit strings: unlike canonical stems, trailing zeros
// are significant here
using TreeNode = std::vector<std::uint32_t>;

// finite prefix-closed set of digit strings; input nodes are closed under
// prefixes, deduplicated, and kept in lexicographic order
class FiniteTree {
 public:
  explicit FiniteTree(std::vector<TreeNode> input_nodes);

  bool contains(const TreeNode& node) const;
  std::size_t size() const { return sorted_.size(); }
  std::size_t depth() const;
  bool has_node_of_length(std::size_t len) const;
  std::uint32_t max_digit() const;
  const std::vector<TreeNode>& nodes() const { return sorted_; }

 private:
  std::set<TreeNode> set_;
  std::vector<TreeNode> sorted_;
};

// inserts a 0 before every digit: s(0) s(1) ... becomes 0 s(0) 0 s(1) ...
TreeNode zero_interleave(const TreeNode& s);

// fixed-point-free system on the binary-sequence space built from a finite
// binary tree: every point is classified by the leaf cylinder or escape
// cylinder it enters, the potential counts unreachable flips, and the map
// hops to the next deeper leaf
class CantorGadget {
 public:
  explicit CantorGadget(FiniteTree tree);

  const FiniteTree& tree() const { return tree_; }
  const std::vector<TreeNode>& leaves() const { return leaves_; }    // childless nodes, lex order
  const std::vector<TreeNode>& escapes() const { return escapes_; }  // minimal off-tree cylinders
  const SpaceCode& space() const { return space_; }

  // indices i < |leaf| whose flipped restriction has no one-level-deeper extension
  std::vector<std::size_t> avoid_set(const TreeNode& leaf) const;
  // a leaf is supported when the tree has a node one level deeper
  bool supported(const TreeNode& leaf) const;
  std::size_t pivot(const TreeNode& leaf) const;  // greatest avoidable index; TreeTooShallow if none
  TreeNode leaf_after(const TreeNode& leaf) const;  // first longer leaf past the pivot flip
  const TreeNode& first_leaf() const;

  struct Classified {
    bool escape = false;
    TreeNode cell;  // the leaf (not interleaved) or the escape prefix
  };
  Classified classify(const Stem& x) const;

  Rat v_exact(const Stem& x) const;
  CodePoint f_exact(const Stem& x) const;  // TreeTooShallow on unsupported leaf cylinders

  LscCode v_code() const;         // locally constant on the classifying cylinders
  ContinuousCode f_code() const;  // ditto; unsupported cylinders carry no clause

  // draws points from cylinders where the map is defined
  PointSampler skeleton_sampler() const;

  CaristiSystem as_system() const;

 private:
  FiniteTree tree_;
  SpaceCode space_;
  std::vector<TreeNode> leaves_;
  std::vector<TreeNode> escapes_;
  std::map<TreeNode, TreeNode> interleaved_leaves_;  // interleaved form -> leaf
};

// total injection on a finite set of naturals, given as argument/value pairs
class InjectionTable {
 public:
  explicit InjectionTable(std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs);

  std::optional<std::uint64_t> value(std::uint64_t m) const;
  std::optional<std::uint64_t> preimage(std::uint64_t n) const;
  std::size_t size() const { return by_arg_.size(); }
  std::uint64_t max_value() const { return max_value_; }
  const std::vector<std::pair<std::uint64_t, std::uint64_t>>& pairs() const { return pairs_; }

 private:
  std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs_;
  std::map<std::uint64_t, std::uint64_t> by_arg_;
  std::map<std::uint64_t, std::uint64_t> by_value_;
  std::uint64_t max_value_ = 0;
};

// fixed-point-free system on the natural-sequence space built from an
// injection: sequences partially transcribe the injection's graph (digit n
// holds m+1 when the injection sends m to n), the potential rewards
// transcribed entries, and the map extends the transcript
class BaireGadget {
 public:
  explicit BaireGadget(InjectionTable h, std::size_t stem_bound = 256);

  const InjectionTable& injection() const { return h_; }
  const SpaceCode& space() const { return space_; }
  std::size_t stem_bound() const { return stem_bound_; }

  bool in_tree(const TreeNode& digits) const;
  // longest transcript prefix of x; TableExhausted once the walk hits the bound
  TreeNode longest_tree_prefix(const Stem& x) const;
  TreeNode successor(const TreeNode& sigma) const;  // BadInput unless sigma is a transcript

  Rat v_exact(const Stem& x) const;
  CodePoint f_exact(const Stem& x) const;

  // draws points whose transcript walk terminates, redrawing otherwise
  PointSampler sampler(SampleOptions opts = {}) const;

  CaristiSystem as_system() const;

 private:
  InjectionTable h_;
  std::size_t stem_bound_;
  SpaceCode space_;
};

// staged staircase system on an interval threshold sequence: stage n walks a
// least-code ladder from 1 down to the n-th threshold, and the stage
// potentials increase pointwise toward the limit
class IntervalGadget {
 public:
  explicit IntervalGadget(std::vector<Rat> thresholds);  // strictly increasing inside [0,1]

  const std::vector<Rat>& thresholds() const { return c_; }
  const SpaceCode& space() const { return space_; }
  std::size_t stages() const { return c_.size() - 1; }

  std::vector<Rat> ladder(std::size_t n) const;  // 1 = q_0 > q_1 > ... > q_{n+2} = c_n
  PiecewiseLinear v_stage(std::size_t n) const;
  PiecewiseLinear f_stage(std::size_t n) const;
  ContinuousCode v_stage_code(std::size_t n, int levels = 16) const;
  ContinuousCode f_stage_code(std::size_t n, int levels = 16) const;
  BaireCode f_code(int levels = 16) const;  // limit of the stage maps

 private:
  void require_stage(std::size_t n) const;  // StageOutOfRange past stages()-1
  std::vector<Rat> c_;
  SpaceCode space_;
};

// interval bounds for the series sum_i 2^-i over projections of x that have
// verifiably left tree i within the inspected depth: a projection whose
// depth-long prefix is off the tree contributes exactly 2^-i, one still
// inside contributes anywhere in [0, 2^-i]
struct DefectBounds {
  Rat lo;
  Rat hi;
  std::vector<bool> decided;  // per tree
};

DefectBounds path_defect_potential(const std::vector<FiniteTree>& trees, const Point& x,
                                   std::size_t depth);

}  // namespace caristi
