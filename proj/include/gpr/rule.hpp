#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gpr/host_graph.hpp"
#include "gpr/label.hpp"

namespace gpr {

// Error for everything that makes a program/rule text meaningless (as opposed to
// unparseable): bad interface structure, undeclared variables, misplaced break, ...
struct ProgramError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Mark patterns extend concrete marks with `any`, which matches every concrete
// mark but never `none`.
enum class NodeMarkPat : std::uint8_t { none = 0, red, green, blue, grey, any };
enum class EdgeMarkPat : std::uint8_t { none = 0, red, green, blue, dashed, any };

bool mark_matches(NodeMarkPat pat, NodeMark m);
bool mark_matches(EdgeMarkPat pat, EdgeMark m);

// A rule label is either a whole-label variable (index into Rule::params) or a
// constant label.
struct LabelExpr {
  int var = -1;
  Label constant;
  bool is_var() const { return var >= 0; }
  static LabelExpr variable(int v) {
    LabelExpr e;
    e.var = v;
    return e;
  }
  static LabelExpr constant_label(Label l) {
    LabelExpr e;
    e.constant = std::move(l);
    return e;
  }
};

// Rule-graph nodes are named by integer tags (their ids in the rule text). A tag
// present in both sides denotes an interface node that survives the application;
// LHS-only tags are deleted, RHS-only tags created.
struct RuleNode {
  int tag = 0;
  LabelExpr label;
  NodeMarkPat mark = NodeMarkPat::none;
  bool rooted = false;
};

struct RuleEdge {
  int id = 0;  // side-local handle from the text; no cross-side meaning
  int src_tag = 0, tgt_tag = 0;
  LabelExpr label;
  EdgeMarkPat mark = EdgeMarkPat::none;
  bool either = false;  // match in either direction (written `(B)` in rule text)
};

struct RuleGraph {
  std::vector<RuleNode> nodes;
  std::vector<RuleEdge> edges;
  const RuleNode* find(int tag) const;
  int index_of(int tag) const;  // -1 if absent
};

enum class CmpOp : std::uint8_t { eq, ne, lt, le, gt, ge };

// Application condition AST: degree comparisons, edge tests, not, and.
struct Condition {
  enum class Kind : std::uint8_t { indeg, outdeg, edge, neg, conj };
  Kind kind;
  int tag = 0, tag2 = 0;  // degree: tag; edge: tag -> tag2
  CmpOp op = CmpOp::eq;
  Integer k = 0;
  std::unique_ptr<Condition> a, b;
};

// Matched-flag-backed injective assignment of one rule's LHS into a host graph.
// Vectors are indexed by position in Rule::lhs.nodes / Rule::lhs.edges.
struct MatchAssignment {
  std::vector<NodeId> node_img;
  std::vector<EdgeId> edge_img;
  std::vector<bool> edge_reversed;  // true when an either-direction edge matched tgt->src
  std::vector<std::optional<Label>> bindings;        // per rule parameter
  std::vector<NodeMark> node_mark_bind;              // concrete mark seen per LHS node
  std::vector<EdgeMark> edge_mark_bind;              // concrete mark seen per LHS edge
};

struct Rule {
  std::string name;
  std::vector<std::string> params;  // all of type list
  RuleGraph lhs, rhs;
  std::unique_ptr<Condition> condition;

  // Derived data, filled in by validate_rule().
  struct LhsNodeInfo {
    bool deleted = false;          // tag absent from RHS
    int min_in = 0, min_out = 0;   // directed incident LHS edge counts
    int either_count = 0;          // incident either-direction edges
    bool exact_degrees = false;    // deleted and no either edges: degrees must equal mins
    // Degree bounds harvested from positive condition conjuncts on this tag.
    std::vector<std::pair<CmpOp, Integer>> in_checks, out_checks;
  };
  std::vector<LhsNodeInfo> lhs_info;       // parallel to lhs.nodes
  std::vector<int> interface_tags;         // tags present on both sides
  std::vector<int> created_rhs_nodes;      // indices into rhs.nodes
  std::vector<int> rhs_edge_lhs_pair;      // per rhs edge: paired LHS either-edge index or -1
  bool deletes_nodes = false;

  int param_index(const std::string& name) const;
};

// Checks structural soundness, computes the derived fields above, and rejects:
// empty LHS, duplicate tags within a side, RHS-only variables, `any` marks on
// created items or on interface items whose LHS counterpart is not `any`, RHS
// either-edges without a unique LHS partner between the same tags, condition tags
// not present in the LHS, and repeated parameter names.
void validate_rule(Rule& rule);

// True iff deleting the images of LHS-only nodes leaves no incident host edges
// behind once all matched edge images are removed.
bool check_dangling(const HostGraph& g, const Rule& rule, const MatchAssignment& m);

// Evaluates `cond` (may be null = true) under the assignment.
bool eval_condition(const HostGraph& g, const Condition* cond, const Rule& rule,
                    const MatchAssignment& m);

// Applies the rule at a complete, dangling-safe match: deletes all matched edge
// images, then LHS-only node images, relabels/re-marks/re-roots interface nodes,
// creates RHS-only nodes and all RHS edges. Edge deletion precedes node deletion.
void apply_at(HostGraph& g, const Rule& rule, const MatchAssignment& m);

// Instantiates a label expression under a match's variable bindings.
Label instantiate(const LabelExpr& expr, const MatchAssignment& m);

// Fast-rule classification: (1) every LHS node is undirectedly reachable from some
// LHS root, (2) no variable occurs twice within the LHS or twice within the RHS,
// (3) the condition contains no edge predicate.
struct FastReport {
  bool fast = true;
  std::vector<std::string> reasons;  // empty iff fast
};
FastReport classify_fast(const Rule& rule);

}  // namespace gpr
