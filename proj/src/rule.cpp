#include "gpr/rule.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace gpr {

bool mark_matches(NodeMarkPat pat, NodeMark m) {
  if (pat == NodeMarkPat::any) return m != NodeMark::none;
  return static_cast<std::uint8_t>(pat) == static_cast<std::uint8_t>(m);
}

bool mark_matches(EdgeMarkPat pat, EdgeMark m) {
  if (pat == EdgeMarkPat::any) return m != EdgeMark::none;
  return static_cast<std::uint8_t>(pat) == static_cast<std::uint8_t>(m);
}

const RuleNode* RuleGraph::find(int tag) const {
  for (const RuleNode& n : nodes)
    if (n.tag == tag) return &n;
  return nullptr;
}

int RuleGraph::index_of(int tag) const {
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i].tag == tag) return static_cast<int>(i);
  return -1;
}

int Rule::param_index(const std::string& n) const {
  for (std::size_t i = 0; i < params.size(); ++i)
    if (params[i] == n) return static_cast<int>(i);
  return -1;
}

namespace {

[[noreturn]] void bad(const std::string& rule, const std::string& msg) {
  throw ProgramError("rule '" + rule + "': " + msg);
}

void collect_condition_tags(const Condition* c, std::vector<int>& tags) {
  if (!c) return;
  switch (c->kind) {
    case Condition::Kind::indeg:
    case Condition::Kind::outdeg:
      tags.push_back(c->tag);
      break;
    case Condition::Kind::edge:
      tags.push_back(c->tag);
      tags.push_back(c->tag2);
      break;
    case Condition::Kind::neg:
      collect_condition_tags(c->a.get(), tags);
      break;
    case Condition::Kind::conj:
      collect_condition_tags(c->a.get(), tags);
      collect_condition_tags(c->b.get(), tags);
      break;
  }
}

bool condition_has_edge_pred(const Condition* c) {
  if (!c) return false;
  switch (c->kind) {
    case Condition::Kind::edge:
      return true;
    case Condition::Kind::neg:
      return condition_has_edge_pred(c->a.get());
    case Condition::Kind::conj:
      return condition_has_edge_pred(c->a.get()) || condition_has_edge_pred(c->b.get());
    default:
      return false;
  }
}

// Collects degree bounds from conjuncts not under negation; purely an early-reject
// hint — the full condition is still evaluated at the end of every match.
void harvest_degree_hints(const Condition* c, Rule& rule) {
  if (!c) return;
  switch (c->kind) {
    case Condition::Kind::indeg:
    case Condition::Kind::outdeg: {
      int idx = rule.lhs.index_of(c->tag);
      if (idx < 0) return;
      auto& info = rule.lhs_info[idx];
      (c->kind == Condition::Kind::indeg ? info.in_checks : info.out_checks)
          .push_back({c->op, c->k});
      break;
    }
    case Condition::Kind::conj:
      harvest_degree_hints(c->a.get(), rule);
      harvest_degree_hints(c->b.get(), rule);
      break;
    default:
      break;
  }
}

void check_label_vars(const Rule& rule, const LabelExpr& e, const char* where) {
  if (e.is_var() && (e.var < 0 || e.var >= static_cast<int>(rule.params.size())))
    bad(rule.name, std::string("unresolved variable in ") + where);
}

}  // namespace

void validate_rule(Rule& rule) {
  if (rule.lhs.nodes.empty()) bad(rule.name, "left-hand side has no nodes");
  {
    std::set<std::string> seen;
    for (const auto& p : rule.params)
      if (!seen.insert(p).second) bad(rule.name, "duplicate parameter '" + p + "'");
  }
  for (const RuleGraph* side : {&rule.lhs, &rule.rhs}) {
    std::set<int> tags;
    for (const RuleNode& n : side->nodes)
      if (!tags.insert(n.tag).second)
        bad(rule.name, "duplicate node id " + std::to_string(n.tag) + " within one side");
    for (const RuleEdge& e : side->edges) {
      if (!tags.count(e.src_tag) || !tags.count(e.tgt_tag))
        bad(rule.name, "edge references undeclared node id");
    }
  }

  rule.interface_tags.clear();
  for (const RuleNode& n : rule.lhs.nodes)
    if (rule.rhs.find(n.tag)) rule.interface_tags.push_back(n.tag);

  rule.lhs_info.assign(rule.lhs.nodes.size(), {});
  rule.deletes_nodes = false;
  for (std::size_t i = 0; i < rule.lhs.nodes.size(); ++i) {
    auto& info = rule.lhs_info[i];
    info.deleted = rule.rhs.find(rule.lhs.nodes[i].tag) == nullptr;
    if (info.deleted) rule.deletes_nodes = true;
  }
  for (const RuleEdge& e : rule.lhs.edges) {
    int si = rule.lhs.index_of(e.src_tag), ti = rule.lhs.index_of(e.tgt_tag);
    if (e.either) {
      ++rule.lhs_info[si].either_count;
      ++rule.lhs_info[ti].either_count;
    } else {
      ++rule.lhs_info[si].min_out;
      ++rule.lhs_info[ti].min_in;
    }
  }
  for (auto& info : rule.lhs_info)
    info.exact_degrees = info.deleted && info.either_count == 0;

  rule.created_rhs_nodes.clear();
  for (std::size_t i = 0; i < rule.rhs.nodes.size(); ++i) {
    const RuleNode& n = rule.rhs.nodes[i];
    if (rule.lhs.find(n.tag) == nullptr) {
      rule.created_rhs_nodes.push_back(static_cast<int>(i));
      if (n.mark == NodeMarkPat::any)
        bad(rule.name, "created node " + std::to_string(n.tag) + " carries the 'any' mark");
    } else if (n.mark == NodeMarkPat::any &&
               rule.lhs.find(n.tag)->mark != NodeMarkPat::any) {
      bad(rule.name, "interface node " + std::to_string(n.tag) +
                         " is 'any' in the rhs but not in the lhs");
    }
  }

  // Variables: LHS occurrences bind; RHS occurrences must be bound.
  std::vector<bool> bound(rule.params.size(), false);
  auto note_lhs = [&](const LabelExpr& e) {
    check_label_vars(rule, e, "lhs");
    if (e.is_var()) bound[e.var] = true;
  };
  for (const RuleNode& n : rule.lhs.nodes) note_lhs(n.label);
  for (const RuleEdge& e : rule.lhs.edges) note_lhs(e.label);
  auto note_rhs = [&](const LabelExpr& e, int tag) {
    check_label_vars(rule, e, "rhs");
    if (e.is_var() && !bound[e.var])
      bad(rule.name, "variable '" + rule.params[e.var] + "' (item " + std::to_string(tag) +
                         ") occurs only in the rhs");
  };
  for (const RuleNode& n : rule.rhs.nodes) note_rhs(n.label, n.tag);
  for (const RuleEdge& e : rule.rhs.edges) note_rhs(e.label, e.id);

  // Either-direction RHS edges take their host orientation from the unique LHS
  // either-edge between the same (unordered) tag pair.
  rule.rhs_edge_lhs_pair.assign(rule.rhs.edges.size(), -1);
  for (std::size_t i = 0; i < rule.rhs.edges.size(); ++i) {
    const RuleEdge& re = rule.rhs.edges[i];
    if (re.mark == EdgeMarkPat::any && !re.either)
      bad(rule.name, "rhs edge " + std::to_string(re.id) + " carries the 'any' mark");
    if (!re.either) continue;
    int found = -1;
    for (std::size_t j = 0; j < rule.lhs.edges.size(); ++j) {
      const RuleEdge& le = rule.lhs.edges[j];
      if (!le.either) continue;
      bool same = (le.src_tag == re.src_tag && le.tgt_tag == re.tgt_tag) ||
                  (le.src_tag == re.tgt_tag && le.tgt_tag == re.src_tag);
      if (!same) continue;
      if (found >= 0)
        bad(rule.name, "rhs either-direction edge " + std::to_string(re.id) +
                           " pairs with more than one lhs edge");
      found = static_cast<int>(j);
    }
    if (found < 0)
      bad(rule.name, "rhs either-direction edge " + std::to_string(re.id) +
                         " has no lhs either-direction partner between the same nodes");
    rule.rhs_edge_lhs_pair[i] = found;
  }

  std::vector<int> ctags;
  collect_condition_tags(rule.condition.get(), ctags);
  for (int t : ctags)
    if (rule.lhs.index_of(t) < 0)
      bad(rule.name, "condition references node id " + std::to_string(t) + " not in the lhs");
  harvest_degree_hints(rule.condition.get(), rule);
}

bool check_dangling(const HostGraph& g, const Rule& rule, const MatchAssignment& m) {
  // A deleted node's incident host edges must all be images of LHS edges. Count
  // matched incident edges (loops twice) and compare with the host degree sum.
  for (std::size_t i = 0; i < rule.lhs.nodes.size(); ++i) {
    if (!rule.lhs_info[i].deleted) continue;
    NodeId v = m.node_img[i];
    int incident = 0;
    for (std::size_t e = 0; e < rule.lhs.edges.size(); ++e) {
      EdgeId img = m.edge_img[e];
      if (g.source(img) == v) ++incident;
      if (g.target(img) == v) ++incident;
    }
    if (g.indegree(v) + g.outdegree(v) != incident) return false;
  }
  return true;
}

namespace {

bool cmp(Integer lhs, CmpOp op, Integer rhs) {
  switch (op) {
    case CmpOp::eq: return lhs == rhs;
    case CmpOp::ne: return lhs != rhs;
    case CmpOp::lt: return lhs < rhs;
    case CmpOp::le: return lhs <= rhs;
    case CmpOp::gt: return lhs > rhs;
    case CmpOp::ge: return lhs >= rhs;
  }
  return false;
}

}  // namespace

bool eval_condition(const HostGraph& g, const Condition* cond, const Rule& rule,
                    const MatchAssignment& m) {
  if (!cond) return true;
  switch (cond->kind) {
    case Condition::Kind::indeg:
      return cmp(g.indegree(m.node_img[rule.lhs.index_of(cond->tag)]), cond->op, cond->k);
    case Condition::Kind::outdeg:
      return cmp(g.outdegree(m.node_img[rule.lhs.index_of(cond->tag)]), cond->op, cond->k);
    case Condition::Kind::edge: {
      NodeId s = m.node_img[rule.lhs.index_of(cond->tag)];
      NodeId t = m.node_img[rule.lhs.index_of(cond->tag2)];
      for (auto e = g.first_out_edge(s); e; e = g.next_out_edge(*e))
        if (g.target(*e) == t) return true;
      return false;
    }
    case Condition::Kind::neg:
      return !eval_condition(g, cond->a.get(), rule, m);
    case Condition::Kind::conj:
      return eval_condition(g, cond->a.get(), rule, m) &&
             eval_condition(g, cond->b.get(), rule, m);
  }
  return false;
}

Label instantiate(const LabelExpr& expr, const MatchAssignment& m) {
  if (!expr.is_var()) return expr.constant;
  const auto& b = m.bindings[expr.var];
  if (!b) throw ProgramError("internal: unbound variable at instantiation");
  return *b;
}

void apply_at(HostGraph& g, const Rule& rule, const MatchAssignment& m) {
  // 1. Delete every matched edge image (edges strictly before nodes).
  for (EdgeId e : m.edge_img) g.delete_edge(e);

  // 2. Delete images of LHS-only nodes. The dangling condition has been checked;
  //    HostGraph::delete_node still guards against violations.
  for (std::size_t i = 0; i < rule.lhs.nodes.size(); ++i)
    if (rule.lhs_info[i].deleted) g.delete_node(m.node_img[i]);

  // 3. Relabel / re-mark / re-root interface nodes per their RHS counterparts.
  for (int tag : rule.interface_tags) {
    int li = rule.lhs.index_of(tag);
    const RuleNode& rn = *rule.rhs.find(tag);
    NodeId v = m.node_img[li];
    g.relabel_node(v, instantiate(rn.label, m));
    NodeMark nm = rn.mark == NodeMarkPat::any ? m.node_mark_bind[li]
                                              : static_cast<NodeMark>(rn.mark);
    if (g.node_mark(v) != nm) g.set_node_mark(v, nm);
    g.set_root(v, rn.rooted);
  }

  // 4. Create RHS-only nodes.
  std::map<int, NodeId> created;
  for (int ri : rule.created_rhs_nodes) {
    const RuleNode& rn = rule.rhs.nodes[ri];
    created[rn.tag] =
        g.add_node(instantiate(rn.label, m), static_cast<NodeMark>(rn.mark), rn.rooted);
  }

  // 5. Create all RHS edges in declaration order.
  auto host_of = [&](int tag) {
    auto it = created.find(tag);
    if (it != created.end()) return it->second;
    return m.node_img[rule.lhs.index_of(tag)];
  };
  for (std::size_t i = 0; i < rule.rhs.edges.size(); ++i) {
    const RuleEdge& re = rule.rhs.edges[i];
    NodeId s = host_of(re.src_tag), t = host_of(re.tgt_tag);
    int pair = rule.rhs_edge_lhs_pair[i];
    EdgeMark em;
    if (pair >= 0) {
      // Preserve the orientation the paired LHS edge actually matched with.
      bool written_same_way = rule.lhs.edges[pair].src_tag == re.src_tag;
      bool reversed = m.edge_reversed[pair];
      if (!written_same_way) reversed = !reversed;
      if (reversed) std::swap(s, t);
      em = re.mark == EdgeMarkPat::any ? m.edge_mark_bind[pair] : static_cast<EdgeMark>(re.mark);
    } else {
      em = static_cast<EdgeMark>(re.mark);
    }
    g.add_edge(s, t, instantiate(re.label, m), em);
  }
}

FastReport classify_fast(const Rule& rule) {
  FastReport rep;
  auto flag = [&](std::string r) {
    rep.fast = false;
    rep.reasons.push_back(std::move(r));
  };

  // (1) every LHS node undirectedly reachable from a root.
  std::vector<int> stack;
  std::vector<bool> seen(rule.lhs.nodes.size(), false);
  bool has_root = false;
  for (std::size_t i = 0; i < rule.lhs.nodes.size(); ++i) {
    if (rule.lhs.nodes[i].rooted) {
      has_root = true;
      if (!seen[i]) {
        seen[i] = true;
        stack.push_back(static_cast<int>(i));
      }
    }
  }
  if (!has_root) {
    flag("left-hand side has no root node");
  } else {
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      int utag = rule.lhs.nodes[u].tag;
      for (const RuleEdge& e : rule.lhs.edges) {
        int other = -1;
        if (e.src_tag == utag) other = rule.lhs.index_of(e.tgt_tag);
        else if (e.tgt_tag == utag) other = rule.lhs.index_of(e.src_tag);
        if (other >= 0 && !seen[other]) {
          seen[other] = true;
          stack.push_back(other);
        }
      }
    }
    for (std::size_t i = 0; i < rule.lhs.nodes.size(); ++i)
      if (!seen[i])
        flag("node " + std::to_string(rule.lhs.nodes[i].tag) +
             " is not undirectedly reachable from a root");
  }

  // (2) no repeated variables within a side.
  auto scan_side = [&](const RuleGraph& side, const char* name) {
    std::map<int, int> uses;
    for (const RuleNode& n : side.nodes)
      if (n.label.is_var()) ++uses[n.label.var];
    for (const RuleEdge& e : side.edges)
      if (e.label.is_var()) ++uses[e.label.var];
    for (auto [var, count] : uses)
      if (count > 1)
        flag("variable '" + rule.params[var] + "' occurs " + std::to_string(count) +
             " times in the " + name);
  };
  scan_side(rule.lhs, "lhs");
  scan_side(rule.rhs, "rhs");

  // (3) no edge predicate in the condition.
  if (condition_has_edge_pred(rule.condition.get()))
    flag("condition uses an edge predicate");

  return rep;
}

}  // namespace gpr
