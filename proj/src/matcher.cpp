#include "gpr/matcher.hpp"

#include <cassert>

namespace gpr {

int count_roots(const HostGraph& g) { return g.root_count(); }

SearchPlan build_plan(const Rule& rule) {
  if (rule.lhs.nodes.empty())
    throw ProgramError("rule '" + rule.name + "': cannot plan an empty left-hand side");

  SearchPlan plan;
  plan.rule = &rule;
  plan.fast = classify_fast(rule).fast;

  const std::size_t nn = rule.lhs.nodes.size();
  const std::size_t ne = rule.lhs.edges.size();
  std::vector<bool> node_bound(nn, false), edge_planned(ne, false);
  std::vector<int> bind_order;
  bind_order.reserve(nn);
  std::size_t qpos = 0;

  auto plan_edges_of = [&](int u) {
    int utag = rule.lhs.nodes[u].tag;
    // Out-edges first, then in-edges, each in declaration order. A loop edge is
    // handled once, in the out pass.
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t e = 0; e < ne; ++e) {
        if (edge_planned[e]) continue;
        const RuleEdge& re = rule.lhs.edges[e];
        bool from_is_src = pass == 0;
        if ((pass == 0 && re.src_tag != utag) || (pass == 1 && re.tgt_tag != utag)) continue;
        int other = rule.lhs.index_of(pass == 0 ? re.tgt_tag : re.src_tag);
        Probe p;
        p.lhs_edge = static_cast<int>(e);
        p.from = u;
        p.from_is_src = from_is_src;
        p.either = re.either;
        if (node_bound[other]) {
          p.kind = Probe::Kind::check_closing;
        } else {
          p.kind = Probe::Kind::extend;
          p.lhs_node = other;
          node_bound[other] = true;
          bind_order.push_back(other);
        }
        edge_planned[e] = true;
        plan.probes.push_back(p);
      }
    }
  };

  auto anchor = [&](int idx, bool from_roots) {
    Probe p;
    p.kind = from_roots ? Probe::Kind::pick_root : Probe::Kind::pick_node;
    p.lhs_node = idx;
    plan.probes.push_back(p);
    node_bound[idx] = true;
    bind_order.push_back(idx);
  };

  while (true) {
    // Process the BFS queue of bound nodes.
    while (qpos < bind_order.size()) plan_edges_of(bind_order[qpos++]);
    // New anchor for the next unreached component: rooted nodes take precedence.
    int next = -1;
    bool from_roots = false;
    for (std::size_t i = 0; i < nn; ++i)
      if (!node_bound[i] && rule.lhs.nodes[i].rooted) {
        next = static_cast<int>(i);
        from_roots = true;
        break;
      }
    if (next < 0)
      for (std::size_t i = 0; i < nn; ++i)
        if (!node_bound[i]) {
          next = static_cast<int>(i);
          break;
        }
    if (next < 0) break;
    anchor(next, from_roots);
  }

  if (rule.deletes_nodes) plan.probes.push_back({Probe::Kind::final_dangling});
  if (rule.condition) plan.probes.push_back({Probe::Kind::final_condition});
  return plan;
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

struct Frame {
  NodeId ncur = kNoNode;  // pick cursor
  EdgeId ecur = kNoEdge;  // extend/closing cursor
  int phase = 0;          // 0 = out-list, 1 = in-list (either-direction edges)
  bool entered = false;
  // Bindings recorded by this frame, undone on backtrack.
  NodeId bound_node = kNoNode;
  EdgeId bound_edge = kNoEdge;
  int var_bound = -1;
  int evar_bound = -1;
};

struct Workspace {
  std::vector<Frame> frames;
  std::vector<NodeId> node_img;
  std::vector<EdgeId> edge_img;
  std::vector<char> edge_rev;
  std::vector<std::optional<Label>> bindings;
  std::vector<NodeMark> nmark;
  std::vector<EdgeMark> emark;
};

thread_local Workspace tls_ws;

}  // namespace

std::optional<MatchAssignment> find_match(HostGraph& g, const SearchPlan& plan,
                                          std::uint64_t* probes_out) {
  const Rule& rule = *plan.rule;
  Workspace& ws = tls_ws;
  ws.frames.assign(plan.probes.size(), Frame{});
  ws.node_img.assign(rule.lhs.nodes.size(), kNoNode);
  ws.edge_img.assign(rule.lhs.edges.size(), kNoEdge);
  ws.edge_rev.assign(rule.lhs.edges.size(), 0);
  ws.bindings.assign(rule.params.size(), std::nullopt);
  ws.nmark.assign(rule.lhs.nodes.size(), NodeMark::none);
  ws.emark.assign(rule.lhs.edges.size(), EdgeMark::none);
  std::uint64_t probes = 0;

  auto try_node = [&](int lhs_idx, NodeId v, Frame& f) -> bool {
    ++probes;
    const RuleNode& rn = rule.lhs.nodes[lhs_idx];
    const Rule::LhsNodeInfo& info = rule.lhs_info[lhs_idx];
    if (g.node_matched(v)) return false;
    if (g.rooted(v) != rn.rooted) return false;
    if (!mark_matches(rn.mark, g.node_mark(v))) return false;
    int in = g.indegree(v), out = g.outdegree(v);
    if (info.exact_degrees) {
      // Deleted node with all incident LHS edges directed: the host degrees must
      // match exactly or the dangling condition would fail later. O(1) reject.
      if (in != info.min_in || out != info.min_out) return false;
    } else {
      if (in < info.min_in || out < info.min_out) return false;
      if (in + out < info.min_in + info.min_out + info.either_count) return false;
    }
    for (auto [op, k] : info.in_checks)
      if (!cmp(in, op, k)) return false;
    for (auto [op, k] : info.out_checks)
      if (!cmp(out, op, k)) return false;
    if (rn.label.is_var()) {
      auto& b = ws.bindings[rn.label.var];
      if (b) {
        if (*b != g.node_label(v)) return false;
      } else {
        b = g.node_label(v);
        f.var_bound = rn.label.var;
      }
    } else if (g.node_label(v) != rn.label.constant) {
      return false;
    }
    ws.node_img[lhs_idx] = v;
    ws.nmark[lhs_idx] = g.node_mark(v);
    g.set_node_matched(v, true);
    f.bound_node = v;
    return true;
  };

  auto try_edge = [&](const Probe& p, EdgeId h, bool reversed, Frame& f) -> bool {
    ++probes;
    const RuleEdge& re = rule.lhs.edges[p.lhs_edge];
    if (g.edge_matched(h)) return false;
    if (!mark_matches(re.mark, g.edge_mark(h))) return false;
    int evar = -1;
    if (re.label.is_var()) {
      auto& b = ws.bindings[re.label.var];
      if (b) {
        if (*b != g.edge_label(h)) return false;
      } else {
        b = g.edge_label(h);
        evar = re.label.var;
      }
    } else if (g.edge_label(h) != re.label.constant) {
      return false;
    }
    // The far endpoint is the target when we scanned an out-list, the source when
    // we scanned an in-list; (from_is_src != reversed) identifies the out case.
    NodeId far = p.from_is_src != reversed ? g.target(h) : g.source(h);
    bool ok;
    if (p.kind == Probe::Kind::extend) {
      ok = try_node(p.lhs_node, far, f);
    } else {
      int other = rule.lhs.index_of(p.from_is_src ? re.tgt_tag : re.src_tag);
      ok = far == ws.node_img[other];
    }
    if (!ok) {
      if (evar >= 0) ws.bindings[evar].reset();
      return false;
    }
    ws.edge_img[p.lhs_edge] = h;
    ws.edge_rev[p.lhs_edge] = reversed;
    ws.emark[p.lhs_edge] = g.edge_mark(h);
    g.set_edge_matched(h, true);
    f.bound_edge = h;
    f.evar_bound = evar;
    return true;
  };

  auto unbind = [&](Frame& f) {
    if (f.bound_edge != kNoEdge) {
      g.set_edge_matched(f.bound_edge, false);
      f.bound_edge = kNoEdge;
    }
    if (f.bound_node != kNoNode) {
      g.set_node_matched(f.bound_node, false);
      f.bound_node = kNoNode;
    }
    if (f.var_bound >= 0) {
      ws.bindings[f.var_bound].reset();
      f.var_bound = -1;
    }
    if (f.evar_bound >= 0) {
      ws.bindings[f.evar_bound].reset();
      f.evar_bound = -1;
    }
  };

  // Advances one probe to its next accepted candidate.
  auto advance = [&](const Probe& p, Frame& f) -> bool {
    switch (p.kind) {
      case Probe::Kind::pick_root:
      case Probe::Kind::pick_node: {
        bool roots = p.kind == Probe::Kind::pick_root;
        while (true) {
          std::optional<NodeId> cur;
          if (!f.entered) {
            f.entered = true;
            cur = roots ? g.first_root_node() : g.first_host_node();
          } else {
            cur = roots ? g.next_root_node(f.ncur) : g.next_host_node(f.ncur);
          }
          if (!cur) return false;
          f.ncur = *cur;
          if (try_node(p.lhs_node, f.ncur, f)) return true;
        }
      }
      case Probe::Kind::extend:
      case Probe::Kind::check_closing: {
        NodeId F = ws.node_img[p.from];
        int max_phase = p.either ? 1 : 0;
        while (f.phase <= max_phase) {
          // For directed edges the single scanned list is chosen by which endpoint
          // is bound; for either-direction edges phase 0 = out-list, 1 = in-list.
          bool scan_out = p.either ? f.phase == 0 : p.from_is_src;
          std::optional<EdgeId> cur;
          if (!f.entered) {
            f.entered = true;
            cur = scan_out ? g.first_out_edge(F) : g.first_in_edge(F);
          } else {
            cur = scan_out ? g.next_out_edge(f.ecur) : g.next_in_edge(f.ecur);
          }
          if (!cur) {
            ++f.phase;
            f.entered = false;
            continue;
          }
          f.ecur = *cur;
          // reversed == host edge runs img(tgt_tag) -> img(src_tag).
          bool reversed = p.either ? (scan_out ? !p.from_is_src : p.from_is_src) : false;
          if (try_edge(p, f.ecur, reversed, f)) return true;
        }
        return false;
      }
      case Probe::Kind::final_dangling: {
        if (f.entered) {
          f.entered = false;
          return false;
        }
        f.entered = true;
        ++probes;
        MatchAssignment tmp;  // shallow view for the check
        tmp.node_img = ws.node_img;
        tmp.edge_img = ws.edge_img;
        return check_dangling(g, rule, tmp);
      }
      case Probe::Kind::final_condition: {
        if (f.entered) {
          f.entered = false;
          return false;
        }
        f.entered = true;
        ++probes;
        MatchAssignment tmp;
        tmp.node_img = ws.node_img;
        tmp.edge_img = ws.edge_img;
        tmp.bindings.assign(ws.bindings.begin(), ws.bindings.end());
        return eval_condition(g, rule.condition.get(), rule, tmp);
      }
    }
    return false;
  };

  std::size_t i = 0;
  std::optional<MatchAssignment> result;
  while (true) {
    Frame& f = ws.frames[i];
    if (advance(plan.probes[i], f)) {
      if (++i == plan.probes.size()) {
        MatchAssignment m;
        m.node_img = ws.node_img;
        m.edge_img = ws.edge_img;
        m.edge_reversed.assign(ws.edge_rev.begin(), ws.edge_rev.end());
        m.bindings.assign(ws.bindings.begin(), ws.bindings.end());
        m.node_mark_bind = ws.nmark;
        m.edge_mark_bind = ws.emark;
        result = std::move(m);
        break;
      }
    } else {
      ws.frames[i] = Frame{};
      if (i == 0) break;
      --i;
      unbind(ws.frames[i]);
    }
  }

  // Matched flags must be clear when we return, success or not.
  for (Frame& f : ws.frames) unbind(f);
  if (probes_out) *probes_out += probes;
  return result;
}

}  // namespace gpr
