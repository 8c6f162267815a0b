#include "gpr/host_graph.hpp"

#include <sstream>

namespace gpr {

std::string label_to_text(const Label& label) {
  if (label.empty()) return "empty";
  std::string out;
  for (std::size_t i = 0; i < label.size(); ++i) {
    if (i) out += ':';
    const Atom& a = label[i];
    if (std::holds_alternative<Integer>(a)) {
      out += std::to_string(std::get<Integer>(a));
    } else {
      out += '"';
      for (char c : std::get<std::string>(a)) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
      }
      out += '"';
    }
  }
  return out;
}

namespace {
[[noreturn]] void fail(GraphErrorKind k, const std::string& msg) { throw GraphError(k, msg); }
}  // namespace

HostGraph::Node& HostGraph::node_at(NodeId v) {
  if (!valid_node(v) || !nodes_[v].alive)
    fail(GraphErrorKind::unknown_item, "unknown node id " + std::to_string(v));
  return nodes_[v];
}
const HostGraph::Node& HostGraph::node_at(NodeId v) const {
  return const_cast<HostGraph*>(this)->node_at(v);
}
HostGraph::Edge& HostGraph::edge_at(EdgeId e) {
  if (!valid_edge(e) || !edges_[e].alive)
    fail(GraphErrorKind::unknown_item, "unknown edge id " + std::to_string(e));
  return edges_[e];
}
const HostGraph::Edge& HostGraph::edge_at(EdgeId e) const {
  return const_cast<HostGraph*>(this)->edge_at(e);
}

// ---- raw list surgery ----------------------------------------------------------

void HostGraph::link_node_at(NodeId v, NodeId prev, NodeId next) {
  Node& n = nodes_[v];
  n.prev_node = prev;
  n.next_node = next;
  (prev == kNoNode ? nodes_head_ : nodes_[prev].next_node) = v;
  (next == kNoNode ? nodes_tail_ : nodes_[next].prev_node) = v;
  ++node_count_;
}

void HostGraph::unlink_node(NodeId v) {
  Node& n = nodes_[v];
  (n.prev_node == kNoNode ? nodes_head_ : nodes_[n.prev_node].next_node) = n.next_node;
  (n.next_node == kNoNode ? nodes_tail_ : nodes_[n.next_node].prev_node) = n.prev_node;
  --node_count_;
}

void HostGraph::link_root_at(NodeId v, NodeId prev, NodeId next) {
  Node& n = nodes_[v];
  n.prev_root = prev;
  n.next_root = next;
  (prev == kNoNode ? roots_head_ : nodes_[prev].next_root) = v;
  (next == kNoNode ? roots_tail_ : nodes_[next].prev_root) = v;
  ++root_count_;
}

void HostGraph::unlink_root(NodeId v) {
  Node& n = nodes_[v];
  (n.prev_root == kNoNode ? roots_head_ : nodes_[n.prev_root].next_root) = n.next_root;
  (n.next_root == kNoNode ? roots_tail_ : nodes_[n.next_root].prev_root) = n.prev_root;
  --root_count_;
}

void HostGraph::link_edge_at(EdgeId e, EdgeId prev_out, EdgeId next_out, EdgeId prev_in,
                             EdgeId next_in) {
  Edge& ed = edges_[e];
  Node& s = nodes_[ed.src];
  Node& t = nodes_[ed.tgt];
  ed.prev_out = prev_out;
  ed.next_out = next_out;
  (prev_out == kNoEdge ? s.first_out : edges_[prev_out].next_out) = e;
  (next_out == kNoEdge ? s.last_out : edges_[next_out].prev_out) = e;
  ed.prev_in = prev_in;
  ed.next_in = next_in;
  (prev_in == kNoEdge ? t.first_in : edges_[prev_in].next_in) = e;
  (next_in == kNoEdge ? t.last_in : edges_[next_in].prev_in) = e;
  ++s.outdeg;
  ++t.indeg;
  ++edge_count_;
}

void HostGraph::unlink_edge(EdgeId e) {
  Edge& ed = edges_[e];
  Node& s = nodes_[ed.src];
  Node& t = nodes_[ed.tgt];
  (ed.prev_out == kNoEdge ? s.first_out : edges_[ed.prev_out].next_out) = ed.next_out;
  (ed.next_out == kNoEdge ? s.last_out : edges_[ed.next_out].prev_out) = ed.prev_out;
  (ed.prev_in == kNoEdge ? t.first_in : edges_[ed.prev_in].next_in) = ed.next_in;
  (ed.next_in == kNoEdge ? t.last_in : edges_[ed.next_in].prev_in) = ed.prev_in;
  --s.outdeg;
  --t.indeg;
  --edge_count_;
}

// ---- mutation ------------------------------------------------------------------

NodeId HostGraph::add_node(Label label, NodeMark mark, bool rooted) {
  NodeId v = static_cast<NodeId>(nodes_.size());
  Node n;
  n.label = std::move(label);
  n.mark = mark;
  n.rooted = rooted;
  nodes_.push_back(std::move(n));
  link_node_at(v, nodes_tail_, kNoNode);
  if (rooted) link_root_at(v, roots_tail_, kNoNode);
  if (logging()) undo_.push_back({Undo::Op::add_node, v});
  return v;
}

EdgeId HostGraph::add_edge(NodeId src, NodeId tgt, Label label, EdgeMark mark) {
  node_at(src);
  node_at(tgt);
  EdgeId e = static_cast<EdgeId>(edges_.size());
  Edge ed;
  ed.src = src;
  ed.tgt = tgt;
  ed.label = std::move(label);
  ed.mark = mark;
  edges_.push_back(std::move(ed));
  link_edge_at(e, nodes_[src].last_out, kNoEdge, nodes_[tgt].last_in, kNoEdge);
  if (logging()) undo_.push_back({Undo::Op::add_edge, e});
  return e;
}

void HostGraph::delete_node(NodeId v) {
  Node& n = node_at(v);
  if (n.indeg != 0 || n.outdeg != 0)
    fail(GraphErrorKind::dangling_violation,
         "delete_node(" + std::to_string(v) + "): incident edges remain");
  if (logging()) {
    Undo u{Undo::Op::del_node, v};
    u.a = n.prev_node;
    u.b = n.next_node;
    u.c = n.prev_root;
    u.d = n.next_root;
    undo_.push_back(std::move(u));
  }
  unlink_node(v);
  if (n.rooted) unlink_root(v);
  n.alive = false;
}

void HostGraph::delete_edge(EdgeId e) {
  Edge& ed = edge_at(e);
  if (logging()) {
    Undo u{Undo::Op::del_edge, e};
    u.a = ed.prev_out;
    u.b = ed.next_out;
    u.c = ed.prev_in;
    u.d = ed.next_in;
    undo_.push_back(std::move(u));
  }
  unlink_edge(e);
  ed.alive = false;
}

void HostGraph::relabel_node(NodeId v, Label label) {
  Node& n = node_at(v);
  if (logging()) {
    Undo u{Undo::Op::relabel_node, v};
    u.old_label = std::move(n.label);
    undo_.push_back(std::move(u));
  }
  n.label = std::move(label);
}

void HostGraph::relabel_edge(EdgeId e, Label label) {
  Edge& ed = edge_at(e);
  if (logging()) {
    Undo u{Undo::Op::relabel_edge, e};
    u.old_label = std::move(ed.label);
    undo_.push_back(std::move(u));
  }
  ed.label = std::move(label);
}

void HostGraph::set_node_mark(NodeId v, NodeMark m) {
  Node& n = node_at(v);
  if (logging()) {
    Undo u{Undo::Op::node_mark, v};
    u.old_mark = static_cast<std::uint8_t>(n.mark);
    undo_.push_back(std::move(u));
  }
  n.mark = m;
}

void HostGraph::set_edge_mark(EdgeId e, EdgeMark m) {
  Edge& ed = edge_at(e);
  if (logging()) {
    Undo u{Undo::Op::edge_mark, e};
    u.old_mark = static_cast<std::uint8_t>(ed.mark);
    undo_.push_back(std::move(u));
  }
  ed.mark = m;
}

void HostGraph::set_root(NodeId v, bool rooted) {
  Node& n = node_at(v);
  if (n.rooted == rooted) return;
  if (rooted) {
    n.rooted = true;
    link_root_at(v, roots_tail_, kNoNode);
    if (logging()) undo_.push_back({Undo::Op::root_on, v});
  } else {
    if (logging()) {
      Undo u{Undo::Op::root_off, v};
      u.a = n.prev_root;
      u.b = n.next_root;
      undo_.push_back(std::move(u));
    }
    unlink_root(v);
    n.rooted = false;
  }
}

// ---- iteration -------------------------------------------------------------------

std::optional<NodeId> HostGraph::first_host_node() const {
  ++iterator_calls_;
  return nodes_head_ == kNoNode ? std::nullopt : std::optional<NodeId>(nodes_head_);
}

std::optional<NodeId> HostGraph::next_host_node(NodeId v) const {
  ++iterator_calls_;
  if (!valid_node(v) || !nodes_[v].alive)
    fail(GraphErrorKind::stale_cursor, "next_host_node: cursor node was deleted");
  NodeId n = nodes_[v].next_node;
  return n == kNoNode ? std::nullopt : std::optional<NodeId>(n);
}

std::optional<NodeId> HostGraph::first_root_node() const {
  ++iterator_calls_;
  return roots_head_ == kNoNode ? std::nullopt : std::optional<NodeId>(roots_head_);
}

std::optional<NodeId> HostGraph::next_root_node(NodeId v) const {
  ++iterator_calls_;
  if (!valid_node(v) || !nodes_[v].alive || !nodes_[v].rooted)
    fail(GraphErrorKind::stale_cursor, "next_root_node: cursor left the root list");
  NodeId n = nodes_[v].next_root;
  return n == kNoNode ? std::nullopt : std::optional<NodeId>(n);
}

std::optional<EdgeId> HostGraph::first_in_edge(NodeId v) const {
  ++iterator_calls_;
  EdgeId e = node_at(v).first_in;
  return e == kNoEdge ? std::nullopt : std::optional<EdgeId>(e);
}

std::optional<EdgeId> HostGraph::next_in_edge(EdgeId e) const {
  ++iterator_calls_;
  if (!valid_edge(e) || !edges_[e].alive)
    fail(GraphErrorKind::stale_cursor, "next_in_edge: cursor edge was deleted");
  EdgeId n = edges_[e].next_in;
  return n == kNoEdge ? std::nullopt : std::optional<EdgeId>(n);
}

std::optional<EdgeId> HostGraph::first_out_edge(NodeId v) const {
  ++iterator_calls_;
  EdgeId e = node_at(v).first_out;
  return e == kNoEdge ? std::nullopt : std::optional<EdgeId>(e);
}

std::optional<EdgeId> HostGraph::next_out_edge(EdgeId e) const {
  ++iterator_calls_;
  if (!valid_edge(e) || !edges_[e].alive)
    fail(GraphErrorKind::stale_cursor, "next_out_edge: cursor edge was deleted");
  EdgeId n = edges_[e].next_out;
  return n == kNoEdge ? std::nullopt : std::optional<EdgeId>(n);
}

bool HostGraph::any_matched_flag_set() const {
  for (const Node& n : nodes_)
    if (n.alive && n.matched) return true;
  for (const Edge& e : edges_)
    if (e.alive && e.matched) return true;
  return false;
}

// ---- checkpoints -------------------------------------------------------------------

HostGraph::Checkpoint HostGraph::checkpoint() {
  markers_.push_back(undo_.size());
  return markers_.size() - 1;
}

void HostGraph::rollback(Checkpoint token) {
  if (markers_.empty() || token != markers_.size() - 1)
    fail(GraphErrorKind::checkpoint_discipline,
         "rollback: token is not the innermost checkpoint");
  std::size_t mark = markers_.back();
  while (undo_.size() > mark) {
    apply_undo(undo_.back());
    undo_.pop_back();
  }
  markers_.pop_back();
}

void HostGraph::commit(Checkpoint token) {
  if (markers_.empty() || token != markers_.size() - 1)
    fail(GraphErrorKind::checkpoint_discipline, "commit: token is not the innermost checkpoint");
  markers_.pop_back();
  // With no enclosing checkpoint nothing can roll these entries back; drop them so
  // long-running top-level loops do not accumulate log memory.
  if (markers_.empty()) undo_.clear();
}

void HostGraph::apply_undo(const Undo& u) {
  switch (u.op) {
    case Undo::Op::add_node: {
      Node& n = nodes_[u.id];
      if (n.rooted) unlink_root(u.id);
      unlink_node(u.id);
      n.alive = false;
      break;
    }
    case Undo::Op::add_edge: {
      unlink_edge(u.id);
      edges_[u.id].alive = false;
      break;
    }
    case Undo::Op::del_node: {
      Node& n = nodes_[u.id];
      n.alive = true;
      link_node_at(u.id, u.a, u.b);
      if (n.rooted) link_root_at(u.id, u.c, u.d);
      break;
    }
    case Undo::Op::del_edge: {
      edges_[u.id].alive = true;
      link_edge_at(u.id, u.a, u.b, u.c, u.d);
      break;
    }
    case Undo::Op::relabel_node:
      nodes_[u.id].label = u.old_label;
      break;
    case Undo::Op::relabel_edge:
      edges_[u.id].label = u.old_label;
      break;
    case Undo::Op::node_mark:
      nodes_[u.id].mark = static_cast<NodeMark>(u.old_mark);
      break;
    case Undo::Op::edge_mark:
      edges_[u.id].mark = static_cast<EdgeMark>(u.old_mark);
      break;
    case Undo::Op::root_on:
      unlink_root(u.id);
      nodes_[u.id].rooted = false;
      break;
    case Undo::Op::root_off:
      nodes_[u.id].rooted = true;
      link_root_at(u.id, u.a, u.b);
      break;
  }
}

// ---- diagnostics ---------------------------------------------------------------------

std::string HostGraph::debug_serialize() const {
  std::ostringstream os;
  os << "nodes:";
  for (NodeId v = nodes_head_; v != kNoNode; v = nodes_[v].next_node) {
    const Node& n = nodes_[v];
    os << " (" << v << (n.rooted ? "R" : "") << "," << label_to_text(n.label) << ","
       << to_string(n.mark) << ",in=" << n.indeg << ",out=" << n.outdeg << ")";
  }
  os << "\nroots:";
  for (NodeId v = roots_head_; v != kNoNode; v = nodes_[v].next_root) os << " " << v;
  os << "\nout:";
  for (NodeId v = nodes_head_; v != kNoNode; v = nodes_[v].next_node) {
    os << " " << v << "[";
    for (EdgeId e = nodes_[v].first_out; e != kNoEdge; e = edges_[e].next_out) {
      const Edge& ed = edges_[e];
      os << "(" << e << "->" << ed.tgt << "," << label_to_text(ed.label) << ","
         << to_string(ed.mark) << ")";
    }
    os << "]";
  }
  os << "\nin:";
  for (NodeId v = nodes_head_; v != kNoNode; v = nodes_[v].next_node) {
    os << " " << v << "[";
    for (EdgeId e = nodes_[v].first_in; e != kNoEdge; e = edges_[e].next_in) {
      os << "(" << e << "<-" << edges_[e].src << ")";
    }
    os << "]";
  }
  return std::move(os).str();
}

void HostGraph::check_invariants() const {
  auto bug = [](const std::string& m) { throw std::logic_error("graph invariant: " + m); };
  int nodes_seen = 0, roots_seen = 0, edges_seen = 0;
  NodeId prev = kNoNode;
  for (NodeId v = nodes_head_; v != kNoNode; v = nodes_[v].next_node) {
    if (!nodes_[v].alive) bug("dead node in node list");
    if (nodes_[v].prev_node != prev) bug("node list prev link broken");
    prev = v;
    ++nodes_seen;
    if (nodes_seen > static_cast<int>(nodes_.size())) bug("node list cycle");
  }
  if (nodes_tail_ != prev) bug("node list tail mismatch");
  if (nodes_seen != node_count_) bug("node_count drift");
  prev = kNoNode;
  for (NodeId v = roots_head_; v != kNoNode; v = nodes_[v].next_root) {
    if (!nodes_[v].alive || !nodes_[v].rooted) bug("non-root in root list");
    if (nodes_[v].prev_root != prev) bug("root list prev link broken");
    prev = v;
    ++roots_seen;
    if (roots_seen > static_cast<int>(nodes_.size())) bug("root list cycle");
  }
  if (roots_tail_ != prev) bug("root list tail mismatch");
  if (roots_seen != root_count_) bug("root_count drift");
  int rooted_flags = 0;
  for (std::size_t v = 0; v < nodes_.size(); ++v)
    if (nodes_[v].alive && nodes_[v].rooted) ++rooted_flags;
  if (rooted_flags != roots_seen) bug("root flag vs root list mismatch");

  std::vector<int> indeg(nodes_.size(), 0), outdeg(nodes_.size(), 0);
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const Edge& ed = edges_[e];
    if (!ed.alive) continue;
    ++edges_seen;
    if (!nodes_[ed.src].alive || !nodes_[ed.tgt].alive) bug("edge with dead endpoint");
    ++outdeg[ed.src];
    ++indeg[ed.tgt];
  }
  if (edges_seen != edge_count_) bug("edge_count drift");
  for (std::size_t v = 0; v < nodes_.size(); ++v) {
    if (!nodes_[v].alive) continue;
    if (nodes_[v].indeg != indeg[v] || nodes_[v].outdeg != outdeg[v]) bug("degree counter drift");
    int seen = 0;
    EdgeId prev_e = kNoEdge;
    for (EdgeId e = nodes_[v].first_out; e != kNoEdge; e = edges_[e].next_out) {
      if (!edges_[e].alive || edges_[e].src != static_cast<NodeId>(v)) bug("bad out-list entry");
      if (edges_[e].prev_out != prev_e) bug("out-list prev link broken");
      prev_e = e;
      if (++seen > edge_count_) bug("out-list cycle");
    }
    if (seen != outdeg[v]) bug("out-list length vs outdeg");
    seen = 0;
    prev_e = kNoEdge;
    for (EdgeId e = nodes_[v].first_in; e != kNoEdge; e = edges_[e].next_in) {
      if (!edges_[e].alive || edges_[e].tgt != static_cast<NodeId>(v)) bug("bad in-list entry");
      if (edges_[e].prev_in != prev_e) bug("in-list prev link broken");
      prev_e = e;
      if (++seen > edge_count_) bug("in-list cycle");
    }
    if (seen != indeg[v]) bug("in-list length vs indeg");
  }
}

}  // namespace gpr
