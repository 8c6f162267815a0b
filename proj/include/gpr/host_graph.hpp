#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gpr/label.hpp"

namespace gpr {

enum class GraphErrorKind {
  unknown_item,           // dead or out-of-range id passed to an operation
  dangling_violation,     // delete_node while incident edges remain
  stale_cursor,           // iteration cursor whose item was deleted (or unrooted)
  checkpoint_discipline,  // rollback/commit of a token that is not the innermost checkpoint
};

struct GraphError : std::runtime_error {
  GraphErrorKind kind;
  GraphError(GraphErrorKind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

using NodeId = std::int32_t;
using EdgeId = std::int32_t;
inline constexpr NodeId kNoNode = -1;
inline constexpr EdgeId kNoEdge = -1;

// Directed labelled multigraph with parallel edges and loops. Nodes carry a label,
// a mark, a root flag and a matched flag; edges carry a label, a mark and a matched
// flag. Ids are dense integers assigned in creation order and never reused, so a
// node/edge can be named across an arbitrary edit history.
//
// Storage discipline (all required for the complexity contract):
//  - every node sits in one global doubly-linked node list (insertion order);
//  - every root additionally sits in a doubly-linked root list (insertion order);
//  - every edge sits in the source's out-list and the target's in-list;
//  - in/out degrees are maintained counters, read in O(1);
//  - deletion unlinks in O(1); iteration visits items in insertion order.
//
// Checkpoints: checkpoint() pushes a marker on the undo log; rollback() restores the
// graph bit-identically (including list orders) to the marker; commit() keeps the
// changes and merges them into the enclosing checkpoint scope. Tokens obey stack
// discipline; violating it raises checkpoint_discipline.
class HostGraph {
 public:
  // --- construction / mutation -------------------------------------------------
  NodeId add_node(Label label, NodeMark mark = NodeMark::none, bool rooted = false);
  // Throws unknown_item if either endpoint is dead/invalid.
  EdgeId add_edge(NodeId src, NodeId tgt, Label label, EdgeMark mark = EdgeMark::none);
  // Throws dangling_violation if incident edges remain, unknown_item if dead.
  void delete_node(NodeId v);
  void delete_edge(EdgeId e);
  void relabel_node(NodeId v, Label label);
  void relabel_edge(EdgeId e, Label label);
  void set_node_mark(NodeId v, NodeMark m);
  void set_edge_mark(EdgeId e, EdgeMark m);
  void set_root(NodeId v, bool rooted);  // no-op if already in the requested state

  // --- queries -----------------------------------------------------------------
  bool node_alive(NodeId v) const { return valid_node(v) && nodes_[v].alive; }
  bool edge_alive(EdgeId e) const { return valid_edge(e) && edges_[e].alive; }
  const Label& node_label(NodeId v) const { return node_at(v).label; }
  const Label& edge_label(EdgeId e) const { return edge_at(e).label; }
  NodeMark node_mark(NodeId v) const { return node_at(v).mark; }
  EdgeMark edge_mark(EdgeId e) const { return edge_at(e).mark; }
  bool rooted(NodeId v) const { return node_at(v).rooted; }
  NodeId source(EdgeId e) const { return edge_at(e).src; }
  NodeId target(EdgeId e) const { return edge_at(e).tgt; }
  int indegree(NodeId v) const { return node_at(v).indeg; }
  int outdegree(NodeId v) const { return node_at(v).outdeg; }
  int node_count() const { return node_count_; }
  int edge_count() const { return edge_count_; }
  int root_count() const { return root_count_; }  // O(1)

  // --- iteration ---------------------------------------------------------------
  // Cursors are item ids. Passing a deleted item (or, for the root list, an
  // unrooted one) raises stale_cursor. Every call bumps iterator_calls().
  std::optional<NodeId> first_host_node() const;
  std::optional<NodeId> next_host_node(NodeId v) const;
  std::optional<NodeId> first_root_node() const;
  std::optional<NodeId> next_root_node(NodeId v) const;
  std::optional<EdgeId> first_in_edge(NodeId v) const;
  std::optional<EdgeId> next_in_edge(EdgeId e) const;
  std::optional<EdgeId> first_out_edge(NodeId v) const;
  std::optional<EdgeId> next_out_edge(EdgeId e) const;
  std::uint64_t iterator_calls() const { return iterator_calls_; }

  // --- matched flags (used by the matcher; not checkpointed) --------------------
  bool node_matched(NodeId v) const { return node_at(v).matched; }
  bool edge_matched(EdgeId e) const { return edge_at(e).matched; }
  void set_node_matched(NodeId v, bool f) { node_at(v).matched = f; }
  void set_edge_matched(EdgeId e, bool f) { edge_at(e).matched = f; }
  bool any_matched_flag_set() const;  // full scan; for tests/assertions

  // --- checkpoints ---------------------------------------------------------------
  using Checkpoint = std::size_t;
  Checkpoint checkpoint();
  void rollback(Checkpoint token);  // restores state at checkpoint; pops the token
  void commit(Checkpoint token);    // keeps changes; pops the token
  std::size_t checkpoint_depth() const { return markers_.size(); }
  std::size_t undo_log_size() const { return undo_.size(); }

  // --- diagnostics ---------------------------------------------------------------
  // Full serialization of identity, attributes and all four list orders; two graphs
  // compare equal iff they are bit-identical in the sense of the rollback contract.
  std::string debug_serialize() const;
  // Recomputes degrees/list membership by brute force; throws std::logic_error on drift.
  void check_invariants() const;
  HostGraph clone() const { return *this; }

 private:
  struct Node {
    Label label;
    NodeMark mark = NodeMark::none;
    bool rooted = false;
    bool matched = false;
    bool alive = true;
    std::int32_t indeg = 0, outdeg = 0;
    NodeId prev_node = kNoNode, next_node = kNoNode;  // global node list
    NodeId prev_root = kNoNode, next_root = kNoNode;  // root list (valid while rooted)
    EdgeId first_in = kNoEdge, last_in = kNoEdge;
    EdgeId first_out = kNoEdge, last_out = kNoEdge;
  };
  struct Edge {
    NodeId src = kNoNode, tgt = kNoNode;
    Label label;
    EdgeMark mark = EdgeMark::none;
    bool matched = false;
    bool alive = true;
    EdgeId prev_out = kNoEdge, next_out = kNoEdge;  // within src's out-list
    EdgeId prev_in = kNoEdge, next_in = kNoEdge;    // within tgt's in-list
  };

  struct Undo {
    enum class Op : std::uint8_t {
      add_node,      // undo: unlink + mark dead
      add_edge,      // undo: unlink + mark dead
      del_node,      // undo: relink at stored node/root-list position + revive
      del_edge,      // undo: relink at stored out/in-list position + revive
      relabel_node,  // undo: restore old label
      relabel_edge,
      node_mark,  // undo: restore old mark
      edge_mark,
      root_on,   // undo: unlink from root list + clear flag
      root_off,  // undo: relink at stored root-list position + set flag
    };
    Op op;
    std::int32_t id = -1;
    std::int32_t a = -1, b = -1, c = -1, d = -1;  // saved link slots (meaning per op)
    std::uint8_t old_mark = 0;
    Label old_label;
    Undo(Op o, std::int32_t i) : op(o), id(i) {}
  };

  Node& node_at(NodeId v);
  const Node& node_at(NodeId v) const;
  Edge& edge_at(EdgeId e);
  const Edge& edge_at(EdgeId e) const;
  bool valid_node(NodeId v) const { return v >= 0 && static_cast<std::size_t>(v) < nodes_.size(); }
  bool valid_edge(EdgeId e) const { return e >= 0 && static_cast<std::size_t>(e) < edges_.size(); }

  // Raw list surgery; updates counters but never the undo log.
  void link_node_at(NodeId v, NodeId prev, NodeId next);
  void unlink_node(NodeId v);
  void link_root_at(NodeId v, NodeId prev, NodeId next);
  void unlink_root(NodeId v);
  void link_edge_at(EdgeId e, EdgeId prev_out, EdgeId next_out, EdgeId prev_in, EdgeId next_in);
  void unlink_edge(EdgeId e);

  bool logging() const { return !markers_.empty(); }
  void apply_undo(const Undo& u);

  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
  NodeId nodes_head_ = kNoNode, nodes_tail_ = kNoNode;
  NodeId roots_head_ = kNoNode, roots_tail_ = kNoNode;
  int node_count_ = 0, edge_count_ = 0, root_count_ = 0;
  std::vector<Undo> undo_;
  std::vector<std::size_t> markers_;
  mutable std::uint64_t iterator_calls_ = 0;
};

}  // namespace gpr
