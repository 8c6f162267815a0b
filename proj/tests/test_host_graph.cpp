#include <doctest.h>

#include <random>
#include <set>
#include <string>
#include <vector>

#include "gpr/host_graph.hpp"

using namespace gpr;

namespace {

Label lab(Integer v) { return Label{Atom{v}}; }
Label lab(const char* s) { return Label{Atom{std::string(s)}}; }

std::vector<NodeId> node_order(const HostGraph& g) {
  std::vector<NodeId> out;
  for (auto v = g.first_host_node(); v; v = g.next_host_node(*v)) out.push_back(*v);
  return out;
}

std::vector<NodeId> root_order(const HostGraph& g) {
  std::vector<NodeId> out;
  for (auto v = g.first_root_node(); v; v = g.next_root_node(*v)) out.push_back(*v);
  return out;
}

std::vector<EdgeId> out_edges(const HostGraph& g, NodeId v) {
  std::vector<EdgeId> out;
  for (auto e = g.first_out_edge(v); e; e = g.next_out_edge(*e)) out.push_back(*e);
  return out;
}

std::vector<EdgeId> in_edges(const HostGraph& g, NodeId v) {
  std::vector<EdgeId> out;
  for (auto e = g.first_in_edge(v); e; e = g.next_in_edge(*e)) out.push_back(*e);
  return out;
}

}  // namespace

TEST_SUITE("host_graph") {

TEST_CASE("nodes and edges carry labels, marks, roots and degrees") {
  HostGraph g;
  NodeId a = g.add_node(lab(1), NodeMark::grey);
  NodeId b = g.add_node(lab("x"), NodeMark::none, true);
  EdgeId e = g.add_edge(a, b, lab(7), EdgeMark::dashed);
  EdgeId l = g.add_edge(b, b, Label{});

  CHECK(g.node_count() == 2);
  CHECK(g.edge_count() == 2);
  CHECK(g.root_count() == 1);
  CHECK(g.node_label(a) == lab(1));
  CHECK(g.node_mark(b) == NodeMark::none);
  CHECK(g.rooted(b));
  CHECK_FALSE(g.rooted(a));
  CHECK(g.edge_label(e) == lab(7));
  CHECK(g.edge_mark(e) == EdgeMark::dashed);
  CHECK(g.source(e) == a);
  CHECK(g.target(e) == b);
  CHECK(g.outdegree(a) == 1);
  CHECK(g.indegree(b) == 2);  // e plus the self-loop
  CHECK(g.outdegree(b) == 1);

  g.relabel_node(a, lab("y"));
  g.set_node_mark(a, NodeMark::red);
  g.relabel_edge(e, Label{});
  g.set_edge_mark(e, EdgeMark::none);
  g.set_root(a, true);
  CHECK(g.node_label(a) == lab("y"));
  CHECK(g.node_mark(a) == NodeMark::red);
  CHECK(g.edge_label(e).empty());
  CHECK(g.edge_mark(e) == EdgeMark::none);
  CHECK(g.root_count() == 2);

  g.delete_edge(l);
  CHECK(g.indegree(b) == 1);
  CHECK(g.outdegree(b) == 0);
  g.delete_edge(e);
  g.delete_node(b);
  CHECK(g.node_count() == 1);
  CHECK_FALSE(g.node_alive(b));
  CHECK_FALSE(g.edge_alive(e));
}

TEST_CASE("ids are never reused") {
  HostGraph g;
  NodeId a = g.add_node(Label{});
  g.delete_node(a);
  NodeId b = g.add_node(Label{});
  CHECK(b != a);
  CHECK_FALSE(g.node_alive(a));
  CHECK(g.node_alive(b));
}

TEST_CASE("operations on dead or invalid items raise unknown_item") {
  HostGraph g;
  NodeId a = g.add_node(Label{});
  NodeId b = g.add_node(Label{});
  EdgeId e = g.add_edge(a, b, Label{});
  g.delete_edge(e);
  g.delete_node(b);

  auto expect_unknown = [](auto&& fn) {
    try {
      fn();
      FAIL_CHECK("expected GraphError");
    } catch (const GraphError& err) {
      CHECK(err.kind == GraphErrorKind::unknown_item);
    }
  };
  expect_unknown([&] { g.node_label(b); });
  expect_unknown([&] { g.edge_label(e); });
  expect_unknown([&] { g.delete_node(b); });
  expect_unknown([&] { g.delete_edge(e); });
  expect_unknown([&] { g.add_edge(a, b, Label{}); });
  expect_unknown([&] { g.relabel_node(999, Label{}); });
  expect_unknown([&] { g.set_edge_mark(-3, EdgeMark::red); });
}

TEST_CASE("deleting a node with incident edges raises dangling_violation") {
  HostGraph g;
  NodeId a = g.add_node(Label{});
  NodeId b = g.add_node(Label{});
  EdgeId e = g.add_edge(a, b, Label{});
  for (NodeId v : {a, b}) {
    try {
      g.delete_node(v);
      FAIL_CHECK("expected GraphError");
    } catch (const GraphError& err) {
      CHECK(err.kind == GraphErrorKind::dangling_violation);
    }
    CHECK(g.node_alive(v));
  }
  g.delete_edge(e);
  g.delete_node(a);
  g.delete_node(b);
  CHECK(g.node_count() == 0);
}

TEST_CASE("iteration follows insertion order and costs one call per visit") {
  HostGraph g;
  std::vector<NodeId> added;
  for (int i = 0; i < 5; ++i) added.push_back(g.add_node(lab(i)));
  std::uint64_t before = g.iterator_calls();
  CHECK(node_order(g) == added);
  CHECK(g.iterator_calls() - before == 6);  // five hits plus the trailing miss

  g.delete_node(added[2]);
  CHECK(node_order(g) == std::vector<NodeId>{added[0], added[1], added[3], added[4]});

  NodeId tail = g.add_node(Label{});
  added.erase(added.begin() + 2);
  added.push_back(tail);
  CHECK(node_order(g) == added);
}

TEST_CASE("root list mirrors the root flags in insertion order") {
  HostGraph g;
  NodeId a = g.add_node(Label{});
  NodeId b = g.add_node(Label{});
  NodeId c = g.add_node(Label{});
  g.set_root(b, true);
  g.set_root(a, true);
  CHECK(root_order(g) == std::vector<NodeId>{b, a});
  g.set_root(b, false);
  g.set_root(c, true);
  CHECK(root_order(g) == std::vector<NodeId>{a, c});
  g.set_root(c, true);  // no-op: already rooted
  CHECK(g.root_count() == 2);
  g.set_root(a, false);
  g.set_root(c, false);
  CHECK(root_order(g).empty());
}

TEST_CASE("per-node edge lists keep out- and in-insertion order") {
  HostGraph g;
  NodeId a = g.add_node(Label{});
  NodeId b = g.add_node(Label{});
  EdgeId e1 = g.add_edge(a, b, Label{});
  EdgeId e2 = g.add_edge(a, b, Label{});  // parallel edge
  EdgeId e3 = g.add_edge(a, a, Label{});
  CHECK(out_edges(g, a) == std::vector<EdgeId>{e1, e2, e3});
  CHECK(in_edges(g, b) == std::vector<EdgeId>{e1, e2});
  CHECK(in_edges(g, a) == std::vector<EdgeId>{e3});
  g.delete_edge(e2);
  CHECK(out_edges(g, a) == std::vector<EdgeId>{e1, e3});
  CHECK(g.outdegree(a) == 2);
}

TEST_CASE("stale cursors are rejected") {
  HostGraph g;
  NodeId a = g.add_node(Label{});
  NodeId b = g.add_node(Label{});
  EdgeId e = g.add_edge(a, b, Label{});

  g.delete_edge(e);
  try {
    g.next_out_edge(e);
    FAIL_CHECK("expected GraphError");
  } catch (const GraphError& err) {
    CHECK(err.kind == GraphErrorKind::stale_cursor);
  }

  g.set_root(a, true);
  g.set_root(a, false);
  try {
    g.next_root_node(a);  // alive but no longer in the root list
    FAIL_CHECK("expected GraphError");
  } catch (const GraphError& err) {
    CHECK(err.kind == GraphErrorKind::stale_cursor);
  }

  g.delete_node(b);
  try {
    g.next_host_node(b);
    FAIL_CHECK("expected GraphError");
  } catch (const GraphError& err) {
    CHECK(err.kind == GraphErrorKind::stale_cursor);
  }
}

TEST_CASE("checkpoint rollback restores the graph bit-identically") {
  std::mt19937_64 rng(42);
  HostGraph g;
  std::vector<NodeId> nodes;
  std::vector<EdgeId> edges;

  auto random_op = [&](bool allow_structural) {
    switch (rng() % 8) {
      case 0:
        nodes.push_back(g.add_node(lab(static_cast<Integer>(rng() % 5)),
                                   static_cast<NodeMark>(rng() % 5), rng() % 4 == 0));
        break;
      case 1:
        if (!nodes.empty())
          edges.push_back(g.add_edge(nodes[rng() % nodes.size()], nodes[rng() % nodes.size()],
                                     Label{}, static_cast<EdgeMark>(rng() % 5)));
        break;
      case 2:
        if (allow_structural && !edges.empty()) {
          std::size_t i = rng() % edges.size();
          g.delete_edge(edges[i]);
          edges.erase(edges.begin() + i);
        }
        break;
      case 3:
        if (allow_structural && !nodes.empty()) {
          std::size_t i = rng() % nodes.size();
          if (g.indegree(nodes[i]) == 0 && g.outdegree(nodes[i]) == 0) {
            g.delete_node(nodes[i]);
            nodes.erase(nodes.begin() + i);
          }
        }
        break;
      case 4:
        if (!nodes.empty()) g.relabel_node(nodes[rng() % nodes.size()], lab("r"));
        break;
      case 5:
        if (!nodes.empty())
          g.set_node_mark(nodes[rng() % nodes.size()], static_cast<NodeMark>(rng() % 5));
        break;
      case 6:
        if (!edges.empty())
          g.set_edge_mark(edges[rng() % edges.size()], static_cast<EdgeMark>(rng() % 5));
        break;
      case 7:
        if (!nodes.empty()) g.set_root(nodes[rng() % nodes.size()], rng() % 2 == 0);
        break;
    }
  };

  for (int i = 0; i < 120; ++i) random_op(true);
  g.check_invariants();
  const std::string before = g.debug_serialize();
  CHECK(g.undo_log_size() == 0);  // no checkpoint, no logging

  auto saved_nodes = nodes;
  auto saved_edges = edges;
  auto cp = g.checkpoint();
  for (int i = 0; i < 500; ++i) random_op(true);
  g.check_invariants();
  CHECK(g.undo_log_size() > 0);
  g.rollback(cp);
  nodes = saved_nodes;
  edges = saved_edges;

  CHECK(g.debug_serialize() == before);
  CHECK(g.undo_log_size() == 0);
  CHECK(g.checkpoint_depth() == 0);
  g.check_invariants();
}

TEST_CASE("nested checkpoints obey stack discipline") {
  HostGraph g;
  NodeId a = g.add_node(lab(1));
  const std::string s0 = g.debug_serialize();

  auto outer = g.checkpoint();
  g.relabel_node(a, lab(2));
  const std::string s1 = g.debug_serialize();
  auto inner = g.checkpoint();
  g.relabel_node(a, lab(3));

  try {
    g.rollback(outer);  // not the innermost token
    FAIL_CHECK("expected GraphError");
  } catch (const GraphError& err) {
    CHECK(err.kind == GraphErrorKind::checkpoint_discipline);
  }
  CHECK(g.node_label(a) == lab(3));  // the failed rollback changed nothing

  g.rollback(inner);
  CHECK(g.debug_serialize() == s1);
  g.rollback(outer);
  CHECK(g.debug_serialize() == s0);

  // A committed inner scope is still undone by the enclosing rollback.
  outer = g.checkpoint();
  inner = g.checkpoint();
  g.relabel_node(a, lab(9));
  g.commit(inner);
  CHECK(g.node_label(a) == lab(9));
  g.rollback(outer);
  CHECK(g.debug_serialize() == s0);

  // Committing the outermost scope keeps changes and clears the log.
  outer = g.checkpoint();
  g.relabel_node(a, lab(5));
  g.commit(outer);
  CHECK(g.node_label(a) == lab(5));
  CHECK(g.undo_log_size() == 0);
  CHECK(g.checkpoint_depth() == 0);
}

TEST_CASE("rollback restores deleted items into their old list positions") {
  HostGraph g;
  std::vector<NodeId> ns;
  for (int i = 0; i < 4; ++i) ns.push_back(g.add_node(lab(i)));
  EdgeId e0 = g.add_edge(ns[0], ns[1], Label{});
  EdgeId e1 = g.add_edge(ns[0], ns[2], Label{});
  EdgeId e2 = g.add_edge(ns[0], ns[3], Label{});
  g.set_root(ns[1], true);
  g.set_root(ns[2], true);
  g.set_root(ns[3], true);
  const std::string before = g.debug_serialize();

  auto cp = g.checkpoint();
  g.delete_edge(e1);                 // middle of ns[0]'s out-list
  g.set_root(ns[2], false);          // middle of the root list
  g.delete_edge(e0);
  g.delete_edge(e2);
  g.delete_node(ns[2]);              // middle of the node list
  CHECK(out_edges(g, ns[0]).empty());
  CHECK(node_order(g) == std::vector<NodeId>{ns[0], ns[1], ns[3]});
  g.rollback(cp);

  CHECK(g.debug_serialize() == before);
  CHECK(node_order(g) == ns);
  CHECK(out_edges(g, ns[0]) == std::vector<EdgeId>{e0, e1, e2});
  CHECK(root_order(g) == std::vector<NodeId>{ns[1], ns[2], ns[3]});
  g.check_invariants();
}

TEST_CASE("degree counters agree with list recounts under random edits") {
  std::mt19937_64 rng(7);
  HostGraph g;
  std::vector<NodeId> nodes;
  std::vector<EdgeId> edges;
  for (int step = 0; step < 400; ++step) {
    int op = static_cast<int>(rng() % 4);
    if (op == 0 || nodes.empty()) {
      nodes.push_back(g.add_node(Label{}));
    } else if (op == 1) {
      edges.push_back(
          g.add_edge(nodes[rng() % nodes.size()], nodes[rng() % nodes.size()], Label{}));
    } else if (op == 2 && !edges.empty()) {
      std::size_t i = rng() % edges.size();
      g.delete_edge(edges[i]);
      edges.erase(edges.begin() + i);
    } else if (!nodes.empty()) {
      std::size_t i = rng() % nodes.size();
      if (g.indegree(nodes[i]) == 0 && g.outdegree(nodes[i]) == 0) {
        g.delete_node(nodes[i]);
        nodes.erase(nodes.begin() + i);
      }
    }
    if (step % 50 == 49) {
      g.check_invariants();
      for (NodeId v : nodes) {
        CHECK(g.indegree(v) == static_cast<int>(in_edges(g, v).size()));
        CHECK(g.outdegree(v) == static_cast<int>(out_edges(g, v).size()));
      }
    }
  }
  g.check_invariants();
}

TEST_CASE("matched flags are scratch state outside the checkpoint contract") {
  HostGraph g;
  NodeId a = g.add_node(Label{});
  NodeId b = g.add_node(Label{});
  EdgeId e = g.add_edge(a, b, Label{});
  CHECK_FALSE(g.any_matched_flag_set());

  auto cp = g.checkpoint();
  g.set_node_matched(a, true);
  g.set_edge_matched(e, true);
  g.rollback(cp);
  CHECK(g.node_matched(a));  // survives rollback by design
  CHECK(g.edge_matched(e));
  CHECK(g.any_matched_flag_set());
  g.set_node_matched(a, false);
  g.set_edge_matched(e, false);
  CHECK_FALSE(g.any_matched_flag_set());
}

TEST_CASE("clone is an independent copy") {
  HostGraph g;
  NodeId a = g.add_node(lab(1), NodeMark::blue, true);
  HostGraph copy = g.clone();
  g.relabel_node(a, lab(2));
  g.add_node(Label{});
  CHECK(copy.node_count() == 1);
  CHECK(copy.node_label(a) == lab(1));
  CHECK(copy.debug_serialize() != g.debug_serialize());
}

}  // TEST_SUITE
