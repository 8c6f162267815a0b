#include "gpr/generators.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace gpr {

namespace {

NodeId grey_node(HostGraph& g) { return g.add_node({}, NodeMark::grey, false); }

void plain_edge(HostGraph& g, NodeId s, NodeId t) { g.add_edge(s, t, {}, EdgeMark::none); }

// 3x3 directed grid block; `origin` reuses an existing node as the top-left
// corner (grid-chain), kNoNode creates all nine nodes. Returns the bottom-right
// corner. Generalized to k x k for the grid class.
NodeId grid_block(HostGraph& g, int k, NodeId origin) {
  std::vector<NodeId> ids(static_cast<std::size_t>(k) * k);
  for (int i = 0; i < k * k; ++i)
    ids[i] = (i == 0 && origin != kNoNode) ? origin : grey_node(g);
  for (int r = 0; r < k; ++r)
    for (int c = 0; c < k; ++c) {
      if (c + 1 < k) plain_edge(g, ids[r * k + c], ids[r * k + c + 1]);
      if (r + 1 < k) plain_edge(g, ids[r * k + c], ids[(r + 1) * k + c]);
    }
  return ids[static_cast<std::size_t>(k) * k - 1];
}

void assert_bounded_degree(const HostGraph& g, int bound) {
  for (auto v = g.first_host_node(); v; v = g.next_host_node(*v))
    if (g.indegree(*v) + g.outdegree(*v) > bound)
      throw std::logic_error("generator produced degree above " + std::to_string(bound));
}

}  // namespace

const std::vector<std::string>& graph_class_names() {
  static const std::vector<std::string> names = {"discrete", "grid",  "grid-chain",
                                                 "binary-tree", "star", "cycle",
                                                 "sun",      "linked-list"};
  return names;
}

std::optional<GraphClass> class_from_name(std::string_view name) {
  if (name == "discrete") return GraphClass::discrete;
  if (name == "grid") return GraphClass::grid;
  if (name == "grid-chain") return GraphClass::grid_chain;
  if (name == "binary-tree") return GraphClass::binary_tree;
  if (name == "star") return GraphClass::star;
  if (name == "cycle") return GraphClass::cycle;
  if (name == "sun") return GraphClass::sun;
  if (name == "linked-list") return GraphClass::linked_list;
  return std::nullopt;
}

const char* to_string(GraphClass c) {
  switch (c) {
    case GraphClass::discrete: return "discrete";
    case GraphClass::grid: return "grid";
    case GraphClass::grid_chain: return "grid-chain";
    case GraphClass::binary_tree: return "binary-tree";
    case GraphClass::star: return "star";
    case GraphClass::cycle: return "cycle";
    case GraphClass::sun: return "sun";
    case GraphClass::linked_list: return "linked-list";
  }
  return "?";
}

HostGraph generate(GraphClass c, int n, std::uint64_t /*seed*/) {
  if (n < 1) throw std::invalid_argument("generate: n must be >= 1");
  HostGraph g;
  switch (c) {
    case GraphClass::discrete: {
      for (int i = 0; i < n; ++i) grey_node(g);
      break;
    }
    case GraphClass::cycle: {
      for (int i = 0; i < n; ++i) grey_node(g);
      for (int i = 0; i < n; ++i) plain_edge(g, i, (i + 1) % n);
      break;
    }
    case GraphClass::linked_list: {
      for (int i = 0; i < n; ++i) grey_node(g);
      for (int i = 0; i + 1 < n; ++i) plain_edge(g, i, i + 1);
      break;
    }
    case GraphClass::star: {
      for (int i = 0; i < n; ++i) grey_node(g);
      for (int i = 1; i < n; ++i) {
        if (i % 2 == 1)
          plain_edge(g, 0, i);
        else
          plain_edge(g, i, 0);
      }
      break;
    }
    case GraphClass::grid: {
      int k = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n))));
      grid_block(g, k, kNoNode);
      break;
    }
    case GraphClass::binary_tree: {
      for (int i = 0; i < n; ++i) grey_node(g);
      for (int i = 0; i < n; ++i) {
        if (2 * i + 1 < n) plain_edge(g, i, 2 * i + 1);
        if (2 * i + 2 < n) plain_edge(g, i, 2 * i + 2);
      }
      break;
    }
    case GraphClass::sun: {
      if (n < 4) throw std::invalid_argument("generate: sun needs n >= 4");
      int m = n / 2;
      for (int i = 0; i < 2 * m; ++i) grey_node(g);
      for (int i = 0; i < m; ++i) plain_edge(g, i, (i + 1) % m);
      for (int i = 0; i < m; ++i) plain_edge(g, m + i, i);
      break;
    }
    case GraphClass::grid_chain: {
      int blocks = std::max(1, (n - 1 + 7) / 8);
      NodeId corner = kNoNode;
      for (int b = 0; b < blocks; ++b) corner = grid_block(g, 3, corner);
      break;
    }
  }
  if (c != GraphClass::star) assert_bounded_degree(g, 4);
  return g;
}

void validate_input_graph(const HostGraph& g) {
  for (auto v = g.first_host_node(); v; v = g.next_host_node(*v)) {
    if (g.node_mark(*v) != NodeMark::grey)
      throw std::runtime_error("input graph: node " + std::to_string(*v) + " is not grey");
    if (g.rooted(*v))
      throw std::runtime_error("input graph: node " + std::to_string(*v) + " is rooted");
    for (auto e = g.first_out_edge(*v); e; e = g.next_out_edge(*e))
      if (g.edge_mark(*e) != EdgeMark::none)
        throw std::runtime_error("input graph: edge " + std::to_string(*e) + " is marked");
  }
}

HostGraph random_graph(std::uint64_t seed, int max_items) {
  std::mt19937_64 rng(seed);
  auto pick = [&](int lo, int hi) {  // inclusive bounds
    return static_cast<int>(std::uniform_int_distribution<int>(lo, hi)(rng));
  };
  HostGraph g;
  int items = pick(0, max_items);
  int nodes = items == 0 ? 0 : pick(1, items);
  int edges = items - nodes;
  auto random_label = [&]() -> Label {
    int shape = pick(0, 9);
    if (shape < 8) return {};
    if (shape == 8) return {Atom(static_cast<Integer>(pick(-3, 3)))};
    return {Atom(std::string(1, static_cast<char>('a' + pick(0, 5))))};
  };
  for (int i = 0; i < nodes; ++i) g.add_node(random_label(), NodeMark::grey, false);
  for (int i = 0; i < edges && nodes > 0; ++i)
    g.add_edge(pick(0, nodes - 1), pick(0, nodes - 1), random_label(), EdgeMark::none);
  return g;
}

HostGraph random_simple_dag(std::uint64_t seed, int max_nodes) {
  std::mt19937_64 rng(seed);
  auto pick = [&](int lo, int hi) {
    return static_cast<int>(std::uniform_int_distribution<int>(lo, hi)(rng));
  };
  HostGraph g;
  int n = pick(0, max_nodes);
  for (int i = 0; i < n; ++i) grey_node(g);
  std::bernoulli_distribution edge_coin(0.3);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (edge_coin(rng)) plain_edge(g, i, j);
  return g;
}

}  // namespace gpr
