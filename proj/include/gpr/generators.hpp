#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gpr/host_graph.hpp"

namespace gpr {

// Benchmark graph classes. Every generated graph is a valid input graph: all
// nodes grey and unrooted, all edges unmarked, all labels empty.
enum class GraphClass {
  discrete,     // n isolated nodes
  grid,         // ceil(sqrt(n)) x ceil(sqrt(n)) directed grid, right+down edges
  grid_chain,   // chain of 3x3 grids, consecutive grids sharing a corner node
  binary_tree,  // complete binary tree in heap layout (i -> 2i+1, 2i+2)
  star,         // center node, n-1 spokes with alternating direction
  cycle,        // directed n-cycle (n = 1 gives a single looping node)
  sun,          // (n/2)-cycle with one pendant in-edge per cycle node; needs n >= 4
  linked_list,  // directed path of n nodes
};

const std::vector<std::string>& graph_class_names();
std::optional<GraphClass> class_from_name(std::string_view name);
const char* to_string(GraphClass c);

// Builds a class instance sized from target node count n (>= 1). Actual node
// counts round up per class shape (grid squares, sun doubles n/2, grid-chain
// is 8g+1). The seed is accepted for interface uniformity; all eight classes
// are deterministic. Throws std::invalid_argument if n is too small (sun < 4).
HostGraph generate(GraphClass c, int n, std::uint64_t seed = 0);

// Verifies the input-graph contract (grey, unrooted, unmarked edges); throws
// std::runtime_error naming the first violation.
void validate_input_graph(const HostGraph& g);

// Uniform random multigraph for oracle fuzzing: up to max_items nodes+edges,
// loops and parallel edges allowed, valid input-graph marks, mostly empty labels.
HostGraph random_graph(std::uint64_t seed, int max_items = 40);

// Random simple DAG (no loops, no parallel edges) with up to max_nodes nodes;
// edges respect the node order, so the graph is acyclic by construction.
HostGraph random_simple_dag(std::uint64_t seed, int max_nodes = 15);

}  // namespace gpr
