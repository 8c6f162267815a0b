#pragma once

// Brute-force reference implementations used to validate the engine. Everything
// here favours obviousness over speed: explicit scans, recursive enumeration,
// no shared state with the engine's matcher or interpreter.

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "gpr/host_graph.hpp"
#include "gpr/interpreter.hpp"
#include "gpr/rule.hpp"

namespace gpr::oracle {

// ---------------------------------------------------------------------------
// Basic views.
std::vector<NodeId> all_nodes(const HostGraph& g);
std::vector<EdgeId> all_edges(const HostGraph& g);

// ---------------------------------------------------------------------------
// Graph-shape predicates (ground truth for the recognizer programs).

// At most one component, edges taken as undirected; graphs with no nodes count
// as connected (zero components).
bool is_connected_graph(const HostGraph& g);

// n >= 1, exactly n edges, connected, and every node has indegree = outdegree = 1.
bool is_cycle_graph(const HostGraph& g);

// Arborescence: n >= 1, exactly n-1 edges, connected, every indegree <= 1
// (equivalently: a unique root with a unique directed path to every node).
bool is_tree_graph(const HostGraph& g);

// No directed cycle (self-loops included).
bool is_acyclic(const HostGraph& g);

// Acyclic and every outdegree <= 2.
bool is_bin_dag_graph(const HostGraph& g);

// Two-colourable by alternating search over undirected adjacency. Self-loops
// are ignored: they connect a node to itself only, which injective two-node
// rule matching can never see, so the colouring contract ignores them too.
bool is_bipartite(const HostGraph& g);

// ---------------------------------------------------------------------------
// Result checkers for the transformer programs. Each returns true when
// `result` is a correct output for `input`; on failure `why` (if non-null)
// receives a short diagnosis.

// Proper 2-colouring: the underlying graph equals the input (nodes in place,
// edge endpoint/label multiset preserved, edge marks cleared, no roots), every
// node is red or blue, and every non-loop edge joins differently marked nodes.
bool check_two_colouring(const HostGraph& input, const HostGraph& result, std::string* why);

// Graph-encoded topological sorting: one green chain-start node, every input
// node blue, the blue edges form a chain from the green node covering each
// blue node exactly once, the input's edges survive unmarked, and each of them
// points forward in chain order.
bool check_topological_sorting(const HostGraph& input, const HostGraph& result,
                               std::string* why);

// The result's edge pair set equals the reflexive-free reachability closure of
// the input (every pair u != v with a directed path of length >= 1), with no
// parallel duplicates and the node set untouched.
bool check_transitive_closure(const HostGraph& input, const HostGraph& result,
                              std::string* why);

// ---------------------------------------------------------------------------
// Canonical form: id-free serialization in list order. Two graphs have equal
// canonical forms iff they are isomorphic *and* agree on node-list / out-list
// iteration order, which is exactly the equivalence preserved by checkpoint
// rollback and by replaying one operation sequence on clones.
std::string canonical_host(const HostGraph& g);

// ---------------------------------------------------------------------------
// Brute-force injective matching (independent of the search-plan matcher).

// Full validity check of an assignment: totality, injectivity, label/mark/root
// agreement (roots preserved and reflected), endpoint consistency including
// either-direction edges, variable binding coherence, the application
// condition, and the dangling condition.
bool is_valid_match(const HostGraph& g, const Rule& r, const MatchAssignment& m);

// Every valid match, found by exhaustive enumeration.
std::vector<MatchAssignment> brute_force_matches(const HostGraph& g, const Rule& r);

// ---------------------------------------------------------------------------
// Exhaustive small-step outcome enumeration.
//
// Explores every derivation of a command AST under the nondeterministic
// semantics: rule-set calls branch over all rules and all brute-force matches,
// `or` branches both ways, if/try conditions may both succeed and fail when
// different matches disagree. Outcomes are final graphs (canonical forms),
// failure, and divergence (some infinite derivation exists; detected by a
// repeated loop-head state on one path, which is exact on finite state
// spaces). The engine's deterministic run must land inside this set.
struct SosOutcomes {
  std::set<std::string> graphs;  // canonical_host forms of reachable results
  bool can_fail = false;
  bool can_diverge = false;
};

// `budget` caps explored configurations; exceeding it throws std::runtime_error
// (an enumeration that large indicates a test design problem, never a pass).
SosOutcomes enumerate_outcomes(const CompiledProgram& program, const HostGraph& start,
                               std::uint64_t budget = 5'000'000);

}  // namespace gpr::oracle
