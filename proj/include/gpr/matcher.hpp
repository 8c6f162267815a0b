#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gpr/host_graph.hpp"
#include "gpr/rule.hpp"

namespace gpr {

// One step of a compiled search plan. Binding probes bind exactly one LHS node
// and/or one LHS edge; final probes validate the completed assignment.
struct Probe {
  enum class Kind : std::uint8_t {
    pick_root,        // bind lhs_node by scanning the host root list
    pick_node,        // bind lhs_node by scanning the host node list
    extend,           // bind lhs_edge (+ its far node lhs_node) from bound endpoint `from`
    check_closing,    // bind lhs_edge whose endpoints are both bound (incl. loops)
    final_dangling,   // deleted nodes leave no edges behind
    final_condition,  // rule application condition
  };
  Kind kind;
  int lhs_node = -1;      // LHS node index bound here (pick/extend)
  int lhs_edge = -1;      // LHS edge index bound here (extend/check_closing)
  int from = -1;          // LHS node index of the already-bound endpoint
  bool from_is_src = false;  // `from` is the LHS edge's source
  bool either = false;       // either-direction edge: scan out-list, then in-list
};

struct SearchPlan {
  const Rule* rule = nullptr;
  std::vector<Probe> probes;
  bool fast = false;
};

// Aggregated per-rule probe statistics (assembled by the interpreter's RunStats).
struct ProbeBudgetReport {
  std::string rule;
  std::uint64_t calls = 0;
  std::uint64_t probes = 0;
  std::uint64_t max_probes_per_call = 0;
};

// Compiles a validated rule into a probe sequence: root-anchored for fast rules,
// node-list-anchored otherwise; breadth-first edge extension with out-edges before
// in-edges per bound node; additional anchors for disconnected LHS components.
// Every LHS node and edge is bound by exactly one probe.
SearchPlan build_plan(const Rule& rule);

// Finds the first match in deterministic order (host insertion order per probe),
// or nullopt. `probes`, when given, is incremented once per candidate item
// inspected (nodes, edges, and final checks). Matched flags are used internally
// and are guaranteed clear again when the call returns.
std::optional<MatchAssignment> find_match(HostGraph& g, const SearchPlan& plan,
                                          std::uint64_t* probes = nullptr);

// O(1): size of the host root list.
int count_roots(const HostGraph& g);

}  // namespace gpr
