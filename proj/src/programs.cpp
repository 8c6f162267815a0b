#include "gpr/programs.hpp"

#include <utility>

#include "gpr/text_io.hpp"

namespace gpr {

namespace {

// Deletes a rooted grey cycle node by node: red3 contracts a path of three nodes
// around the root, red2 collapses a rooted 2-cycle into a looping node, red1
// removes the final rooted loop node. Check rejects leftover (unreachable) nodes.
constexpr std::string_view kIsCycle = R"(
Main = init; Reduce; Check
Reduce = {red3, red2}!; red1
Check = if match then fail

init(x: list) {
  lhs [ (1, x, grey) | ]
  rhs [ (1(R), x, grey) | ]
}

red1(a, x: list) {
  lhs [ (1(R), x, grey) | (1, 1, 1, a) ]
  rhs [ | ]
}

red2(a, b, x, y: list) {
  lhs [ (1(R), x, grey) (2, y, grey) | (1, 1, 2, a) (2, 2, 1, b) ]
  rhs [ (3(R), x, grey) | (1, 3, 3, a) ]
}

red3(a, b, x, y, z: list) {
  lhs [ (1, x, grey) (2(R), y, grey) (3, z, grey) | (1, 1, 2, a) (2, 2, 3, b) ]
  rhs [ (1(R), x, grey) (3, z, grey) | (1, 1, 3, a) ]
}

match(x: list) {
  lhs [ (1, x, grey) | ]
  rhs [ (1, x, grey) | ]
}
)";

// Same reduction without roots: every rule anchors on the global node list.
constexpr std::string_view kIsCycleSlow = R"(
Main = Reduce; Check
Reduce = {red3, red2}!; red1
Check = if match then fail

red1(a, x: list) {
  lhs [ (1, x, grey) | (1, 1, 1, a) ]
  rhs [ | ]
}

red2(a, b, x, y: list) {
  lhs [ (1, x, grey) (2, y, grey) | (1, 1, 2, a) (2, 2, 1, b) ]
  rhs [ (3, x, grey) | (1, 3, 3, a) ]
}

red3(a, b, x, y, z: list) {
  lhs [ (1, x, grey) (2, y, grey) (3, z, grey) | (1, 1, 2, a) (2, 2, 3, b) ]
  rhs [ (1, x, grey) (3, z, grey) | (1, 1, 3, a) ]
}

match(x: list) {
  lhs [ (1, x, grey) | ]
  rhs [ (1, x, grey) | ]
}
)";

// Depth-first tree walk: push advances the root into an unvisited (grey) child,
// verify bounds the child's indegree, prune deletes a fully-explored leaf and
// retreats. Blue trail marking guarantees termination on non-trees.
constexpr std::string_view kIsTree = R"(
Main = init; Reduce!; Check
Reduce = try prune else (push; verify)
Check = if {match, loop} then fail

init(x: list) {
  lhs [ (1, x, grey) | ]
  rhs [ (1(R), x, blue) | ]
  where indeg(1) = 0
}

prune(a, x, y: list) {
  lhs [ (1, x, blue) (2(R), y, blue) | (1, 1, 2, a) ]
  rhs [ (1(R), x, blue) | ]
}

push(a, x, y: list) {
  lhs [ (1(R), x, blue) (2, y, grey) | (1, 1, 2, a) ]
  rhs [ (1, x, blue) (2(R), y, blue) | (1, 1, 2, a) ]
}

verify(x: list) {
  lhs [ (1(R), x, blue) | ]
  rhs [ (1(R), x, blue) | ]
  where indeg(1) < 2
}

match(x: list) {
  lhs [ (1, x, grey) | ]
  rhs [ (1, x, grey) | ]
}

loop(a, x: list) {
  lhs [ (1(R), x, blue) | (1, 1, 1, a) ]
  rhs [ (1(R), x, blue) | (1, 1, 1, a) ]
}
)";

// Climbs to a source along unmarked in-edges (dashing the trail), then deletes
// the source if it has no in-edges and at most two out-edges; otherwise leaves an
// unmarked root as a failure flag. The outer loop restarts on leftover grey nodes.
constexpr std::string_view kIsBinDag = R"(
Main = (init; Reduce!; Guard)!; Check
Reduce = up!; try Delete else set_flag
Delete = {del1, del1_d, del21, del21_d, del22, del22_d, del0}
Guard = if flag then break
Check = if flag then fail

init(x: list) {
  lhs [ (1, x, grey) | ]
  rhs [ (1(R), x, grey) | ]
}

up(a, x, y: list) {
  lhs [ (1(R), x, grey) (2, y, grey) | (1, 2, 1, a) ]
  rhs [ (1, x, grey) (2(R), y, grey) | (1, 2, 1, a, dashed) ]
  where outdeg(1) < 3
}

del1(a, x, y: list) {
  lhs [ (1, x, grey) (2(R), y, grey) | (1, 2, 1, a) ]
  rhs [ (1(R), x, grey) | ]
}

del1_d(a, x, y: list) {
  lhs [ (1, x, grey) (2(R), y, grey) | (1, 2, 1, a, dashed) ]
  rhs [ (1(R), x, grey) | ]
}

del21(a, b, x, y: list) {
  lhs [ (1, x, grey) (2(R), y, grey) | (1, 2, 1, a) (2, 2, 1, b) ]
  rhs [ (1(R), x, grey) | ]
}

del21_d(a, b, x, y: list) {
  lhs [ (1, x, grey) (2(R), y, grey) | (1, 2, 1, a, dashed) (2, 2, 1, b) ]
  rhs [ (1(R), x, grey) | ]
}

del22(a, b, x, y, z: list) {
  lhs [ (1, x, grey) (2, y, grey) (3(R), z, grey) | (1, 3, 1, a) (2, 3, 2, b) ]
  rhs [ (1(R), x, grey) (2, y, grey) | ]
}

del22_d(a, b, x, y, z: list) {
  lhs [ (1, x, grey) (2, y, grey) (3(R), z, grey) | (1, 3, 1, a, dashed) (2, 3, 2, b) ]
  rhs [ (1(R), x, grey) (2, y, grey) | ]
}

del0(x: list) {
  lhs [ (1(R), x, grey) | ]
  rhs [ | ]
}

set_flag(x: list) {
  lhs [ (1(R), x, grey) | ]
  rhs [ (1(R), x) | ]
}

flag(x: list) {
  lhs [ (1(R), x) | ]
  rhs [ (1(R), x) | ]
}
)";

// Undirected depth-first search: forward visits a grey neighbour over an edge in
// either direction, back retreats and unmarks. Any grey node surviving the walk
// proves a second component.
constexpr std::string_view kIsConnected = R"(
Main = try init then (DFS!; Check)
DFS = forward!; try back else break
Check = if match then fail

init(x: list) {
  lhs [ (1, x, grey) | ]
  rhs [ (1(R), x, blue) | ]
}

forward(a, x, y: list) {
  lhs [ (1(R), x, blue) (2, y, grey) | (1(B), 1, 2, a) ]
  rhs [ (1, x, blue) (2(R), y, blue) | (1(B), 1, 2, a, dashed) ]
}

back(a, x, y: list) {
  lhs [ (1, x, blue) (2(R), y, blue) | (1(B), 1, 2, a, dashed) ]
  rhs [ (1(R), x, blue) (2, y) | (1(B), 1, 2, a) ]
}

match(x: list) {
  lhs [ (1, x, grey) | ]
  rhs [ (1, x, grey) | ]
}
)";

// Alternating depth-first colouring; a conflict unmarks the root, which makes the
// final unroot fail so the outer try restores the untouched input graph.
constexpr std::string_view kTwoColour = R"(
Main = try (init; Colour!; unroot)
Colour = (ColourNode; try Invalid then break)!; Backtrack
ColourNode = {colour_blue, colour_red}
Invalid = {adjacent_blues, adjacent_reds}
Backtrack = try {back_blue, back_red} else break

init(x: list) {
  lhs [ (1, x, grey) | ]
  rhs [ (1(R), x, blue) | ]
}

unroot(x: list) {
  lhs [ (1(R), x, any) | ]
  rhs [ (1, x, any) | ]
}

colour_blue(a, x, y: list) {
  lhs [ (1(R), x, red) (2, y, grey) | (1(B), 1, 2, a) ]
  rhs [ (1, x, red) (2(R), y, blue) | (1(B), 1, 2, a, dashed) ]
}

colour_red(a, x, y: list) {
  lhs [ (1(R), x, blue) (2, y, grey) | (1(B), 1, 2, a) ]
  rhs [ (1, x, blue) (2(R), y, red) | (1(B), 1, 2, a, dashed) ]
}

adjacent_blues(a, x, y: list) {
  lhs [ (1(R), x, blue) (2, y, blue) | (1(B), 1, 2, a) ]
  rhs [ (1(R), x) (2, y, blue) | (1(B), 1, 2, a) ]
}

adjacent_reds(a, x, y: list) {
  lhs [ (1(R), x, red) (2, y, red) | (1(B), 1, 2, a) ]
  rhs [ (1(R), x) (2, y, red) | (1(B), 1, 2, a) ]
}

back_blue(a, x, y: list) {
  lhs [ (1, x, red) (2(R), y, blue) | (1(B), 1, 2, a, dashed) ]
  rhs [ (1(R), x, red) (2, y, blue) | (1(B), 1, 2, a) ]
}

back_red(a, x, y: list) {
  lhs [ (1, x, blue) (2(R), y, red) | (1(B), 1, 2, a, dashed) ]
  rhs [ (1(R), x, blue) (2, y, red) | (1(B), 1, 2, a) ]
}
)";

// Two phases sharing one green stack root: StackNodes performs an undirected DFS
// pushing every node onto a red stack; LoopNodes pops it, running a directed DFS
// (SortNodes) from each unsorted node that pushes finished nodes onto a blue
// stack — the blue chain read from the green root is the topological order.
// Cycles are detected by loop/two_cycle/back_edge and flagged via set_flag.
constexpr std::string_view kTopSort = R"(
Main = try init then (StackNodes!; unroot; LoopNodes!; if flag then fail)
StackNodes = {forward1, forward2}!; try back else break
LoopNodes = if flag then break; try skip1 else (try skip2 else (try init1 then (SortNodes!) else (try init2 then (SortNodes!) else break)))
SortNodes = forward!; if {loop, two_cycle, back_edge} then (set_flag; break); try back_push else (try back_first_push else ((try grey_push else grey_first_push); break))

flag(x: list) {
  lhs [ (1(R), x) | ]
  rhs [ (1(R), x) | ]
}

init(x: list) {
  lhs [ (1, x, grey) | ]
  rhs [ (1(R), x, red) (2(R), empty, green) | (1, 2, 1, empty, red) ]
}

forward1(a, x, y: list) {
  lhs [ (1(R), x, red) (2, y, grey) (3(R), empty, green)
      | (1(B), 1, 2, a) (2, 3, 1, empty, red) ]
  rhs [ (1, x, red) (2(R), y, red) (3(R), empty, green)
      | (1(B), 1, 2, a, dashed) (3, 3, 2, empty, red) (4, 2, 1, empty, red) ]
}

forward2(a, x, y, z: list) {
  lhs [ (1(R), x, red) (2, y, grey) (3, z, red) (4(R), empty, green)
      | (1(B), 1, 2, a) (2, 4, 3, empty, red) ]
  rhs [ (1, x, red) (2(R), y, red) (3, z, red) (4(R), empty, green)
      | (1(B), 1, 2, a, dashed) (3, 2, 3, empty, red) (4, 4, 2, empty, red) ]
}

back(a, x, y: list) {
  lhs [ (1, x, red) (2(R), y, red) | (1(B), 1, 2, a, dashed) ]
  rhs [ (1(R), x, red) (2, y, red) | (1(B), 1, 2, a) ]
}

unroot(x: list) {
  lhs [ (1(R), x, red) | ]
  rhs [ (1, x, red) | ]
}

skip1(x, y, z: list) {
  lhs [ (1, x, blue) (2, y, any) (3(R), z, green)
      | (1, 1, 2, empty, red) (2, 3, 1, empty, red) ]
  rhs [ (1, x, blue) (2, y, any) (3(R), z, green) | (1, 3, 2, empty, red) ]
}

skip2(x, y: list) {
  lhs [ (1, x, blue) (2(R), y, green) | (1, 2, 1, empty, red) ]
  rhs [ (1, x, blue) (2(R), y, green) | ]
}

init1(x, y, z: list) {
  lhs [ (1, x, red) (2, y, any) (3(R), z, green)
      | (1, 1, 2, empty, red) (2, 3, 1, empty, red) ]
  rhs [ (1(R), x, grey) (2, y, any) (3(R), z, green) | (1, 3, 2, empty, red) ]
}

init2(x, y: list) {
  lhs [ (1, x, red) (2(R), y, green) | (1, 2, 1, empty, red) ]
  rhs [ (1(R), x, grey) (2(R), y, green) | ]
}

forward(a, x, y: list) {
  lhs [ (1(R), x, grey) (2, y, red) | (1, 1, 2, a) ]
  rhs [ (1, x, grey) (2(R), y, grey) | (1, 1, 2, a, dashed) ]
}

loop(a, x: list) {
  lhs [ (1(R), x, grey) | (1, 1, 1, a) ]
  rhs [ (1(R), x, grey) | (1, 1, 1, a) ]
}

two_cycle(a, b, x, y: list) {
  lhs [ (1, x, grey) (2(R), y, grey) | (1, 1, 2, a, dashed) (2, 2, 1, b) ]
  rhs [ (1, x, grey) (2(R), y, grey) | (1, 1, 2, a, dashed) (2, 2, 1, b) ]
}

back_edge(a, b, x, y, z: list) {
  lhs [ (1, x, grey) (2(R), y, grey) (3, z, grey) | (1, 2, 3, a) (2, 3, 1, b, dashed) ]
  rhs [ (1, x, grey) (2(R), y, grey) (3, z, grey) | (1, 2, 3, a) (2, 3, 1, b, dashed) ]
}

set_flag(x: list) {
  lhs [ (1(R), x, grey) | ]
  rhs [ (1(R), x) | ]
}

back_push(a, x, y, z: list) {
  lhs [ (1, x, grey) (2(R), y, grey) (3(R), 0, green) (4, z, blue)
      | (1, 1, 2, a, dashed) (2, 3, 4, empty, blue) ]
  rhs [ (1(R), x, grey) (2, y, blue) (3(R), 0, green) (4, z, blue)
      | (1, 1, 2, a) (2, 3, 2, empty, blue) (3, 2, 4, empty, blue) ]
}

back_first_push(a, x, y: list) {
  lhs [ (1, x, grey) (2(R), y, grey) (3(R), empty, green) | (1, 1, 2, a, dashed) ]
  rhs [ (1(R), x, grey) (2, y, blue) (3(R), 0, green)
      | (1, 1, 2, a) (2, 3, 2, empty, blue) ]
}

grey_push(x, y: list) {
  lhs [ (1(R), x, grey) (2, y, blue) (3(R), 0, green) | (1, 3, 2, empty, blue) ]
  rhs [ (1, x, blue) (2, y, blue) (3(R), 0, green)
      | (1, 3, 1, empty, blue) (2, 1, 2, empty, blue) ]
}

grey_first_push(x: list) {
  lhs [ (1(R), x, grey) (2(R), empty, green) | ]
  rhs [ (1, x, blue) (2(R), 0, green) | (1, 2, 1, empty, blue) ]
}
)";

// Adds a shortcut edge for every composable pair of edges until saturation.
constexpr std::string_view kTransitiveClosure = R"(
Main = link!

link(a, b, x, y, z: list) {
  lhs [ (1, x, grey) (2, y, grey) (3, z, grey) | (1, 1, 2, a) (2, 2, 3, b) ]
  rhs [ (1, x, grey) (2, y, grey) (3, z, grey)
      | (1, 1, 2, a) (2, 2, 3, b) (3, 1, 3, empty) ]
  where not edge(1, 3)
}
)";

}  // namespace

const std::vector<std::string>& bundled_program_names() {
  static const std::vector<std::string> names = {
      "is-cycle", "is-cycle-slow", "is-tree",  "is-bin-dag",
      "is-connected", "2-colour",  "top-sort", "transitive-closure"};
  return names;
}

std::string_view bundled_program_text(std::string_view name) {
  if (name == "is-cycle") return kIsCycle;
  if (name == "is-cycle-slow") return kIsCycleSlow;
  if (name == "is-tree") return kIsTree;
  if (name == "is-bin-dag") return kIsBinDag;
  if (name == "is-connected") return kIsConnected;
  if (name == "2-colour") return kTwoColour;
  if (name == "top-sort") return kTopSort;
  if (name == "transitive-closure") return kTransitiveClosure;
  throw ProgramError("unknown bundled program '" + std::string(name) + "'");
}

CompiledProgram bundled_program(std::string_view name) {
  return compile(parse_program(bundled_program_text(name)));
}

}  // namespace gpr
