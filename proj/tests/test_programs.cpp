#include <doctest.h>

#include <cmath>
#include <string>

#include "gpr/generators.hpp"
#include "gpr/interpreter.hpp"
#include "gpr/programs.hpp"
#include "gpr/text_io.hpp"
#include "oracles.hpp"

using namespace gpr;

namespace {

struct RunResult {
  OutcomeKind outcome;
  HostGraph graph;
  RunStats stats;
};

RunResult run_bundled(const std::string& name, HostGraph g) {
  CompiledProgram p = bundled_program(name);
  RunResult r{OutcomeKind::fail, std::move(g), {}};
  Limits limits;
  r.outcome = exec(p, r.graph, limits, r.stats);
  return r;
}

const RuleTally& tally(const std::string& program, const RunStats& stats,
                       const std::string& rule) {
  static CompiledProgram cached;  // per-lookup recompile is fine at test scale
  cached = bundled_program(program);
  return stats.per_rule[cached.rule_index.at(rule)];
}

bool accepts(const std::string& program, const HostGraph& g) {
  CompiledProgram p = bundled_program(program);
  HostGraph copy = g.clone();
  RunStats stats;
  Limits limits;
  OutcomeKind outcome = exec(p, copy, limits, stats);
  REQUIRE(outcome != OutcomeKind::limit);
  return outcome == OutcomeKind::graph;
}

}  // namespace

TEST_SUITE("programs") {

TEST_CASE("generator families have the documented shapes") {
  for (int n : {1, 2, 3, 4, 5, 8, 9, 10, 17, 40, 100}) {
    CAPTURE(n);
    HostGraph d = generate(GraphClass::discrete, n);
    CHECK(d.node_count() == n);
    CHECK(d.edge_count() == 0);

    HostGraph c = generate(GraphClass::cycle, n);
    CHECK(c.node_count() == n);
    CHECK(c.edge_count() == n);
    CHECK(oracle::is_cycle_graph(c));

    HostGraph l = generate(GraphClass::linked_list, n);
    CHECK(l.node_count() == n);
    CHECK(l.edge_count() == n - 1);
    CHECK(oracle::is_tree_graph(l));

    HostGraph s = generate(GraphClass::star, n);
    CHECK(s.node_count() == n);
    CHECK(s.edge_count() == n - 1);
    CHECK(oracle::is_connected_graph(s));

    HostGraph b = generate(GraphClass::binary_tree, n);
    CHECK(b.node_count() == n);
    CHECK(b.edge_count() == n - 1);
    CHECK(oracle::is_tree_graph(b));
    CHECK(oracle::is_bin_dag_graph(b));

    int k = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n))));
    HostGraph gr = generate(GraphClass::grid, n);
    CHECK(gr.node_count() == k * k);
    CHECK(gr.edge_count() == 2 * k * (k - 1));
    CHECK(oracle::is_connected_graph(gr));
    CHECK(oracle::is_acyclic(gr));

    int blocks = std::max(1, (n - 1 + 7) / 8);
    HostGraph gc = generate(GraphClass::grid_chain, n);
    CHECK(gc.node_count() == 8 * blocks + 1);
    CHECK(gc.edge_count() == 12 * blocks);
    CHECK(oracle::is_connected_graph(gc));
    CHECK(oracle::is_acyclic(gc));

    if (n >= 4) {
      int m = n / 2;
      HostGraph su = generate(GraphClass::sun, n);
      CHECK(su.node_count() == 2 * m);
      CHECK(su.edge_count() == 2 * m);
      CHECK(oracle::is_connected_graph(su));
      CHECK_FALSE(oracle::is_acyclic(su));
      CHECK_FALSE(oracle::is_cycle_graph(su));  // ray nodes break in/out degree 1
    }
  }
  CHECK_THROWS_AS(generate(GraphClass::sun, 3), std::invalid_argument);
  CHECK_THROWS_AS(generate(GraphClass::cycle, 0), std::invalid_argument);

  // Every class yields a legal input graph: grey, unrooted, unmarked edges.
  for (const std::string& name : graph_class_names()) {
    auto cls = class_from_name(name);
    REQUIRE(cls.has_value());
    CHECK(to_string(*cls) == name);
    CHECK_NOTHROW(validate_input_graph(generate(*cls, 12)));
  }
  CHECK_FALSE(class_from_name("pentagon").has_value());

  // Degree stays bounded in every family except star.
  for (GraphClass cls : {GraphClass::cycle, GraphClass::grid, GraphClass::grid_chain,
                         GraphClass::binary_tree, GraphClass::sun,
                         GraphClass::linked_list}) {
    HostGraph g = generate(cls, 60);
    for (NodeId v : oracle::all_nodes(g))
      CHECK(g.indegree(v) + g.outdegree(v) <= 4);
  }
  HostGraph st = generate(GraphClass::star, 60);
  NodeId centre = *st.first_host_node();
  CHECK(st.indegree(centre) + st.outdegree(centre) == 59);
}

TEST_CASE("validate_input_graph rejects roots, marked nodes and marked edges") {
  HostGraph g = generate(GraphClass::linked_list, 3);
  CHECK_NOTHROW(validate_input_graph(g));

  HostGraph rooted = g.clone();
  rooted.set_root(*rooted.first_host_node(), true);
  CHECK_THROWS_AS(validate_input_graph(rooted), std::runtime_error);

  HostGraph marked = g.clone();
  marked.set_node_mark(*marked.first_host_node(), NodeMark::red);
  CHECK_THROWS_AS(validate_input_graph(marked), std::runtime_error);

  HostGraph dashed = g.clone();
  dashed.set_edge_mark(*dashed.first_out_edge(*dashed.first_host_node()),
                       EdgeMark::dashed);
  CHECK_THROWS_AS(validate_input_graph(dashed), std::runtime_error);
}

TEST_CASE("random graphs are valid inputs and deterministic per seed") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    HostGraph g = random_graph(seed);
    CHECK_NOTHROW(validate_input_graph(g));
    CHECK(g.node_count() + g.edge_count() <= 40);
    CHECK(oracle::canonical_host(g) == oracle::canonical_host(random_graph(seed)));

    HostGraph dag = random_simple_dag(seed);
    CHECK_NOTHROW(validate_input_graph(dag));
    CHECK(oracle::is_acyclic(dag));
    for (NodeId v : oracle::all_nodes(dag))  // simple: no loops
      for (auto e = dag.first_out_edge(v); e; e = dag.next_out_edge(*e))
        CHECK(dag.source(*e) != dag.target(*e));
  }
}

TEST_CASE("cycle recognition on a 4-cycle: exact rule tallies") {
  RunResult r = run_bundled("is-cycle", generate(GraphClass::cycle, 4));
  CHECK(r.outcome == OutcomeKind::graph);
  CHECK(r.graph.node_count() == 0);
  CHECK(r.graph.edge_count() == 0);

  CHECK(tally("is-cycle", r.stats, "init").matched == 1);
  CHECK(tally("is-cycle", r.stats, "init").failed == 0);
  CHECK(tally("is-cycle", r.stats, "red3").matched == 2);
  CHECK(tally("is-cycle", r.stats, "red3").failed == 2);
  CHECK(tally("is-cycle", r.stats, "red2").matched == 1);
  CHECK(tally("is-cycle", r.stats, "red2").failed == 1);
  CHECK(tally("is-cycle", r.stats, "red1").matched == 1);
  CHECK(tally("is-cycle", r.stats, "red1").failed == 0);
  CHECK(tally("is-cycle", r.stats, "match").matched == 0);
  CHECK(tally("is-cycle", r.stats, "match").failed == 1);
  CHECK(r.stats.steps == 9);

  // Reduction length on a cycle: n - 1 shrinking applications before the loop ends.
  for (int n : {1, 2, 3, 7, 20}) {
    RunResult rn = run_bundled("is-cycle", generate(GraphClass::cycle, n));
    CHECK(rn.outcome == OutcomeKind::graph);
    std::uint64_t shrinks = tally("is-cycle", rn.stats, "red3").matched +
                            tally("is-cycle", rn.stats, "red2").matched;
    CHECK(shrinks == static_cast<std::uint64_t>(n - 1));
  }
}

TEST_CASE("tree recognition: completed reduction steps are exactly 2n-1 on trees") {
  // One macro-step for the initial root placement plus one per completed
  // reduction call (a prune, or a push followed by a verify). The reduction
  // weight 2*greys + blues starts at 2n-1, ends at 1 on acceptance, and drops
  // by exactly one per completed call, so accepting runs take exactly 2n-1.
  for (GraphClass cls : {GraphClass::linked_list, GraphClass::binary_tree}) {
    for (int n : {1, 2, 3, 5, 17, 64}) {
      CAPTURE(to_string(cls));
      CAPTURE(n);
      RunResult r = run_bundled("is-tree", generate(cls, n));
      CHECK(r.outcome == OutcomeKind::graph);
      std::uint64_t metric = 1 + tally("is-tree", r.stats, "prune").matched +
                             tally("is-tree", r.stats, "verify").matched;
      CHECK(metric == static_cast<std::uint64_t>(2 * n - 1));
    }
  }
  // Rejecting runs stop strictly earlier than the accepting worst case.
  for (const std::string& name : graph_class_names()) {
    GraphClass cls = *class_from_name(name);
    HostGraph g = generate(cls, 50);
    std::uint64_t nodes = g.node_count();
    RunResult r = run_bundled("is-tree", std::move(g));
    std::uint64_t metric = 1 + tally("is-tree", r.stats, "prune").matched +
                           tally("is-tree", r.stats, "verify").matched;
    CAPTURE(name);
    CHECK(metric <= 2 * nodes - 1);
  }
}

TEST_CASE("cycle recognition rejects a discrete graph after four steps") {
  RunResult r = run_bundled("is-cycle", generate(GraphClass::discrete, 50));
  CHECK(r.outcome == OutcomeKind::fail);
  // init roots a node, both loop members fail once, then the mandatory red1 fails.
  CHECK(r.stats.steps == 4);
}

TEST_CASE("empty-graph conventions across the recognizers") {
  const std::string empty = "[ | ]";
  CHECK_FALSE(accepts("is-cycle", parse_host(empty)));
  CHECK_FALSE(accepts("is-tree", parse_host(empty)));
  CHECK(accepts("is-bin-dag", parse_host(empty)));
  CHECK(accepts("is-connected", parse_host(empty)));

  RunResult r = run_bundled("2-colour", parse_host(empty));
  CHECK(r.outcome == OutcomeKind::graph);
  CHECK(r.graph.node_count() == 0);
}

TEST_CASE("recognizers agree with the oracle predicates on small families") {
  for (int n = 1; n <= 6; ++n) {
    for (const std::string& name : graph_class_names()) {
      GraphClass cls = *class_from_name(name);
      if (cls == GraphClass::sun && n < 4) continue;
      HostGraph g = generate(cls, n);
      CAPTURE(name);
      CAPTURE(n);
      CHECK(accepts("is-cycle", g) == oracle::is_cycle_graph(g));
      CHECK(accepts("is-cycle-slow", g) == oracle::is_cycle_graph(g));
      CHECK(accepts("is-tree", g) == oracle::is_tree_graph(g));
      CHECK(accepts("is-bin-dag", g) == oracle::is_bin_dag_graph(g));
      CHECK(accepts("is-connected", g) == oracle::is_connected_graph(g));
    }
  }
}

TEST_CASE("two-colouring: proper colourings on bipartite inputs, identity otherwise") {
  // Even cycles and trees are bipartite; odd cycles are not.
  for (auto [cls, n, bipartite] :
       {std::tuple{GraphClass::cycle, 6, true}, {GraphClass::cycle, 5, false},
        {GraphClass::star, 7, true}, {GraphClass::binary_tree, 10, true},
        {GraphClass::grid, 9, true}, {GraphClass::sun, 8, true}}) {
    HostGraph input = generate(cls, n);
    CAPTURE(to_string(cls));
    CAPTURE(n);
    CHECK(oracle::is_bipartite(input) == bipartite);
    RunResult r = run_bundled("2-colour", input.clone());
    CHECK(r.outcome == OutcomeKind::graph);
    std::string why;
    if (bipartite) {
      CHECK_MESSAGE(oracle::check_two_colouring(input, r.graph, &why), why);
    } else {
      CHECK(print_host(r.graph) == print_host(input));
    }
  }
}

TEST_CASE("topological sorting threads a chain through acyclic inputs") {
  for (auto [cls, n] : {std::tuple{GraphClass::linked_list, 5},
                        {GraphClass::binary_tree, 7}, {GraphClass::grid, 9},
                        {GraphClass::grid_chain, 10}}) {
    HostGraph input = generate(cls, n);
    CAPTURE(to_string(cls));
    RunResult r = run_bundled("top-sort", input.clone());
    CHECK(r.outcome == OutcomeKind::graph);
    std::string why;
    CHECK_MESSAGE(oracle::check_topological_sorting(input, r.graph, &why), why);
  }
  CHECK_FALSE(accepts("top-sort", generate(GraphClass::cycle, 4)));
  CHECK_FALSE(accepts("top-sort", generate(GraphClass::sun, 6)));
}

TEST_CASE("transitive closure adds exactly the missing reachability edges") {
  for (auto [cls, n] : {std::tuple{GraphClass::linked_list, 4},
                        {GraphClass::binary_tree, 7}, {GraphClass::discrete, 3}}) {
    HostGraph input = generate(cls, n);
    CAPTURE(to_string(cls));
    RunResult r = run_bundled("transitive-closure", input.clone());
    CHECK(r.outcome == OutcomeKind::graph);
    std::string why;
    CHECK_MESSAGE(oracle::check_transitive_closure(input, r.graph, &why), why);
  }
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    HostGraph input = random_simple_dag(seed, 8);
    CAPTURE(seed);
    RunResult r = run_bundled("transitive-closure", input.clone());
    CHECK(r.outcome == OutcomeKind::graph);
    std::string why;
    CHECK_MESSAGE(oracle::check_transitive_closure(input, r.graph, &why), why);
  }
}

TEST_CASE("bundled catalogue: lookup, unknown names, text round-trips") {
  CHECK(bundled_program_names().size() == 8);
  for (const std::string& name : bundled_program_names()) {
    CAPTURE(name);
    std::string_view text = bundled_program_text(name);
    CHECK_FALSE(text.empty());
    CHECK_NOTHROW(bundled_program(name));
    std::string printed = print_program(parse_program(std::string(text)));
    CHECK(print_program(parse_program(printed)) == printed);
  }
  CHECK_THROWS_AS(bundled_program_text("frobnicate"), ProgramError);
  CHECK_THROWS_AS(bundled_program("frobnicate"), ProgramError);
}

}  // TEST_SUITE
