#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "gpr/host_graph.hpp"
#include "gpr/matcher.hpp"
#include "gpr/rule.hpp"

namespace gpr {

// Command AST after procedure inlining. Rule-set calls hold indices into
// CompiledProgram::rules (textual order preserved).
struct Command {
  enum class Kind : std::uint8_t {
    rule_call,  // {r1, ..., rk}; leftmost applicable member is applied
    seq,        // a ; b
    if_,        // if a then b else c (a runs on a checkpoint, always rolled back)
    try_,       // try a then b else c (a's changes kept when it succeeds)
    loop,       // a!  (as long as possible)
    break_,
    or_,  // committed left choice
    skip,
    fail,
  };
  Kind kind;
  std::vector<int> rules;
  std::unique_ptr<Command> a, b, c;
};
using CommandPtr = std::unique_ptr<Command>;

// Pre-inlining program representation produced by the parser. Calls to names are
// resolved during inlining: procedure names expand to their bodies (macro-like,
// recursion rejected), rule names become singleton rule-set calls.
struct ProgramSource {
  struct SourceCommand;
  using SourceCommandPtr = std::unique_ptr<SourceCommand>;
  struct SourceCommand {
    Command::Kind kind;               // rule_call unused here; `call` carries names
    bool is_call = false;             // bare name or {names}
    std::vector<std::string> names;   // call targets
    SourceCommandPtr a, b, c;
  };
  std::vector<Rule> rules;                         // declaration order
  std::vector<std::pair<std::string, SourceCommandPtr>> procedures;
  std::map<std::string, int> rule_index;
};

struct CompiledProgram {
  std::vector<Rule> rules;        // stable storage; plans point into it
  std::vector<SearchPlan> plans;  // parallel to rules
  CommandPtr main;
  std::map<std::string, int> rule_index;
};

// Expands procedure calls in `Main` (errors: missing Main, recursive procedure,
// call to an undeclared name, rule set containing a non-rule). Checks that break
// appears only inside a loop body, where if/try conditions open a new non-loop
// scope. Validates every rule and builds its search plan.
CompiledProgram compile(ProgramSource source);

struct Limits {
  std::uint64_t max_steps = 1'000'000'000;
  // Command dispatches bound loops whose bodies succeed without performing any
  // step (e.g. `skip!`), which would otherwise spin below the step counter.
  std::uint64_t max_dispatches = 1'000'000'000'000'000'000;
};

enum class OutcomeKind { graph, fail, limit };

struct RuleTally {
  std::uint64_t calls = 0;            // match attempts
  std::uint64_t matched = 0;          // completed applications
  std::uint64_t failed = 0;           // failed applications
  std::uint64_t probes = 0;
  std::uint64_t max_probes_per_call = 0;
};

struct RunStats {
  std::uint64_t steps = 0;   // completed + failed rule applications + breaks + fails
  std::uint64_t probes = 0;  // total matcher candidate inspections
  std::vector<RuleTally> per_rule;  // parallel to CompiledProgram::rules
  double wall_ms = 0.0;             // filled by callers that time runs
  std::vector<ProbeBudgetReport> probe_report(const CompiledProgram& p) const;
};

// Step trace callback: step index (1-based), what happened ("break"/"fail" or the
// rule name), whether a rule application completed, probes spent on the attempt.
using TraceFn =
    std::function<void(std::uint64_t step, std::string_view what, bool matched,
                       std::uint64_t probes)>;

// Executes Main on the graph in place. Outcome `graph` leaves the result in `g`;
// `fail`/`limit` leave an unspecified intermediate state behind.
OutcomeKind exec(const CompiledProgram& program, HostGraph& g, const Limits& limits,
                 RunStats& stats, const TraceFn& trace = {});

}  // namespace gpr
