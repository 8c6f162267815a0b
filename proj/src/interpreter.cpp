#include "gpr/interpreter.hpp"

#include <set>

namespace gpr {

namespace {

using SourceCommand = ProgramSource::SourceCommand;

struct Inliner {
  const ProgramSource& src;
  std::map<std::string, const SourceCommand*> procs;
  std::set<std::string> expanding;  // recursion detection

  CommandPtr expand(const SourceCommand& c) {
    if (c.is_call) return expand_call(c);
    auto out = std::make_unique<Command>();
    out->kind = c.kind;
    if (c.a) out->a = expand(*c.a);
    if (c.b) out->b = expand(*c.b);
    if (c.c) out->c = expand(*c.c);
    return out;
  }

  CommandPtr expand_call(const SourceCommand& c) {
    if (c.names.size() == 1) {
      const std::string& n = c.names[0];
      auto rit = src.rule_index.find(n);
      if (rit != src.rule_index.end()) {
        auto out = std::make_unique<Command>();
        out->kind = Command::Kind::rule_call;
        out->rules.push_back(rit->second);
        return out;
      }
      auto pit = procs.find(n);
      if (pit != procs.end()) {
        if (!expanding.insert(n).second)
          throw ProgramError("procedure '" + n + "' is recursive");
        CommandPtr body = expand(*pit->second);
        expanding.erase(n);
        return body;
      }
      throw ProgramError("call to undeclared name '" + n + "'");
    }
    auto out = std::make_unique<Command>();
    out->kind = Command::Kind::rule_call;
    for (const std::string& n : c.names) {
      auto rit = src.rule_index.find(n);
      if (rit == src.rule_index.end())
        throw ProgramError("rule set member '" + n + "' is not a declared rule");
      out->rules.push_back(rit->second);
    }
    return out;
  }
};

// break may appear only inside a loop body; entering an if/try condition leaves
// the loop context (a break cannot cross a condition boundary).
void check_breaks(const Command& c, bool in_loop) {
  switch (c.kind) {
    case Command::Kind::break_:
      if (!in_loop) throw ProgramError("break outside of a loop body");
      return;
    case Command::Kind::seq:
    case Command::Kind::or_:
      check_breaks(*c.a, in_loop);
      check_breaks(*c.b, in_loop);
      return;
    case Command::Kind::if_:
    case Command::Kind::try_:
      check_breaks(*c.a, false);  // condition
      check_breaks(*c.b, in_loop);
      check_breaks(*c.c, in_loop);
      return;
    case Command::Kind::loop:
      check_breaks(*c.a, true);
      return;
    default:
      return;
  }
}

// A loop body whose failure cannot leave partial changes behind runs without a
// checkpoint: rule-set calls are atomic (nothing changes unless a full match is
// applied), and skip/fail/break do not touch the graph.
bool atomic_loop_body(const Command& c) {
  switch (c.kind) {
    case Command::Kind::rule_call:
    case Command::Kind::skip:
    case Command::Kind::fail:
    case Command::Kind::break_:
      return true;
    default:
      return false;
  }
}

}  // namespace

CompiledProgram compile(ProgramSource source) {
  const SourceCommand* main_body = nullptr;
  Inliner inliner{source, {}, {}};
  for (const auto& [name, body] : source.procedures) inliner.procs[name] = body.get();
  for (const auto& [name, body] : source.procedures)
    if (name == "Main") main_body = body.get();
  if (!main_body) throw ProgramError("program has no Main procedure");

  CompiledProgram out;
  inliner.expanding.insert("Main");
  out.main = inliner.expand(*main_body);
  check_breaks(*out.main, false);

  out.rules = std::move(source.rules);
  out.rule_index = std::move(source.rule_index);
  out.plans.reserve(out.rules.size());
  for (Rule& r : out.rules) {
    validate_rule(r);
    out.plans.push_back(build_plan(r));
  }
  return out;
}

std::vector<ProbeBudgetReport> RunStats::probe_report(const CompiledProgram& p) const {
  std::vector<ProbeBudgetReport> out;
  for (std::size_t i = 0; i < per_rule.size() && i < p.rules.size(); ++i) {
    ProbeBudgetReport r;
    r.rule = p.rules[i].name;
    r.calls = per_rule[i].calls;
    r.probes = per_rule[i].probes;
    r.max_probes_per_call = per_rule[i].max_probes_per_call;
    out.push_back(std::move(r));
  }
  return out;
}

namespace {

struct StepLimitExceeded {};

enum class Res : std::uint8_t { ok, failed, broke };

struct Evaluator {
  const CompiledProgram& prog;
  HostGraph& g;
  const Limits& limits;
  RunStats& stats;
  const TraceFn& trace;
  std::uint64_t dispatches = 0;

  void count_step(std::string_view what, bool matched, std::uint64_t probes) {
    if (++stats.steps > limits.max_steps) throw StepLimitExceeded{};
    if (trace) trace(stats.steps, what, matched, probes);
  }

  Res rule_call(const Command& c) {
    for (int idx : c.rules) {
      RuleTally& tally = stats.per_rule[idx];
      ++tally.calls;
      std::uint64_t probes = 0;
      auto m = find_match(g, prog.plans[idx], &probes);
      tally.probes += probes;
      stats.probes += probes;
      if (probes > tally.max_probes_per_call) tally.max_probes_per_call = probes;
      if (m) {
        apply_at(g, prog.rules[idx], *m);
        ++tally.matched;
        count_step(prog.rules[idx].name, true, probes);
        return Res::ok;
      }
      ++tally.failed;
      count_step(prog.rules[idx].name, false, probes);
    }
    return Res::failed;
  }

  Res eval(const Command& c) {
    if (++dispatches > limits.max_dispatches) throw StepLimitExceeded{};
    switch (c.kind) {
      case Command::Kind::rule_call:
        return rule_call(c);
      case Command::Kind::seq: {
        Res r = eval(*c.a);
        return r == Res::ok ? eval(*c.b) : r;
      }
      case Command::Kind::if_: {
        auto cp = g.checkpoint();
        Res cond = eval(*c.a);
        g.rollback(cp);  // the condition never affects the outcome graph
        return eval(cond == Res::ok ? *c.b : *c.c);
      }
      case Command::Kind::try_: {
        auto cp = g.checkpoint();
        Res cond = eval(*c.a);
        if (cond == Res::ok) {
          g.commit(cp);  // keep the condition's changes
          return eval(*c.b);
        }
        g.rollback(cp);
        return eval(*c.c);
      }
      case Command::Kind::loop: {
        if (atomic_loop_body(*c.a)) {
          while (true) {
            Res r = eval(*c.a);
            if (r == Res::failed) return Res::ok;  // body left the graph untouched
            if (r == Res::broke) return Res::ok;
          }
        }
        while (true) {
          auto cp = g.checkpoint();
          Res r = eval(*c.a);
          if (r == Res::ok) {
            g.commit(cp);
            continue;
          }
          if (r == Res::failed) {
            g.rollback(cp);  // discard the failed iteration's partial changes
            return Res::ok;
          }
          g.commit(cp);  // break surfaces, keeping the iteration's changes
          return Res::ok;
        }
      }
      case Command::Kind::break_:
        count_step("break", false, 0);
        return Res::broke;
      case Command::Kind::or_:
        return eval(*c.a);  // committed left choice
      case Command::Kind::skip:
        return Res::ok;
      case Command::Kind::fail:
        count_step("fail", false, 0);
        return Res::failed;
    }
    return Res::failed;
  }
};

}  // namespace

OutcomeKind exec(const CompiledProgram& program, HostGraph& g, const Limits& limits,
                 RunStats& stats, const TraceFn& trace) {
  stats.per_rule.assign(program.rules.size(), RuleTally{});
  stats.steps = 0;
  stats.probes = 0;
  Evaluator ev{program, g, limits, stats, trace};
  try {
    Res r = ev.eval(*program.main);
    // break cannot escape Main: compile() rejects it outside loop bodies.
    return r == Res::ok ? OutcomeKind::graph : OutcomeKind::fail;
  } catch (const StepLimitExceeded&) {
    return OutcomeKind::limit;
  }
}

}  // namespace gpr
