#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include "gpr/host_graph.hpp"
#include "gpr/interpreter.hpp"

namespace gpr {

struct ParseError : std::runtime_error {
  int line = 0, col = 0;
  ParseError(int l, int c, const std::string& msg)
      : std::runtime_error(std::to_string(l) + ":" + std::to_string(c) + ": " + msg),
        line(l),
        col(c) {}
};

// Host graph text:   Graph := "[" Node* "|" Edge* "]"
//   Node  := "(" Id ["(R)"] "," Label ["," NodeMark] ")"
//   Edge  := "(" Id "," SrcId "," TgtId "," Label ["," EdgeMark] ")"
//   Label := "empty" | Atom (":" Atom)*        Atom := integer | quoted string
// Whitespace and '#' line comments are insignificant. Node/edge ids are arbitrary
// integers, unique per section; edges referencing unknown node ids are rejected.
// `tokens`, when given, receives the number of tokens processed (single pass).
HostGraph parse_host(std::string_view text, std::uint64_t* tokens = nullptr);

// Prints nodes in node-list order, then each node's out-edges in out-list order,
// using the engine's own ids. parse_host(print_host(g)) reproduces g up to id
// renumbering in iteration order; printing is idempotent after one round trip.
std::string print_host(const HostGraph& g);

// Program text:
//   Decl     := Name "=" CommandExpr
//             | Name "(" [Var ("," Var)* ":" "list"] ")"
//               "{" "lhs" GraphLit "rhs" GraphLit ["where" Cond] "}"
//   Command  := Seq ("or" Seq)*        Seq := Post (";" Post)*     Post := Prim "!"*
//   Prim     := "(" Command ")" | "if" Arm "then" Arm ["else" Arm]
//             | "try" Arm ["then" Arm] ["else" Arm] | "skip" | "fail" | "break"
//             | "{" Name ("," Name)* "}" | Name                     Arm := Post
//   Cond     := CPrim ("and" CPrim)*
//   CPrim    := "not" CPrim | "(" Cond ")" | ("indeg"|"outdeg") "(" Id ")" Cmp Int
//             | "edge" "(" Id "," Id ")"
// Rule graph literals reuse the host grammar with three extensions: labels may be
// declared variables, marks may be `any`, and an edge id may carry "(B)" to match
// in either direction. Node ids shared between lhs and rhs form the interface.
ProgramSource parse_program(std::string_view text);

// Canonical re-emission; parse_program(print_program(p)) is structurally equal.
std::string print_program(const ProgramSource& p);

}  // namespace gpr
