#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace gpr {

// A label is a (possibly empty) list of atoms; an atom is an integer or a string.
using Integer = long long;
using Atom = std::variant<Integer, std::string>;
using Label = std::vector<Atom>;

enum class NodeMark : std::uint8_t { none = 0, red, green, blue, grey };
enum class EdgeMark : std::uint8_t { none = 0, red, green, blue, dashed };

inline const char* to_string(NodeMark m) {
  switch (m) {
    case NodeMark::none: return "none";
    case NodeMark::red: return "red";
    case NodeMark::green: return "green";
    case NodeMark::blue: return "blue";
    case NodeMark::grey: return "grey";
  }
  return "?";
}

inline const char* to_string(EdgeMark m) {
  switch (m) {
    case EdgeMark::none: return "none";
    case EdgeMark::red: return "red";
    case EdgeMark::green: return "green";
    case EdgeMark::blue: return "blue";
    case EdgeMark::dashed: return "dashed";
  }
  return "?";
}

// Renders a label in the text format: `empty`, or atoms joined with ':'.
// Strings are double-quoted with backslash escapes for '"' and '\'.
std::string label_to_text(const Label& label);

}  // namespace gpr
