#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "gpr/interpreter.hpp"

namespace gpr {

// Names of the graph programs shipped with the engine:
//   is-cycle, is-cycle-slow, is-tree, is-bin-dag, is-connected,
//   2-colour, top-sort, transitive-closure
const std::vector<std::string>& bundled_program_names();

// Source text of a bundled program; throws ProgramError for unknown names.
std::string_view bundled_program_text(std::string_view name);

// Parsed and compiled bundled program.
CompiledProgram bundled_program(std::string_view name);

}  // namespace gpr
