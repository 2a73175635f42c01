#pragma once

#include <string>

#include "arm/dsl/ast.hpp"

namespace arm::dsl {

// Parses, validates and canonicalizes one workflow program.
// Throws ParseError (syntax) or ValidationError (unbound reference, missing
// Return, unbounded Loop, misplaced primitives, ...).
WorkflowProgram parse_program(const std::string& source);

// Canonical pretty-printer; parse_program(canonical_print(p)) reproduces the
// program structurally, and the program hash is taken over this form.
std::string canonical_print(const WorkflowProgram& program);

}  // namespace arm::dsl
