#pragma once

#include <string>
#include <vector>

#include "arm/dsl/ast.hpp"

namespace arm::dsl {

// Canonical builtin programs: the baseline operators (m_cot, pi_rec,
// cot_sc_12, self_refine_5, llm_debate_4x3) and the two discovered programs
// shipped as interpreter conformance fixtures (critic_cot_v7,
// verified_weighted_meta). Throws UnknownBuiltin for anything else.
WorkflowProgram builtin(const std::string& name);

const std::vector<std::string>& builtin_names();

// Raw source text of a builtin (parsed lazily by builtin()).
const std::string& builtin_source(const std::string& name);

}  // namespace arm::dsl
