#pragma once

namespace arm::review::prompts {

// Reviewer prompt assets. The source paper defers its Critic/Designer
// prompts to an appendix that ships programs instead, so these texts are
// project-authored reconstructions; they are versioned so runs can pin them.
inline constexpr const char* kVersion = "reviewer-v1";

inline constexpr const char* kCriticInstructions =
    "You are the Critic of a program-search system that evolves reasoning "
    "workflows. Study the parent program and the execution traces of its "
    "latest evaluation; failed problems are listed first. Identify logical "
    "errors, inefficiencies, or recurring failure patterns in HOW THE PROGRAM "
    "ORCHESTRATES ITS REASONING (not arithmetic slips of individual "
    "responses). If every trace succeeded, say so and speculate where the "
    "program is still fragile.\n"
    "Provide:\n"
    "- analysis: a concise natural-language analysis of the program's "
    "strengths and weaknesses (one short paragraph).\n"
    "- weaknesses: concrete weaknesses, one per line, each starting with "
    "'- '.\n"
    "- excerpts: verbatim excerpts copied character-for-character from the "
    "traces that evidence the weaknesses, separated by lines containing only "
    "'---'. Copy exactly; do not paraphrase. Leave empty when citing nothing.";

inline constexpr const char* kDesignerInstructions =
    "You are the Designer of a program-search system. Propose ONE targeted "
    "modification to the parent program that addresses the critique, then "
    "emit the complete revised program. Keep everything else unchanged.\n"
    "The program must be written in the workflow language summarized below, "
    "must parse, and must keep the same program kind.\n"
    "Provide:\n"
    "- rationale: one or two sentences naming the single change and why it "
    "addresses the critique.\n"
    "- program: the complete program inside one fenced code block "
    "(``` ... ```).";

// Compact grammar crib embedded in the Designer prompt so a live model can
// emit parseable programs.
inline constexpr const char* kGrammarCrib =
    "Workflow language summary:\n"
    "  program NAME : step_generator|meta_policy, then let-bindings and a "
    "final return on every path.\n"
    "  Statements: let x = EXPR | let (a, b) = EXPR | return EXPR | "
    "break V | continue V (loops only).\n"
    "  Expressions: \"text\", 123, true, false, name, name.field,\n"
    "    generate_step()                      (step_generator only)\n"
    "    call_step_generator(trace), rollout(max_steps) (meta_policy only)\n"
    "    complete_solution(partial_text), empty_trace(), append_step(trace, text),\n"
    "    parse_trace(text), judge_equal(a, b), parse_int(text, lo, hi),\n"
    "    parse_yes_no(text), format(\"… {name} …\"), list_of(...), append(list, x),\n"
    "    index(list, i), len(list), add/sub/mul/eq/ne/lt/le/gt/ge(a, b), "
    "and/or(a, b), not(a),\n"
    "    if COND { ... } else { ... }, parallel { EXPR EXPR ... },\n"
    "    loop acc = INIT max N { ... break acc ... continue acc2 },\n"
    "    vote(answers) | vote(answers, weights) | vote(answers, weights, valid_flags),\n"
    "    vote_report(...) with fields .answer .best_weight .total_weight .best_index,\n"
    "    chat { context { item \"Name\": expr desc \"...\" } instructions \"...\" "
    "fields { field name: \"...\" } }.\n"
    "  Step generators see problem, history, partial_progress; meta policies "
    "see problem.";

}  // namespace arm::review::prompts
