#include "arm/dsl/builtins.hpp"

#include <map>

#include "arm/dsl/parser.hpp"
#include "arm/errors.hpp"

namespace arm::dsl {

namespace {

const char* kMCot = R"DSL(program m_cot : step_generator

# Single LLM call that continues the chain of thought.
return generate_step()
)DSL";

const char* kPiRec = R"DSL(program pi_rec : meta_policy

# Recursive meta-policy: apply the step generator until a boxed answer
# appears; cap at 30 steps, then force one completion call.
return rollout(30)
)DSL";

const char* kCotSc12 = R"DSL(program cot_sc_12 : meta_policy

# Self-consistency: twelve recursive rollouts, majority vote over answers,
# return the first chain of the winning answer group.
let chains = parallel {
  rollout(30)
  rollout(30)
  rollout(30)
  rollout(30)
  rollout(30)
  rollout(30)
  rollout(30)
  rollout(30)
  rollout(30)
  rollout(30)
  rollout(30)
  rollout(30)
}
let verdict = vote_report(chains)
return index(chains, verdict.best_index)
)DSL";

const char* kSelfRefine5 = R"DSL(program self_refine_5 : meta_policy

# Draft a full solution, then critique-and-revise up to five times.
let draft = rollout(30)
let final = loop sol = draft max 5 {
  let review = chat {
    context {
      item "Problem": problem desc "The problem to solve."
      item "Current Solution": sol.text desc "The complete current solution."
    }
    instructions "Critique the current solution. If it is fully correct and complete, output verdict CORRECT and leave revised_solution empty. Otherwise output verdict REVISE and provide a complete revised solution that fixes the identified issues, formatted as reasoning steps and ending with the final answer inside \\boxed{...}."
    fields {
      field verdict: "CORRECT if the solution needs no changes, otherwise REVISE."
      field revised_solution: "The full revised solution ending in \\boxed{...}; empty when verdict is CORRECT."
    }
  }
  if judge_equal(review.verdict, "CORRECT") {
    break sol
  } else {
    continue parse_trace(review.revised_solution)
  }
}
return final
)DSL";

const char* kLlmDebate4x3 = R"DSL(program llm_debate_4x3 : meta_policy

# Four role-seeded agents debate for at most three rounds, stopping early on
# unanimous agreement; the majority answer is boxed as the final trace.
let (a1, a2, a3, a4) = parallel {
  chat {
    context {
      item "Problem": problem desc "The problem to solve."
    }
    instructions "You are a meticulous mathematician who reasons formally and double-checks algebra. Solve the problem independently. Provide reasoning (a concise derivation) and answer (the final answer only, with no extra prose)."
    fields {
      field reasoning: "Concise derivation."
      field answer: "Final answer only."
    }
  }
  chat {
    context {
      item "Problem": problem desc "The problem to solve."
    }
    instructions "You are a pragmatic engineer who favors estimation and sanity checks. Solve the problem independently. Provide reasoning (a concise derivation) and answer (the final answer only, with no extra prose)."
    fields {
      field reasoning: "Concise derivation."
      field answer: "Final answer only."
    }
  }
  chat {
    context {
      item "Problem": problem desc "The problem to solve."
    }
    instructions "You are a careful scientist who reasons from first principles and states assumptions. Solve the problem independently. Provide reasoning (a concise derivation) and answer (the final answer only, with no extra prose)."
    fields {
      field reasoning: "Concise derivation."
      field answer: "Final answer only."
    }
  }
  chat {
    context {
      item "Problem": problem desc "The problem to solve."
    }
    instructions "You are a skeptical reviewer who hunts for edge cases and arithmetic slips. Solve the problem independently. Provide reasoning (a concise derivation) and answer (the final answer only, with no extra prose)."
    fields {
      field reasoning: "Concise derivation."
      field answer: "Final answer only."
    }
  }
}
let ans1 = a1.answer
let ans2 = a2.answer
let ans3 = a3.answer
let ans4 = a4.answer
let agreed1 = and(and(judge_equal(ans1, ans2), judge_equal(ans1, ans3)), judge_equal(ans1, ans4))
let finals = if agreed1 {
  list_of(ans1, ans2, ans3, ans4)
} else {
  let peers1 = format("Agent 1 answered: {ans1}\nAgent 2 answered: {ans2}\nAgent 3 answered: {ans3}\nAgent 4 answered: {ans4}")
  let (b1, b2, b3, b4) = parallel {
    chat {
      context {
        item "Problem": problem desc "The problem to solve."
        item "Previous Round": peers1 desc "Answers from all four agents in the previous round."
      }
      instructions "You are a meticulous mathematician. Reconsider the problem in light of the other agents' answers; defend or revise your position. Provide reasoning and answer (final answer only)."
      fields {
        field reasoning: "Concise updated derivation."
        field answer: "Final answer only."
      }
    }
    chat {
      context {
        item "Problem": problem desc "The problem to solve."
        item "Previous Round": peers1 desc "Answers from all four agents in the previous round."
      }
      instructions "You are a pragmatic engineer. Reconsider the problem in light of the other agents' answers; defend or revise your position. Provide reasoning and answer (final answer only)."
      fields {
        field reasoning: "Concise updated derivation."
        field answer: "Final answer only."
      }
    }
    chat {
      context {
        item "Problem": problem desc "The problem to solve."
        item "Previous Round": peers1 desc "Answers from all four agents in the previous round."
      }
      instructions "You are a careful scientist. Reconsider the problem in light of the other agents' answers; defend or revise your position. Provide reasoning and answer (final answer only)."
      fields {
        field reasoning: "Concise updated derivation."
        field answer: "Final answer only."
      }
    }
    chat {
      context {
        item "Problem": problem desc "The problem to solve."
        item "Previous Round": peers1 desc "Answers from all four agents in the previous round."
      }
      instructions "You are a skeptical reviewer. Reconsider the problem in light of the other agents' answers; defend or revise your position. Provide reasoning and answer (final answer only)."
      fields {
        field reasoning: "Concise updated derivation."
        field answer: "Final answer only."
      }
    }
  }
  let bns1 = b1.answer
  let bns2 = b2.answer
  let bns3 = b3.answer
  let bns4 = b4.answer
  let agreed2 = and(and(judge_equal(bns1, bns2), judge_equal(bns1, bns3)), judge_equal(bns1, bns4))
  if agreed2 {
    list_of(bns1, bns2, bns3, bns4)
  } else {
    let peers2 = format("Agent 1 answered: {bns1}\nAgent 2 answered: {bns2}\nAgent 3 answered: {bns3}\nAgent 4 answered: {bns4}")
    let (d1, d2, d3, d4) = parallel {
      chat {
        context {
          item "Problem": problem desc "The problem to solve."
          item "Previous Round": peers2 desc "Answers from all four agents in the previous round."
        }
        instructions "You are a meticulous mathematician. This is the final round: commit to the answer you believe is correct. Provide reasoning and answer (final answer only)."
        fields {
          field reasoning: "Concise final justification."
          field answer: "Final answer only."
        }
      }
      chat {
        context {
          item "Problem": problem desc "The problem to solve."
          item "Previous Round": peers2 desc "Answers from all four agents in the previous round."
        }
        instructions "You are a pragmatic engineer. This is the final round: commit to the answer you believe is correct. Provide reasoning and answer (final answer only)."
        fields {
          field reasoning: "Concise final justification."
          field answer: "Final answer only."
        }
      }
      chat {
        context {
          item "Problem": problem desc "The problem to solve."
          item "Previous Round": peers2 desc "Answers from all four agents in the previous round."
        }
        instructions "You are a careful scientist. This is the final round: commit to the answer you believe is correct. Provide reasoning and answer (final answer only)."
        fields {
          field reasoning: "Concise final justification."
          field answer: "Final answer only."
        }
      }
      chat {
        context {
          item "Problem": problem desc "The problem to solve."
          item "Previous Round": peers2 desc "Answers from all four agents in the previous round."
        }
        instructions "You are a skeptical reviewer. This is the final round: commit to the answer you believe is correct. Provide reasoning and answer (final answer only)."
        fields {
          field reasoning: "Concise final justification."
          field answer: "Final answer only."
        }
      }
    }
    list_of(d1.answer, d2.answer, d3.answer, d4.answer)
  }
}
let verdict = vote_report(finals)
let champion = verdict.answer
return parse_trace(format("After a structured debate between four agents, the agreed final answer is \\boxed{{{champion}}}."))
)DSL";

const char* kCriticCotV7 = R"DSL(program critic_cot_v7 : step_generator

# Four candidate steps in parallel, paired critiques, a head-to-head between
# the two highest-rated candidates, then an adversarial flaw check with a
# dynamic severity threshold on the finalists' rating gap.
let (c1, c2, c3, c4) = parallel {
  generate_step()
  generate_step()
  generate_step()
  generate_step()
}
let pair_a = format("### Candidate Next Step 1\n{c1}\n\n### Candidate Next Step 2\n{c2}")
let pair_b = format("### Candidate Next Step 3\n{c3}\n\n### Candidate Next Step 4\n{c4}")
let (crit_a, crit_b) = parallel {
  chat {
    context {
      item "Problem": problem desc "The problem to solve."
      item "Partial Progress": partial_progress desc "The partial solution so far."
      item "Candidate Next Steps": pair_a desc "Two candidate next steps formatted with markdown subheaders."
    }
    instructions "You are given a problem, the current partial solution, and two candidate next reasoning steps.\nFor each candidate, provide:\n- rating_1 and rating_2: a single integer rating from 1 to 10 indicating its fit as the next reasoning step (10 is best).\n- critique_1 and critique_2: a one-sentence critique highlighting each candidate's strengths and weaknesses.\nName the fields exactly rating_1, critique_1, rating_2, critique_2."
    fields {
      field rating_1: "Integer rating (1-10) for Candidate Next Step 1."
      field critique_1: "One-sentence critique of Candidate Next Step 1."
      field rating_2: "Integer rating (1-10) for Candidate Next Step 2."
      field critique_2: "One-sentence critique of Candidate Next Step 2."
    }
  }
  chat {
    context {
      item "Problem": problem desc "The problem to solve."
      item "Partial Progress": partial_progress desc "The partial solution so far."
      item "Candidate Next Steps": pair_b desc "Two candidate next steps formatted with markdown subheaders."
    }
    instructions "You are given a problem, the current partial solution, and two candidate next reasoning steps.\nFor each candidate, provide:\n- rating_3 and rating_4: a single integer rating from 1 to 10 indicating its fit as the next reasoning step (10 is best).\n- critique_3 and critique_4: a one-sentence critique highlighting each candidate's strengths and weaknesses.\nName the fields exactly rating_3, critique_3, rating_4, critique_4."
    fields {
      field rating_3: "Integer rating (1-10) for Candidate Next Step 3."
      field critique_3: "One-sentence critique of Candidate Next Step 3."
      field rating_4: "Integer rating (1-10) for Candidate Next Step 4."
      field critique_4: "One-sentence critique of Candidate Next Step 4."
    }
  }
}
let r1 = parse_int(crit_a.rating_1, 1, 10)
let r2 = parse_int(crit_a.rating_2, 1, 10)
let r3 = parse_int(crit_b.rating_3, 1, 10)
let r4 = parse_int(crit_b.rating_4, 1, 10)

# Stable top-2 selection: exact rating ties go to the lower index.
let i1 = if ge(r1, r2) {
  if ge(r1, r3) {
    if ge(r1, r4) { 1 } else { 4 }
  } else {
    if ge(r3, r4) { 3 } else { 4 }
  }
} else {
  if ge(r2, r3) {
    if ge(r2, r4) { 2 } else { 4 }
  } else {
    if ge(r3, r4) { 3 } else { 4 }
  }
}
let i2 = if eq(i1, 1) {
  if ge(r2, r3) {
    if ge(r2, r4) { 2 } else { 4 }
  } else {
    if ge(r3, r4) { 3 } else { 4 }
  }
} else {
  if eq(i1, 2) {
    if ge(r1, r3) {
      if ge(r1, r4) { 1 } else { 4 }
    } else {
      if ge(r3, r4) { 3 } else { 4 }
    }
  } else {
    if eq(i1, 3) {
      if ge(r1, r2) {
        if ge(r1, r4) { 1 } else { 4 }
      } else {
        if ge(r2, r4) { 2 } else { 4 }
      }
    } else {
      if ge(r1, r2) {
        if ge(r1, r3) { 1 } else { 3 }
      } else {
        if ge(r2, r3) { 2 } else { 3 }
      }
    }
  }
}
let rt1 = if eq(i1, 1) { r1 } else { if eq(i1, 2) { r2 } else { if eq(i1, 3) { r3 } else { r4 } } }
let rt2 = if eq(i2, 1) { r1 } else { if eq(i2, 2) { r2 } else { if eq(i2, 3) { r3 } else { r4 } } }
let top1 = if eq(i1, 1) { c1 } else { if eq(i1, 2) { c2 } else { if eq(i1, 3) { c3 } else { c4 } } }
let top2 = if eq(i2, 1) { c1 } else { if eq(i2, 2) { c2 } else { if eq(i2, 3) { c3 } else { c4 } } }

let head_to_head = format("### Candidate A\n{top1}\n\n### Candidate B\n{top2}")
let decision = chat {
  context {
    item "Problem": problem desc "The problem to solve."
    item "Partial Progress": partial_progress desc "The partial solution so far."
    item "Candidate Next Steps": head_to_head desc "Two top candidate next steps formatted with markdown subheaders."
  }
  instructions "Compare Candidate A and Candidate B as the next reasoning step for the given problem and partial progress.\nProvide:\n- winner: choose either 'Candidate A' or 'Candidate B' indicating which step is better.\n- justification: one-sentence justification for your choice."
  fields {
    field winner: "Either 'Candidate A' or 'Candidate B' indicating the better next step."
    field justification: "One-sentence justification for the choice."
  }
}
let a_wins = eq(decision.winner, "Candidate A")
let selected = if a_wins { top1 } else { top2 }
let runner_up = if a_wins { top2 } else { top1 }

let selected_block = format("### Selected Candidate Next Step\n{selected}")
let flaw_check = chat {
  context {
    item "Problem": problem desc "The problem to solve."
    item "Partial Progress": partial_progress desc "The partial solution so far."
    item "Selected Candidate Next Step": selected_block desc "The final chosen candidate next reasoning step formatted with a markdown subheader."
  }
  instructions "You are given a problem, the current partial solution, and a selected next reasoning step.\nIdentify any major flaw or missing piece of reasoning in the selected step.\nProvide:\n- flaw: either the single word 'None' if there is no flaw, or a brief description of the flaw.\n- severity: a single integer rating from 1 to 10 indicating how severe the flaw is (10 is critical)."
  fields {
    field flaw: "Either the single word 'None' if there is no flaw, or a brief description of a major flaw in the selected step."
    field severity: "Integer rating (1-10) indicating severity of the flaw (10 is most severe)."
  }
}
let severity = parse_int(flaw_check.severity, 1, 10)

# Dynamic severity threshold from the rating gap between the finalists.
let gap = sub(rt1, rt2)
let threshold = if le(gap, 1) { 5 } else { if eq(gap, 2) { 6 } else { 7 } }

if and(not(judge_equal(flaw_check.flaw, "None")), ge(severity, threshold)) {
  return runner_up
} else {
  return selected
}
)DSL";

const char* kVerifiedWeightedMeta = R"DSL(program verified_weighted_meta : meta_policy

# Adaptive weighted self-consistency with verification gating: start with
# three chains; until a weighted majority of the considered chains agrees or
# seven chains exist, add one chain at a time. Considered chains are the
# verified ones when any verification passed, otherwise all chains. The
# winning group's highest-confidence chain is returned.
let (c1, c2, c3) = parallel {
  rollout(8)
  rollout(8)
  rollout(8)
}
let (s1, s2, s3) = parallel {
  {
    let judged = chat {
      context {
        item "Problem": problem desc "The original problem statement."
        item "Chain": c1.text desc "Full chain-of-thought reasoning plus final answer."
      }
      instructions "You are evaluating the chain-of-thought solution for the given problem. On a scale from 1 (very uncertain) to 5 (very confident), rate your confidence that the final answer is correct. Output ONLY the integer confidence (1-5)."
      fields {
        field Confidence: "Integer from 1 to 5"
      }
    }
    parse_int(judged.Confidence, 1, 5)
  }
  {
    let judged = chat {
      context {
        item "Problem": problem desc "The original problem statement."
        item "Chain": c2.text desc "Full chain-of-thought reasoning plus final answer."
      }
      instructions "You are evaluating the chain-of-thought solution for the given problem. On a scale from 1 (very uncertain) to 5 (very confident), rate your confidence that the final answer is correct. Output ONLY the integer confidence (1-5)."
      fields {
        field Confidence: "Integer from 1 to 5"
      }
    }
    parse_int(judged.Confidence, 1, 5)
  }
  {
    let judged = chat {
      context {
        item "Problem": problem desc "The original problem statement."
        item "Chain": c3.text desc "Full chain-of-thought reasoning plus final answer."
      }
      instructions "You are evaluating the chain-of-thought solution for the given problem. On a scale from 1 (very uncertain) to 5 (very confident), rate your confidence that the final answer is correct. Output ONLY the integer confidence (1-5)."
      fields {
        field Confidence: "Integer from 1 to 5"
      }
    }
    parse_int(judged.Confidence, 1, 5)
  }
}
let (v1, v2, v3) = parallel {
  {
    let review = chat {
      context {
        item "Problem": problem desc "The original problem statement."
        item "Chain": c1.text desc "Full chain-of-thought reasoning plus final answer."
      }
      instructions "Review the chain-of-thought reasoning for the given problem. Is the reasoning free of logical errors or contradictions? Output ONLY 'Yes' if it is fully logical, otherwise output 'No'."
      fields {
        field Valid: "Yes or No"
      }
    }
    parse_yes_no(review.Valid)
  }
  {
    let review = chat {
      context {
        item "Problem": problem desc "The original problem statement."
        item "Chain": c2.text desc "Full chain-of-thought reasoning plus final answer."
      }
      instructions "Review the chain-of-thought reasoning for the given problem. Is the reasoning free of logical errors or contradictions? Output ONLY 'Yes' if it is fully logical, otherwise output 'No'."
      fields {
        field Valid: "Yes or No"
      }
    }
    parse_yes_no(review.Valid)
  }
  {
    let review = chat {
      context {
        item "Problem": problem desc "The original problem statement."
        item "Chain": c3.text desc "Full chain-of-thought reasoning plus final answer."
      }
      instructions "Review the chain-of-thought reasoning for the given problem. Is the reasoning free of logical errors or contradictions? Output ONLY 'Yes' if it is fully logical, otherwise output 'No'."
      fields {
        field Valid: "Yes or No"
      }
    }
    parse_yes_no(review.Valid)
  }
}
let (chains, confs, valids) = loop (ch, cf, vl) = (list_of(c1, c2, c3), list_of(s1, s2, s3), list_of(v1, v2, v3)) max 4 {
  let verdict = vote_report(ch, cf, vl)
  if gt(mul(verdict.best_weight, 2), verdict.total_weight) {
    break (ch, cf, vl)
  } else {
    let nc = rollout(8)
    let ns = {
      let judged = chat {
        context {
          item "Problem": problem desc "The original problem statement."
          item "Chain": nc.text desc "Full chain-of-thought reasoning plus final answer."
        }
        instructions "You are evaluating the chain-of-thought solution for the given problem. On a scale from 1 (very uncertain) to 5 (very confident), rate your confidence that the final answer is correct. Output ONLY the integer confidence (1-5)."
        fields {
          field Confidence: "Integer from 1 to 5"
        }
      }
      parse_int(judged.Confidence, 1, 5)
    }
    let nv = {
      let review = chat {
        context {
          item "Problem": problem desc "The original problem statement."
          item "Chain": nc.text desc "Full chain-of-thought reasoning plus final answer."
        }
        instructions "Review the chain-of-thought reasoning for the given problem. Is the reasoning free of logical errors or contradictions? Output ONLY 'Yes' if it is fully logical, otherwise output 'No'."
        fields {
          field Valid: "Yes or No"
        }
      }
      parse_yes_no(review.Valid)
    }
    continue (append(ch, nc), append(cf, ns), append(vl, nv))
  }
}
let final_verdict = vote_report(chains, confs, valids)
return index(chains, final_verdict.best_index)
)DSL";

const std::map<std::string, const char*>& source_table() {
  static const std::map<std::string, const char*> table = {
      {"m_cot", kMCot},
      {"pi_rec", kPiRec},
      {"cot_sc_12", kCotSc12},
      {"self_refine_5", kSelfRefine5},
      {"llm_debate_4x3", kLlmDebate4x3},
      {"critic_cot_v7", kCriticCotV7},
      {"verified_weighted_meta", kVerifiedWeightedMeta},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, src] : source_table()) out.push_back(name);
    return out;
  }();
  return names;
}

const std::string& builtin_source(const std::string& name) {
  static const std::map<std::string, std::string> cache = [] {
    std::map<std::string, std::string> out;
    for (const auto& [n, src] : source_table()) out.emplace(n, src);
    return out;
  }();
  auto it = cache.find(name);
  if (it == cache.end()) throw UnknownBuiltin(name);
  return it->second;
}

WorkflowProgram builtin(const std::string& name) {
  return parse_program(builtin_source(name));
}

}  // namespace arm::dsl
