#pragma once

namespace arm::llm::prompts {

// Versioned prompt assets. The text below is the compiled-in copy of the
// files under assets/prompts/; load_asset() prefers the on-disk file when an
// asset directory is configured so experiments can pin edited prompts.
inline constexpr const char* kAssetVersion = "v1";

inline constexpr const char* kGenerateStep =
    "You are solving a problem one reasoning step at a time.\n"
    "\n"
    "### Problem\n"
    "{problem}\n"
    "\n"
    "### Partial Progress\n"
    "{partial_progress}\n"
    "\n"
    "Produce only the next reasoning step. Do not repeat earlier steps and do\n"
    "not restate the problem. If and only if this step finishes the solution,\n"
    "state the final answer inside \\boxed{...}.";

inline constexpr const char* kCompleteSolution =
    "Finish solving the problem below.\n"
    "\n"
    "### Problem\n"
    "{problem}\n"
    "\n"
    "### Partial Progress\n"
    "{partial_progress}\n"
    "\n"
    "Complete the remaining reasoning concisely and end your response with the\n"
    "final answer inside \\boxed{...}.";

inline constexpr const char* kCompleteSolutionRetrySuffix =
    "\n\nYour previous response did not contain a \\boxed{...} final answer. "
    "Answer again and end with the final answer inside \\boxed{...}.";

inline constexpr const char* kChatResponseHeader =
    "Respond with exactly the following sections, in order, each introduced by "
    "a '### <name>' header line:";

}  // namespace arm::llm::prompts
