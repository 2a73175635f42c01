#pragma once

#include <optional>
#include <string>
#include <vector>

#include "arm/mdp/mdp.hpp"

namespace arm::mdp {

struct VerifyParams {
  uint64_t seed = 7;
  int instances = 100;        // theorem suite size
  int max_states = 20;
  int horizon = 64;
  uint64_t mc_episodes = 100000;
  int oracle_fixtures = 20;   // value_exact vs value_mc comparisons
  double perturbation = 0.05; // kernel perturbation magnitude for the sweep
  int perturbed_instances = 20;
  double prop2_c = 2.0;       // configurable C of the Proposition-2 slack
};

struct InstanceCheck {
  uint64_t seed = 0;
  int states = 0;
  bool hypothesis_ok = true;  // pointwise hazard dominance (+ shared kernels where required)
  bool pass = true;
  std::string detail;  // first violated property, empty when pass

  double module_gain = 0.0;
  double shift_gain = 0.0;
  double decomposition_total = 0.0;
  double sum_mismatch = 0.0;  // |module+shift - total|
  double prop2_residual = 0.0;
  double prop2_required_c = 0.0;
  double beta_ok = 0.0;
  double measured_cprime = 0.0;
};

struct OracleCheck {
  std::string name;
  double exact = 0.0;
  McEstimate mc;
  bool within_ci = false;
};

struct VerificationReport {
  VerifyParams params;
  std::vector<OracleCheck> oracle;           // value_exact vs value_mc
  std::vector<InstanceCheck> theorem_suite;  // shared kernels, dominated hazards
  std::vector<InstanceCheck> perturbed;      // beta_ok > 0 sweep
  bool monotonicity_pass = true;
  std::string monotonicity_detail;
  bool all_pass = false;

  std::string to_json_string() const;
  std::string to_table() const;
};

// Runs the oracle-equivalence fixtures, the Proposition 2/3 + Theorem 1
// suite, the kernel-perturbation sweep and the hazard-monotonicity probe.
VerificationReport run_verification(const VerifyParams& params);

// Checks one explicit pair (e.g. loaded from an instance file). Instances
// whose candidate hazard is not pointwise dominated are marked
// hypothesis-violating and excluded from pass/fail.
InstanceCheck check_pair(const MdpInstance& mdp, const ModulePair& pair, double prop2_c,
                         uint64_t seed_label = 0);

}  // namespace arm::mdp
