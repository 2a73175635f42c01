#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>

#include <Eigen/Dense>

namespace arm::mdp {

// One step-generator module over the ok-states: per-state hazard (the
// probability of an irrecoverable transition to the failure region) and the
// row-stochastic ok-to-ok conditional kernel.
struct Module {
  Eigen::VectorXd hazard;  // eps_m(s)
  Eigen::MatrixXd kernel;  // T_m(s'|s, S_ok)
};

// Finite absorbing MDP over the ok-states. The done/fail regions are
// implicit absorbers: from s the chain finishes with p_done(s), fails with
// the module's hazard, and otherwise moves inside S_ok by the module kernel.
struct MdpInstance {
  Eigen::VectorXd p_done;
  Eigen::VectorXd d0;  // initial distribution over ok-states
  int horizon = 64;    // finite-horizon occupancy window

  int states() const { return static_cast<int>(p_done.size()); }
};

struct ModulePair {
  Module baseline;   // eps_cot / T_cot
  Module candidate;  // eps_m* / T_m*
};

// Throws Error when shapes, ranges, row sums (1e-12) or p_done+eps <= 1 are
// violated.
void validate_instance(const MdpInstance& mdp, const Module& module);

// Success probability per ok-state: solves (I - D T) V = p_done with
// D = diag(1 - p_done - eps); residual above 1e-10 raises SingularSystem.
Eigen::VectorXd value_exact(const MdpInstance& mdp, const Module& module);

struct McEstimate {
  double estimate = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;  // binomial 95% interval
  uint64_t episodes = 0;
};

McEstimate value_mc(const MdpInstance& mdp, const Module& module, uint64_t episodes,
                    uint64_t seed);

// One Bellman backup under `module` applied to a continuation value vector.
Eigen::VectorXd bellman_step(const MdpInstance& mdp, const Module& module,
                             const Eigen::VectorXd& continuation);

// Value from d0 of the non-homogeneous chain: baseline for i steps, the
// candidate for l steps, baseline thereafter (infinite tail via
// value_exact(baseline)).
double scaffold_value(const ModulePair& pair, const MdpInstance& mdp, int i, int l);

// Finite-horizon ok-state occupancy conditioned on survival: the normalized
// sum of the surviving state distributions over t = 0..H-1. Raises
// DegenerateDistribution when the surviving mass underflows. Diagnostic
// view of the visitation; the gain decomposition below uses the full-chain
// occupancy instead.
Eigen::VectorXd occupancy_distribution(const MdpInstance& mdp, const Module& module, int horizon);

// Unnormalized surviving distribution at step t (mu_t); mu_0 = d0.
Eigen::VectorXd surviving_mass_at(const MdpInstance& mdp, const Module& module, int t);

// E_{d_m}[v] where d_m is the finite-horizon occupancy of the FULL chain —
// ok-states plus the absorbing done/fail regions, which accumulate mass —
// and v is extended with v(done) = 1, v(fail) = 0. By the Bellman identity
// every horizon term of E_{d_m}[V_m] equals d0.V_m, so this surrogate
// reproduces the true system value exactly when v is the module's own value
// vector, and it makes both decomposition gains provably nonnegative under
// pointwise hazard dominance with shared kernels.
double visitation_expectation(const MdpInstance& mdp, const Module& module,
                              const Eigen::VectorXd& v, int horizon);

struct AdvantageDecomposition {
  double module_improvement_gain = 0.0;   // E_{d_cot}[V_m*] - E_{d_cot}[V_cot]
  double distribution_shift_gain = 0.0;   // E_{d_m*}[V_m*] - E_{d_cot}[V_m*]
  double total = 0.0;                     // their sum
  double total_exact = 0.0;               // d0.(V_m* - V_cot), the independent route
};

AdvantageDecomposition advantage_decomposition(const ModulePair& pair, const MdpInstance& mdp);

// Per-state total-variation distance between the conditional ok-kernels.
Eigen::VectorXd kernel_tv(const ModulePair& pair);

struct Prop2Report {
  double scaffold_improvement = 0.0;  // V_scaffold(m*) - V_scaffold(cot)
  double advantage_sum = 0.0;         // sum_t mu_t . A1  over the window
  double slack = 0.0;                 // C * beta_ok * sum_t w_t
  bool inequality_holds = false;      // improvement >= advantage_sum - slack
  double max_residual = 0.0;          // max_s |Delta(s)|
  double beta_state_max = 0.0;        // max_s TV(s)
  std::vector<double> beta_window;    // E_{d_cot,t}[TV] per window step
  double beta_ok = 0.0;               // max over the window steps (Assumption-1 form)
  double measured_cprime = 0.0;       // max|Delta| / beta_state_max (0 when beta = 0)
  double required_c = 0.0;            // minimal C that makes the bound hold
};

// One-step advantage of playing the candidate once from s and following the
// baseline after, its error-rate-reduction part, and the kernel-shift
// residual Delta = A1 - err. With shared kernels Delta is identically zero.
Eigen::VectorXd one_step_advantage(const ModulePair& pair, const MdpInstance& mdp);
Eigen::VectorXd error_reduction_term(const ModulePair& pair, const MdpInstance& mdp);

Prop2Report proposition2_check(const ModulePair& pair, const MdpInstance& mdp, int i, int l,
                               double C);

// --- seeded instance generator ---

struct GeneratorParams {
  int min_states = 2;
  int max_states = 20;
  double p_done_lo = 0.02;
  double p_done_hi = 0.25;
  double hazard_lo = 0.02;
  double hazard_hi = 0.30;
  // candidate hazard = baseline hazard * U[keep_lo, keep_hi] (pointwise <=
  // baseline whenever keep_hi <= 1).
  double keep_lo = 0.3;
  double keep_hi = 1.0;
  // candidate kernel = row-normalized baseline + magnitude * noise; 0 keeps
  // the kernels shared (beta_ok = 0).
  double kernel_perturbation = 0.0;
  int horizon = 64;
};

std::pair<MdpInstance, ModulePair> random_pair(std::mt19937_64& rng, const GeneratorParams& params);

// --- JSON fixtures ---

std::string to_json_string(const MdpInstance& mdp, const ModulePair& pair);
std::pair<MdpInstance, ModulePair> from_json_string(const std::string& text,
                                                    const std::string& origin);

}  // namespace arm::mdp
