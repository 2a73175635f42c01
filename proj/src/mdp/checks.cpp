#include "arm/mdp/checks.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "arm/errors.hpp"
#include "arm/util.hpp"

namespace arm::mdp {

namespace {

constexpr double kGainTol = 1e-12;
constexpr double kSumTol = 1e-9;
constexpr double kResidualTol = 1e-12;

bool pointwise_dominated(const ModulePair& pair) {
  return (pair.candidate.hazard.array() <= pair.baseline.hazard.array() + 1e-15).all();
}

bool shared_kernels(const ModulePair& pair) {
  return (pair.candidate.kernel - pair.baseline.kernel).cwiseAbs().maxCoeff() == 0.0;
}

void note(InstanceCheck& check, bool ok, const std::string& what) {
  if (ok || !check.pass) return;
  check.pass = false;
  check.detail = what;
}

}  // namespace

InstanceCheck check_pair(const MdpInstance& mdp, const ModulePair& pair, double prop2_c,
                         uint64_t seed_label) {
  InstanceCheck check;
  check.seed = seed_label;
  check.states = mdp.states();
  check.hypothesis_ok = pointwise_dominated(pair);
  bool shared = shared_kernels(pair);

  AdvantageDecomposition dec = advantage_decomposition(pair, mdp);
  check.module_gain = dec.module_improvement_gain;
  check.shift_gain = dec.distribution_shift_gain;
  check.decomposition_total = dec.total;
  check.sum_mismatch = std::abs(dec.total - dec.total_exact);

  // Window choice exercises prefix and interior placements.
  Prop2Report p2 = proposition2_check(pair, mdp, /*i=*/2, /*l=*/3, prop2_c);
  Prop2Report p2_edge = proposition2_check(pair, mdp, /*i=*/0, /*l=*/1, prop2_c);
  check.prop2_residual = std::max(p2.max_residual, p2_edge.max_residual);
  check.prop2_required_c = std::max(p2.required_c, p2_edge.required_c);
  check.beta_ok = std::max(p2.beta_ok, p2_edge.beta_ok);
  check.measured_cprime = std::max(p2.measured_cprime, p2_edge.measured_cprime);

  if (!check.hypothesis_ok) {
    check.detail = "hypothesis violated (candidate hazard not dominated); excluded";
    return check;
  }

  note(check, check.sum_mismatch <= kSumTol, "decomposition sum mismatch");
  if (shared) {
    // The sign guarantees of Propositions 2/3 and Theorem 1 hold under
    // pointwise dominance with shared conditional kernels.
    note(check, check.module_gain >= -kGainTol, "module improvement gain negative");
    note(check, check.shift_gain >= -kGainTol, "distribution shift gain negative");
    note(check, dec.total >= -kGainTol, "total improvement negative");
    note(check, check.prop2_residual <= kResidualTol,
         "advantage != error-reduction term under shared kernels");
    note(check, p2.inequality_holds && p2_edge.inequality_holds,
         "proposition-2 window inequality violated");
  } else {
    // Kernel-shift residual: |Delta(s)| <= C' * max_s TV(s) with C' <= 1
    // provable from the value spread; the measured constant is recorded.
    note(check, check.measured_cprime <= 1.0 + 1e-9, "residual exceeds the TV bound");
    note(check, p2.inequality_holds && p2_edge.inequality_holds,
         "proposition-2 inequality violated at configured C");
  }
  return check;
}

namespace {

OracleCheck closed_form_fixture(uint64_t episodes, uint64_t seed) {
  // Single ok-state, p_done = 0.2, hazard = 0.1: V = p/(p+eps) = 2/3.
  MdpInstance mdp;
  mdp.p_done = Eigen::VectorXd::Constant(1, 0.2);
  mdp.d0 = Eigen::VectorXd::Constant(1, 1.0);
  Module mod;
  mod.hazard = Eigen::VectorXd::Constant(1, 0.1);
  mod.kernel = Eigen::MatrixXd::Constant(1, 1, 1.0);

  OracleCheck check;
  check.name = "closed-form p=0.2 eps=0.1";
  check.exact = value_exact(mdp, mod)(0);
  check.mc = value_mc(mdp, mod, episodes, seed);
  check.within_ci = check.mc.ci_low <= check.exact && check.exact <= check.mc.ci_high;
  if (std::abs(check.exact - 2.0 / 3.0) > 1e-10) check.within_ci = false;
  return check;
}

OracleCheck deterministic_fixture(uint64_t episodes, uint64_t seed) {
  MdpInstance mdp;
  mdp.p_done = Eigen::VectorXd::Constant(1, 1.0);
  mdp.d0 = Eigen::VectorXd::Constant(1, 1.0);
  Module mod;
  mod.hazard = Eigen::VectorXd::Constant(1, 0.0);
  mod.kernel = Eigen::MatrixXd::Constant(1, 1, 1.0);

  OracleCheck check;
  check.name = "deterministic p_done=1";
  check.exact = value_exact(mdp, mod)(0);
  check.mc = value_mc(mdp, mod, episodes, seed);
  check.within_ci = check.mc.estimate == 1.0 && check.exact == 1.0;
  return check;
}

}  // namespace

VerificationReport run_verification(const VerifyParams& params) {
  VerificationReport report;
  report.params = params;
  std::mt19937_64 rng(params.seed);

  // 1. Oracle equivalence: exact solve vs Monte Carlo on random fixtures
  // plus the closed-form and deterministic corners.
  report.oracle.push_back(closed_form_fixture(params.mc_episodes, rng()));
  report.oracle.push_back(deterministic_fixture(params.mc_episodes, rng()));
  GeneratorParams fixture_params;
  fixture_params.max_states = std::min(params.max_states, 8);
  fixture_params.horizon = params.horizon;
  for (int k = 2; k < params.oracle_fixtures; ++k) {
    uint64_t s = rng();
    std::mt19937_64 gen(s);
    auto [mdp, pair] = random_pair(gen, fixture_params);
    OracleCheck check;
    check.name = "random fixture " + std::to_string(k);
    check.exact = mdp.d0.dot(value_exact(mdp, pair.baseline));
    // The MC estimator measures the same start-distribution value.
    check.mc = value_mc(mdp, pair.baseline, params.mc_episodes, s ^ 0xf00dULL);
    check.within_ci = check.mc.ci_low <= check.exact && check.exact <= check.mc.ci_high;
    report.oracle.push_back(check);
  }

  // 2. Proposition 2/3 + Theorem 1 on hypothesis-satisfying instances.
  GeneratorParams theorem_params;
  theorem_params.max_states = params.max_states;
  theorem_params.horizon = params.horizon;
  for (int k = 0; k < params.instances; ++k) {
    uint64_t s = rng();
    std::mt19937_64 gen(s);
    auto [mdp, pair] = random_pair(gen, theorem_params);
    report.theorem_suite.push_back(check_pair(mdp, pair, params.prop2_c, s));
  }

  // 3. Kernel-perturbation sweep (beta_ok > 0); sign guarantees do not
  // apply here, the residual bound and the slack inequality do.
  GeneratorParams perturbed_params = theorem_params;
  perturbed_params.kernel_perturbation = params.perturbation;
  for (int k = 0; k < params.perturbed_instances; ++k) {
    uint64_t s = rng();
    std::mt19937_64 gen(s);
    auto [mdp, pair] = random_pair(gen, perturbed_params);
    report.perturbed.push_back(check_pair(mdp, pair, params.prop2_c, s));
  }

  // 4. Hazard monotonicity probe: raising any single candidate hazard can
  // only lower the scaffold value.
  {
    std::mt19937_64 gen(params.seed ^ 0xabcdULL);
    GeneratorParams probe_params = theorem_params;
    probe_params.max_states = std::min(params.max_states, 8);
    auto [mdp, pair] = random_pair(gen, probe_params);
    double base = scaffold_value(pair, mdp, 1, 3);
    for (int s = 0; s < mdp.states() && report.monotonicity_pass; ++s) {
      for (double delta : {0.01, 0.05}) {
        ModulePair bumped = pair;
        double room = 1.0 - mdp.p_done(s) - bumped.candidate.hazard(s);
        bumped.candidate.hazard(s) += std::min(delta, std::max(0.0, room));
        double v = scaffold_value(bumped, mdp, 1, 3);
        if (v > base + 1e-12) {
          report.monotonicity_pass = false;
          report.monotonicity_detail =
              "scaffold value rose after hazard bump at state " + std::to_string(s);
          break;
        }
      }
    }
  }

  report.all_pass = report.monotonicity_pass;
  for (const OracleCheck& c : report.oracle) report.all_pass = report.all_pass && c.within_ci;
  for (const InstanceCheck& c : report.theorem_suite) {
    if (c.hypothesis_ok) report.all_pass = report.all_pass && c.pass;
  }
  for (const InstanceCheck& c : report.perturbed) {
    if (c.hypothesis_ok) report.all_pass = report.all_pass && c.pass;
  }
  return report;
}

namespace {

nlohmann::json instance_check_json(const InstanceCheck& c) {
  return nlohmann::json{{"seed", c.seed},
                        {"states", c.states},
                        {"hypothesis_ok", c.hypothesis_ok},
                        {"pass", c.pass},
                        {"detail", c.detail},
                        {"module_gain", c.module_gain},
                        {"shift_gain", c.shift_gain},
                        {"decomposition_total", c.decomposition_total},
                        {"sum_mismatch", c.sum_mismatch},
                        {"prop2_residual", c.prop2_residual},
                        {"prop2_required_c", c.prop2_required_c},
                        {"beta_ok", c.beta_ok},
                        {"measured_cprime", c.measured_cprime}};
}

}  // namespace

std::string VerificationReport::to_json_string() const {
  nlohmann::json j;
  j["params"] = {{"seed", params.seed},
                 {"instances", params.instances},
                 {"max_states", params.max_states},
                 {"horizon", params.horizon},
                 {"mc_episodes", params.mc_episodes},
                 {"oracle_fixtures", params.oracle_fixtures},
                 {"perturbation", params.perturbation},
                 {"perturbed_instances", params.perturbed_instances},
                 {"prop2_c", params.prop2_c}};
  j["visitation_distribution"] =
      "finite-horizon occupancy over ok+done+fail (absorbers accumulate); "
      "V(done)=1, V(fail)=0";
  j["oracle"] = nlohmann::json::array();
  for (const OracleCheck& c : oracle) {
    j["oracle"].push_back({{"name", c.name},
                           {"exact", c.exact},
                           {"mc_estimate", c.mc.estimate},
                           {"ci_low", c.mc.ci_low},
                           {"ci_high", c.mc.ci_high},
                           {"episodes", c.mc.episodes},
                           {"within_ci", c.within_ci}});
  }
  j["theorem_suite"] = nlohmann::json::array();
  for (const InstanceCheck& c : theorem_suite) j["theorem_suite"].push_back(instance_check_json(c));
  j["perturbed"] = nlohmann::json::array();
  for (const InstanceCheck& c : perturbed) j["perturbed"].push_back(instance_check_json(c));
  j["monotonicity_pass"] = monotonicity_pass;
  j["monotonicity_detail"] = monotonicity_detail;
  j["all_pass"] = all_pass;
  return j.dump(2);
}

std::string VerificationReport::to_table() const {
  std::ostringstream out;
  auto line = [&](const std::string& name, bool pass, const std::string& extra) {
    out << (pass ? "[PASS] " : "[FAIL] ") << name;
    if (!extra.empty()) out << "  (" << extra << ")";
    out << "\n";
  };

  int oracle_ok = 0;
  for (const OracleCheck& c : oracle) oracle_ok += c.within_ci ? 1 : 0;
  line("oracle equivalence value_exact vs value_mc", oracle_ok == (int)oracle.size(),
       std::to_string(oracle_ok) + "/" + std::to_string(oracle.size()) + " fixtures in CI");

  int thm_ok = 0, thm_total = 0;
  double worst_gain = 0.0, worst_mismatch = 0.0, max_required_c = 0.0;
  for (const InstanceCheck& c : theorem_suite) {
    if (!c.hypothesis_ok) continue;
    ++thm_total;
    thm_ok += c.pass ? 1 : 0;
    worst_gain = std::min({worst_gain, c.module_gain, c.shift_gain});
    worst_mismatch = std::max(worst_mismatch, c.sum_mismatch);
  }
  std::ostringstream extra;
  extra << thm_ok << "/" << thm_total << " instances, min gain " << worst_gain
        << ", max sum mismatch " << worst_mismatch;
  line("propositions 2/3 + theorem 1 (shared kernels)", thm_ok == thm_total, extra.str());

  int pert_ok = 0, pert_total = 0;
  double max_cprime = 0.0;
  for (const InstanceCheck& c : perturbed) {
    if (!c.hypothesis_ok) continue;
    ++pert_total;
    pert_ok += c.pass ? 1 : 0;
    max_cprime = std::max(max_cprime, c.measured_cprime);
    max_required_c = std::max(max_required_c, c.prop2_required_c);
  }
  std::ostringstream pextra;
  pextra << pert_ok << "/" << pert_total << " instances, measured C' max " << max_cprime
         << ", required C max " << max_required_c;
  line("kernel-perturbation residual bound", pert_ok == pert_total, pextra.str());

  line("scaffold-value hazard monotonicity", monotonicity_pass, monotonicity_detail);
  line("overall", all_pass, "");
  return out.str();
}

}  // namespace arm::mdp
