#include "arm/mdp/mdp.hpp"

#include <cmath>

#include <json.hpp>

#include "arm/errors.hpp"
#include "arm/util.hpp"

namespace arm::mdp {

namespace {

constexpr double kRowSumTol = 1e-12;
constexpr double kSolveTol = 1e-10;
constexpr double kMassTol = 1e-12;

Eigen::VectorXd survival(const MdpInstance& mdp, const Module& module) {
  return (Eigen::VectorXd::Ones(mdp.states()) - mdp.p_done - module.hazard).cwiseMax(0.0);
}

}  // namespace

void validate_instance(const MdpInstance& mdp, const Module& module) {
  int n = mdp.states();
  if (n == 0) throw Error("mdp instance has no ok-states");
  if (module.hazard.size() != n || module.kernel.rows() != n || module.kernel.cols() != n ||
      mdp.d0.size() != n) {
    throw Error("mdp instance shape mismatch");
  }
  for (int s = 0; s < n; ++s) {
    double p = mdp.p_done(s), e = module.hazard(s);
    if (p < 0.0 || p > 1.0) throw Error("p_done out of [0,1] at state " + std::to_string(s));
    if (e < 0.0 || e > 1.0) throw Error("hazard out of [0,1] at state " + std::to_string(s));
    if (p + e > 1.0 + kRowSumTol) {
      throw Error("p_done + hazard > 1 at state " + std::to_string(s));
    }
    double row = module.kernel.row(s).sum();
    if (std::abs(row - 1.0) > kRowSumTol) {
      throw Error("kernel row " + std::to_string(s) + " sums to " + std::to_string(row));
    }
    if (module.kernel.row(s).minCoeff() < -kRowSumTol) {
      throw Error("negative kernel entry in row " + std::to_string(s));
    }
  }
  if (std::abs(mdp.d0.sum() - 1.0) > 1e-9 || mdp.d0.minCoeff() < -kRowSumTol) {
    throw Error("d0 is not a distribution");
  }
}

Eigen::VectorXd value_exact(const MdpInstance& mdp, const Module& module) {
  int n = mdp.states();
  Eigen::MatrixXd A =
      Eigen::MatrixXd::Identity(n, n) - survival(mdp, module).asDiagonal() * module.kernel;
  Eigen::VectorXd v = A.partialPivLu().solve(mdp.p_done);
  if (!v.allFinite()) throw SingularSystem("no absorption reachable (solve diverged)");
  double residual = (A * v - mdp.p_done).cwiseAbs().maxCoeff();
  if (residual > kSolveTol) {
    throw SingularSystem("residual " + std::to_string(residual) + " exceeds tolerance");
  }
  return v;
}

McEstimate value_mc(const MdpInstance& mdp, const Module& module, uint64_t episodes,
                    uint64_t seed) {
  if (episodes == 0) throw Error("value_mc needs at least one episode");
  std::mt19937_64 rng(seed);
  int n = mdp.states();

  auto sample_row = [&](const Eigen::VectorXd& weights) {
    double u = uniform01(rng);
    double acc = 0.0;
    for (int s = 0; s < n; ++s) {
      acc += weights(s);
      if (u < acc) return s;
    }
    return n - 1;
  };

  uint64_t successes = 0;
  constexpr uint64_t kStepGuard = 10'000'000;
  for (uint64_t ep = 0; ep < episodes; ++ep) {
    int s = sample_row(mdp.d0);
    for (uint64_t step = 0; step < kStepGuard; ++step) {
      double u = uniform01(rng);
      if (u < mdp.p_done(s)) {
        ++successes;
        break;
      }
      if (u < mdp.p_done(s) + module.hazard(s)) break;
      s = sample_row(module.kernel.row(s).transpose());
    }
  }

  McEstimate out;
  out.episodes = episodes;
  out.estimate = static_cast<double>(successes) / static_cast<double>(episodes);
  double half = 1.959963984540054 *
                std::sqrt(out.estimate * (1.0 - out.estimate) / static_cast<double>(episodes));
  out.ci_low = out.estimate - half;
  out.ci_high = out.estimate + half;
  return out;
}

Eigen::VectorXd bellman_step(const MdpInstance& mdp, const Module& module,
                             const Eigen::VectorXd& continuation) {
  return mdp.p_done +
         (survival(mdp, module).array() * (module.kernel * continuation).array()).matrix();
}

double scaffold_value(const ModulePair& pair, const MdpInstance& mdp, int i, int l) {
  if (i < 0 || l < 0) throw Error("scaffold_value needs i >= 0 and l >= 0");
  Eigen::VectorXd w = value_exact(mdp, pair.baseline);  // infinite baseline tail
  for (int k = 0; k < l; ++k) w = bellman_step(mdp, pair.candidate, w);
  for (int k = 0; k < i; ++k) w = bellman_step(mdp, pair.baseline, w);
  return mdp.d0.dot(w);
}

Eigen::VectorXd surviving_mass_at(const MdpInstance& mdp, const Module& module, int t) {
  Eigen::VectorXd mu = mdp.d0;
  for (int k = 0; k < t; ++k) {
    mu = module.kernel.transpose() * (mu.array() * survival(mdp, module).array()).matrix();
  }
  return mu;
}

Eigen::VectorXd occupancy_distribution(const MdpInstance& mdp, const Module& module,
                                       int horizon) {
  if (horizon < 1) throw Error("occupancy horizon must be >= 1");
  Eigen::VectorXd mu = mdp.d0;
  Eigen::VectorXd occ = Eigen::VectorXd::Zero(mdp.states());
  for (int t = 0; t < horizon; ++t) {
    occ += mu;
    mu = module.kernel.transpose() * (mu.array() * survival(mdp, module).array()).matrix();
  }
  double mass = occ.sum();
  if (mass < kMassTol) {
    throw DegenerateDistribution("surviving mass " + std::to_string(mass) +
                                 " underflows over horizon " + std::to_string(horizon));
  }
  return occ / mass;
}

double visitation_expectation(const MdpInstance& mdp, const Module& module,
                              const Eigen::VectorXd& v, int horizon) {
  if (horizon < 1) throw Error("visitation horizon must be >= 1");
  Eigen::VectorXd surv = survival(mdp, module);
  Eigen::VectorXd mu = mdp.d0;
  double done_mass = 0.0;
  double acc = 0.0;
  for (int t = 0; t < horizon; ++t) {
    acc += mu.dot(v) + done_mass;  // the fail absorber contributes 0
    done_mass += mu.dot(mdp.p_done);
    mu = module.kernel.transpose() * (mu.array() * surv.array()).matrix();
  }
  return acc / static_cast<double>(horizon);
}

AdvantageDecomposition advantage_decomposition(const ModulePair& pair, const MdpInstance& mdp) {
  Eigen::VectorXd v_cot = value_exact(mdp, pair.baseline);
  Eigen::VectorXd v_star = value_exact(mdp, pair.candidate);

  AdvantageDecomposition out;
  double cot_on_star = visitation_expectation(mdp, pair.baseline, v_star, mdp.horizon);
  out.module_improvement_gain =
      cot_on_star - visitation_expectation(mdp, pair.baseline, v_cot, mdp.horizon);
  out.distribution_shift_gain =
      visitation_expectation(mdp, pair.candidate, v_star, mdp.horizon) - cot_on_star;
  out.total = out.module_improvement_gain + out.distribution_shift_gain;
  out.total_exact = mdp.d0.dot(v_star - v_cot);
  return out;
}

Eigen::VectorXd kernel_tv(const ModulePair& pair) {
  return 0.5 * (pair.candidate.kernel - pair.baseline.kernel).cwiseAbs().rowwise().sum();
}

Eigen::VectorXd one_step_advantage(const ModulePair& pair, const MdpInstance& mdp) {
  Eigen::VectorXd v_cot = value_exact(mdp, pair.baseline);
  return bellman_step(mdp, pair.candidate, v_cot) - v_cot;
}

Eigen::VectorXd error_reduction_term(const ModulePair& pair, const MdpInstance& mdp) {
  Eigen::VectorXd v_cot = value_exact(mdp, pair.baseline);
  return ((pair.baseline.hazard - pair.candidate.hazard).array() *
          (pair.baseline.kernel * v_cot).array())
      .matrix();
}

Prop2Report proposition2_check(const ModulePair& pair, const MdpInstance& mdp, int i, int l,
                               double C) {
  if (l < 1) throw Error("proposition2_check needs l >= 1");
  Prop2Report report;

  // Both scaffold values share the baseline tail; the baseline-as-candidate
  // scaffold collapses to the plain baseline value.
  ModulePair identity{pair.baseline, pair.baseline};
  report.scaffold_improvement =
      scaffold_value(pair, mdp, i, l) - scaffold_value(identity, mdp, i, l);

  Eigen::VectorXd a1 = one_step_advantage(pair, mdp);
  Eigen::VectorXd err = error_reduction_term(pair, mdp);
  Eigen::VectorXd residual = a1 - err;
  report.max_residual = residual.cwiseAbs().maxCoeff();

  Eigen::VectorXd tv = kernel_tv(pair);
  report.beta_state_max = tv.maxCoeff();
  report.measured_cprime =
      report.beta_state_max > 0.0 ? report.max_residual / report.beta_state_max : 0.0;

  // Window sums under the unperturbed baseline occupancy: mu_t is the
  // surviving (sub-probability) distribution, w_t its mass.
  double sum_w = 0.0;
  Eigen::VectorXd mu = surviving_mass_at(mdp, pair.baseline, i);
  for (int t = 0; t < l; ++t) {
    report.advantage_sum += mu.dot(a1);
    double w = mu.sum();
    sum_w += w;
    report.beta_window.push_back(w > 0.0 ? mu.dot(tv) / w : 0.0);
    mu = pair.baseline.kernel.transpose() *
         (mu.array() * (Eigen::VectorXd::Ones(mdp.states()) - mdp.p_done - pair.baseline.hazard)
                           .cwiseMax(0.0)
                           .array())
             .matrix();
  }
  for (double b : report.beta_window) report.beta_ok = std::max(report.beta_ok, b);
  report.slack = C * report.beta_ok * sum_w;
  report.inequality_holds =
      report.scaffold_improvement >= report.advantage_sum - report.slack - 1e-12;

  double deficit = report.advantage_sum - report.scaffold_improvement;
  double denom = report.beta_ok * sum_w;
  report.required_c = (deficit > 0.0 && denom > 0.0) ? deficit / denom : 0.0;
  return report;
}

std::pair<MdpInstance, ModulePair> random_pair(std::mt19937_64& rng,
                                               const GeneratorParams& params) {
  auto unif = [&](double lo, double hi) { return lo + (hi - lo) * uniform01(rng); };
  int n = params.min_states +
          static_cast<int>(uniform_below(
              rng, static_cast<uint64_t>(params.max_states - params.min_states + 1)));

  MdpInstance mdp;
  mdp.horizon = params.horizon;
  mdp.p_done.resize(n);
  mdp.d0.resize(n);
  ModulePair pair;
  pair.baseline.hazard.resize(n);
  pair.candidate.hazard.resize(n);
  pair.baseline.kernel.resize(n, n);
  pair.candidate.kernel.resize(n, n);

  for (int s = 0; s < n; ++s) {
    mdp.p_done(s) = unif(params.p_done_lo, params.p_done_hi);
    pair.baseline.hazard(s) = unif(params.hazard_lo, params.hazard_hi);
    pair.candidate.hazard(s) = pair.baseline.hazard(s) * unif(params.keep_lo, params.keep_hi);
    mdp.d0(s) = -std::log(1.0 - uniform01(rng));  // exponential -> Dirichlet(1)
    double row_sum = 0.0;
    for (int t = 0; t < n; ++t) {
      pair.baseline.kernel(s, t) = -std::log(1.0 - uniform01(rng));
      row_sum += pair.baseline.kernel(s, t);
    }
    pair.baseline.kernel.row(s) /= row_sum;
  }
  mdp.d0 /= mdp.d0.sum();

  if (params.kernel_perturbation > 0.0) {
    for (int s = 0; s < n; ++s) {
      double row_sum = 0.0;
      for (int t = 0; t < n; ++t) {
        double noise = params.kernel_perturbation * (uniform01(rng) - 0.5);
        pair.candidate.kernel(s, t) = std::max(0.0, pair.baseline.kernel(s, t) + noise);
        row_sum += pair.candidate.kernel(s, t);
      }
      pair.candidate.kernel.row(s) /= row_sum;
    }
  } else {
    pair.candidate.kernel = pair.baseline.kernel;
  }

  validate_instance(mdp, pair.baseline);
  validate_instance(mdp, pair.candidate);
  return {std::move(mdp), std::move(pair)};
}

namespace {

nlohmann::json vector_to_json(const Eigen::VectorXd& v) {
  nlohmann::json out = nlohmann::json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

nlohmann::json matrix_to_json(const Eigen::MatrixXd& m) {
  nlohmann::json out = nlohmann::json::array();
  for (int r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(row);
  }
  return out;
}

Eigen::VectorXd vector_from_json(const nlohmann::json& j) {
  Eigen::VectorXd v(j.size());
  for (size_t i = 0; i < j.size(); ++i) v(static_cast<int>(i)) = j[i].get<double>();
  return v;
}

Eigen::MatrixXd matrix_from_json(const nlohmann::json& j) {
  size_t rows = j.size();
  size_t cols = rows > 0 ? j[0].size() : 0;
  Eigen::MatrixXd m(rows, cols);
  for (size_t r = 0; r < rows; ++r) {
    for (size_t c = 0; c < cols; ++c) m(static_cast<int>(r), static_cast<int>(c)) = j[r][c];
  }
  return m;
}

}  // namespace

std::string to_json_string(const MdpInstance& mdp, const ModulePair& pair) {
  nlohmann::json j{{"p_done", vector_to_json(mdp.p_done)},
                   {"d0", vector_to_json(mdp.d0)},
                   {"horizon", mdp.horizon},
                   {"baseline_hazard", vector_to_json(pair.baseline.hazard)},
                   {"baseline_kernel", matrix_to_json(pair.baseline.kernel)},
                   {"candidate_hazard", vector_to_json(pair.candidate.hazard)},
                   {"candidate_kernel", matrix_to_json(pair.candidate.kernel)}};
  return j.dump(2);
}

std::pair<MdpInstance, ModulePair> from_json_string(const std::string& text,
                                                    const std::string& origin) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw CorruptState(origin, e.what());
  }
  try {
    MdpInstance mdp;
    mdp.p_done = vector_from_json(j.at("p_done"));
    mdp.d0 = vector_from_json(j.at("d0"));
    mdp.horizon = j.value("horizon", 64);
    ModulePair pair;
    pair.baseline.hazard = vector_from_json(j.at("baseline_hazard"));
    pair.baseline.kernel = matrix_from_json(j.at("baseline_kernel"));
    pair.candidate.hazard = vector_from_json(j.at("candidate_hazard"));
    pair.candidate.kernel = matrix_from_json(j.at("candidate_kernel"));
    validate_instance(mdp, pair.baseline);
    validate_instance(mdp, pair.candidate);
    return {std::move(mdp), std::move(pair)};
  } catch (const nlohmann::json::exception& e) {
    throw CorruptState(origin, e.what());
  }
}

}  // namespace arm::mdp
