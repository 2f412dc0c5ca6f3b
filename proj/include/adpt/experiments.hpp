#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "adpt/config.hpp"

namespace adpt::harness {

struct RunEnv {
  std::string out_dir = ".";
  std::uint64_t seed = 0;
  int threads = 0;
};

struct ExperimentResult {
  bool pass = false;
  nlohmann::json summary;
  std::vector<std::string> files;  // written outputs
};

using Runner = std::function<ExperimentResult(const Config&, const RunEnv&)>;

const std::map<std::string, Runner>& experiment_registry();
std::vector<std::string> experiment_names();

// Throws ConfigError when the name is not registered.
ExperimentResult run_experiment(const std::string& name, const Config& cfg, const RunEnv& env);

// Validation pass: checks the experiment name and the numeric ranges
// without running any computation.
void validate_config(const Config& cfg);

// Hand-coded derivatives of the (optionally twisted / windowed) two-level
// benchmark fields, used by the grid experiments where the generic jet
// path would dominate the runtime.  Verified against the AD symbols in the
// unit tests.
struct TwoLevelFast {
  double a, b, c_amp, d_amp, L, twist;
  bool windowed;
  double p_cut, sharp;

  struct Scal {
    double v, dq, dp, dqq, dqp, dpp;
  };
  Scal theta(double q, double p) const;
  Scal phi(double q, double p) const;
  Scal e(double q, double p) const;

  double er(double q, double p) const { return e(q, p).v + 1.0; }
  // Hamiltonian field (dq/dt, dp/dt) of E_r and its Jacobian
  void flow_field(double q, double p, double& fq, double& fp) const;
  void flow_jacobian(double q, double p, double J[2][2]) const;
  // upper-band h1 and its gradient
  void h1_grad(double q, double p, double& v, double& dq, double& dp) const;
};

}  // namespace adpt::harness
