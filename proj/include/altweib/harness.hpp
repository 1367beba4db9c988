#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "altweib/gof.hpp"
#include "altweib/scheme.hpp"
#include "altweib/twostep.hpp"
#include "altweib/weibull.hpp"

namespace altweib {

/// Everything one Monte Carlo experiment needs. The JSON manifest mirrors
/// these fields (threads and out_dir excluded — they affect execution and
/// placement, never content), so a manifest re-run reproduces the outputs
/// byte for byte.
struct SimulationConfig {
  int preset = 0;  ///< 1..15; 0 means custom_scheme supplies the design
  std::optional<ProgressiveScheme> custom_scheme;
  Regime regime = Regime::PHC;
  StressCoefficients shape_coeffs{7.0, 125.0, -2.0};
  StressCoefficients scale_coeffs{10.0, 140.0, -3.0};
  double cutoff = 2.73;
  int n_pairs = 50;        ///< stress pairs feeding the regression
  int n_table_pairs = 10;  ///< pairs shown in the estimate table
  int replications = 0;
  std::uint64_t seed = 0;
  std::array<double, 4> stress_ranges{270.0, 350.0, 12.0, 22.0};  // T_lo,T_hi,V_lo,V_hi
  RegressorTransform transform = RegressorTransform::InvTempLogVolt;
  int threads = 0;  ///< 0 = hardware concurrency
  std::vector<StressPoint> stress_points;  ///< explicit pairs override drawing
  std::string out_dir = ".";
};

/// In-memory result of one experiment, before any file is written.
struct SimulationOutput {
  std::vector<StressPoint> stresses;
  std::vector<WeibullParams> truth;  ///< per pair
  /// Row (pair * replications + rep): alpha_hat, lambda_hat, se_alpha, se_lambda.
  std::vector<std::array<double, 4>> fits;
  std::vector<TwoStepResult> regressions;  ///< one per replication (empty if < 3 pairs)
  std::string kernel;
};

struct RunArtifacts {
  std::string ml_table;
  std::string regression_table;
  std::string error_histogram;
  std::string manifest;
};

/// Run the experiment: draw (or take) stress pairs, evaluate the true
/// parameters, generate + censor + fit per (pair, replication), and regress
/// per replication. Replications are scheduled over a worker pool; every
/// random stream is keyed by (seed, pair, replication), so the output is
/// identical for any worker count.
SimulationOutput run_simulation(const SimulationConfig& cfg);

/// run_simulation plus CSV/manifest emission into cfg.out_dir.
RunArtifacts cmd_simulate(const SimulationConfig& cfg);

/// One dataset from a file plus the scheme flags; see the README for how
/// the number of supplied times selects the case.
struct FitCommand {
  std::string data_path;
  int n = 0;
  int m = 0;
  std::vector<int> removals;
  double cutoff = 0.0;
  Regime regime = Regime::PHC;
};
FitResult cmd_fit(const FitCommand& cmd);

struct RegressCommand {
  std::string fits_path;
  std::string stress_path;
  bool exact = false;
  RegressorTransform transform = RegressorTransform::InvTempLogVolt;
};
TwoStepResult cmd_regress(const RegressCommand& cmd);

struct GofCommand {
  std::string data_path;
  int reps = 2000;
  std::uint64_t seed = 0;
};
AdResult cmd_gof(const GofCommand& cmd);

/// JSON round-trip for SimulationConfig; config_from_json also accepts a
/// manifest document (it descends into its "config" member).
std::string config_to_json(const SimulationConfig& cfg);
SimulationConfig config_from_json(const std::string& text);

}  // namespace altweib
