#include "altweib/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "altweib/csvio.hpp"
#include "altweib/generate.hpp"
#include "altweib/kernels.hpp"
#include "altweib/mle.hpp"
#include "altweib/rng.hpp"

namespace altweib {
namespace {

using nlohmann::json;

// Stream tags under the run seed: 0 draws the stress grid, 1 roots the
// per-(pair, replication) data streams.
constexpr std::uint64_t kStressTag = 0;
constexpr std::uint64_t kDataTag = 1;

ProgressiveScheme effective_scheme(const SimulationConfig& cfg) {
  if (cfg.preset != 0 && cfg.custom_scheme)
    throw std::invalid_argument("simulate: give either a preset or a custom scheme");
  const ProgressiveScheme base =
      cfg.custom_scheme ? *cfg.custom_scheme : preset(cfg.preset);
  return ProgressiveScheme(base.n, base.m, base.removals, cfg.cutoff);
}

void check_stf_positive(const SimulationConfig& cfg,
                        const std::vector<StressPoint>& points) {
  // The translation is linear in (1/T, log V), hence monotone in each
  // coordinate: positivity at the four box corners is positivity on the box.
  std::vector<StressPoint> probes = points;
  const auto [t_lo, t_hi, v_lo, v_hi] =
      std::tuple{cfg.stress_ranges[0], cfg.stress_ranges[1], cfg.stress_ranges[2],
                 cfg.stress_ranges[3]};
  for (double t : {t_lo, t_hi})
    for (double v : {v_lo, v_hi}) probes.emplace_back(t, v);
  for (const auto& s : probes) {
    if (!(stf_eval(cfg.shape_coeffs, s) > 0.0) ||
        !(stf_eval(cfg.scale_coeffs, s) > 0.0)) {
      std::ostringstream msg;
      msg << "simulate: stress translation nonpositive at T=" << s.temperature
          << " V=" << s.voltage;
      throw std::runtime_error(msg.str());
    }
  }
}

CensoredDataset make_dataset(const std::vector<double>& full,
                             const ProgressiveScheme& scheme, Regime regime,
                             const WeibullParams& truth, SplitRng& stream) {
  if (regime == Regime::PHC) return truncate_phc(full, scheme);
  const auto [j, kind] = classify_case(full, scheme.cutoff);
  if (kind == CaseKind::CaseI)
    return CensoredDataset{full, scheme, Regime::APHC, CaseKind::CaseI, scheme.m, 0};
  return regenerate_aphc(full, j, scheme, truth, stream);
}

struct CsvBuilder {
  std::ostringstream out;

  void raw(const std::string& line) { out << line << '\n'; }
  void cells(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) out << ',';
      out << fields[i];
    }
    out << '\n';
  }
  std::string str() const { return out.str(); }
};

const char* regime_name(Regime r) { return r == Regime::PHC ? "phc" : "aphc"; }
const char* transform_name(RegressorTransform t) {
  return t == RegressorTransform::InvTempLogVolt ? "inv-log" : "raw";
}

std::array<const char*, 3> term_names(RegressorTransform t) {
  if (t == RegressorTransform::InvTempLogVolt)
    return {"intercept", "inv_temp", "log_volt"};
  return {"intercept", "temperature", "voltage"};
}

}  // namespace

SimulationOutput run_simulation(const SimulationConfig& cfg) {
  if (cfg.replications < 1)
    throw std::invalid_argument("simulate: replications must be >= 1");
  if (cfg.n_pairs < 1) throw std::invalid_argument("simulate: pairs must be >= 1");
  if (!(cfg.stress_ranges[0] > 0.0) || !(cfg.stress_ranges[2] > 0.0) ||
      cfg.stress_ranges[1] < cfg.stress_ranges[0] ||
      cfg.stress_ranges[3] < cfg.stress_ranges[2])
    throw std::invalid_argument("simulate: malformed stress ranges");

  const ProgressiveScheme scheme = effective_scheme(cfg);
  SplitRng root = SplitRng::seeded(cfg.seed);

  SimulationOutput out;
  if (!cfg.stress_points.empty()) {
    out.stresses = cfg.stress_points;
  } else {
    SplitRng stress_stream = root.fork(kStressTag);
    out.stresses.reserve(cfg.n_pairs);
    for (int i = 0; i < cfg.n_pairs; ++i) {
      const double t =
          cfg.stress_ranges[0] +
          (cfg.stress_ranges[1] - cfg.stress_ranges[0]) * stress_stream.uniform();
      const double v =
          cfg.stress_ranges[2] +
          (cfg.stress_ranges[3] - cfg.stress_ranges[2]) * stress_stream.uniform();
      out.stresses.emplace_back(t, v);
    }
  }
  check_stf_positive(cfg, out.stresses);

  const int pairs = static_cast<int>(out.stresses.size());
  out.truth.reserve(pairs);
  for (const auto& s : out.stresses)
    out.truth.emplace_back(stf_eval(cfg.shape_coeffs, s), stf_eval(cfg.scale_coeffs, s));

  const int reps = cfg.replications;
  const std::size_t tasks = static_cast<std::size_t>(pairs) * reps;
  out.fits.assign(tasks, {0.0, 0.0, 0.0, 0.0});

  const SplitRng data_root = root.fork(kDataTag);
  const auto run_task = [&](std::size_t t) {
    const int pair = static_cast<int>(t) / reps;
    const int rep = static_cast<int>(t) % reps;
    SplitRng stream = data_root.fork(pair).fork(rep);
    const std::vector<double> full =
        generate_progressive(scheme, out.truth[pair], stream);
    const CensoredDataset ds =
        make_dataset(full, scheme, cfg.regime, out.truth[pair], stream);
    const FitResult f = fit(ds);
    out.fits[t] = {f.params.alpha, f.params.lambda, f.se_alpha, f.se_lambda};
  };

  unsigned workers = cfg.threads > 0 ? static_cast<unsigned>(cfg.threads)
                                     : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<std::size_t>(workers, tasks);
  if (workers <= 1) {
    for (std::size_t t = 0; t < tasks; ++t) run_task(t);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned wkr = 0; wkr < workers; ++wkr) {
      pool.emplace_back([&] {
        for (;;) {
          const std::size_t t = next.fetch_add(1);
          if (t >= tasks) return;
          try {
            run_task(t);
          } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!first_error) first_error = std::current_exception();
            return;
          }
        }
      });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
  }

  if (pairs >= 3) {
    out.regressions.reserve(reps);
    std::vector<std::array<double, 4>> rows(pairs);
    for (int rep = 0; rep < reps; ++rep) {
      for (int pair = 0; pair < pairs; ++pair)
        rows[pair] = out.fits[static_cast<std::size_t>(pair) * reps + rep];
      out.regressions.push_back(two_step_rows(rows, out.stresses, cfg.transform));
    }
  }

  out.kernel = active_kernel_name();
  return out;
}

RunArtifacts cmd_simulate(const SimulationConfig& cfg) {
  const SimulationOutput sim = run_simulation(cfg);
  namespace fs = std::filesystem;
  fs::create_directories(cfg.out_dir);

  const int pairs = static_cast<int>(sim.stresses.size());
  const int reps = cfg.replications;
  const int table_pairs = std::min(cfg.n_table_pairs, pairs);

  CsvBuilder ml;
  ml.raw(
      "index,T,V,alpha_true,lambda_true,alpha_hat_mean,lambda_hat_mean,"
      "se_alpha_mean,se_lambda_mean");
  for (int pair = 0; pair < table_pairs; ++pair) {
    double ah = 0, lh = 0, sa = 0, sl = 0;
    for (int rep = 0; rep < reps; ++rep) {
      const auto& row = sim.fits[static_cast<std::size_t>(pair) * reps + rep];
      ah += row[0];
      lh += row[1];
      sa += row[2];
      sl += row[3];
    }
    const double inv = 1.0 / reps;
    ml.cells({std::to_string(pair + 1), format_sig6(sim.stresses[pair].temperature),
              format_sig6(sim.stresses[pair].voltage),
              format_sig6(sim.truth[pair].alpha), format_sig6(sim.truth[pair].lambda),
              format_sig6(ah * inv), format_sig6(lh * inv), format_sig6(sa * inv),
              format_sig6(sl * inv)});
  }

  CsvBuilder reg;
  reg.raw(
      "response,term,truth,coef_mean,coef_sd,se_mean,se_ols_mean,ci_lo_mean,"
      "ci_hi_mean");
  if (!sim.regressions.empty()) {
    const auto terms = term_names(cfg.transform);
    const bool truth_known = cfg.transform == RegressorTransform::InvTempLogVolt;
    // Exactly identified runs (3 pairs) carry no inference block; their
    // se/ci columns stay empty.
    const bool has_inference = sim.regressions.front().shape.inference.has_value();
    for (int resp = 0; resp < 2; ++resp) {
      const StressCoefficients& tc = resp == 0 ? cfg.shape_coeffs : cfg.scale_coeffs;
      const std::array<double, 3> truths{tc.intercept, tc.inv_temp, tc.log_volt};
      for (int k = 0; k < 3; ++k) {
        double mean = 0, sq = 0, se = 0, se0 = 0, lo = 0, hi = 0;
        for (const auto& ts : sim.regressions) {
          const RegressionResult& rr = resp == 0 ? ts.shape : ts.scale;
          const double c = rr.coef[k];
          mean += c;
          sq += c * c;
          if (!has_inference) continue;
          const auto& inf = *rr.inference;
          se += inf.se[k];
          se0 += inf.se_ols ? (*inf.se_ols)[k] : inf.se[k];
          lo += inf.ci95[k].first;
          hi += inf.ci95[k].second;
        }
        const double n = static_cast<double>(sim.regressions.size());
        mean /= n;
        const double var = n > 1 ? std::max(0.0, (sq - n * mean * mean) / (n - 1)) : 0.0;
        std::vector<std::string> row{resp == 0 ? "shape" : "scale", terms[k],
                                     truth_known ? format_sig6(truths[k]) : std::string(),
                                     format_sig6(mean), format_sig6(std::sqrt(var))};
        if (has_inference) {
          row.push_back(format_sig6(se / n));
          row.push_back(format_sig6(se0 / n));
          row.push_back(format_sig6(lo / n));
          row.push_back(format_sig6(hi / n));
        } else {
          row.insert(row.end(), 4, std::string());
        }
        reg.cells(row);
      }
    }
  }

  CsvBuilder err;
  err.raw("pair_index,replication,alpha_err,lambda_err,se_alpha,se_lambda");
  for (int pair = 0; pair < pairs; ++pair) {
    for (int rep = 0; rep < reps; ++rep) {
      const auto& row = sim.fits[static_cast<std::size_t>(pair) * reps + rep];
      err.cells({std::to_string(pair + 1), std::to_string(rep + 1),
                 format_sig6(row[0] - sim.truth[pair].alpha),
                 format_sig6(row[1] - sim.truth[pair].lambda), format_sig6(row[2]),
                 format_sig6(row[3])});
    }
  }

  const ProgressiveScheme scheme = effective_scheme(cfg);
  json manifest;
  manifest["config"] = json::parse(config_to_json(cfg));
  manifest["kernel"] = sim.kernel;
  manifest["rng"] = "splitmix64-counter";
  manifest["scheme"] = {{"n", scheme.n},
                        {"m", scheme.m},
                        {"removals", scheme.removals},
                        {"cutoff", scheme.cutoff}};
  manifest["outputs"] = {{"ml_table", "ml_table.csv"},
                         {"regression_table", "regression.csv"},
                         {"error_histogram", "errors.csv"}};

  RunArtifacts art;
  const auto path = [&](const char* name) { return (fs::path(cfg.out_dir) / name).string(); };
  art.ml_table = path("ml_table.csv");
  art.regression_table = path("regression.csv");
  art.error_histogram = path("errors.csv");
  art.manifest = path("manifest.json");
  write_text_file(art.ml_table, ml.str());
  write_text_file(art.regression_table, reg.str());
  write_text_file(art.error_histogram, err.str());
  write_text_file(art.manifest, manifest.dump(2) + "\n");
  return art;
}

FitResult cmd_fit(const FitCommand& cmd) {
  std::vector<double> times = read_times_csv(cmd.data_path);
  std::sort(times.begin(), times.end());
  const ProgressiveScheme scheme(cmd.n, cmd.m, cmd.removals, cmd.cutoff);
  const int len = static_cast<int>(times.size());

  if (len > scheme.m)
    throw std::invalid_argument("fit: more times than the scheme's m");

  if (len == scheme.m) {
    if (cmd.regime == Regime::PHC) return fit(truncate_phc(times, scheme));
    const auto [j, kind] = classify_case(times, scheme.cutoff);
    if (kind == CaseKind::CaseI)
      return fit(CensoredDataset{times, scheme, Regime::APHC, CaseKind::CaseI,
                                 scheme.m, 0});
    return fit(CensoredDataset{times, scheme, Regime::APHC, CaseKind::CaseII, j, 0});
  }

  // Fewer than m times: an already-truncated hybrid Case II sample.
  if (cmd.regime == Regime::APHC)
    throw std::invalid_argument(
        "fit: an adaptive sample contains all m failures; got fewer");
  if (!times.empty() && times.back() > scheme.cutoff)
    throw std::invalid_argument(
        "fit: truncated sample has times beyond the cutoff");
  const int j = len;
  int removed = 0;
  for (int i = 0; i < j; ++i) removed += scheme.removals[i];
  const int rj_star = scheme.n - j - removed;
  if (rj_star < 0)
    throw std::invalid_argument("fit: scheme and sample sizes are inconsistent");
  return fit(CensoredDataset{times, scheme, Regime::PHC, CaseKind::CaseII, j, rj_star});
}

TwoStepResult cmd_regress(const RegressCommand& cmd) {
  const auto rows = read_fits_csv(cmd.fits_path);
  const auto stresses = read_stress_csv(cmd.stress_path);
  if (rows.size() != stresses.size())
    throw std::invalid_argument("regress: fits and stress files have different row counts");
  if (cmd.exact && rows.size() != 3)
    throw std::invalid_argument("regress: exact mode needs exactly 3 rows");
  return two_step_rows(rows, stresses, cmd.transform);
}

AdResult cmd_gof(const GofCommand& cmd) {
  const std::vector<double> times = read_times_csv(cmd.data_path);
  return ad_test(times, cmd.reps, cmd.seed);
}

std::string config_to_json(const SimulationConfig& cfg) {
  json j;
  j["preset"] = cfg.preset;
  if (cfg.custom_scheme) {
    j["custom_scheme"] = {{"n", cfg.custom_scheme->n},
                          {"m", cfg.custom_scheme->m},
                          {"removals", cfg.custom_scheme->removals},
                          {"cutoff", cfg.custom_scheme->cutoff}};
  }
  j["regime"] = regime_name(cfg.regime);
  j["shape_coeffs"] = {{"intercept", cfg.shape_coeffs.intercept},
                       {"inv_temp", cfg.shape_coeffs.inv_temp},
                       {"log_volt", cfg.shape_coeffs.log_volt}};
  j["scale_coeffs"] = {{"intercept", cfg.scale_coeffs.intercept},
                       {"inv_temp", cfg.scale_coeffs.inv_temp},
                       {"log_volt", cfg.scale_coeffs.log_volt}};
  j["cutoff"] = cfg.cutoff;
  j["n_pairs"] = cfg.n_pairs;
  j["n_table_pairs"] = cfg.n_table_pairs;
  j["replications"] = cfg.replications;
  j["seed"] = cfg.seed;
  j["stress_ranges"] = cfg.stress_ranges;
  j["transform"] = transform_name(cfg.transform);
  if (!cfg.stress_points.empty()) {
    json pts = json::array();
    for (const auto& s : cfg.stress_points)
      pts.push_back({s.temperature, s.voltage});
    j["stress_points"] = pts;
  }
  return j.dump(2);
}

SimulationConfig config_from_json(const std::string& text) {
  json j = json::parse(text);
  if (j.contains("config")) j = j["config"];

  SimulationConfig cfg;
  cfg.preset = j.value("preset", cfg.preset);
  if (j.contains("custom_scheme")) {
    const auto& cs = j["custom_scheme"];
    cfg.custom_scheme = ProgressiveScheme(
        cs.at("n").get<int>(), cs.at("m").get<int>(),
        cs.at("removals").get<std::vector<int>>(), cs.at("cutoff").get<double>());
  }
  if (j.contains("regime")) {
    const std::string r = j["regime"].get<std::string>();
    if (r == "phc")
      cfg.regime = Regime::PHC;
    else if (r == "aphc")
      cfg.regime = Regime::APHC;
    else
      throw std::invalid_argument("config: regime must be phc or aphc");
  }
  const auto read_coeffs = [&](const char* key, StressCoefficients& c) {
    if (!j.contains(key)) return;
    const auto& cj = j[key];
    c.intercept = cj.value("intercept", c.intercept);
    c.inv_temp = cj.value("inv_temp", c.inv_temp);
    c.log_volt = cj.value("log_volt", c.log_volt);
  };
  read_coeffs("shape_coeffs", cfg.shape_coeffs);
  read_coeffs("scale_coeffs", cfg.scale_coeffs);
  cfg.cutoff = j.value("cutoff", cfg.cutoff);
  cfg.n_pairs = j.value("n_pairs", cfg.n_pairs);
  cfg.n_table_pairs = j.value("n_table_pairs", cfg.n_table_pairs);
  cfg.replications = j.value("replications", cfg.replications);
  cfg.seed = j.value("seed", cfg.seed);
  if (j.contains("stress_ranges")) {
    const auto v = j["stress_ranges"].get<std::vector<double>>();
    if (v.size() != 4)
      throw std::invalid_argument("config: stress_ranges needs 4 entries");
    std::copy(v.begin(), v.end(), cfg.stress_ranges.begin());
  }
  if (j.contains("transform")) {
    const std::string t = j["transform"].get<std::string>();
    if (t == "inv-log")
      cfg.transform = RegressorTransform::InvTempLogVolt;
    else if (t == "raw")
      cfg.transform = RegressorTransform::Raw;
    else
      throw std::invalid_argument("config: transform must be inv-log or raw");
  }
  if (j.contains("stress_points")) {
    for (const auto& p : j["stress_points"]) {
      const auto v = p.get<std::vector<double>>();
      if (v.size() != 2)
        throw std::invalid_argument("config: stress_points entries need [T, V]");
      cfg.stress_points.emplace_back(v[0], v[1]);
    }
  }
  return cfg;
}

}  // namespace altweib
