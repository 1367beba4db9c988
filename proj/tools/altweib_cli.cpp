// Command-line front end: simulate | fit | regress | gof.
// Exit codes: 0 success, 1 numeric/model error, 2 input error.

#include <cstdio>
#include <exception>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "altweib/csvio.hpp"
#include "altweib/harness.hpp"
#include "altweib/mle.hpp"

namespace {

using namespace altweib;

std::vector<int> parse_removals(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t pos = 0;
      const int v = std::stoi(tok, &pos);
      if (pos != tok.size()) throw std::invalid_argument(tok);
      out.push_back(v);
    } catch (const std::exception&) {
      throw std::invalid_argument("removals: cannot parse '" + tok + "'");
    }
  }
  if (out.empty()) throw std::invalid_argument("removals: empty list");
  return out;
}

Regime parse_regime(const std::string& r) {
  if (r == "phc") return Regime::PHC;
  if (r == "aphc") return Regime::APHC;
  throw std::invalid_argument("regime must be phc or aphc");
}

RegressorTransform parse_transform(const std::string& t) {
  if (t == "inv-log") return RegressorTransform::InvTempLogVolt;
  if (t == "raw") return RegressorTransform::Raw;
  throw std::invalid_argument("transform must be inv-log or raw");
}

void print_regression(const char* response, const RegressionResult& rr,
                      RegressorTransform transform) {
  static const char* inv_terms[3] = {"intercept", "inv_temp", "log_volt"};
  static const char* raw_terms[3] = {"intercept", "temperature", "voltage"};
  const char** terms =
      transform == RegressorTransform::InvTempLogVolt ? inv_terms : raw_terms;
  if (!rr.inference) {
    std::printf("response,term,coef\n");
    for (int k = 0; k < 3; ++k)
      std::printf("%s,%s,%s\n", response, terms[k], format_sig6(rr.coef[k]).c_str());
    return;
  }
  const auto& inf = *rr.inference;
  std::printf("response,term,coef,se,se_ols,t,p,ci_lo,ci_hi\n");
  for (int k = 0; k < 3; ++k)
    std::printf("%s,%s,%s,%s,%s,%s,%s,%s,%s\n", response, terms[k],
                format_sig6(rr.coef[k]).c_str(), format_sig6(inf.se[k]).c_str(),
                format_sig6(inf.se_ols ? (*inf.se_ols)[k] : inf.se[k]).c_str(),
                format_sig6(inf.t_stat[k]).c_str(), format_sig6(inf.p_value[k]).c_str(),
                format_sig6(inf.ci95[k].first).c_str(),
                format_sig6(inf.ci95[k].second).c_str());
}

int dispatch(int argc, char** argv) {
  CLI::App app{"Weibull accelerated-life-testing estimation under progressive "
               "hybrid censoring"};
  app.require_subcommand(1);

  // --- simulate ---
  auto* sim = app.add_subcommand("simulate", "Monte Carlo experiment over a stress grid");
  std::string config_path, stress_file, out_dir = ".", regime_s = "phc",
              transform_s = "inv-log";
  int preset_k = 0, reps = 0, pairs = -1, table_pairs = -1, threads = 0;
  std::uint64_t seed = 0;
  double cutoff = -1.0;
  sim->add_option("--config", config_path, "JSON config or manifest to start from");
  sim->add_option("--preset", preset_k, "experiment design 1..15");
  sim->add_option("--regime", regime_s, "phc|aphc")->default_str("phc");
  sim->add_option("--reps", reps, "Monte Carlo replications");
  sim->add_option("--seed", seed, "run seed");
  sim->add_option("--pairs", pairs, "stress pairs to draw (default 50)");
  sim->add_option("--table-pairs", table_pairs, "pairs shown in ml_table (default 10)");
  sim->add_option("--stress-file", stress_file, "CSV of explicit T,V pairs");
  sim->add_option("--out", out_dir, "output directory")->default_str(".");
  sim->add_option("--transform", transform_s, "inv-log|raw")->default_str("inv-log");
  sim->add_option("--threads", threads, "worker threads (0 = hardware)");
  sim->add_option("--cutoff", cutoff, "censoring cutoff time (default 2.73)");

  // --- fit ---
  auto* fitc = app.add_subcommand("fit", "ML fit of one censored dataset");
  std::string fit_data, fit_regime = "phc", fit_removals, fit_out;
  int fit_n = 0, fit_m = 0;
  double fit_cutoff = 0.0;
  fitc->add_option("--data", fit_data, "CSV of failure times, one per row")->required();
  fitc->add_option("--n", fit_n, "units on test")->required();
  fitc->add_option("--m", fit_m, "target failures")->required();
  fitc->add_option("--removals", fit_removals, "comma list r1,r2,...,rm")->required();
  fitc->add_option("--cutoff", fit_cutoff, "censoring cutoff time")->required();
  fitc->add_option("--regime", fit_regime, "phc|aphc")->default_str("phc");
  fitc->add_option("--out", fit_out, "also write the record to this file");

  // --- regress ---
  auto* regc = app.add_subcommand("regress", "second-stage stress-coefficient fit");
  std::string reg_fits, reg_stress, reg_transform = "inv-log";
  bool reg_exact = false;
  regc->add_option("--fits", reg_fits, "CSV alpha,lambda[,se_alpha,se_lambda]")->required();
  regc->add_option("--stress", reg_stress, "CSV of T,V rows")->required();
  regc->add_flag("--exact", reg_exact, "exactly identified 3-point solve");
  regc->add_option("--transform", reg_transform, "inv-log|raw")->default_str("inv-log");

  // --- gof ---
  auto* gofc = app.add_subcommand("gof", "Anderson-Darling test with bootstrap p-value");
  std::string gof_data;
  int gof_reps = 2000;
  std::uint64_t gof_seed = 0;
  gofc->add_option("--data", gof_data, "CSV of values, one per row")->required();
  gofc->add_option("--reps", gof_reps, "bootstrap replicates")->default_str("2000");
  gofc->add_option("--seed", gof_seed, "bootstrap seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }

  if (sim->parsed()) {
    SimulationConfig cfg;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw std::invalid_argument("cannot open config: " + config_path);
      std::stringstream buf;
      buf << in.rdbuf();
      cfg = config_from_json(buf.str());
    }
    if (preset_k != 0) cfg.preset = preset_k;
    if (sim->count("--regime")) cfg.regime = parse_regime(regime_s);
    if (sim->count("--reps")) cfg.replications = reps;
    if (sim->count("--seed")) cfg.seed = seed;
    if (pairs >= 0) cfg.n_pairs = pairs;
    if (table_pairs >= 0) cfg.n_table_pairs = table_pairs;
    if (sim->count("--transform")) cfg.transform = parse_transform(transform_s);
    if (cutoff > 0.0) cfg.cutoff = cutoff;
    if (threads > 0) cfg.threads = threads;
    if (!stress_file.empty()) cfg.stress_points = read_stress_csv(stress_file);
    cfg.out_dir = out_dir;

    const RunArtifacts art = cmd_simulate(cfg);
    std::printf("ml_table,%s\nregression,%s\nerrors,%s\nmanifest,%s\n",
                art.ml_table.c_str(), art.regression_table.c_str(),
                art.error_histogram.c_str(), art.manifest.c_str());
    return 0;
  }

  if (fitc->parsed()) {
    FitCommand cmd;
    cmd.data_path = fit_data;
    cmd.n = fit_n;
    cmd.m = fit_m;
    cmd.removals = parse_removals(fit_removals);
    cmd.cutoff = fit_cutoff;
    cmd.regime = parse_regime(fit_regime);
    const FitResult f = cmd_fit(cmd);

    std::ostringstream rec;
    rec << "alpha,lambda,se_alpha,se_lambda,case,regime,iterations,score_residual\n"
        << format_sig6(f.params.alpha) << ',' << format_sig6(f.params.lambda) << ','
        << format_sig6(f.se_alpha) << ',' << format_sig6(f.se_lambda) << ','
        << (f.caseKind == CaseKind::CaseI ? "I" : "II") << ','
        << (f.regime == Regime::PHC ? "phc" : "aphc") << ',' << f.iterations << ','
        << format_sig6(f.score_residual) << '\n';
    std::fputs(rec.str().c_str(), stdout);
    if (!fit_out.empty()) write_text_file(fit_out, rec.str());
    return 0;
  }

  if (regc->parsed()) {
    RegressCommand cmd;
    cmd.fits_path = reg_fits;
    cmd.stress_path = reg_stress;
    cmd.exact = reg_exact;
    cmd.transform = parse_transform(reg_transform);
    const TwoStepResult ts = cmd_regress(cmd);
    print_regression("shape", ts.shape, cmd.transform);
    print_regression("scale", ts.scale, cmd.transform);
    return 0;
  }

  if (gofc->parsed()) {
    GofCommand cmd;
    cmd.data_path = gof_data;
    cmd.reps = gof_reps;
    cmd.seed = gof_seed;
    const AdResult ad = cmd_gof(cmd);
    std::printf("statistic,p_value,alpha,lambda,bootstrap_reps,decision_5pct\n");
    std::printf("%s,%s,%s,%s,%d,%s\n", format_sig6(ad.statistic).c_str(),
                format_sig6(ad.p_value).c_str(), format_sig6(ad.fitted.alpha).c_str(),
                format_sig6(ad.fitted.lambda).c_str(), ad.bootstrap_reps,
                ad.reject_at(0.05) ? "reject" : "fail-to-reject");
    return 0;
  }

  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return dispatch(argc, argv);
  } catch (const altweib::CsvError& e) {
    if (e.line > 0)
      std::fprintf(stderr, "input error at line %d: %s\n", e.line, e.what());
    else
      std::fprintf(stderr, "input error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "input error: %s\n", e.what());
    return 2;
  } catch (const std::out_of_range& e) {
    std::fprintf(stderr, "input error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
