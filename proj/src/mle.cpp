#include "altweib/mle.hpp"

#include <algorithm>
#include <cmath>

#include "altweib/kernels.hpp"

namespace altweib {
namespace {

// Shared reduction: every likelihood case is a weighted point set
// {(x_i, w_i)}, an observed-failure count c, and the sum of observed logs.
// Logs are shifted by their maximum so alpha * u never exceeds zero and the
// exponential moment sums cannot overflow. Zero-weight points are dropped,
// which both skips dead work and guarantees the maximal point has positive
// weight (keeping the sums bounded away from zero for every alpha).
struct WeightedSample {
  std::vector<double> u;
  std::vector<double> w;
  double shift = 0.0;
  double c = 0.0;
  double slo = 0.0;
};

void append_point(std::vector<double>& logs, std::vector<double>& wts, double x,
                  double weight) {
  if (!(x > 0.0)) throw std::invalid_argument("mle: times must be positive");
  if (weight > 0.0) {
    logs.push_back(std::log(x));
    wts.push_back(weight);
  }
}

WeightedSample finish(std::vector<double> logs, std::vector<double> wts, double c,
                      double slo) {
  if (logs.empty()) throw std::invalid_argument("mle: no weighted observations");
  WeightedSample ws;
  ws.shift = *std::max_element(logs.begin(), logs.end());
  for (double& l : logs) l -= ws.shift;
  ws.u = std::move(logs);
  ws.w = std::move(wts);
  ws.c = c;
  ws.slo = slo;
  return ws;
}

WeightedSample reduce_case1(const std::vector<double>& times,
                            const std::vector<int>& removals) {
  if (times.size() != removals.size() || times.empty())
    throw std::invalid_argument("mle: times and removals must share a positive length");
  std::vector<double> logs, wts;
  logs.reserve(times.size());
  wts.reserve(times.size());
  double slo = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (removals[i] < 0) throw std::invalid_argument("mle: removals must be >= 0");
    append_point(logs, wts, times[i], 1.0 + removals[i]);
    slo += std::log(times[i]);
  }
  return finish(std::move(logs), std::move(wts), static_cast<double>(times.size()), slo);
}

WeightedSample reduce_phc2(const std::vector<double>& times,
                           const std::vector<int>& removals, double cutoff,
                           int rj_star) {
  if (times.empty())
    throw DegenerateDataError("mle: hybrid Case II with zero observed failures");
  if (times.size() != removals.size())
    throw std::invalid_argument("mle: times and removals must share a length");
  if (rj_star < 0) throw std::invalid_argument("mle: rj_star must be >= 0");
  if (!(cutoff > 0.0)) throw std::invalid_argument("mle: cutoff must be positive");
  std::vector<double> logs, wts;
  logs.reserve(times.size() + 1);
  wts.reserve(times.size() + 1);
  double slo = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (removals[i] < 0) throw std::invalid_argument("mle: removals must be >= 0");
    append_point(logs, wts, times[i], 1.0 + removals[i]);
    slo += std::log(times[i]);
  }
  append_point(logs, wts, cutoff, static_cast<double>(rj_star));
  return finish(std::move(logs), std::move(wts), static_cast<double>(times.size()), slo);
}

WeightedSample reduce_aphc2(const std::vector<double>& times,
                            const std::vector<int>& removals, int j, int n) {
  const int m = static_cast<int>(times.size());
  if (m == 0) throw std::invalid_argument("mle: empty sample");
  if (j < 0 || j > m || static_cast<int>(removals.size()) < j)
    throw std::invalid_argument("mle: adaptive case requires 0 <= j <= m removals known");
  int sum_rj = 0;
  for (int i = 0; i < j; ++i) {
    if (removals[i] < 0) throw std::invalid_argument("mle: removals must be >= 0");
    sum_rj += removals[i];
  }
  const int terminal = n - m - sum_rj;
  if (terminal < 0)
    throw std::invalid_argument("mle: adaptive terminal weight is negative");
  std::vector<double> logs, wts;
  logs.reserve(m);
  wts.reserve(m);
  double slo = 0.0;
  for (int i = 0; i < m; ++i) {
    double weight = 1.0;
    if (i < j) weight += removals[i];
    if (i == m - 1) weight += terminal;
    append_point(logs, wts, times[i], weight);
    slo += std::log(times[i]);
  }
  return finish(std::move(logs), std::move(wts), static_cast<double>(m), slo);
}

ShapeScore score_at(const WeightedSample& ws, double alpha) {
  const MomentSums s =
      weighted_power_sums(ws.u.data(), ws.w.data(), ws.u.size(), alpha);
  const double ratio = s.s1 / s.s0;
  ShapeScore out;
  out.value = ws.c / alpha + ws.slo - ws.c * (ratio + ws.shift);
  out.derivative =
      -ws.c / (alpha * alpha) - ws.c * (s.s2 * s.s0 - s.s1 * s.s1) / (s.s0 * s.s0);
  return out;
}

double lambda_at(const WeightedSample& ws, double alpha) {
  const MomentSums s =
      weighted_power_sums(ws.u.data(), ws.w.data(), ws.u.size(), alpha);
  return std::exp(ws.shift) * std::pow(s.s0 / ws.c, 1.0 / alpha);
}

double loglik_at(const WeightedSample& ws, double alpha, double lambda) {
  if (!(alpha > 0.0) || !(lambda > 0.0))
    throw std::invalid_argument("mle: loglik needs positive parameters");
  const MomentSums s =
      weighted_power_sums(ws.u.data(), ws.w.data(), ws.u.size(), alpha);
  return ws.c * std::log(alpha) - ws.c * alpha * std::log(lambda) +
         (alpha - 1.0) * ws.slo -
         std::exp(alpha * (ws.shift - std::log(lambda))) * s.s0;
}

WeightedSample reduce_dataset(const CensoredDataset& ds) {
  const auto& sch = ds.scheme;
  if (ds.caseKind == CaseKind::CaseI) {
    if (static_cast<int>(ds.times.size()) != sch.m)
      throw std::invalid_argument("mle: Case I dataset must hold all m times");
    return reduce_case1(ds.times, sch.removals);
  }
  if (ds.regime == Regime::PHC) {
    if (static_cast<int>(ds.times.size()) != ds.j)
      throw std::invalid_argument("mle: hybrid Case II dataset must hold j times");
    const std::vector<int> rj(sch.removals.begin(), sch.removals.begin() + ds.j);
    return reduce_phc2(ds.times, rj, sch.cutoff, ds.rj_star);
  }
  if (static_cast<int>(ds.times.size()) != sch.m)
    throw std::invalid_argument("mle: adaptive Case II dataset must hold m times");
  return reduce_aphc2(ds.times, sch.removals, ds.j, sch.n);
}

}  // namespace

double score_case1(double alpha, const std::vector<double>& times,
                   const std::vector<int>& removals) {
  return score_at(reduce_case1(times, removals), alpha).value;
}

double lambda_case1(double alpha, const std::vector<double>& times,
                    const std::vector<int>& removals) {
  return lambda_at(reduce_case1(times, removals), alpha);
}

double score_phc2(double alpha, const std::vector<double>& times,
                  const std::vector<int>& removals, double cutoff, int rj_star) {
  return score_at(reduce_phc2(times, removals, cutoff, rj_star), alpha).value;
}

double lambda_phc2(double alpha, const std::vector<double>& times,
                   const std::vector<int>& removals, double cutoff, int rj_star) {
  return lambda_at(reduce_phc2(times, removals, cutoff, rj_star), alpha);
}

double score_aphc2(double alpha, const std::vector<double>& times,
                   const std::vector<int>& removals, int j, int n) {
  return score_at(reduce_aphc2(times, removals, j, n), alpha).value;
}

double lambda_aphc2(double alpha, const std::vector<double>& times,
                    const std::vector<int>& removals, int j, int n) {
  return lambda_at(reduce_aphc2(times, removals, j, n), alpha);
}

double case_loglik(const CensoredDataset& ds, double alpha, double lambda) {
  return loglik_at(reduce_dataset(ds), alpha, lambda);
}

double solve_shape(const ScoreFunction& score, std::pair<double, double> bracket_init,
                   double tol, int max_newton, int* iterations_out) {
  constexpr double kLoLimit = 1e-6;
  constexpr double kHiLimit = 1e6;
  constexpr int kMaxTotal = 200;

  double lo = bracket_init.first;
  double hi = bracket_init.second;
  if (!(lo > 0.0) || !(hi > lo))
    throw std::invalid_argument("solve_shape: bracket must satisfy 0 < lo < hi");

  int evals = 0;
  const auto eval = [&](double a) {
    ++evals;
    return score(a);
  };

  double flo = eval(lo).value;
  while (flo <= 0.0 && lo > kLoLimit) {
    lo = std::max(kLoLimit, lo / 8.0);
    flo = eval(lo).value;
  }
  double fhi = eval(hi).value;
  while (fhi >= 0.0 && hi < kHiLimit) {
    hi = std::min(kHiLimit, hi * 8.0);
    fhi = eval(hi).value;
  }
  if (!(flo > 0.0) || !(fhi < 0.0))
    throw DegenerateDataError(
        "solve_shape: score has no sign change (fewer than two distinct "
        "observations?)");

  // The score decreases strictly, so [lo, hi] always brackets the root.
  double alpha = std::sqrt(lo * hi);
  const auto converged = [&](const ShapeScore& s) {
    return std::abs(s.value) <= tol * (1.0 + std::abs(alpha * s.derivative));
  };

  for (int it = 0; it < kMaxTotal; ++it) {
    const ShapeScore s = eval(alpha);
    if (converged(s)) break;
    if (s.value > 0.0)
      lo = alpha;
    else
      hi = alpha;
    if (hi - lo <= 1e-12 * std::max(1.0, alpha)) break;

    double next = 0.5 * (lo + hi);
    if (it < max_newton && s.derivative < 0.0) {
      const double newton = alpha - s.value / s.derivative;
      if (newton > lo && newton < hi) next = newton;
    }
    alpha = next;
  }

  if (iterations_out) *iterations_out = evals;
  return alpha;
}

FitResult fit(const CensoredDataset& ds) {
  const WeightedSample ws = reduce_dataset(ds);

  int iterations = 0;
  const double alpha = solve_shape(
      [&ws](double a) { return score_at(ws, a); }, {0.05, 50.0}, 1e-10, 25,
      &iterations);
  const double lambda = lambda_at(ws, alpha);

  const ShapeScore at_root = score_at(ws, alpha);
  const double residual =
      std::abs(at_root.value) / (1.0 + std::abs(alpha * at_root.derivative));

  const double ha = 1e-5 * alpha;
  const double hl = 1e-5 * lambda;
  const auto ll = [&ws](double a, double l) { return loglik_at(ws, a, l); };
  const double l00 = ll(alpha, lambda);
  const double i_aa =
      -(ll(alpha + ha, lambda) - 2.0 * l00 + ll(alpha - ha, lambda)) / (ha * ha);
  const double i_ll =
      -(ll(alpha, lambda + hl) - 2.0 * l00 + ll(alpha, lambda - hl)) / (hl * hl);
  const double i_al = -(ll(alpha + ha, lambda + hl) - ll(alpha + ha, lambda - hl) -
                        ll(alpha - ha, lambda + hl) + ll(alpha - ha, lambda - hl)) /
                      (4.0 * ha * hl);

  const double det = i_aa * i_ll - i_al * i_al;
  if (!(i_aa > 0.0) || !(det > 0.0))
    throw std::runtime_error("fit: observed information not positive definite");

  FitResult out{WeibullParams(alpha, lambda),
                std::sqrt(i_ll / det),
                std::sqrt(i_aa / det),
                {i_aa, i_al, i_al, i_ll},
                iterations,
                ds.caseKind,
                ds.regime,
                residual};
  return out;
}

}  // namespace altweib
