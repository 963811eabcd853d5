#include "weylcdma/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "weylcdma/numeric.hpp"
#include "weylcdma/rng.hpp"
#include "weylcdma/sequence.hpp"

namespace weylcdma {

double circle_distance(double rho_i, double rho_k) {
  const double diff = std::abs(rho_i - rho_k);
  return std::min(diff, 1.0 - diff);
}

namespace {

double inverse_sine_term(double d) {
  if (d <= 0.0) return std::numeric_limits<double>::infinity();
  return 1.0 / std::sin(kPi * d);
}

}  // namespace

double objective(const PhaseAssignment& assignment) {
  const auto& rho = assignment.rhos;
  CompensatedSum acc;
  for (std::size_t i = 0; i < rho.size(); ++i)
    for (std::size_t k = i + 1; k < rho.size(); ++k) {
      const double term = inverse_sine_term(circle_distance(rho[i], rho[k]));
      if (std::isinf(term)) return term;
      acc.add(term);
    }
  return acc.value();
}

double objective_all_pairs(const PhaseAssignment& assignment) {
  const auto& rho = assignment.rhos;
  CompensatedSum acc;
  for (std::size_t i = 0; i < rho.size(); ++i)
    for (std::size_t k = 0; k < rho.size(); ++k) {
      if (i == k) continue;
      const double term = inverse_sine_term(circle_distance(rho[i], rho[k]));
      if (std::isinf(term)) return term;
      acc.add(term);
    }
  return acc.value();
}

double slack_objective(const SlackMatrix& t) {
  CompensatedSum acc;
  for (double v : t.values()) acc.add(inverse_sine_term(v));
  return acc.value();
}

double optimal_slack(std::size_t i, std::size_t k, std::size_t n_users) {
  const double frac = static_cast<double>(i > k ? i - k : k - i) / static_cast<double>(n_users);
  return std::min(frac, 1.0 - frac);
}

Solution global_solution(std::size_t n_users, double gamma) {
  if (n_users < 2) throw std::invalid_argument("global_solution: K must be >= 2");
  if (!std::isfinite(gamma)) throw std::invalid_argument("global_solution: gamma must be finite");

  Solution sol;
  sol.assignment.gamma = gamma;
  const double k = static_cast<double>(n_users);
  for (std::size_t i = 0; i < n_users; ++i)
    sol.assignment.rhos.push_back(wrap_unit(gamma + static_cast<double>(i) / k));
  std::sort(sol.assignment.rhos.begin(), sol.assignment.rhos.end());

  sol.slack = SlackMatrix(n_users);
  const auto& rho = sol.assignment.rhos;
  for (std::size_t i = 0; i < n_users; ++i)
    for (std::size_t j = i + 1; j < n_users; ++j) sol.slack.at(i, j) = circle_distance(rho[i], rho[j]);
  return sol;
}

double alpha_tilde(std::size_t m, std::size_t n_users) {
  if (m == 0 || m >= n_users) throw std::out_of_range("alpha_tilde: m must lie in [1, K-1]");
  const double t = optimal_slack(0, m, n_users);
  const double s = std::sin(kPi * t);
  return kPi * std::cos(kPi * t) / (s * s);
}

LagrangeMultipliers construct_multipliers(std::size_t n_users, const Solution& solution) {
  if (solution.assignment.rhos.size() != n_users || solution.slack.users() != n_users)
    throw std::invalid_argument("construct_multipliers: solution does not have K users");

  LagrangeMultipliers mult;
  mult.lambda = PairArray(n_users);
  mult.mu = PairArray(n_users);
  mult.o = PairArray(n_users);
  mult.nu.assign(n_users - 1, 0.0);

  for (std::size_t i = 0; i < n_users; ++i) {
    for (std::size_t k = i + 1; k < n_users; ++k) {
      const std::size_t gap = k - i;
      const double a = alpha_tilde(gap, n_users);
      // compare 2*gap with K to keep the K/2 test exact
      if (2 * gap < n_users) {
        mult.lambda.at(i, k) = a;
      } else if (2 * gap > n_users) {
        mult.mu.at(i, k) = a;
      } else {
        mult.lambda.at(i, k) = a / 2.0;
        mult.mu.at(i, k) = a / 2.0;
      }
    }
  }
  return mult;
}

KktReport kkt_report(const Solution& solution, const LagrangeMultipliers& m) {
  const auto& rho = solution.assignment.rhos;
  const auto& t = solution.slack;
  const std::size_t n = rho.size();
  if (t.users() != n || m.lambda.users() != n || m.mu.users() != n || m.o.users() != n ||
      m.nu.size() + 1 != n)
    throw std::invalid_argument("kkt_report: inconsistent dimensions");

  KktReport report;
  std::vector<double> grad_rho(n, 0.0);

  auto note_constraint = [&](double multiplier, double value) {
    report.complementarity = std::max(report.complementarity, std::abs(multiplier * value));
    report.primal_infeasibility = std::max(report.primal_infeasibility, value);
    report.dual_infeasibility = std::max(report.dual_infeasibility, -multiplier);
  };

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = i + 1; k < n; ++k) {
      const double tik = t.at(i, k);
      const double lam = m.lambda.at(i, k);
      const double mu = m.mu.at(i, k);
      const double o = m.o.at(i, k);

      // grad c_ik = (e_i - e_k ; e_ik), grad d_ik = (-e_i + e_k ; e_ik)
      grad_rho[i] += lam - mu;
      grad_rho[k] -= lam - mu;

      const double s = std::sin(kPi * tik);
      const double df_dt = -kPi * std::cos(kPi * tik) / (s * s);
      const double grad_t = df_dt + lam + mu - o;
      report.stationarity_t = std::max(report.stationarity_t, std::abs(grad_t));

      note_constraint(lam, tik + rho[i] - rho[k]);
      note_constraint(mu, tik - 1.0 - rho[i] + rho[k]);
      note_constraint(o, -tik);
    }
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    grad_rho[i] += m.nu[i];
    grad_rho[i + 1] -= m.nu[i];
    note_constraint(m.nu[i], rho[i] - rho[i + 1]);
  }
  grad_rho[0] -= m.xi_1;
  grad_rho[n - 1] += m.xi_k;
  note_constraint(m.xi_1, -rho[0]);
  note_constraint(m.xi_k, rho[n - 1] - 1.0);

  for (double g : grad_rho) report.stationarity_rho = std::max(report.stationarity_rho, std::abs(g));
  return report;
}

double kkt_residual(const Solution& solution, const LagrangeMultipliers& multipliers) {
  return kkt_report(solution, multipliers).total();
}

SamplingReport verify_optimality_by_sampling(std::size_t n_users, std::size_t samples,
                                             std::uint64_t seed) {
  if (samples == 0) throw std::invalid_argument("verify_optimality_by_sampling: samples must be >= 1");
  SamplingReport report;
  report.samples = samples;
  report.optimum = objective(global_solution(n_users, 0.0).assignment);
  report.min_sampled = std::numeric_limits<double>::infinity();

  PhaseAssignment draw;
  draw.rhos.resize(n_users);
  for (std::size_t s = 0; s < samples; ++s) {
    Rng rng = Rng::stream(seed, s);
    for (auto& r : draw.rhos) r = rng.uniform();
    std::sort(draw.rhos.begin(), draw.rhos.end());
    report.min_sampled = std::min(report.min_sampled, objective(draw));
  }
  report.optimum_holds = report.optimum <= report.min_sampled + 1e-12;
  return report;
}

}  // namespace weylcdma
