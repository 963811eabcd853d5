#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "support/oracles.hpp"
#include "weylcdma/assignment.hpp"
#include "weylcdma/numeric.hpp"
#include "weylcdma/rng.hpp"
#include "weylcdma/sequence.hpp"

using namespace weylcdma;

namespace {

long double objective_oracle(const std::vector<double>& rho) {
  long double acc = 0;
  for (std::size_t i = 0; i < rho.size(); ++i)
    for (std::size_t k = 0; k < rho.size(); ++k) {
      if (i >= k) continue;
      long double d = std::fabs(static_cast<long double>(rho[i]) - rho[k]);
      d = std::min(d, 1.0L - d);
      acc += 1.0L / std::sin(oracle::kPiL * d);
    }
  return acc;
}

std::vector<double> sorted_uniform(Rng& rng, std::size_t k) {
  std::vector<double> v(k);
  for (auto& x : v) x = rng.uniform();
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST_CASE("circle distance") {
  CHECK(circle_distance(0.1, 0.9) == doctest::Approx(0.2));
  CHECK(circle_distance(0.9, 0.1) == doctest::Approx(0.2));
  CHECK(circle_distance(0.0, 0.5) == doctest::Approx(0.5));
  CHECK(circle_distance(0.3, 0.3) == 0.0);
}

TEST_CASE("PairArray indexing enumerates pairs row-major") {
  PairArray p(5);
  CHECK(p.size() == 10);
  std::size_t expect = 0;
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t k = i + 1; k < 5; ++k) CHECK(PairArray::index(i, k, 5) == expect++);
}

TEST_CASE("objective matches the long double oracle") {
  Rng rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t k = 2 + static_cast<std::size_t>(rng.uniform() * 15);
    const auto rho = sorted_uniform(rng, k);
    const double got = objective({rho, 0.0});
    CHECK(got == doctest::Approx(static_cast<double>(objective_oracle(rho))).epsilon(1e-12));
    CHECK(objective_all_pairs({rho, 0.0}) == doctest::Approx(2.0 * got).epsilon(1e-12));
  }
}

TEST_CASE("objective is infinite on coinciding phases") {
  CHECK(std::isinf(objective({{0.1, 0.1, 0.5}, 0.0})));
  CHECK(std::isinf(objective_all_pairs({{0.0, 0.5, 0.5}, 0.0})));
}

TEST_CASE("property: objective is invariant under a common rotation") {
  Rng rng(43);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t k = 2 + static_cast<std::size_t>(rng.uniform() * 10);
    auto rho = sorted_uniform(rng, k);
    const double before = objective({rho, 0.0});
    const double shift = rng.uniform();
    for (auto& r : rho) r = wrap_unit(r + shift);
    std::sort(rho.begin(), rho.end());
    CHECK(objective({rho, 0.0}) == doctest::Approx(before).epsilon(1e-9));
  }
}

TEST_CASE("global solution is equispaced and slack equals circle distance") {
  for (std::size_t k = 2; k <= 12; ++k) {
    for (double gamma : {0.0, 0.013, 0.37, 0.99}) {
      const auto sol = global_solution(k, gamma);
      REQUIRE(sol.assignment.rhos.size() == k);
      CHECK(std::is_sorted(sol.assignment.rhos.begin(), sol.assignment.rhos.end()));
      for (std::size_t i = 0; i + 1 < k; ++i)
        CHECK(sol.assignment.rhos[i + 1] - sol.assignment.rhos[i] == doctest::Approx(1.0 / static_cast<double>(k)));
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) {
          CHECK(sol.slack.at(i, j) == doctest::Approx(optimal_slack(i, j, k)));
          CHECK(sol.slack.at(i, j) == doctest::Approx(circle_distance(sol.assignment.rhos[i], sol.assignment.rhos[j])));
        }
      CHECK(slack_objective(sol.slack) == doctest::Approx(objective(sol.assignment)));
    }
  }
  CHECK_THROWS_AS(global_solution(1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(global_solution(3, NAN), std::invalid_argument);
}

TEST_CASE("alpha_tilde is symmetric and vanishes at K/2") {
  for (std::size_t k = 2; k <= 20; ++k) {
    for (std::size_t m = 1; m < k; ++m) {
      CHECK(alpha_tilde(m, k) == doctest::Approx(alpha_tilde(k - m, k)));
      const double t = std::min(static_cast<double>(m), static_cast<double>(k - m)) / static_cast<double>(k);
      const double s = std::sin(kPi * t);
      CHECK(alpha_tilde(m, k) == doctest::Approx(kPi * std::cos(kPi * t) / (s * s)));
    }
    if (k % 2 == 0) CHECK(std::abs(alpha_tilde(k / 2, k)) < 1e-12);
  }
  CHECK_THROWS_AS(alpha_tilde(0, 5), std::out_of_range);
  CHECK_THROWS_AS(alpha_tilde(5, 5), std::out_of_range);
}

TEST_CASE("constructed multipliers select lambda, mu or the split by gap") {
  const std::size_t k = 6;
  const auto sol = global_solution(k, 0.0);
  const auto m = construct_multipliers(k, sol);
  CHECK(m.lambda.at(0, 1) == doctest::Approx(alpha_tilde(1, k)));
  CHECK(m.mu.at(0, 1) == 0.0);
  CHECK(m.mu.at(0, 5) == doctest::Approx(alpha_tilde(5, k)));
  CHECK(m.lambda.at(0, 5) == 0.0);
  CHECK(m.lambda.at(1, 4) == doctest::Approx(alpha_tilde(3, k) / 2.0));
  CHECK(m.mu.at(1, 4) == doctest::Approx(alpha_tilde(3, k) / 2.0));
  CHECK_THROWS_AS(construct_multipliers(5, sol), std::invalid_argument);
}

TEST_CASE("KKT residual vanishes at the closed-form solution") {
  for (std::size_t k = 2; k <= 20; ++k) {
    for (double gamma : {0.0, 0.2}) {
      const auto sol = global_solution(k, gamma);
      const auto rep = kkt_report(sol, construct_multipliers(k, sol));
      CHECK(rep.total() < 1e-9);
      CHECK(rep.dual_infeasibility == 0.0);
    }
  }
}

TEST_CASE("KKT residual detects a perturbed point") {
  const std::size_t k = 7;
  auto sol = global_solution(k, 0.0);
  const auto mult = construct_multipliers(k, sol);
  sol.assignment.rhos[3] += 0.01;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      sol.slack.at(i, j) = circle_distance(sol.assignment.rhos[i], sol.assignment.rhos[j]);
  CHECK(kkt_residual(sol, mult) > 1e-3);
}

TEST_CASE("property: local perturbations never improve the optimum") {
  Rng rng(47);
  for (std::size_t k = 2; k <= 12; ++k) {
    const auto sol = global_solution(k, 0.0);
    const double best = objective(sol.assignment);
    for (int trial = 0; trial < 200; ++trial) {
      auto rho = sol.assignment.rhos;
      for (auto& r : rho) r = wrap_unit(r + 0.02 * (rng.uniform() - 0.5));
      std::sort(rho.begin(), rho.end());
      CHECK(objective({rho, 0.0}) >= best - 1e-12);
    }
  }
}

TEST_CASE("sampling check is reproducible and holds") {
  const auto a = verify_optimality_by_sampling(5, 2000, 9);
  const auto b = verify_optimality_by_sampling(5, 2000, 9);
  CHECK(a.min_sampled == b.min_sampled);
  CHECK(a.optimum_holds);
  CHECK(a.optimum < a.min_sampled);
  CHECK_THROWS_AS(verify_optimality_by_sampling(5, 0, 9), std::invalid_argument);
}
