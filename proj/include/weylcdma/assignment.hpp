#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace weylcdma {

/// Circle distance on [0, 1): min(|a - b|, 1 - |a - b|).
double circle_distance(double rho_i, double rho_k);

/// Strictly upper-triangular K x K array stored row-major over pairs
/// (0,1), (0,2), ..., (0,K-1), (1,2), ..., (K-2,K-1). Indices are 0-based.
class PairArray {
 public:
  PairArray() = default;
  explicit PairArray(std::size_t k, double fill = 0.0) : k_(k), values_(k * (k - 1) / 2, fill) {}

  std::size_t users() const { return k_; }
  std::size_t size() const { return values_.size(); }

  static std::size_t index(std::size_t i, std::size_t k, std::size_t users) {
    return i * (2 * users - i - 1) / 2 + (k - i - 1);
  }

  double& at(std::size_t i, std::size_t k) { return values_[index(i, k, k_)]; }
  double at(std::size_t i, std::size_t k) const { return values_[index(i, k, k_)]; }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }

 private:
  std::size_t k_ = 0;
  std::vector<double> values_;
};

using SlackMatrix = PairArray;

struct PhaseAssignment {
  std::vector<double> rhos;  // nondecreasing, in [0, 1)
  double gamma = 0.0;
};

/// Sum over i < k of 1 / sin(pi d(rho_i, rho_k)). Coinciding phases make the
/// objective infinite (returned as +inf, not thrown).
double objective(const PhaseAssignment& assignment);

/// Same sum over all ordered pairs i != k; always twice `objective`.
double objective_all_pairs(const PhaseAssignment& assignment);

/// Objective of the slack form: sum over i < k of 1 / sin(pi t_ik).
double slack_objective(const SlackMatrix& t);

struct Solution {
  PhaseAssignment assignment;
  SlackMatrix slack;
};

/// Equispaced phases gamma + (i-1)/K reduced mod 1 and sorted, with
/// t_ik = d(rho_i, rho_k). Requires K >= 2.
Solution global_solution(std::size_t n_users, double gamma);

/// min{|k-i|/K, 1 - |k-i|/K}.
double optimal_slack(std::size_t i, std::size_t k, std::size_t n_users);

/// pi cos(pi t) / sin^2(pi t) at t = min(m/K, 1 - m/K), for 1 <= m <= K-1.
double alpha_tilde(std::size_t m, std::size_t n_users);

struct LagrangeMultipliers {
  PairArray lambda;  // for c_ik = t_ik + rho_i - rho_k <= 0
  PairArray mu;      // for d_ik = t_ik - 1 - rho_i + rho_k <= 0
  PairArray o;       // for h_ik = -t_ik <= 0
  std::vector<double> nu;  // K-1 entries, for e_i = rho_i - rho_{i+1} <= 0
  double xi_1 = 0.0;       // for g_1 = -rho_1 <= 0
  double xi_k = 0.0;       // for g_K = rho_K - 1 <= 0
};

/// Multipliers certifying the equispaced solution. For k - i < K/2 only
/// lambda is active, for k - i > K/2 only mu, and when k - i = K/2 (even K)
/// the weight alpha_tilde(K/2) is split evenly between the two.
LagrangeMultipliers construct_multipliers(std::size_t n_users, const Solution& solution);

struct KktReport {
  double stationarity_rho = 0.0;  // max |.| over the K phase components
  double stationarity_t = 0.0;    // max |.| over the K(K-1)/2 slack components
  double complementarity = 0.0;   // max |multiplier * constraint|
  double primal_infeasibility = 0.0;  // max positive constraint value
  double dual_infeasibility = 0.0;    // max negative multiplier

  double stationarity() const {
    return stationarity_rho > stationarity_t ? stationarity_rho : stationarity_t;
  }
  double total() const {
    return stationarity() + complementarity + primal_infeasibility + dual_infeasibility;
  }
};

KktReport kkt_report(const Solution& solution, const LagrangeMultipliers& multipliers);

/// kkt_report(...).total(): zero certifies global optimality of the convex program.
double kkt_residual(const Solution& solution, const LagrangeMultipliers& multipliers);

struct SamplingReport {
  std::size_t samples = 0;
  double optimum = 0.0;
  double min_sampled = 0.0;
  bool optimum_holds = false;  // optimum <= min_sampled + 1e-12
};

/// Draws `samples` sorted uniform phase vectors (sample s uses RNG stream s of
/// `seed`) and compares their objectives with the equispaced optimum.
SamplingReport verify_optimality_by_sampling(std::size_t n_users, std::size_t samples,
                                             std::uint64_t seed);

}  // namespace weylcdma
