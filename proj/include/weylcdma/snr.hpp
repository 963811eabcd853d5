#pragma once

#include <cstddef>
#include <span>

#include "weylcdma/sequence.hpp"

namespace weylcdma {

/// E/N0 on a linear scale. An infinite value disables the noise term.
struct LinkBudget {
  double e_over_n0 = 1.0;
  std::size_t n_chips = 2;
  std::size_t n_users = 1;

  static LinkBudget from_db(double e_over_n0_db, std::size_t n_chips, std::size_t n_users);
  /// N0 / (2E)
  double noise_term() const;
  void validate() const;
};

/// {(6N^3)^-1 sum_{k != i} r_ik + N0/2E}^(-1/2) for user `user_i` of `family`.
double pursley_snr(std::size_t user_i, std::span<const ChipSequence> family,
                   const LinkBudget& budget);

/// Interference term of the closed-form SNR for the K_max = N Weyl family:
/// R_i = (K-1)/(18N^2) {2(N+1) + (N-2) cos(2 pi (gamma + sigma_i/N))}.
/// Derived under uniformly distributed sigma_k; exact when K = N.
double weyl_interference_term(std::size_t sigma_i, double gamma, std::size_t n_users,
                              std::size_t n_chips);

/// {R_i + N0/2E}^(-1/2).
double expected_weyl_snr(std::size_t sigma_i, double gamma, const LinkBudget& budget);

/// {(K-1)/(6N) + N0/2E}^(-1/2).
double snr_lower_bound(const LinkBudget& budget);

/// Direct sum_{k=1}^{n-1} 1/sin^2(pi k/n); equals (n^2-1)/3.
double csc2_sum(std::size_t n);

/// Direct sum_{q=1}^{n-1} cot(pi q/n); vanishes.
double cot_sum(std::size_t n);

/// Closed form of r_ik for the pair sigma_i != sigma_k of the K_max = N family:
/// N {4 + cos(2 pi (gamma + sigma_k/N)) + cos(2 pi (gamma + sigma_i/N))}
///   / (1 - cos(2 pi (sigma_k - sigma_i)/N)).
double r_ik_closed(std::size_t sigma_i, std::size_t sigma_k, double gamma, std::size_t n_chips);

/// Expectation of sum_{k != i} r_ik over uniformly drawn distinct sigma_k,
/// split into the constant part (the "4" of r_ik_closed) and the cosine part.
struct ExpectedRSum {
  double constant_part = 0.0;
  double cosine_part = 0.0;
  double total() const { return constant_part + cosine_part; }
};

/// (K-1)/(N-1) * sum_{q=1}^{N-1} of each part of r_ik_closed(sigma_i, sigma_i+q mod N).
ExpectedRSum expected_r_sum(std::size_t sigma_i, double gamma, std::size_t n_users,
                            std::size_t n_chips);

/// 2N(N+1)(K-1)/3 and N(N-2)(K-1)/3 cos(2 pi (gamma + sigma_i/N)).
ExpectedRSum expected_r_sum_closed(std::size_t sigma_i, double gamma, std::size_t n_users,
                                   std::size_t n_chips);

}  // namespace weylcdma
