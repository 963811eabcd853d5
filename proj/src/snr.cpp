#include "weylcdma/snr.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "weylcdma/correlation.hpp"
#include "weylcdma/numeric.hpp"

namespace weylcdma {

LinkBudget LinkBudget::from_db(double e_over_n0_db, std::size_t n_chips, std::size_t n_users) {
  LinkBudget b{db_to_linear(e_over_n0_db), n_chips, n_users};
  b.validate();
  return b;
}

double LinkBudget::noise_term() const {
  if (std::isinf(e_over_n0)) return 0.0;
  return 1.0 / (2.0 * e_over_n0);
}

void LinkBudget::validate() const {
  if (!(e_over_n0 > 0.0)) throw std::invalid_argument("LinkBudget: E/N0 must be > 0");
  if (n_users < 1) throw std::invalid_argument("LinkBudget: K must be >= 1");
  if (n_chips < 2) throw std::invalid_argument("LinkBudget: N must be >= 2");
}

double pursley_snr(std::size_t user_i, std::span<const ChipSequence> family,
                   const LinkBudget& budget) {
  budget.validate();
  if (user_i >= family.size()) throw std::out_of_range("pursley_snr: user index out of range");
  const double n = static_cast<double>(family[user_i].size());
  CompensatedSum interference;
  for (std::size_t k = 0; k < family.size(); ++k) {
    if (k == user_i) continue;
    interference.add(r_ik(family[user_i], family[k]));
  }
  return 1.0 / std::sqrt(interference.value() / (6.0 * n * n * n) + budget.noise_term());
}

double weyl_interference_term(std::size_t sigma_i, double gamma, std::size_t n_users,
                              std::size_t n_chips) {
  if (n_users < 1) throw std::invalid_argument("weyl_interference_term: K must be >= 1");
  const double n = static_cast<double>(n_chips);
  const double k = static_cast<double>(n_users);
  const double c = std::cos(kTwoPi * (gamma + static_cast<double>(sigma_i) / n));
  return (k - 1.0) / (18.0 * n * n) * (2.0 * (n + 1.0) + (n - 2.0) * c);
}

double expected_weyl_snr(std::size_t sigma_i, double gamma, const LinkBudget& budget) {
  budget.validate();
  if (sigma_i >= budget.n_chips) throw std::out_of_range("expected_weyl_snr: sigma_i must be < N");
  const double r =
      weyl_interference_term(sigma_i, gamma, budget.n_users, budget.n_chips);
  return 1.0 / std::sqrt(r + budget.noise_term());
}

double snr_lower_bound(const LinkBudget& budget) {
  budget.validate();
  const double n = static_cast<double>(budget.n_chips);
  const double k = static_cast<double>(budget.n_users);
  return 1.0 / std::sqrt((k - 1.0) / (6.0 * n) + budget.noise_term());
}

double csc2_sum(std::size_t n) {
  if (n < 2) throw std::invalid_argument("csc2_sum: n must be >= 2");
  CompensatedSum acc;
  const double nd = static_cast<double>(n);
  for (std::size_t k = 1; k < n; ++k) {
    // sin(pi k/n) = sin(pi (n-k)/n); evaluate on the short side for accuracy
    const std::size_t kk = 2 * k <= n ? k : n - k;
    const double s = std::sin(kPi * static_cast<double>(kk) / nd);
    acc.add(1.0 / (s * s));
  }
  return acc.value();
}

double cot_sum(std::size_t n) {
  if (n < 2) throw std::invalid_argument("cot_sum: n must be >= 2");
  CompensatedSum acc;
  const double nd = static_cast<double>(n);
  for (std::size_t q = 1; q < n; ++q) {
    const double a = kPi * static_cast<double>(q) / nd;
    acc.add(std::cos(a) / std::sin(a));
  }
  return acc.value();
}

namespace {

// 1 - cos(2 pi q / N) = 2 sin^2(pi q / N), evaluated without cancellation.
double one_minus_cos_spacing(long q, double n) {
  const double s = std::sin(kPi * static_cast<double>(q) / n);
  return 2.0 * s * s;
}

}  // namespace

double r_ik_closed(std::size_t sigma_i, std::size_t sigma_k, double gamma, std::size_t n_chips) {
  if (sigma_i == sigma_k) throw std::invalid_argument("r_ik_closed: sigma_i must differ from sigma_k");
  const double n = static_cast<double>(n_chips);
  const long q = static_cast<long>(sigma_k) - static_cast<long>(sigma_i);
  const double ci = std::cos(kTwoPi * (gamma + static_cast<double>(sigma_i) / n));
  const double ck = std::cos(kTwoPi * (gamma + static_cast<double>(sigma_k) / n));
  return n * (4.0 + ck + ci) / one_minus_cos_spacing(q, n);
}

ExpectedRSum expected_r_sum(std::size_t sigma_i, double gamma, std::size_t n_users,
                            std::size_t n_chips) {
  if (n_chips < 2) throw std::invalid_argument("expected_r_sum: N must be >= 2");
  if (sigma_i >= n_chips) throw std::out_of_range("expected_r_sum: sigma_i must be < N");
  const double n = static_cast<double>(n_chips);
  const double ci = std::cos(kTwoPi * (gamma + static_cast<double>(sigma_i) / n));
  CompensatedSum constant_part;
  CompensatedSum cosine_part;
  for (std::size_t q = 1; q < n_chips; ++q) {
    const std::size_t sigma_k = (sigma_i + q) % n_chips;
    const double ck = std::cos(kTwoPi * (gamma + static_cast<double>(sigma_k) / n));
    const double denom = one_minus_cos_spacing(static_cast<long>(q), n);
    constant_part.add(4.0 * n / denom);
    cosine_part.add(n * (ck + ci) / denom);
  }
  const double weight = static_cast<double>(n_users - 1) / (n - 1.0);
  return {weight * constant_part.value(), weight * cosine_part.value()};
}

ExpectedRSum expected_r_sum_closed(std::size_t sigma_i, double gamma, std::size_t n_users,
                                   std::size_t n_chips) {
  const double n = static_cast<double>(n_chips);
  const double k = static_cast<double>(n_users);
  const double ci = std::cos(kTwoPi * (gamma + static_cast<double>(sigma_i) / n));
  return {2.0 * n * (n + 1.0) * (k - 1.0) / 3.0, n * (n - 2.0) * (k - 1.0) / 3.0 * ci};
}

}  // namespace weylcdma
