#include "weylcdma/correlation.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "weylcdma/assignment.hpp"
#include "weylcdma/numeric.hpp"

namespace weylcdma {

namespace {

void require_same_length(const ChipSequence& x, const ChipSequence& y, const char* where) {
  if (x.size() != y.size())
    throw std::invalid_argument(std::string(where) + ": sequences differ in length (" +
                                std::to_string(x.size()) + " vs " + std::to_string(y.size()) +
                                ")");
}

long checked_length(const ChipSequence& x, const ChipSequence& y, const char* where) {
  require_same_length(x, y, where);
  return static_cast<long>(x.size());
}

void require_lag_in_period(long lag, long n, const char* where) {
  if (lag < 0 || lag >= n)
    throw std::out_of_range(std::string(where) + ": lag " + std::to_string(lag) +
                            " outside [0, " + std::to_string(n) + ")");
}

// C(l) with no validation; x and y are known to have length n.
std::complex<double> c_unchecked(const ChipSequence& x, const ChipSequence& y, long lag,
                                 long n) {
  if (lag >= n || lag <= -n) return {};
  CompensatedComplexSum acc;
  if (lag >= 0) {
    for (long m = 0; m < n - lag; ++m) acc.add(std::conj(x[m + lag]) * y[m]);
  } else {
    for (long m = 0; m < n + lag; ++m) acc.add(std::conj(x[m]) * y[m - lag]);
  }
  return acc.value();
}

}  // namespace

std::complex<double> aperiodic_c(const ChipSequence& x, const ChipSequence& y, long lag) {
  const long n = checked_length(x, y, "aperiodic_c");
  return c_unchecked(x, y, lag, n);
}

std::complex<double> periodic_theta(const ChipSequence& x, const ChipSequence& y, long lag) {
  const long n = checked_length(x, y, "periodic_theta");
  require_lag_in_period(lag, n, "periodic_theta");
  return c_unchecked(x, y, lag, n) + c_unchecked(x, y, lag - n, n);
}

std::complex<double> odd_theta_hat(const ChipSequence& x, const ChipSequence& y, long lag) {
  const long n = checked_length(x, y, "odd_theta_hat");
  require_lag_in_period(lag, n, "odd_theta_hat");
  return c_unchecked(x, y, lag, n) - c_unchecked(x, y, lag - n, n);
}

std::complex<double> CorrelationProfile::c(long lag) const {
  if (lag >= n_chips || lag <= -n_chips) return {};
  return c_values[static_cast<std::size_t>(lag + n_chips - 1)];
}

CorrelationProfile correlation_profile(const ChipSequence& x, const ChipSequence& y) {
  const long n = checked_length(x, y, "correlation_profile");
  CorrelationProfile profile;
  profile.n_chips = n;
  for (long l = 1 - n; l <= n - 1; ++l) {
    profile.lags.push_back(l);
    profile.c_values.push_back(c_unchecked(x, y, l, n));
  }
  for (long l = 0; l < n; ++l) {
    profile.theta.push_back(profile.c(l) + profile.c(l - n));
    profile.theta_hat.push_back(profile.c(l) - profile.c(l - n));
  }
  return profile;
}

bool phases_degenerate(double rho_i, double rho_k) {
  return circle_distance(wrap_unit(rho_i), wrap_unit(rho_k)) <=
         4.0 * std::numeric_limits<double>::epsilon();
}

ClosedFormMagnitude weyl_c_closed_form(double rho_i, double rho_k, long lag,
                                       std::size_t n_chips) {
  const long n = static_cast<long>(n_chips);
  require_lag_in_period(lag, n, "weyl_c_closed_form");
  const double span = static_cast<double>(n - lag);
  if (phases_degenerate(rho_i, rho_k)) return {span, true};
  const double diff = rho_k - rho_i;
  return {std::abs(std::sin(kPi * span * diff) / std::sin(kPi * diff)), false};
}

double cross_bound(double rho_i, double rho_k) {
  if (phases_degenerate(rho_i, rho_k))
    throw DegeneratePhaseError("cross_bound: phases coincide mod 1; bound is infinite");
  return 1.0 / std::sin(kPi * circle_distance(wrap_unit(rho_i), wrap_unit(rho_k)));
}

double r_ik(const ChipSequence& x, const ChipSequence& y) {
  const CorrelationProfile p = correlation_profile(x, y);
  const long n = p.n_chips;
  CompensatedSum acc;
  for (long l = 0; l < n; ++l) {
    const auto a = p.c(l - n);
    const auto b = p.c(l - n + 1);
    const auto c = p.c(l);
    const auto d = p.c(l + 1);
    acc.add(std::norm(a));
    acc.add((a * std::conj(b)).real());
    acc.add(std::norm(b));
    acc.add(std::norm(c));
    acc.add((c * std::conj(d)).real());
    acc.add(std::norm(d));
  }
  return acc.value();
}

}  // namespace weylcdma
