#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "weylcdma/sequence.hpp"

namespace weylcdma {

/// Raised when two Weyl phases coincide mod 1 and the crosscorrelation bound
/// is infinite.
class DegeneratePhaseError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Aperiodic partial correlation C_{i,k}(l) between x = w_i and y = w_k:
///   0 <= l <= N-1 :  sum_{n=1}^{N-l} conj(x_{n+l}) y_n
///   1-N <= l < 0  :  sum_{n=1}^{N+l} conj(x_n) y_{n-l}
///   |l| >= N      :  0
/// Chips are 1-indexed in this formula; storage is 0-based.
std::complex<double> aperiodic_c(const ChipSequence& x, const ChipSequence& y, long lag);

/// theta(l) = C(l) + C(l-N), lag in [0, N).
std::complex<double> periodic_theta(const ChipSequence& x, const ChipSequence& y, long lag);
/// theta_hat(l) = C(l) - C(l-N), lag in [0, N).
std::complex<double> odd_theta_hat(const ChipSequence& x, const ChipSequence& y, long lag);

struct CorrelationProfile {
  long n_chips = 0;
  std::vector<long> lags;                    // 1-N .. N-1
  std::vector<std::complex<double>> c_values;  // C(l), aligned with `lags`
  std::vector<std::complex<double>> theta;     // index l in [0, N)
  std::vector<std::complex<double>> theta_hat;

  std::complex<double> c(long lag) const;
};

CorrelationProfile correlation_profile(const ChipSequence& x, const ChipSequence& y);

struct ClosedFormMagnitude {
  double value = 0.0;
  /// rho_i == rho_k (mod 1): value is the limit N - l and no finite bound exists.
  bool degenerate = false;
};

/// |sin(pi (N-l)(rho_k - rho_i)) / sin(pi (rho_k - rho_i))| for lag in [0, N).
ClosedFormMagnitude weyl_c_closed_form(double rho_i, double rho_k, long lag, std::size_t n_chips);

/// 1 / |sin(pi (rho_i - rho_k))|; throws DegeneratePhaseError for equal phases.
double cross_bound(double rho_i, double rho_k);

/// True when the two phases coincide mod 1 to within rounding.
bool phases_degenerate(double rho_i, double rho_k);

/// Lag sum of squared partial correlations used by the Pursley SNR:
///   sum_{l=0}^{N-1} |C(l-N)|^2 + Re[C(l-N) conj C(l-N+1)] + |C(l-N+1)|^2
///                 + |C(l)|^2   + Re[C(l) conj C(l+1)]     + |C(l+1)|^2
double r_ik(const ChipSequence& x, const ChipSequence& y);

}  // namespace weylcdma
