#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace weylcdma {

using Chip = std::complex<double>;

/// One user's spreading code: N chips, chip n stored at index n-1.
struct ChipSequence {
  std::vector<Chip> chips;
  std::string family_tag;

  std::size_t size() const { return chips.size(); }
  const Chip& operator[](std::size_t i) const { return chips[i]; }
  std::span<const Chip> view() const { return chips; }
};

/// x_n = n*rho + delta mod 1, chips exp(2*pi*j*x_n) for n = 1..N.
struct WeylParams {
  double rho = 0.0;
  double delta = 0.0;
  std::size_t n_chips = 0;
};

/// Extended Frank-Zadoff-Chu family member. An absent `r` drops the n^r
/// term entirely (the classic FZC sequence is p=2, q=1, r absent).
struct FzcParams {
  double m_k = 1.0;
  double p = 2.0;
  double q = 1.0;
  std::optional<double> r;
  std::size_t n_chips = 0;
};

/// Weyl sequence with rho = gamma + sigma_k / k_max and zero offset.
struct OptimalWeylParams {
  double gamma = 0.0;
  std::size_t sigma_k = 0;
  std::size_t k_max = 1;
  std::size_t n_chips = 0;
};

/// Fractional part in [0, 1), also for negative inputs.
double wrap_unit(double x);

ChipSequence weyl_sequence(const WeylParams& params);
ChipSequence fzc_family_sequence(const FzcParams& params);
ChipSequence optimal_weyl_sequence(const OptimalWeylParams& params);

/// Phase increment used by optimal_weyl_sequence.
double optimal_weyl_rho(double gamma, std::size_t sigma_k, std::size_t k_max);

/// Base-2 radical inverse of (index - 1); index 1 maps to 0.
double van_der_corput(std::uint64_t index);

/// sigma_k = N * v_k for k = 1..K. N must be 2^m with m > 1 and K <= N.
std::vector<std::size_t> vdc_assignment(std::size_t n_users, std::size_t n_chips);

// ---------------------------------------------------------------------------
// Gold codes

/// Characteristic polynomials as coefficient bitmasks: bit i holds the
/// coefficient of x^i, so x^5 + x^2 + 1 is 0b100101.
struct GoldPolynomials {
  unsigned degree = 0;
  std::uint32_t poly_a = 0;
  std::uint32_t poly_b = 0;
};

/// Built-in preferred pairs: degree 5 (x^5+x^2+1, x^5+x^4+x^3+x^2+1) and
/// degree 7 (x^7+x^3+1, x^7+x^3+x^2+x+1).
std::optional<GoldPolynomials> preferred_pair(unsigned degree);

/// One period (2^m - 1 bits) of the binary sequence obeying the linear
/// recurrence of `poly`, started from register state 0...01.
std::vector<std::uint8_t> lfsr_sequence(unsigned degree, std::uint32_t poly);

/// Number of members in a Gold family of length N: N + 2.
std::size_t gold_family_size(unsigned degree);

/// Family member `code_index` with bits mapped 0 -> +1, 1 -> -1:
/// index 0 is the first m-sequence, index 1 the second, and index 2 + s
/// is their XOR with the second sequence cyclically advanced by s chips.
ChipSequence gold_code(const GoldPolynomials& polys, std::size_t code_index);
ChipSequence gold_code(unsigned degree, std::size_t code_index);

}  // namespace weylcdma
