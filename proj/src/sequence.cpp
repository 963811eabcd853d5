#include "weylcdma/sequence.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include "weylcdma/numeric.hpp"

namespace weylcdma {

double wrap_unit(double x) {
  double f = x - std::floor(x);
  // x slightly below an integer can round up to exactly 1.0
  if (f >= 1.0) f = 0.0;
  return f;
}

ChipSequence weyl_sequence(const WeylParams& params) {
  if (params.n_chips == 0) throw std::invalid_argument("weyl_sequence: N must be >= 1");
  if (!(params.rho >= 0.0 && params.rho < 1.0))
    throw std::invalid_argument("weyl_sequence: rho must lie in [0, 1)");
  if (!(params.delta >= 0.0 && params.delta < 1.0))
    throw std::invalid_argument("weyl_sequence: delta must lie in [0, 1)");

  ChipSequence seq;
  seq.family_tag = "weyl";
  seq.chips.reserve(params.n_chips);
  for (std::size_t n = 1; n <= params.n_chips; ++n) {
    const double x = wrap_unit(static_cast<double>(n) * params.rho + params.delta);
    seq.chips.push_back(std::polar(1.0, kTwoPi * x));
  }
  return seq;
}

ChipSequence fzc_family_sequence(const FzcParams& params) {
  if (params.n_chips == 0) throw std::invalid_argument("fzc_family_sequence: N must be >= 1");
  if (!std::isfinite(params.m_k))
    throw std::invalid_argument("fzc_family_sequence: M_k must be finite");
  if (!std::isfinite(params.p) || !std::isfinite(params.q) ||
      (params.r && !std::isfinite(*params.r)))
    throw std::invalid_argument("fzc_family_sequence: exponents must be finite");

  const double n_total = static_cast<double>(params.n_chips);
  const double m_pow = std::pow(params.m_k, params.p);
  if (!std::isfinite(m_pow))
    throw std::invalid_argument("fzc_family_sequence: M_k^p is not a real number");

  ChipSequence seq;
  seq.family_tag = "fzc";
  seq.chips.reserve(params.n_chips);
  for (std::size_t i = 1; i <= params.n_chips; ++i) {
    const double n = static_cast<double>(i);
    // (-1)^(n M_k) for real M_k is read as exp(j pi n M_k). The phase is
    // reduced mod 2 (in units of pi) before scaling to keep large n*M exact.
    double half_turns = std::fmod(n * params.m_k, 2.0);
    double inner = m_pow * std::pow(n, params.q);
    if (params.r) inner += std::pow(n, *params.r);
    half_turns += std::fmod(inner / n_total, 2.0);
    seq.chips.push_back(std::polar(1.0, kPi * half_turns));
  }
  return seq;
}

double optimal_weyl_rho(double gamma, std::size_t sigma_k, std::size_t k_max) {
  if (k_max == 0) throw std::invalid_argument("optimal_weyl_rho: K_max must be >= 1");
  if (sigma_k >= k_max) throw std::invalid_argument("optimal_weyl_rho: sigma_k must be < K_max");
  return wrap_unit(gamma + static_cast<double>(sigma_k) / static_cast<double>(k_max));
}

ChipSequence optimal_weyl_sequence(const OptimalWeylParams& params) {
  const double rho = optimal_weyl_rho(params.gamma, params.sigma_k, params.k_max);
  ChipSequence seq = weyl_sequence({rho, 0.0, params.n_chips});
  seq.family_tag = "optimal-weyl";
  return seq;
}

double van_der_corput(std::uint64_t index) {
  if (index == 0) throw std::invalid_argument("van_der_corput: index is 1-based");
  std::uint64_t n = index - 1;
  double value = 0.0;
  double scale = 0.5;
  while (n != 0) {
    if (n & 1u) value += scale;
    scale *= 0.5;
    n >>= 1;
  }
  return value;
}

std::vector<std::size_t> vdc_assignment(std::size_t n_users, std::size_t n_chips) {
  if (n_chips < 4 || !std::has_single_bit(n_chips))
    throw std::invalid_argument("vdc_assignment: N must be 2^m with m > 1, got " +
                                std::to_string(n_chips));
  if (n_users > n_chips)
    throw std::invalid_argument("vdc_assignment: K must not exceed N");
  std::vector<std::size_t> sigma;
  sigma.reserve(n_users);
  for (std::size_t k = 1; k <= n_users; ++k) {
    // v_k has at most log2(N) binary digits for k <= N, so this is exact
    sigma.push_back(static_cast<std::size_t>(
        std::lround(static_cast<double>(n_chips) * van_der_corput(k))));
  }
  return sigma;
}

// ---------------------------------------------------------------------------

std::optional<GoldPolynomials> preferred_pair(unsigned degree) {
  switch (degree) {
    case 5:
      return GoldPolynomials{5, 0b100101u, 0b111101u};
    case 7:
      return GoldPolynomials{7, 0b10001001u, 0b10001111u};
    default:
      return std::nullopt;
  }
}

std::vector<std::uint8_t> lfsr_sequence(unsigned degree, std::uint32_t poly) {
  if (degree < 2 || degree > 24) throw std::invalid_argument("lfsr_sequence: degree out of range");
  if (((poly >> degree) & 1u) == 0 || (poly & 1u) == 0)
    throw std::invalid_argument("lfsr_sequence: polynomial must have x^m and constant terms");

  const std::size_t period = (std::size_t{1} << degree) - 1;
  // a_{n+m} = sum_{i<m} f_i a_{n+i} (mod 2)
  std::vector<std::uint8_t> a(period + degree, 0);
  a[0] = 1;
  for (std::size_t n = 0; n + degree < a.size(); ++n) {
    std::uint8_t next = 0;
    for (unsigned i = 0; i < degree; ++i)
      if ((poly >> i) & 1u) next ^= a[n + i];
    a[n + degree] = next;
  }
  a.resize(period);
  return a;
}

std::size_t gold_family_size(unsigned degree) { return (std::size_t{1} << degree) + 1; }

ChipSequence gold_code(const GoldPolynomials& polys, std::size_t code_index) {
  const std::size_t family = gold_family_size(polys.degree);
  if (code_index >= family)
    throw std::out_of_range("gold_code: index " + std::to_string(code_index) +
                            " outside family of size " + std::to_string(family));

  const auto u = lfsr_sequence(polys.degree, polys.poly_a);
  const auto v = lfsr_sequence(polys.degree, polys.poly_b);
  const std::size_t n = u.size();

  ChipSequence seq;
  seq.family_tag = "gold";
  seq.chips.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::uint8_t bit = 0;
    if (code_index == 0)
      bit = u[i];
    else if (code_index == 1)
      bit = v[i];
    else
      bit = u[i] ^ v[(i + code_index - 2) % n];
    seq.chips.emplace_back(bit ? -1.0 : 1.0, 0.0);
  }
  return seq;
}

ChipSequence gold_code(unsigned degree, std::size_t code_index) {
  const auto polys = preferred_pair(degree);
  if (!polys)
    throw std::invalid_argument("gold_code: no built-in preferred pair for degree " +
                                std::to_string(degree) + "; pass GoldPolynomials");
  return gold_code(*polys, code_index);
}

}  // namespace weylcdma
