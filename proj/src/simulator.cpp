#include "weylcdma/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <random>
#include <stdexcept>
#include <thread>

#include "weylcdma/correlation.hpp"
#include "weylcdma/numeric.hpp"
#include "weylcdma/stats.hpp"

namespace weylcdma {

std::string to_string(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::weyl: return "weyl";
    case FamilyKind::optimal: return "optimal";
    case FamilyKind::fzc: return "fzc";
    case FamilyKind::gold: return "gold";
  }
  return "?";
}

std::string to_string(AssignmentPolicy policy) {
  switch (policy) {
    case AssignmentPolicy::random_distinct: return "random";
    case AssignmentPolicy::van_der_corput: return "vdc";
    case AssignmentPolicy::sequential: return "sequential";
  }
  return "?";
}

std::string to_string(SweepAxis axis) { return axis == SweepAxis::users ? "users" : "ebn0"; }

FamilyKind parse_family(const std::string& name) {
  if (name == "weyl") return FamilyKind::weyl;
  if (name == "optimal") return FamilyKind::optimal;
  if (name == "fzc") return FamilyKind::fzc;
  if (name == "gold") return FamilyKind::gold;
  throw std::invalid_argument("unknown family '" + name + "' (weyl|optimal|fzc|gold)");
}

AssignmentPolicy parse_policy(const std::string& name) {
  if (name == "random") return AssignmentPolicy::random_distinct;
  if (name == "vdc") return AssignmentPolicy::van_der_corput;
  if (name == "sequential") return AssignmentPolicy::sequential;
  throw std::invalid_argument("unknown policy '" + name + "' (random|vdc|sequential)");
}

SweepAxis parse_axis(const std::string& name) {
  if (name == "users") return SweepAxis::users;
  if (name == "ebn0") return SweepAxis::ebn0;
  throw std::invalid_argument("unknown axis '" + name + "' (users|ebn0)");
}

unsigned default_thread_count() {
  if (const char* env = std::getenv("WEYLCDMA_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

void SimConfig::validate() const {
  if (n_users < 1) throw std::invalid_argument("SimConfig: K must be >= 1");
  if (n_chips < 2) throw std::invalid_argument("SimConfig: N must be >= 2");
  if (trials < 1) throw std::invalid_argument("SimConfig: trials must be >= 1");
  if (!(e_over_n0 > 0.0)) throw std::invalid_argument("SimConfig: E/N0 must be > 0");
  if (!std::isfinite(gamma)) throw std::invalid_argument("SimConfig: gamma must be finite");
  if (family.kind == FamilyKind::weyl && n_users > effective_k_max())
    throw std::invalid_argument("SimConfig: K exceeds K_max slots");
}

// ---------------------------------------------------------------------------

namespace {

unsigned gold_degree_for(std::size_t n_chips) {
  const std::size_t period = n_chips + 1;
  if ((period & (period - 1)) != 0)
    throw std::invalid_argument("gold family needs N = 2^m - 1, got N = " + std::to_string(n_chips));
  unsigned m = 0;
  while ((std::size_t{1} << m) < period) ++m;
  return m;
}

}  // namespace

SequencePool::SequencePool(const SimConfig& config) {
  config.validate();
  const std::size_t n = config.n_chips;
  switch (config.family.kind) {
    case FamilyKind::weyl:
    case FamilyKind::optimal: {
      const std::size_t slots =
          config.family.kind == FamilyKind::optimal ? config.n_users : config.effective_k_max();
      for (std::size_t s = 0; s < slots; ++s) {
        const double rho = optimal_weyl_rho(config.gamma, s, slots);
        sequences_.push_back(weyl_sequence({rho, 0.0, n}));
        sequences_.back().family_tag = to_string(config.family.kind);
        labels_.push_back(static_cast<double>(s));
        rhos_.push_back(rho);
      }
      break;
    }
    case FamilyKind::fzc: {
      for (std::size_t m = 1; m < n; ++m) {
        if (std::gcd(m, n) != 1) continue;
        FzcParams p{static_cast<double>(m), config.family.fzc_p, config.family.fzc_q,
                    config.family.fzc_r, n};
        sequences_.push_back(fzc_family_sequence(p));
        labels_.push_back(static_cast<double>(m));
      }
      break;
    }
    case FamilyKind::gold: {
      GoldPolynomials polys;
      if (config.family.gold_polys) {
        polys = *config.family.gold_polys;
      } else {
        const auto builtin = preferred_pair(gold_degree_for(n));
        if (!builtin)
          throw std::invalid_argument("no built-in Gold preferred pair for N = " + std::to_string(n));
        polys = *builtin;
      }
      if ((std::size_t{1} << polys.degree) - 1 != n)
        throw std::invalid_argument("Gold polynomials do not match N");
      for (std::size_t c = 0; c < gold_family_size(polys.degree); ++c) {
        sequences_.push_back(gold_code(polys, c));
        labels_.push_back(static_cast<double>(c));
      }
      break;
    }
  }
  if (config.n_users > sequences_.size())
    throw std::invalid_argument("family '" + to_string(config.family.kind) + "' has only " +
                                std::to_string(sequences_.size()) + " sequences for K = " +
                                std::to_string(config.n_users));
}

std::optional<double> SequencePool::slot_rho(std::size_t slot) const {
  if (rhos_.empty()) return std::nullopt;
  return rhos_.at(slot);
}

std::vector<std::size_t> fixed_slots(const SimConfig& config, std::size_t pool_size) {
  switch (config.policy) {
    case AssignmentPolicy::sequential: {
      std::vector<std::size_t> s(config.n_users);
      std::iota(s.begin(), s.end(), std::size_t{0});
      return s;
    }
    case AssignmentPolicy::van_der_corput:
      return vdc_assignment(config.n_users, pool_size);
    case AssignmentPolicy::random_distinct:
      break;
  }
  return {};
}

TrialDraw draw_trial(const SimConfig& config, std::size_t pool_size, Rng& rng,
                     std::span<const std::size_t> preset_slots) {
  const std::size_t k = config.n_users;
  const double n = static_cast<double>(config.n_chips);
  TrialDraw d;
  d.tau.resize(k);
  d.phi.resize(k);
  d.bits_prev.resize(k);
  d.bits_cur.resize(k);
  for (std::size_t u = 0; u < k; ++u) {
    d.tau[u] = n * rng.uniform();
    d.phi[u] = kTwoPi * rng.uniform();
    const std::uint64_t bits = rng();
    d.bits_prev[u] = (bits & 1u) ? 1 : -1;
    d.bits_cur[u] = (bits & 2u) ? 1 : -1;
  }
  if (!preset_slots.empty()) {
    d.slots.assign(preset_slots.begin(), preset_slots.end());
  } else {
    // partial Fisher-Yates: first K entries of a uniform random permutation
    std::vector<std::size_t> perm(pool_size);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    for (std::size_t u = 0; u < k; ++u) {
      std::uniform_int_distribution<std::size_t> pick(u, pool_size - 1);
      std::swap(perm[u], perm[pick(rng)]);
    }
    d.slots.assign(perm.begin(), perm.begin() + static_cast<long>(k));
  }
  return d;
}

namespace {

struct Weights {
  long lag;
  double frac;
};

Weights chip_offset(double tau, long n) {
  long l = static_cast<long>(std::floor(tau));
  if (l > n - 1) l = n - 1;
  if (l < 0) l = 0;
  return {l, tau - static_cast<double>(l)};
}

}  // namespace

std::complex<double> interference(std::size_t i, std::size_t k, const TrialDraw& draw,
                                  std::span<const ChipSequence> seqs) {
  if (i == k) throw std::invalid_argument("interference: i and k must differ");
  const ChipSequence& wi = seqs[i];
  const ChipSequence& wk = seqs[k];
  const long n = static_cast<long>(wi.size());
  const auto [l, frac] = chip_offset(draw.tau[k], n);
  const double bp = draw.bits_prev[k];
  const double bc = draw.bits_cur[k];
  const auto bracket = frac * (bp * aperiodic_c(wi, wk, l) + bc * aperiodic_c(wi, wk, l - n)) +
                       (1.0 - frac) * (bp * aperiodic_c(wi, wk, l + 1) +
                                       bc * aperiodic_c(wi, wk, l + 1 - n));
  return std::polar(1.0, draw.phi[k]) * bracket;
}

double decision_statistic(std::size_t i, const TrialDraw& draw,
                          std::span<const ChipSequence> seqs, const LinkBudget& budget,
                          double noise_sample) {
  const double n = static_cast<double>(seqs[i].size());
  CompensatedSum mai;
  for (std::size_t k = 0; k < seqs.size(); ++k) {
    if (k == i) continue;
    mai.add(interference(i, k, draw, seqs).real());
  }
  return draw.bits_cur[i] + mai.value() / n + std::sqrt(budget.noise_term()) * noise_sample;
}

// ---------------------------------------------------------------------------

namespace {

/// C_{a,b}(l) for every ordered pair of active slots and l in [-N, N].
class CorrelationTable {
 public:
  CorrelationTable(const SequencePool& pool, std::vector<std::size_t> active, long n)
      : n_(n), active_(std::move(active)), local_(pool.size(), kNone) {
    const std::size_t a = active_.size();
    const std::size_t width = static_cast<std::size_t>(2 * n + 1);
    const double entries = static_cast<double>(a) * static_cast<double>(a) * static_cast<double>(width);
    if (entries > 3.2e7)
      throw std::invalid_argument("correlation table too large; reduce the slot pool or N");
    for (std::size_t s = 0; s < a; ++s) local_[active_[s]] = s;
    data_.resize(a * a * width);
    for (std::size_t x = 0; x < a; ++x)
      for (std::size_t y = 0; y < a; ++y) {
        if (x == y) continue;
        const auto& wx = pool.sequence(active_[x]);
        const auto& wy = pool.sequence(active_[y]);
        std::complex<double>* row = &data_[(x * a + y) * width];
        for (long l = -n; l <= n; ++l) row[l + n] = aperiodic_c(wx, wy, l);
      }
  }

  /// Pointer p with p[l] = C(l) for l in [-N, N].
  const std::complex<double>* row(std::size_t slot_i, std::size_t slot_k) const {
    const std::size_t a = active_.size();
    const std::size_t width = static_cast<std::size_t>(2 * n_ + 1);
    return &data_[(local_[slot_i] * a + local_[slot_k]) * width] + n_;
  }

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  long n_;
  std::vector<std::size_t> active_;
  std::vector<std::size_t> local_;
  std::vector<std::complex<double>> data_;
};

struct ChunkTally {
  std::vector<std::uint64_t> errors;
  std::vector<double> sum;
  std::vector<double> sum_sq;
};

constexpr std::size_t kChunkTrials = 512;

}  // namespace

BerResult run_ber(const SimConfig& config) {
  config.validate();
  const SequencePool pool(config);
  const std::size_t k_users = config.n_users;
  const long n = static_cast<long>(config.n_chips);
  const double inv_n = 1.0 / static_cast<double>(n);
  const LinkBudget budget{config.e_over_n0, config.n_chips, k_users};
  const double noise_sd = std::sqrt(budget.noise_term());

  std::vector<std::size_t> preset = fixed_slots(config, pool.size());
  if (preset.empty() && !config.redraw_sigma) {
    // one slot set for the whole run, from a stream no trial uses
    Rng rng = Rng::stream(config.seed, ~std::uint64_t{0});
    preset = draw_trial(config, pool.size(), rng, {}).slots;
  }

  std::vector<std::size_t> active = preset;
  if (active.empty()) {
    active.resize(pool.size());
    std::iota(active.begin(), active.end(), std::size_t{0});
  }
  const CorrelationTable table(pool, active, n);

  const std::size_t n_chunks = (config.trials + kChunkTrials - 1) / kChunkTrials;
  std::vector<ChunkTally> tallies(n_chunks);
  std::atomic<std::size_t> next_chunk{0};

  auto worker = [&] {
    std::vector<double> cos_phi(k_users), sin_phi(k_users);
    for (;;) {
      const std::size_t c = next_chunk.fetch_add(1);
      if (c >= n_chunks) return;
      ChunkTally tally{std::vector<std::uint64_t>(k_users, 0), std::vector<double>(k_users, 0.0),
                       std::vector<double>(k_users, 0.0)};
      const std::size_t first = c * kChunkTrials;
      const std::size_t last = std::min(config.trials, first + kChunkTrials);
      for (std::size_t t = first; t < last; ++t) {
        Rng rng = Rng::stream(config.seed, t);
        const TrialDraw d = draw_trial(config, pool.size(), rng, preset);
        for (std::size_t u = 0; u < k_users; ++u) {
          cos_phi[u] = std::cos(d.phi[u]);
          sin_phi[u] = std::sin(d.phi[u]);
        }
        std::normal_distribution<double> gauss(0.0, 1.0);
        for (std::size_t i = 0; i < k_users; ++i) {
          double mai = 0.0;
          for (std::size_t k = 0; k < k_users; ++k) {
            if (k == i) continue;
            const std::complex<double>* c_ik = table.row(d.slots[i], d.slots[k]);
            const auto [l, frac] = chip_offset(d.tau[k], n);
            const double bp = d.bits_prev[k];
            const double bc = d.bits_cur[k];
            const std::complex<double> x = frac * (bp * c_ik[l] + bc * c_ik[l - n]) +
                                           (1.0 - frac) * (bp * c_ik[l + 1] + bc * c_ik[l + 1 - n]);
            mai += cos_phi[k] * x.real() - sin_phi[k] * x.imag();
          }
          const double g = gauss(rng);
          const double noise = mai * inv_n + noise_sd * g;
          const double z = d.bits_cur[i] + noise;
          if (z * d.bits_cur[i] < 0.0) ++tally.errors[i];
          tally.sum[i] += noise;
          tally.sum_sq[i] += noise * noise;
        }
      }
      tallies[c] = std::move(tally);
    }
  };

  const unsigned threads =
      std::max(1u, std::min<unsigned>(config.threads ? config.threads : default_thread_count(),
                                      static_cast<unsigned>(n_chunks)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool_threads;
    for (unsigned w = 0; w < threads; ++w) pool_threads.emplace_back(worker);
  }

  BerResult result;
  result.error_counts.assign(k_users, 0);
  result.bit_counts.assign(k_users, config.trials);
  std::vector<double> sum(k_users, 0.0), sum_sq(k_users, 0.0);
  for (const auto& t : tallies) {
    for (std::size_t u = 0; u < k_users; ++u) {
      result.error_counts[u] += t.errors[u];
      sum[u] += t.sum[u];
      sum_sq[u] += t.sum_sq[u];
    }
  }
  const double trials = static_cast<double>(config.trials);
  for (std::size_t u = 0; u < k_users; ++u) {
    result.per_user_ber.push_back(static_cast<double>(result.error_counts[u]) / trials);
    result.total_errors += result.error_counts[u];
    result.total_bits += result.bit_counts[u];
    const double mean = sum[u] / trials;
    result.noise_mean.push_back(mean);
    const double var = config.trials > 1 ? (sum_sq[u] - trials * mean * mean) / (trials - 1.0) : 0.0;
    result.noise_variance.push_back(var);
  }
  result.mean_ber = static_cast<double>(result.total_errors) / static_cast<double>(result.total_bits);
  std::tie(result.wilson_lo, result.wilson_hi) = wilson_interval(result.total_errors, result.total_bits);
  return result;
}

std::vector<SweepRow> sweep(const SimConfig& base, SweepAxis axis, std::span<const double> values) {
  std::vector<SweepRow> rows;
  for (double v : values) {
    SimConfig cfg = base;
    if (axis == SweepAxis::users) {
      if (!(v >= 1.0) || v != std::floor(v))
        throw std::invalid_argument("sweep: user counts must be positive integers");
      cfg.n_users = static_cast<std::size_t>(v);
    } else {
      cfg.e_over_n0 = db_to_linear(v);
    }
    const BerResult r = run_ber(cfg);
    SweepRow row;
    row.axis_value = v;
    row.family = to_string(cfg.family.kind);
    row.policy = to_string(cfg.policy);
    row.gamma = cfg.gamma;
    row.kmax = cfg.family.kind == FamilyKind::optimal ? cfg.n_users
               : cfg.family.kind == FamilyKind::weyl  ? cfg.effective_k_max()
                                                      : 0;
    row.mean_ber = r.mean_ber;
    row.wilson_lo = r.wilson_lo;
    row.wilson_hi = r.wilson_hi;
    row.bits = r.total_bits;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace weylcdma
