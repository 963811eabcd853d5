#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "weylcdma/rng.hpp"
#include "weylcdma/sequence.hpp"
#include "weylcdma/snr.hpp"

namespace weylcdma {

enum class FamilyKind { weyl, optimal, fzc, gold };
enum class AssignmentPolicy { random_distinct, van_der_corput, sequential };

std::string to_string(FamilyKind kind);
std::string to_string(AssignmentPolicy policy);
FamilyKind parse_family(const std::string& name);
AssignmentPolicy parse_policy(const std::string& name);

/// Which sequence family the users draw from.
///
///  weyl     slots sigma = 0..k_max-1, rho = gamma + sigma/k_max
///  optimal  as weyl with k_max = K (the equispaced global solution)
///  fzc      slots are the integers M in [1, N) coprime to N, chips from
///           fzc_family_sequence with the triple (p, q, r)
///  gold     the N + 2 members of a Gold family, N = 2^m - 1
struct FamilySpec {
  FamilyKind kind = FamilyKind::weyl;
  double fzc_p = 1.0;
  double fzc_q = 1.0;
  std::optional<double> fzc_r = 1.275;
  std::optional<GoldPolynomials> gold_polys;  // defaults to the built-in pair for N
};

struct SimConfig {
  std::size_t n_users = 1;
  std::size_t n_chips = 31;
  double e_over_n0 = 1.0;  // linear; +inf disables noise
  std::size_t trials = 1000;
  std::uint64_t seed = 1;
  FamilySpec family;
  AssignmentPolicy policy = AssignmentPolicy::random_distinct;
  double gamma = 0.0;
  std::size_t k_max = 0;  // weyl slot count; 0 means N
  /// random policy only: draw a fresh slot set every trial (default) or
  /// one set for the whole run.
  bool redraw_sigma = true;
  /// worker threads; 0 reads WEYLCDMA_THREADS, then hardware concurrency
  unsigned threads = 0;

  void validate() const;
  /// Effective slot count of the weyl family.
  std::size_t effective_k_max() const { return k_max == 0 ? n_chips : k_max; }
};

/// The candidate sequences ("slots") of one family for a given config.
class SequencePool {
 public:
  SequencePool(const SimConfig& config);

  std::size_t size() const { return sequences_.size(); }
  const ChipSequence& sequence(std::size_t slot) const { return sequences_[slot]; }
  /// sigma for Weyl-type families, M_k for fzc, member index for gold.
  double slot_label(std::size_t slot) const { return labels_[slot]; }
  /// Phase increment of a Weyl-type slot; nullopt for fzc and gold.
  std::optional<double> slot_rho(std::size_t slot) const;

 private:
  std::vector<ChipSequence> sequences_;
  std::vector<double> labels_;
  std::vector<double> rhos_;
};

struct TrialDraw {
  std::vector<double> tau;  // [0, N), chip duration normalized to 1
  std::vector<double> phi;  // [0, 2 pi)
  std::vector<int> bits_prev;
  std::vector<int> bits_cur;
  std::vector<std::size_t> slots;  // pool slot per user, pairwise distinct
};

/// Slot choice for the fixed policies (sequential, van der corput).
std::vector<std::size_t> fixed_slots(const SimConfig& config, std::size_t pool_size);

/// Draws delays, phases, bits and (for the random policy) slots for one trial.
/// When `preset_slots` is non-empty it is used instead of drawing slots.
TrialDraw draw_trial(const SimConfig& config, std::size_t pool_size, Rng& rng,
                     std::span<const std::size_t> preset_slots);

/// Interference of user k at user i's correlator with T_c = 1:
///   exp(j phi_k) [ d (b_{k,-1} C(l) + b_{k,0} C(l-N))
///                + (1-d) (b_{k,-1} C(l+1) + b_{k,0} C(l+1-N)) ],
/// l = floor(tau_k), d = tau_k - l, C = C_{i,k}. `seqs` is indexed by user.
std::complex<double> interference(std::size_t i, std::size_t k, const TrialDraw& draw,
                                  std::span<const ChipSequence> seqs);

/// Z_i = b_{i,0} + (1/N) sum_{k != i} Re I_{i,k} + sqrt(N0/2E) * noise_sample,
/// with noise_sample a standard normal draw. User i is the coherent reference.
double decision_statistic(std::size_t i, const TrialDraw& draw,
                          std::span<const ChipSequence> seqs, const LinkBudget& budget,
                          double noise_sample);

struct BerResult {
  std::vector<double> per_user_ber;
  std::vector<std::uint64_t> error_counts;
  std::vector<std::uint64_t> bit_counts;
  std::uint64_t total_errors = 0;
  std::uint64_t total_bits = 0;
  double mean_ber = 0.0;
  double wilson_lo = 0.0;
  double wilson_hi = 0.0;
  /// Sample mean and variance of Z_i - b_{i,0} per user (interference plus noise).
  std::vector<double> noise_mean;
  std::vector<double> noise_variance;

  double half_width() const { return 0.5 * (wilson_hi - wilson_lo); }
};

/// Runs `config.trials` independent trials; trial t uses Rng::stream(seed, t).
/// The result is bit-identical for any thread count.
BerResult run_ber(const SimConfig& config);

enum class SweepAxis { users, ebn0 };
std::string to_string(SweepAxis axis);
SweepAxis parse_axis(const std::string& name);

struct SweepRow {
  double axis_value = 0.0;
  std::string family;
  std::string policy;
  double gamma = 0.0;
  std::size_t kmax = 0;
  double mean_ber = 0.0;
  double wilson_lo = 0.0;
  double wilson_hi = 0.0;
  std::uint64_t bits = 0;
};

/// One row per axis value. Users-axis values set K; ebn0-axis values are E/N0
/// in dB. The seed is shared by every point.
std::vector<SweepRow> sweep(const SimConfig& base, SweepAxis axis, std::span<const double> values);

unsigned default_thread_count();

}  // namespace weylcdma
