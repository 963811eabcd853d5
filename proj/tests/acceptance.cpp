// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "weylcdma/assignment.hpp"
#include "weylcdma/correlation.hpp"
#include "weylcdma/numeric.hpp"
#include "weylcdma/rng.hpp"
#include "weylcdma/sequence.hpp"
#include "weylcdma/simulator.hpp"
#include "weylcdma/snr.hpp"
#include "weylcdma/stats.hpp"

using namespace weylcdma;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::size_t draw_index(Rng& rng, std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(rng.uniform() * static_cast<double>(hi - lo + 1));
}

BerResult ber(std::size_t n, std::size_t k, double db, std::size_t trials, std::uint64_t seed,
              FamilyKind kind, double gamma, std::size_t k_max = 0,
              AssignmentPolicy policy = AssignmentPolicy::random_distinct) {
  SimConfig c;
  c.n_chips = n;
  c.n_users = k;
  c.e_over_n0 = db_to_linear(db);
  c.trials = trials;
  c.seed = seed;
  c.family.kind = kind;
  c.gamma = gamma;
  c.k_max = k_max;
  c.policy = policy;
  return run_ber(c);
}

std::string interval(const BerResult& r) {
  return fmt("%.3e [%.3e, %.3e]", r.mean_ber, r.wilson_lo, r.wilson_hi);
}

// 1
Outcome zero_periodic_crosscorrelation() {
  const std::size_t n = 31;
  std::vector<ChipSequence> fam;
  for (std::size_t s = 0; s < n; ++s) fam.push_back(optimal_weyl_sequence({0.0, s, n, n}));
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (i == k) continue;
      for (long l = 0; l < static_cast<long>(n); ++l)
        worst = std::max(worst, std::abs(periodic_theta(fam[i], fam[k], l)));
    }
  return {worst < 1e-9, fmt("max |theta| = %.3e over 930 pairs x 31 lags", worst)};
}

// 2
Outcome correlation_bound() {
  Rng rng(2024);
  double worst_excess = -INFINITY;
  int skipped = 0;
  for (int c = 0; c < 1000; ++c) {
    const std::size_t n = draw_index(rng, 4, 256);
    const double ri = rng.uniform();
    const double rk = rng.uniform();
    const long l = static_cast<long>(draw_index(rng, 0, n - 1));
    if (phases_degenerate(ri, rk)) {
      ++skipped;
      continue;
    }
    const double c_abs = std::abs(aperiodic_c(weyl_sequence({ri, 0.0, n}), weyl_sequence({rk, 0.0, n}), l));
    worst_excess = std::max(worst_excess, c_abs - cross_bound(ri, rk));
  }

  double worst_gap = 0.0;
  for (int c = 0; c < 200; ++c) {
    const std::size_t n = draw_index(rng, 4, 256);
    const long l = static_cast<long>(draw_index(rng, 0, n - 2));
    const double span = static_cast<double>(static_cast<long>(n) - l);
    const std::size_t m = draw_index(rng, 0, static_cast<std::size_t>(span) - 1);
    const double ri = rng.uniform();
    const double rk = wrap_unit(ri + (0.5 + static_cast<double>(m)) / span);
    const double c_abs = std::abs(aperiodic_c(weyl_sequence({ri, 0.0, n}), weyl_sequence({rk, 0.0, n}), l));
    worst_gap = std::max(worst_gap, std::abs(c_abs - cross_bound(ri, rk)));
  }
  const bool pass = worst_excess <= 1e-9 && worst_gap <= 1e-9 && skipped == 0;
  return {pass, fmt("max(|C| - bound) = %.3e on 1000 cases; equality gap %.3e on 200 cases", worst_excess, worst_gap)};
}

// 3
Outcome cosecant_identity() {
  double worst = 0.0;
  for (std::size_t n = 2; n <= 1024; ++n) {
    const double nd = static_cast<double>(n);
    const double exact = (nd * nd - 1.0) / 3.0;
    worst = std::max(worst, std::abs(csc2_sum(n) - exact) / exact);
  }
  return {worst < 1e-12, fmt("max relative error %.3e for n = 2..1024", worst)};
}

// 4
Outcome kkt_certification() {
  double worst = 0.0;
  bool sampled_ok = true;
  double closest = INFINITY;
  for (std::size_t k = 2; k <= 20; ++k) {
    const auto sol = global_solution(k, 0.0);
    const auto rep = kkt_report(sol, construct_multipliers(k, sol));
    worst = std::max(worst, rep.stationarity() + rep.complementarity);
    const auto s = verify_optimality_by_sampling(k, 10000, 4000 + k);
    sampled_ok = sampled_ok && s.optimum_holds;
    closest = std::min(closest, (s.min_sampled - s.optimum) / s.optimum);
  }
  return {worst < 1e-9 && sampled_ok,
          fmt("max stationarity+complementarity %.3e; sampled objectives exceed optimum by >= %.3e (relative)", worst,
              closest)};
}

// 5
Outcome snr_bridge() {
  const std::size_t n = 31;
  const double gamma = 1.0 / (2.0 * n);
  const double db = 10.0;
  const std::size_t trials = 100000;
  const auto r = ber(n, n, db, trials, 55, FamilyKind::weyl, gamma, n, AssignmentPolicy::sequential);
  const auto budget = LinkBudget::from_db(db, n, n);

  double worst_var = 0.0;
  for (std::size_t s = 0; s < n; ++s) {
    const double model = weyl_interference_term(s, gamma, n, n) + budget.noise_term();
    worst_var = std::max(worst_var, std::abs(r.noise_variance[s] - model) / model);
  }

  std::vector<ChipSequence> fam;
  for (std::size_t s = 0; s < n; ++s) fam.push_back(optimal_weyl_sequence({gamma, s, n, n}));
  double worst_snr = 0.0;
  double mean_p = 0.0, mean_e = 0.0;
  for (std::size_t s = 0; s < n; ++s) {
    const double p = pursley_snr(s, fam, budget);
    const double e = expected_weyl_snr(s, gamma, budget);
    worst_snr = std::max(worst_snr, std::abs(p - e) / e);
    mean_p += p / static_cast<double>(n);
    mean_e += e / static_cast<double>(n);
  }
  const double mean_gap = std::abs(mean_p - mean_e) / mean_e;
  return {worst_var < 0.05 && worst_snr < 0.02 && mean_gap < 0.02,
          fmt("variance within %.2f%% (1e5 trials, 10 dB); snr per-user %.2e, averaged %.2e", 100.0 * worst_var,
              worst_snr, mean_gap)};
}

// 6
Outcome r_ik_closed_form() {
  Rng rng(606);
  double worst = 0.0;
  for (int c = 0; c < 100; ++c) {
    const std::size_t n = draw_index(rng, 4, 128);
    const double gamma = rng.uniform();
    const std::size_t si = draw_index(rng, 0, n - 1);
    std::size_t sk = draw_index(rng, 0, n - 2);
    if (sk >= si) ++sk;
    const auto x = optimal_weyl_sequence({gamma, si, n, n});
    const auto y = optimal_weyl_sequence({gamma, sk, n, n});
    const double direct = r_ik(x, y);
    worst = std::max(worst, std::abs(r_ik_closed(si, sk, gamma, n) - direct) / direct);
  }

  double worst_const = 0.0, worst_cos = 0.0;
  for (int c = 0; c < 100; ++c) {
    const std::size_t n = draw_index(rng, 3, 512);
    const std::size_t k = draw_index(rng, 2, n);
    const std::size_t si = draw_index(rng, 0, n - 1);
    const double gamma = rng.uniform();
    const double nd = static_cast<double>(n), kd = static_cast<double>(k);
    const double constant = 2.0 * nd * (nd + 1.0) * (kd - 1.0) / 3.0;
    const double amplitude = nd * (nd - 2.0) * (kd - 1.0) / 3.0;
    const double cosine = amplitude * std::cos(kTwoPi * (gamma + static_cast<double>(si) / nd));
    const auto e = expected_r_sum(si, gamma, k, n);
    worst_const = std::max(worst_const, std::abs(e.constant_part - constant) / constant);
    // relative to the cosine amplitude: the cosine factor itself can be ~0
    if (amplitude > 0.0) worst_cos = std::max(worst_cos, std::abs(e.cosine_part - cosine) / amplitude);
  }
  return {worst < 1e-8 && worst_const < 1e-12 && worst_cos < 1e-12,
          fmt("r_ik rel %.2e; constant part rel %.2e; cosine part rel %.2e", worst, worst_const, worst_cos)};
}

// 7
Outcome ber_ordering() {
  const std::size_t n = 31, k = 10, trials = 200000;
  const double gamma = 1.0 / (2.0 * n);
  const auto opt = ber(n, k, 25.0, trials, 71, FamilyKind::optimal, gamma);
  const auto weyl = ber(n, k, 25.0, trials, 72, FamilyKind::weyl, gamma, n);
  const auto gold = ber(n, k, 25.0, trials, 73, FamilyKind::gold, gamma);
  const bool pass = opt.wilson_hi < weyl.wilson_lo && weyl.wilson_hi < gold.wilson_lo &&
                    opt.mean_ber < weyl.mean_ber && weyl.mean_ber < gold.mean_ber;
  return {pass, "optimal " + interval(opt) + " < weyl " + interval(weyl) + " < gold " + interval(gold) +
                    fmt(" (%llu decisions each)", static_cast<unsigned long long>(opt.total_bits))};
}

// 8
Outcome assignment_policy_comparison() {
  const std::size_t n = 32;
  const double gamma = 1.0 / (2.0 * n);
  bool pass = true;
  std::string detail;
  for (std::size_t k : {4u, 8u, 16u}) {
    const std::size_t trials = 2000000 / k;
    const auto vdc = ber(n, k, 25.0, trials, 80 + k, FamilyKind::weyl, gamma, n, AssignmentPolicy::van_der_corput);
    const auto rnd = ber(n, k, 25.0, trials, 90 + k, FamilyKind::weyl, gamma, n);
    const bool ok = vdc.mean_ber <= rnd.mean_ber || vdc.wilson_lo <= rnd.wilson_hi;
    pass = pass && ok;
    detail += fmt("K=%zu vdc %s vs random %s; ", k, interval(vdc).c_str(), interval(rnd).c_str());
  }
  return {pass, detail};
}

// 9
Outcome gamma_invariance() {
  const std::size_t n = 30, k = 7, trials = 300000;
  bool pass = true;
  std::string detail;
  for (double db : {5.0, 15.0, 25.0}) {
    const auto a = ber(n, k, db, trials, 901, FamilyKind::optimal, 1.0 / (2.0 * n));
    const auto b = ber(n, k, db, trials, 902, FamilyKind::optimal, 1.0 / (2.0 * k));
    const double diff = std::abs(a.mean_ber - b.mean_ber);
    const double tol = a.half_width() + b.half_width();
    pass = pass && diff <= tol;
    detail += fmt("%g dB |diff| %.2e <= %.2e; ", db, diff, tol);
  }
  return {pass, detail};
}

// 10
Outcome single_user_oracle() {
  bool pass = true;
  std::string detail;
  for (double db : {4.0, 8.0}) {
    const auto r = ber(31, 1, db, 1000000, 1000 + static_cast<std::uint64_t>(db), FamilyKind::weyl, 0.0);
    const double q = q_function(std::sqrt(2.0 * db_to_linear(db)));
    const double width = r.wilson_hi - r.wilson_lo;
    const double diff = std::abs(r.mean_ber - q);
    pass = pass && diff <= 3.0 * width;
    detail += fmt("%g dB ber %.4e vs Q %.4e (|diff| %.1e, width %.1e); ", db, r.mean_ber, q, diff, width);
  }
  return {pass, detail};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"zero periodic crosscorrelation (N=31, K_max=N, gamma=0)", zero_periodic_crosscorrelation},
      {"crosscorrelation bound and equality cases", correlation_bound},
      {"cosecant-square sum identity", cosecant_identity},
      {"KKT certificate and sampled optimality, K=2..20", kkt_certification},
      {"analytic vs empirical SNR at K=N=31", snr_bridge},
      {"closed-form r_ik and expected sum components", r_ik_closed_form},
      {"BER ordering optimal < weyl < gold (N=31, K=10, 25 dB)", ber_ordering},
      {"van der Corput vs random assignment (N=32, 25 dB)", assignment_policy_comparison},
      {"optimal BER invariant in gamma (N=30, K=7)", gamma_invariance},
      {"single-user BER matches Q(sqrt(2E/N0))", single_user_oracle},
  };

  int failures = 0;
  int index = 0;
  for (const auto& [name, run] : criteria) {
    ++index;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failures;
    std::printf("[%s] %2d %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", index, name, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", index - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
