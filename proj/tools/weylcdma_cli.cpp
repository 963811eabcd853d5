// weylcdma command-line tool: sequence dumps, correlation profiles, the
// optimal phase assignment, analytic SNR tables and BER sweeps.

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "weylcdma/assignment.hpp"
#include "weylcdma/correlation.hpp"
#include "weylcdma/experiment.hpp"
#include "weylcdma/numeric.hpp"
#include "weylcdma/sequence.hpp"
#include "weylcdma/simulator.hpp"
#include "weylcdma/snr.hpp"

namespace {

using namespace weylcdma;

std::string num(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::optional<double> parse_exponent(const std::string& text) {
  if (text == "-inf" || text == "none") return std::nullopt;
  std::size_t used = 0;
  const double v = std::stod(text, &used);
  if (used != text.size()) throw std::invalid_argument("bad exponent '" + text + "'");
  return v;
}

/// "a:b" (inclusive integer-step range), "a:b:step" or "v1,v2,...".
std::vector<double> parse_values(const std::string& text) {
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    std::vector<double> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(std::stod(item));
    if (parts.size() < 2 || parts.size() > 3) throw std::invalid_argument("range must be a:b or a:b:step");
    const double step = parts.size() == 3 ? parts[2] : 1.0;
    if (!(step > 0)) throw std::invalid_argument("range step must be positive");
    for (double x = parts[0]; x <= parts[1] + 1e-9; x += step) out.push_back(x);
  } else {
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
  }
  if (out.empty()) throw std::invalid_argument("no axis values in '" + text + "'");
  return out;
}

/// Writes to `path`, or stdout when it is empty or "-".
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot open output file " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

struct SequenceArgs {
  std::string family = "weyl";
  std::size_t n = 31;
  double rho = 0.0;
  double delta = 0.0;
  double gamma = 0.0;
  std::size_t sigma = 0;
  std::size_t kmax = 0;
  double m = 1.0;
  double p = 2.0;
  double q = 1.0;
  std::string r = "-inf";
  std::size_t code = 0;
};

ChipSequence build_sequence(const SequenceArgs& a) {
  if (a.family == "weyl") return weyl_sequence({a.rho, a.delta, a.n});
  if (a.family == "optimal")
    return optimal_weyl_sequence({a.gamma, a.sigma, a.kmax == 0 ? a.n : a.kmax, a.n});
  if (a.family == "fzc") return fzc_family_sequence({a.m, a.p, a.q, parse_exponent(a.r), a.n});
  if (a.family == "gold") {
    unsigned degree = 0;
    while ((std::size_t{1} << degree) - 1 < a.n) ++degree;
    if ((std::size_t{1} << degree) - 1 != a.n)
      throw std::invalid_argument("gold codes need N = 2^m - 1");
    return gold_code(degree, a.code);
  }
  throw std::invalid_argument("unknown family '" + a.family + "' (weyl|optimal|fzc|gold)");
}

// ---------------------------------------------------------------------------

void setup_generate(CLI::App& app) {
  auto* cmd = app.add_subcommand("generate", "Dump one spreading sequence as CSV (n,re,im,phase_turns)");
  auto args = std::make_shared<SequenceArgs>();
  auto out = std::make_shared<std::string>();
  cmd->add_option("--family", args->family, "weyl|optimal|fzc|gold")->capture_default_str();
  cmd->add_option("--n", args->n, "sequence length N")->capture_default_str();
  cmd->add_option("--rho", args->rho, "weyl: phase increment in [0,1)");
  cmd->add_option("--delta", args->delta, "weyl: initial offset in [0,1)");
  cmd->add_option("--gamma", args->gamma, "optimal: global offset");
  cmd->add_option("--sigma", args->sigma, "optimal: slot index");
  cmd->add_option("--kmax", args->kmax, "optimal: slot count (default N)");
  cmd->add_option("--m", args->m, "fzc: index M_k");
  cmd->add_option("--p", args->p, "fzc: exponent p")->capture_default_str();
  cmd->add_option("--q", args->q, "fzc: exponent q")->capture_default_str();
  cmd->add_option("--r", args->r, "fzc: exponent r, or -inf/none to drop the term")->capture_default_str();
  cmd->add_option("--code", args->code, "gold: family member index");
  cmd->add_option("--out", *out, "output path (default stdout)");
  cmd->callback([args, out] {
    const ChipSequence seq = build_sequence(*args);
    Output o(*out);
    auto& s = o.stream();
    s << "n,re,im,phase_turns\n";
    for (std::size_t i = 0; i < seq.size(); ++i) {
      const auto c = seq[i];
      s << i + 1 << ',' << num(c.real()) << ',' << num(c.imag()) << ','
        << num(wrap_unit(std::arg(c) / kTwoPi)) << '\n';
    }
  });
}

void setup_correlate(CLI::App& app) {
  auto* cmd = app.add_subcommand(
      "correlate", "Per-lag crosscorrelation profile as CSV (lag,abs_c,abs_theta,abs_theta_hat,bound)");
  struct Args {
    SequenceArgs base;
    double rho_i = 0.0, rho_k = 0.5;
    std::size_t sigma_i = 0, sigma_k = 1;
    double m_i = 1.0, m_k = 2.0;
    std::size_t code_i = 0, code_k = 1;
    std::string out;
  };
  auto a = std::make_shared<Args>();
  cmd->add_option("--family", a->base.family, "weyl|optimal|fzc|gold")->capture_default_str();
  cmd->add_option("--n", a->base.n, "sequence length N")->capture_default_str();
  cmd->add_option("--rho-i", a->rho_i, "weyl: rho of user i");
  cmd->add_option("--rho-k", a->rho_k, "weyl: rho of user k");
  cmd->add_option("--gamma", a->base.gamma, "optimal: global offset");
  cmd->add_option("--kmax", a->base.kmax, "optimal: slot count (default N)");
  cmd->add_option("--sigma-i", a->sigma_i, "optimal: slot of user i");
  cmd->add_option("--sigma-k", a->sigma_k, "optimal: slot of user k");
  cmd->add_option("--m-i", a->m_i, "fzc: M of user i");
  cmd->add_option("--m-k", a->m_k, "fzc: M of user k");
  cmd->add_option("--p", a->base.p, "fzc: exponent p");
  cmd->add_option("--q", a->base.q, "fzc: exponent q");
  cmd->add_option("--r", a->base.r, "fzc: exponent r, or -inf/none");
  cmd->add_option("--code-i", a->code_i, "gold: member of user i");
  cmd->add_option("--code-k", a->code_k, "gold: member of user k");
  cmd->add_option("--out", a->out, "output path (default stdout)");
  cmd->callback([a] {
    SequenceArgs si = a->base, sk = a->base;
    std::optional<double> rho_i, rho_k;
    if (a->base.family == "weyl") {
      si.rho = a->rho_i;
      sk.rho = a->rho_k;
      rho_i = a->rho_i;
      rho_k = a->rho_k;
    } else if (a->base.family == "optimal") {
      si.sigma = a->sigma_i;
      sk.sigma = a->sigma_k;
      const std::size_t kmax = a->base.kmax == 0 ? a->base.n : a->base.kmax;
      rho_i = optimal_weyl_rho(a->base.gamma, a->sigma_i, kmax);
      rho_k = optimal_weyl_rho(a->base.gamma, a->sigma_k, kmax);
    } else if (a->base.family == "fzc") {
      si.m = a->m_i;
      sk.m = a->m_k;
    } else {
      si.code = a->code_i;
      sk.code = a->code_k;
    }
    const ChipSequence wi = build_sequence(si);
    const ChipSequence wk = build_sequence(sk);
    const CorrelationProfile prof = correlation_profile(wi, wk);

    double bound = std::numeric_limits<double>::quiet_NaN();
    if (rho_i && rho_k)
      bound = phases_degenerate(*rho_i, *rho_k) ? std::numeric_limits<double>::infinity()
                                                : cross_bound(*rho_i, *rho_k);
    Output o(a->out);
    auto& s = o.stream();
    s << "lag,abs_c,abs_theta,abs_theta_hat,bound\n";
    for (long l = 0; l < prof.n_chips; ++l) {
      s << l << ',' << num(std::abs(prof.c(l))) << ',' << num(std::abs(prof.theta[l])) << ','
        << num(std::abs(prof.theta_hat[l])) << ',' << num(bound) << '\n';
    }
  });
}

void setup_solve(CLI::App& app) {
  auto* cmd = app.add_subcommand("solve", "Optimal phase assignment with KKT and sampling checks (key=value)");
  struct Args {
    std::size_t k = 2;
    double gamma = 0.0;
    std::size_t samples = 10000;
    std::uint64_t seed = 1;
  };
  auto a = std::make_shared<Args>();
  cmd->add_option("--k", a->k, "number of users K >= 2")->required();
  cmd->add_option("--gamma", a->gamma, "global phase offset")->capture_default_str();
  cmd->add_option("--samples", a->samples, "random feasible samples for the falsification check")
      ->capture_default_str();
  cmd->add_option("--seed", a->seed, "sampling seed")->capture_default_str();
  cmd->callback([a] {
    const Solution sol = global_solution(a->k, a->gamma);
    const LagrangeMultipliers mult = construct_multipliers(a->k, sol);
    const KktReport kkt = kkt_report(sol, mult);
    std::cout << "k=" << a->k << "\n";
    std::cout << "gamma=" << num(a->gamma) << "\n";
    std::cout << "rho=";
    for (std::size_t i = 0; i < sol.assignment.rhos.size(); ++i)
      std::cout << (i ? "," : "") << num(sol.assignment.rhos[i]);
    std::cout << "\n";
    std::cout << "objective=" << num(objective(sol.assignment)) << "\n";
    std::cout << "kkt_residual=" << num(kkt.total()) << "\n";
    std::cout << "stationarity_rho=" << num(kkt.stationarity_rho) << "\n";
    std::cout << "stationarity_t=" << num(kkt.stationarity_t) << "\n";
    std::cout << "complementarity=" << num(kkt.complementarity) << "\n";
    std::cout << "primal_infeasibility=" << num(kkt.primal_infeasibility) << "\n";
    if (a->samples > 0) {
      const SamplingReport rep = verify_optimality_by_sampling(a->k, a->samples, a->seed);
      std::cout << "samples=" << rep.samples << "\n";
      std::cout << "sampled_min_objective=" << num(rep.min_sampled) << "\n";
      std::cout << "optimum_holds=" << (rep.optimum_holds ? "true" : "false") << "\n";
    }
  });
}

void setup_snr(CLI::App& app) {
  auto* cmd = app.add_subcommand(
      "snr", "Analytic SNR of the K_max=N Weyl family per sigma (CSV: sigma,gamma,snr,lower_bound)");
  struct Args {
    std::size_t n = 31, k = 31;
    double gamma = 0.0, ebn0_db = 25.0;
    std::string out;
  };
  auto a = std::make_shared<Args>();
  cmd->add_option("--n", a->n, "sequence length N")->capture_default_str();
  cmd->add_option("--k", a->k, "number of users K")->capture_default_str();
  cmd->add_option("--gamma", a->gamma, "global offset")->capture_default_str();
  cmd->add_option("--ebn0-db", a->ebn0_db, "E/N0 in dB")->capture_default_str();
  cmd->add_option("--out", a->out, "output path (default stdout)");
  cmd->callback([a] {
    const LinkBudget budget = LinkBudget::from_db(a->ebn0_db, a->n, a->k);
    const double lower = snr_lower_bound(budget);
    Output o(a->out);
    auto& s = o.stream();
    s << "sigma,gamma,snr,lower_bound\n";
    for (std::size_t sigma = 0; sigma < a->n; ++sigma)
      s << sigma << ',' << num(a->gamma) << ',' << num(expected_weyl_snr(sigma, a->gamma, budget))
        << ',' << num(lower) << '\n';
  });
}

void setup_ber_sweep(CLI::App& app) {
  auto* cmd = app.add_subcommand("ber-sweep", "Monte-Carlo BER sweep over users or E/N0 (CSV)");
  struct Args {
    std::string axis = "users", family = "weyl", policy = "random", values, out, fzc_r = "1.275";
    double gamma = std::numeric_limits<double>::quiet_NaN();
    double ebn0_db = 25.0, fzc_p = 1.0, fzc_q = 1.0;
    std::size_t kmax = 0, n = 31, k = 7, trials = 20000;
    std::uint64_t seed = 1;
    unsigned threads = 0;
    bool fixed_sigma = false;
  };
  auto a = std::make_shared<Args>();
  cmd->add_option("--axis", a->axis, "users|ebn0")->capture_default_str();
  cmd->add_option("--values", a->values, "axis values: a:b, a:b:step or v1,v2,... (default: --k or --ebn0-db)");
  cmd->add_option("--family", a->family, "weyl|optimal|fzc|gold")->capture_default_str();
  cmd->add_option("--gamma", a->gamma, "global offset (default 1/(2N))");
  cmd->add_option("--kmax", a->kmax, "weyl slot count (default N)");
  cmd->add_option("--policy", a->policy, "random|vdc|sequential")->capture_default_str();
  cmd->add_option("--n", a->n, "sequence length N")->capture_default_str();
  cmd->add_option("--k", a->k, "number of users K")->capture_default_str();
  cmd->add_option("--ebn0-db", a->ebn0_db, "E/N0 in dB")->capture_default_str();
  cmd->add_option("--trials", a->trials, "trials U per point")->capture_default_str();
  cmd->add_option("--seed", a->seed, "RNG seed")->capture_default_str();
  cmd->add_option("--threads", a->threads, "worker threads (default WEYLCDMA_THREADS or all cores)");
  cmd->add_option("--fzc-p", a->fzc_p, "fzc triple p")->capture_default_str();
  cmd->add_option("--fzc-q", a->fzc_q, "fzc triple q")->capture_default_str();
  cmd->add_option("--fzc-r", a->fzc_r, "fzc triple r (-inf/none drops the term)")->capture_default_str();
  cmd->add_flag("--fixed-sigma", a->fixed_sigma, "random policy: draw one slot set per run instead of per trial");
  cmd->add_option("--out", a->out, "output CSV path (default stdout)");
  cmd->callback([a] {
    CurveSpec curve;
    curve.name = "ber-sweep";
    curve.axis = parse_axis(a->axis);
    SimConfig& c = curve.config;
    c.n_chips = a->n;
    c.n_users = a->k;
    c.e_over_n0 = db_to_linear(a->ebn0_db);
    c.trials = a->trials;
    c.seed = a->seed;
    c.family.kind = parse_family(a->family);
    c.family.fzc_p = a->fzc_p;
    c.family.fzc_q = a->fzc_q;
    c.family.fzc_r = parse_exponent(a->fzc_r);
    c.policy = parse_policy(a->policy);
    c.gamma = std::isnan(a->gamma) ? 1.0 / (2.0 * static_cast<double>(a->n)) : a->gamma;
    c.k_max = a->kmax;
    c.redraw_sigma = !a->fixed_sigma;
    c.threads = a->threads;
    if (a->values.empty())
      curve.values = {curve.axis == SweepAxis::users ? static_cast<double>(a->k) : a->ebn0_db};
    else
      curve.values = parse_values(a->values);
    const auto rows = run_curve(curve);
    Output o(a->out);
    write_sweep_csv(o.stream(), curve, rows);
  });
}

void setup_run_preset(CLI::App& app) {
  auto* cmd = app.add_subcommand("run-preset", "Run a named experiment preset; writes one CSV per curve");
  struct Args {
    std::string preset, out_dir = "results";
    std::size_t trials = kPresetDefaultTrials;
    std::uint64_t seed = 1;
  };
  auto a = std::make_shared<Args>();
  cmd->add_option("--preset", a->preset, "fig1|fig2|fig3|fig4")->required();
  cmd->add_option("--out-dir", a->out_dir, "output directory")->capture_default_str();
  cmd->add_option("--trials", a->trials, "trials U per point")->capture_default_str();
  cmd->add_option("--seed", a->seed, "RNG seed")->capture_default_str();
  cmd->callback([a] {
    const ExperimentPreset preset = make_preset(a->preset, a->trials, a->seed);
    for (const auto& path : run_preset(preset, a->out_dir)) std::cout << "wrote=" << path.string() << "\n";
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weyl spreading sequences and asynchronous CDMA simulation"};
  app.set_version_flag("--version", std::string(weylcdma::kVersion));
  app.set_config("--config", "", "TOML/INI file supplying option values; command-line flags win");
  app.require_subcommand(1);
  setup_generate(app);
  setup_correlate(app);
  setup_solve(app);
  setup_snr(app);
  setup_ber_sweep(app);
  setup_run_preset(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
