#include "weylcdma/experiment.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "weylcdma/numeric.hpp"

namespace weylcdma {

namespace {

// shortest text that parses back to the same double
std::string fmt_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::vector<double> range(double first, double last, double step) {
  std::vector<double> v;
  for (double x = first; x <= last + 1e-9; x += step) v.push_back(x);
  return v;
}

SimConfig base_config(std::size_t n, std::size_t k, double ebn0_db, std::size_t trials,
                      std::uint64_t seed) {
  SimConfig c;
  c.n_chips = n;
  c.n_users = k;
  c.e_over_n0 = db_to_linear(ebn0_db);
  c.trials = trials;
  c.seed = seed;
  return c;
}

CurveSpec curve(std::string name, SimConfig cfg, FamilyKind kind, double gamma, std::size_t k_max,
                AssignmentPolicy policy, SweepAxis axis, std::vector<double> values) {
  cfg.family.kind = kind;
  cfg.gamma = gamma;
  cfg.k_max = k_max;
  cfg.policy = policy;
  return {std::move(name), cfg, axis, std::move(values)};
}

}  // namespace

std::vector<std::string> preset_names() { return {"fig1", "fig2", "fig3", "fig4"}; }

ExperimentPreset make_preset(const std::string& name, std::size_t trials, std::uint64_t seed) {
  using enum FamilyKind;
  const auto random = AssignmentPolicy::random_distinct;
  ExperimentPreset p;
  p.name = name;

  if (name == "fig1") {
    const std::size_t n = 31;
    const double gamma = 1.0 / (2.0 * n);
    const auto users = range(2, 30, 1);
    const SimConfig base = base_config(n, 2, 25.0, trials, seed);
    p.description = "BER vs users, N=31, E/N0=25 dB, gamma=1/(2N)";
    p.curves.push_back(curve("gold", base, gold, gamma, 0, random, SweepAxis::users, users));
    p.curves.push_back(curve("weyl", base, weyl, gamma, n, random, SweepAxis::users, users));
    p.curves.push_back(curve("optimal", base, optimal, gamma, 0, random, SweepAxis::users, users));
    p.curves.push_back(curve("fzc", base, fzc, gamma, 0, random, SweepAxis::users, users));
  } else if (name == "fig2") {
    const std::size_t n = 31;
    const std::size_t k = 7;
    const double g_n = 1.0 / (2.0 * n);
    const double g_k = 1.0 / (2.0 * k);
    const auto ebn0 = range(0, 25, 5);
    const SimConfig base = base_config(n, k, 0.0, trials, seed);
    p.description = "BER vs E/N0, N=31, K=7, gamma in {1/(2N), 1/(2K)}";
    p.curves.push_back(curve("gold", base, gold, g_n, 0, random, SweepAxis::ebn0, ebn0));
    p.curves.push_back(curve("fzc", base, fzc, g_n, 0, random, SweepAxis::ebn0, ebn0));
    p.curves.push_back(curve("weyl_g2n", base, weyl, g_n, n, random, SweepAxis::ebn0, ebn0));
    p.curves.push_back(curve("weyl_g2k", base, weyl, g_k, n, random, SweepAxis::ebn0, ebn0));
    p.curves.push_back(curve("optimal_g2n", base, optimal, g_n, 0, random, SweepAxis::ebn0, ebn0));
    p.curves.push_back(curve("optimal_g2k", base, optimal, g_k, 0, random, SweepAxis::ebn0, ebn0));
  } else if (name == "fig3") {
    const std::size_t n = 32;
    const double gamma = 1.0 / (2.0 * n);
    const auto users = range(2, 32, 1);
    const SimConfig base = base_config(n, 2, 25.0, trials, seed);
    p.description = "BER vs users, N=32, E/N0=25 dB, random vs van der Corput sigma";
    p.curves.push_back(curve("weyl_random", base, weyl, gamma, n, random, SweepAxis::users, users));
    p.curves.push_back(curve("weyl_vdc", base, weyl, gamma, n, AssignmentPolicy::van_der_corput,
                             SweepAxis::users, users));
  } else if (name == "fig4") {
    const std::size_t n = 30;
    const std::size_t k = 7;
    const double g_n = 1.0 / (2.0 * n);
    const double g_k = 1.0 / (2.0 * k);
    const auto ebn0 = range(0, 25, 5);
    const SimConfig base = base_config(n, k, 0.0, trials, seed);
    p.description = "BER vs E/N0, N=30, K=7, K_max in {30, 14}";
    p.curves.push_back(curve("weyl_k30_g2n", base, weyl, g_n, 30, random, SweepAxis::ebn0, ebn0));
    p.curves.push_back(curve("weyl_k30_g2k", base, weyl, g_k, 30, random, SweepAxis::ebn0, ebn0));
    p.curves.push_back(curve("weyl_k14_g2n", base, weyl, g_n, 14, random, SweepAxis::ebn0, ebn0));
    p.curves.push_back(curve("weyl_k14_g2k", base, weyl, g_k, 14, random, SweepAxis::ebn0, ebn0));
    p.curves.push_back(curve("optimal_g2n", base, optimal, g_n, 0, random, SweepAxis::ebn0, ebn0));
    p.curves.push_back(curve("optimal_g2k", base, optimal, g_k, 0, random, SweepAxis::ebn0, ebn0));
  } else {
    throw std::invalid_argument("unknown preset '" + name + "' (fig1|fig2|fig3|fig4)");
  }
  return p;
}

std::string describe_curve(const CurveSpec& c) {
  const SimConfig& s = c.config;
  std::ostringstream out;
  out << "curve=" << c.name << " axis=" << to_string(c.axis) << " values=";
  for (std::size_t i = 0; i < c.values.size(); ++i) out << (i ? ";" : "") << fmt_double(c.values[i]);
  out << " n=" << s.n_chips << " k=" << s.n_users << " ebn0_db=" << fmt_double(10.0 * std::log10(s.e_over_n0))
      << " trials=" << s.trials << " seed=" << s.seed << " family=" << to_string(s.family.kind)
      << " policy=" << to_string(s.policy) << " gamma=" << fmt_double(s.gamma)
      << " kmax=" << s.k_max << " redraw_sigma=" << (s.redraw_sigma ? 1 : 0);
  if (s.family.kind == FamilyKind::fzc) {
    out << " fzc_triple=" << fmt_double(s.family.fzc_p) << ";" << fmt_double(s.family.fzc_q) << ";"
        << (s.family.fzc_r ? fmt_double(*s.family.fzc_r) : std::string("-inf"));
  }
  return out.str();
}

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void write_sweep_csv(std::ostream& out, const CurveSpec& curve, const std::vector<SweepRow>& rows) {
  const std::string desc = describe_curve(curve);
  out << "# weylcdma " << kVersion << " config_hash=" << fnv1a_hex(desc) << " " << desc << "\n";
  out << "axis_value,family,policy,gamma,kmax,mean_ber,wilson_lo,wilson_hi,bits\n";
  for (const auto& r : rows) {
    out << fmt_double(r.axis_value) << ',' << r.family << ',' << r.policy << ','
        << fmt_double(r.gamma) << ',' << r.kmax << ',' << fmt_double(r.mean_ber) << ','
        << fmt_double(r.wilson_lo) << ',' << fmt_double(r.wilson_hi) << ',' << r.bits << "\n";
  }
}

std::vector<SweepRow> run_curve(const CurveSpec& curve) {
  return sweep(curve.config, curve.axis, curve.values);
}

std::vector<std::filesystem::path> run_preset(const ExperimentPreset& preset,
                                              const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + out_dir.string() + ": " + ec.message());

  std::vector<std::filesystem::path> written;
  for (const auto& c : preset.curves) {
    const auto path = out_dir / (preset.name + "_" + c.name + ".csv");
    std::ofstream file(path);
    if (!file) throw std::runtime_error("cannot write " + path.string());
    write_sweep_csv(file, c, run_curve(c));
    if (!file) throw std::runtime_error("write failed for " + path.string());
    written.push_back(path);
  }
  return written;
}

}  // namespace weylcdma
