#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <limits>

#include "weylcdma/assignment.hpp"
#include "weylcdma/correlation.hpp"
#include "weylcdma/experiment.hpp"
#include "weylcdma/numeric.hpp"
#include "weylcdma/sequence.hpp"
#include "weylcdma/simulator.hpp"
#include "weylcdma/snr.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
namespace wc = weylcdma;

namespace {

py::array_t<std::complex<double>> to_array(const wc::ChipSequence& seq) {
  // copies the chips into a fresh contiguous buffer
  const std::vector<py::ssize_t> shape{static_cast<py::ssize_t>(seq.size())};
  const std::vector<py::ssize_t> strides{static_cast<py::ssize_t>(sizeof(std::complex<double>))};
  return py::array_t<std::complex<double>>(shape, strides, seq.chips.data());
}

wc::ChipSequence from_array(py::array_t<std::complex<double>, py::array::c_style | py::array::forcecast> a) {
  if (a.ndim() != 1) throw std::invalid_argument("expected a 1-D array of chips");
  wc::ChipSequence seq;
  seq.family_tag = "python";
  seq.chips.assign(a.data(), a.data() + a.size());
  return seq;
}

std::vector<double> pair_values(const wc::PairArray& p) { return p.values(); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Weyl spreading sequences, optimal phase assignment and asynchronous CDMA simulation";
  m.attr("__version__") = wc::kVersion;

  // sequences
  m.def("weyl_sequence",
        [](double rho, double delta, std::size_t n) { return to_array(wc::weyl_sequence({rho, delta, n})); },
        "rho"_a, "delta"_a, "n"_a);
  m.def("fzc_family_sequence",
        [](double m_k, double p, double q, std::optional<double> r, std::size_t n) {
          return to_array(wc::fzc_family_sequence({m_k, p, q, r, n}));
        },
        "m_k"_a, "p"_a, "q"_a, "r"_a = py::none(), "n"_a,
        "r=None drops the n^r term (the -infinity exponent).");
  m.def("optimal_weyl_sequence",
        [](double gamma, std::size_t sigma, std::size_t k_max, std::size_t n) {
          return to_array(wc::optimal_weyl_sequence({gamma, sigma, k_max, n}));
        },
        "gamma"_a, "sigma"_a, "k_max"_a, "n"_a);
  m.def("van_der_corput", &wc::van_der_corput, "index"_a);
  m.def("vdc_assignment", &wc::vdc_assignment, "n_users"_a, "n_chips"_a);
  m.def("gold_code", [](unsigned degree, std::size_t index) { return to_array(wc::gold_code(degree, index)); },
        "degree"_a, "index"_a);

  // correlation
  m.def("aperiodic_c", [](py::array_t<std::complex<double>> x, py::array_t<std::complex<double>> y,
                          long lag) { return wc::aperiodic_c(from_array(x), from_array(y), lag); },
        "x"_a, "y"_a, "lag"_a);
  m.def("periodic_theta", [](py::array_t<std::complex<double>> x, py::array_t<std::complex<double>> y,
                             long lag) { return wc::periodic_theta(from_array(x), from_array(y), lag); },
        "x"_a, "y"_a, "lag"_a);
  m.def("odd_theta_hat", [](py::array_t<std::complex<double>> x, py::array_t<std::complex<double>> y,
                            long lag) { return wc::odd_theta_hat(from_array(x), from_array(y), lag); },
        "x"_a, "y"_a, "lag"_a);
  m.def("r_ik", [](py::array_t<std::complex<double>> x, py::array_t<std::complex<double>> y) {
    return wc::r_ik(from_array(x), from_array(y));
  }, "x"_a, "y"_a);
  m.def("weyl_c_closed_form",
        [](double rho_i, double rho_k, long lag, std::size_t n) {
          const auto r = wc::weyl_c_closed_form(rho_i, rho_k, lag, n);
          return py::make_tuple(r.value, r.degenerate);
        },
        "rho_i"_a, "rho_k"_a, "lag"_a, "n"_a, "Returns (|C|, degenerate).");
  m.def("cross_bound", &wc::cross_bound, "rho_i"_a, "rho_k"_a);
  py::register_exception<wc::DegeneratePhaseError>(m, "DegeneratePhaseError", PyExc_ValueError);

  // assignment
  m.def("circle_distance", &wc::circle_distance, "rho_i"_a, "rho_k"_a);
  m.def("objective", [](std::vector<double> rhos) { return wc::objective({std::move(rhos), 0.0}); },
        "rhos"_a);
  m.def("global_solution",
        [](std::size_t k, double gamma) {
          const auto s = wc::global_solution(k, gamma);
          return py::dict("rho"_a = s.assignment.rhos, "t"_a = pair_values(s.slack),
                          "objective"_a = wc::objective(s.assignment));
        },
        "k"_a, "gamma"_a = 0.0);
  m.def("kkt_check",
        [](std::size_t k, double gamma) {
          const auto s = wc::global_solution(k, gamma);
          const auto mult = wc::construct_multipliers(k, s);
          const auto rep = wc::kkt_report(s, mult);
          return py::dict("residual"_a = rep.total(), "stationarity_rho"_a = rep.stationarity_rho,
                          "stationarity_t"_a = rep.stationarity_t, "complementarity"_a = rep.complementarity,
                          "lambda"_a = pair_values(mult.lambda), "mu"_a = pair_values(mult.mu));
        },
        "k"_a, "gamma"_a = 0.0, "Closed-form solution + constructed multipliers, KKT residual report.");
  m.def("alpha_tilde", &wc::alpha_tilde, "m"_a, "k"_a);
  m.def("verify_optimality_by_sampling",
        [](std::size_t k, std::size_t samples, std::uint64_t seed) {
          const auto r = wc::verify_optimality_by_sampling(k, samples, seed);
          return py::dict("samples"_a = r.samples, "optimum"_a = r.optimum, "min_sampled"_a = r.min_sampled,
                          "optimum_holds"_a = r.optimum_holds);
        },
        "k"_a, "samples"_a, "seed"_a = 1);

  // analytic SNR
  m.def("expected_weyl_snr",
        [](std::size_t sigma, double gamma, std::size_t k, std::size_t n, double ebn0_db) {
          return wc::expected_weyl_snr(sigma, gamma, wc::LinkBudget::from_db(ebn0_db, n, k));
        },
        "sigma"_a, "gamma"_a, "k"_a, "n"_a, "ebn0_db"_a);
  m.def("snr_lower_bound",
        [](std::size_t k, std::size_t n, double ebn0_db) {
          return wc::snr_lower_bound(wc::LinkBudget::from_db(ebn0_db, n, k));
        },
        "k"_a, "n"_a, "ebn0_db"_a);
  m.def("pursley_snr",
        [](std::size_t user, std::vector<py::array_t<std::complex<double>>> family, double ebn0_db) {
          std::vector<wc::ChipSequence> seqs;
          for (auto& a : family) seqs.push_back(from_array(a));
          if (seqs.empty()) throw std::invalid_argument("empty family");
          return wc::pursley_snr(user, seqs, wc::LinkBudget::from_db(ebn0_db, seqs[0].size(), seqs.size()));
        },
        "user"_a, "family"_a, "ebn0_db"_a);
  m.def("csc2_sum", &wc::csc2_sum, "n"_a);
  m.def("r_ik_closed", &wc::r_ik_closed, "sigma_i"_a, "sigma_k"_a, "gamma"_a, "n"_a);

  // simulation
  m.def("run_ber",
        [](std::size_t k, std::size_t n, double ebn0_db, std::size_t trials, std::uint64_t seed,
           const std::string& family, const std::string& policy, std::optional<double> gamma,
           std::size_t k_max, bool redraw_sigma, unsigned threads) {
          wc::SimConfig c;
          c.n_users = k;
          c.n_chips = n;
          c.e_over_n0 = std::isinf(ebn0_db) ? std::numeric_limits<double>::infinity() : wc::db_to_linear(ebn0_db);
          c.trials = trials;
          c.seed = seed;
          c.family.kind = wc::parse_family(family);
          c.policy = wc::parse_policy(policy);
          c.gamma = gamma.value_or(1.0 / (2.0 * static_cast<double>(n)));
          c.k_max = k_max;
          c.redraw_sigma = redraw_sigma;
          c.threads = threads;
          wc::BerResult r;
          {
            py::gil_scoped_release release;
            r = wc::run_ber(c);
          }
          return py::dict("mean_ber"_a = r.mean_ber, "wilson_lo"_a = r.wilson_lo, "wilson_hi"_a = r.wilson_hi,
                          "bits"_a = r.total_bits, "errors"_a = r.total_errors,
                          "per_user_ber"_a = r.per_user_ber, "noise_variance"_a = r.noise_variance);
        },
        "k"_a, "n"_a, "ebn0_db"_a, "trials"_a, "seed"_a = 1, "family"_a = "weyl", "policy"_a = "random",
        "gamma"_a = py::none(), "k_max"_a = 0, "redraw_sigma"_a = true, "threads"_a = 0,
        "Monte-Carlo BER; ebn0_db=inf disables noise. gamma defaults to 1/(2N).");
}
