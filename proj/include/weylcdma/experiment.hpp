#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "weylcdma/simulator.hpp"

namespace weylcdma {

inline constexpr const char* kVersion = "0.1.0";

/// One BER curve: a config template swept along one axis.
struct CurveSpec {
  std::string name;
  SimConfig config;
  SweepAxis axis = SweepAxis::users;
  std::vector<double> values;
};

struct ExperimentPreset {
  std::string name;
  std::string description;
  std::vector<CurveSpec> curves;
};

inline constexpr std::size_t kPresetDefaultTrials = 20000;

/// fig1: N=31, 25 dB, gamma=1/(2N), K = 2..30; gold, weyl (K_max=N), optimal, fzc {1,1,1.275}
/// fig2: N=31, K=7, 0..25 dB; weyl and optimal at gamma in {1/(2N), 1/(2K)}, gold, fzc
/// fig3: N=32, 25 dB, gamma=1/(2N), K = 2..32; weyl with random vs van der Corput sigma
/// fig4: N=30, K=7, 0..25 dB; weyl (K_max, gamma) in {30,14} x {1/(2N), 1/(2K)}, optimal at both gammas
ExperimentPreset make_preset(const std::string& name, std::size_t trials = kPresetDefaultTrials,
                             std::uint64_t seed = 1);
std::vector<std::string> preset_names();

/// Canonical key=value description of a curve; every effective parameter appears.
std::string describe_curve(const CurveSpec& curve);

/// 64-bit FNV-1a of `text`, as 16 hex digits.
std::string fnv1a_hex(const std::string& text);

/// CSV schema: axis_value,family,policy,gamma,kmax,mean_ber,wilson_lo,wilson_hi,bits.
/// The first line is a comment carrying the version, config hash and every
/// parameter of `curve`.
void write_sweep_csv(std::ostream& out, const CurveSpec& curve, const std::vector<SweepRow>& rows);

std::vector<SweepRow> run_curve(const CurveSpec& curve);

/// Runs every curve of the preset and writes <out_dir>/<preset>_<curve>.csv.
/// Returns the paths written.
std::vector<std::filesystem::path> run_preset(const ExperimentPreset& preset,
                                              const std::filesystem::path& out_dir);

}  // namespace weylcdma
