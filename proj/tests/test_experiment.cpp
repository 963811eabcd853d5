#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "weylcdma/experiment.hpp"

using namespace weylcdma;

TEST_CASE("fnv1a reference vectors") {
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
  CHECK(fnv1a_hex("foobar") == "85944171f73967e8");
}

TEST_CASE("presets") {
  CHECK(preset_names().size() == 4);
  for (const auto& name : preset_names()) {
    const auto p = make_preset(name, 100, 3);
    CHECK_FALSE(p.curves.empty());
    for (const auto& c : p.curves) {
      CHECK(c.config.trials == 100);
      CHECK(c.config.seed == 3);
      CHECK_FALSE(c.values.empty());
    }
  }
  const auto fig1 = make_preset("fig1");
  CHECK(fig1.curves.size() == 4);
  CHECK(fig1.curves[0].config.n_chips == 31);
  CHECK(fig1.curves[0].config.trials == kPresetDefaultTrials);
  const auto fig4 = make_preset("fig4");
  CHECK(fig4.curves[2].config.k_max == 14);
  CHECK(fig4.curves[1].config.gamma == doctest::Approx(1.0 / 14.0));
  CHECK_THROWS_AS(make_preset("fig9"), std::invalid_argument);
}

TEST_CASE("describe_curve captures every parameter and changes the hash") {
  auto c = make_preset("fig2", 100).curves[1];
  const std::string d = describe_curve(c);
  for (const char* key : {"curve=", "axis=ebn0", "n=31", "k=7", "trials=100", "seed=1", "family=fzc",
                          "policy=random", "gamma=", "kmax=", "fzc_triple=1;1;1.275"})
    CHECK_MESSAGE(d.find(key) != std::string::npos, key);
  c.config.seed = 2;
  CHECK(fnv1a_hex(describe_curve(c)) != fnv1a_hex(d));
}

TEST_CASE("sweep CSV layout") {
  auto c = make_preset("fig3", 50).curves[1];
  c.values = {2, 4};
  const auto rows = run_curve(c);
  std::ostringstream out;
  write_sweep_csv(out, c, rows);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line.rfind("# weylcdma 0.1.0 config_hash=", 0) == 0);
  CHECK(line.find("policy=vdc") != std::string::npos);
  std::getline(in, line);
  CHECK(line == "axis_value,family,policy,gamma,kmax,mean_ber,wilson_lo,wilson_hi,bits");
  std::getline(in, line);
  CHECK(line.rfind("2,weyl,vdc,0.015625,32,", 0) == 0);
  std::getline(in, line);
  CHECK(line.rfind("4,weyl,vdc,", 0) == 0);
  CHECK(line.substr(line.rfind(',') + 1) == "200");
}

TEST_CASE("run_preset writes one file per curve and is reproducible") {
  auto p = make_preset("fig4", 30);
  for (auto& c : p.curves) c.values = {5};
  const auto dir = std::filesystem::temp_directory_path() / "weylcdma_preset_test";
  std::filesystem::remove_all(dir);
  const auto files = run_preset(p, dir);
  CHECK(files.size() == p.curves.size());
  std::ifstream first(files[0]);
  std::stringstream a;
  a << first.rdbuf();
  const auto again = run_preset(p, dir);
  std::ifstream second(again[0]);
  std::stringstream b;
  b << second.rdbuf();
  CHECK(a.str() == b.str());
  CHECK(files[0].filename() == "fig4_weyl_k30_g2n.csv");
  std::filesystem::remove_all(dir);
}
