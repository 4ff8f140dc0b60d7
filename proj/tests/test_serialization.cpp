#include <gtest/gtest.h>

#include <filesystem>
#include <random>
#include <sstream>

#include "qsurrogate/errors.hpp"
#include "qsurrogate/experiments.hpp"
#include "qsurrogate/serialization.hpp"
#include "support.hpp"

using namespace qsur;
namespace fs = std::filesystem;

namespace {

struct Built {
  TaylorSurrogate taylor;
  KernelSurrogate kernel;
};

Built build_both() {
  std::mt19937_64 rng(77);
  const auto c = qsur::testing::random_circuit(3, 4, rng);
  const auto obs = qsur::testing::random_observable(3, 3, rng);
  GridOracle oracle(c, obs);
  return {build_taylor(oracle, 3), build_kernel_surrogate(oracle, 2)};
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "qsur_serialization_test";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST(Serialization, JsonShapes) {
  const auto b = build_both();
  const auto jt = to_json(b.taylor);
  EXPECT_EQ(jt["kind"], "taylor-v1");
  EXPECT_EQ(jt["m"], 4);
  EXPECT_EQ(jt["L"], 3);
  EXPECT_EQ(jt["coeffs"].size(), 35u);
  EXPECT_EQ(jt["coeffs"][1]["alpha"], nlohmann::json::array({1, 0, 0, 0}));
  const auto jk = to_json(b.kernel);
  EXPECT_EQ(jk["kind"], "kernel-v1");
  EXPECT_EQ(jk["scaling"], "ktilde");
  EXPECT_EQ(jk["nodes"].size(), 33u);
  EXPECT_EQ(jk["nodes"][1], nlohmann::json::array({3, 0, 0, 0}));
  EXPECT_EQ(jk["eta"].size(), 33u);
}

TEST(Serialization, RoundTripIsBitwise) {
  const auto b = build_both();
  std::mt19937_64 rng(1);
  for (const Surrogate& s : {Surrogate{b.taylor}, Surrogate{b.kernel}}) {
    const auto path = scratch("roundtrip.json").string();
    save_surrogate(path, s);
    const auto loaded = load_surrogate(path);
    EXPECT_EQ(dump_surrogate(loaded), dump_surrogate(s));
    for (int rep = 0; rep < 50; ++rep) {
      const auto theta = qsur::testing::random_theta(4, rng);
      EXPECT_EQ(eval_surrogate(loaded, theta), eval_surrogate(s, theta));
    }
  }
  EXPECT_TRUE(std::get<TaylorSurrogate>(surrogate_from_json(to_json(b.taylor))) == b.taylor);
  EXPECT_TRUE(std::get<KernelSurrogate>(surrogate_from_json(to_json(b.kernel))) == b.kernel);
}

TEST(Serialization, RejectsMalformedInput) {
  using nlohmann::json;
  EXPECT_THROW(surrogate_from_json(json::array()), ValidationError);
  EXPECT_THROW(surrogate_from_json(json{{"kind", "other"}, {"m", 1}, {"L", 0}}), ValidationError);
  EXPECT_THROW(surrogate_from_json(json{{"kind", "taylor-v1"}, {"m", 1}}), ValidationError);
  auto j = to_json(build_both().kernel);
  j["nodes"][0] = json::array({0, 0, 0, 7});
  EXPECT_THROW(surrogate_from_json(j), ValidationError);
  const auto path = scratch("broken.json").string();
  write_text_file(path, "{ not json");
  EXPECT_THROW(load_surrogate(path), ValidationError);
  EXPECT_THROW(load_surrogate(scratch("missing.json").string() + ".none"), IoError);
}

TEST(Csv, NumberFormatting) {
  EXPECT_EQ(format_g17(0.1), "0.10000000000000001");
  EXPECT_EQ(format_g17(1.0), "1");
  EXPECT_EQ(format_g17(-1.0 / 3.0), "-0.33333333333333331");
}

TEST(Csv, ScanAndMcSchemas) {
  std::ostringstream scan;
  std::vector<ScanRow> rows(2);
  rows[0] = {0.0, 1.0, 0.5, 0.5, std::nullopt};
  rows[1] = {1.0, 2.0, 2.0, 0.0, 0.25};
  write_scan_csv(scan, rows);
  EXPECT_EQ(scan.str(), "t,f,f_tilde,abs_diff,bound\n0,1,0.5,0.5,\n1,2,2,0,0.25\n");

  std::ostringstream mc;
  MCResult r;
  r.norm_f = 2.0;
  r.norm_diff = 0.5;
  r.ratio = 0.25;
  r.samples_f = 10;
  r.samples_diff = 5;
  r.seed = 9;
  write_mc_csv(mc, std::vector<MCRow>{{"kernel", 2, 8.0, r}});
  EXPECT_EQ(mc.str(),
            "method,L,k,N_f,N_diff,seed,norm_f,sem_f,norm_diff,sem_diff,ratio\n"
            "kernel,2,8,10,5,9,2,0,0.5,0,0.25\n");
}

TEST(Files, ReadWriteErrors) {
  const auto path = scratch("text.txt").string();
  write_text_file(path, "abc\n");
  EXPECT_EQ(read_text_file(path), "abc\n");
  EXPECT_THROW(read_text_file(path + ".missing"), IoError);
  EXPECT_THROW(write_text_file((scratch("nodir") / "x" / "y.txt").string(), "z"), IoError);
}
