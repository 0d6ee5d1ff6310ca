#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <Eigen/Geometry>
#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "abstractpose/io.hpp"
#include "abstractpose/reconstruct.hpp"
#include "abstractpose/sampling.hpp"
#include "cli/commands.hpp"
#include "oracles.hpp"

namespace abstractpose {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir = fs::temp_directory_path() /
          ("abstractpose_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  void TearDown() override { fs::remove_all(dir); }

  void write_poses(const std::vector<Pose>& poses) { io::write_poses(dir / "poses.json", poses); }

  void write_manifest(json extra = json::object()) {
    json m{{"poses", "poses.json"}, {"out_dir", "out"}, {"seed", 11}};
    m.update(extra);
    io::write_file(dir / "manifest.json", m.dump());
  }

  int run(std::vector<std::string> args) {
    out.str("");
    err.str("");
    return cli::run(args, out, err);
  }

  int run_cmd(const std::string& cmd, std::vector<std::string> extra = {}) {
    std::vector<std::string> args{cmd, "--manifest", (dir / "manifest.json").string()};
    args.insert(args.end(), extra.begin(), extra.end());
    return run(args);
  }

  std::vector<fs::path> files(const fs::path& d) const {
    std::vector<fs::path> v;
    if (!fs::exists(d)) return v;
    for (const auto& e : fs::directory_iterator(d)) v.push_back(e.path());
    std::sort(v.begin(), v.end());
    return v;
  }

  json read_json(const fs::path& p) const { return json::parse(io::read_file(p)); }

  static std::vector<Pose> random_poses(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Pose> poses;
    for (int i = 0; i < n; ++i) poses.push_back(sample_pose(rng));
    return poses;
  }

  fs::path dir;
  std::ostringstream out;
  std::ostringstream err;
};

// Camera column 0 sits on +x, so this subject faces it.
Pose t_pose_facing_column_zero() {
  return testing::t_pose().transformed(Eigen::AngleAxisd(-M_PI / 2, Vec3::UnitZ()).toRotationMatrix());
}

TEST_F(Cli, EmptyFrameListWritesNothing) {
  write_poses({});
  write_manifest();
  EXPECT_EQ(run_cmd("render"), 0) << err.str();
  EXPECT_TRUE(files(dir / "out").empty());
  EXPECT_EQ(run_cmd("encode"), 0);
  EXPECT_TRUE(files(dir / "out").empty());
}

TEST_F(Cli, TPoseShowsNineColours) {
  write_poses({t_pose_facing_column_zero()});
  write_manifest({{"camera", "0,2"}});
  ASSERT_EQ(run_cmd("render"), 0) << err.str();
  const auto out_files = files(dir / "out");
  ASSERT_EQ(out_files.size(), 2u);
  const io::Raster rgb = io::decode_pnm(io::read_file(dir / "out" / "frame_000000_cam_00_2.ppm"));
  std::set<std::array<std::uint8_t, 3>> colours;
  for (std::size_t i = 0; i < rgb.data.size(); i += 3) {
    const std::array<std::uint8_t, 3> c{rgb.data[i], rgb.data[i + 1], rgb.data[i + 2]};
    if (c != std::array<std::uint8_t, 3>{0, 0, 0}) colours.insert(c);
  }
  EXPECT_EQ(colours.size(), 9u);
  const io::Raster prov = io::decode_pnm(io::read_file(dir / "out" / "frame_000000_cam_00_2.pgm"));
  std::set<std::uint8_t> ids(prov.data.begin(), prov.data.end());
  EXPECT_EQ(ids.size(), 10u);  // background plus nine parts
}

TEST_F(Cli, SameSeedGivesIdenticalFiles) {
  write_poses(random_poses(6, 1));
  write_manifest({{"cameras_per_frame", 2}});
  ASSERT_EQ(run_cmd("render", {"--out-dir", (dir / "a").string()}), 0);
  ASSERT_EQ(run_cmd("render", {"--out-dir", (dir / "b").string(), "--workers", "4"}), 0);
  ASSERT_EQ(run_cmd("render", {"--out-dir", (dir / "c").string(), "--seed", "12"}), 0);
  const auto a = files(dir / "a");
  const auto b = files(dir / "b");
  ASSERT_EQ(a.size(), 24u);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].filename(), b[i].filename());
    EXPECT_EQ(io::read_file(a[i]), io::read_file(b[i]));
  }
  std::vector<fs::path> names_a, names_c;
  for (const auto& p : a) names_a.push_back(p.filename());
  for (const auto& p : files(dir / "c")) names_c.push_back(p.filename());
  EXPECT_NE(names_a, names_c);
}

TEST_F(Cli, VerticalForwardSkipsTheFrameWithOneWarning) {
  // Lying face up: the forward vector points at the sky.
  const Pose lying = testing::t_pose().transformed(Eigen::AngleAxisd(M_PI / 2, Vec3::UnitX()).toRotationMatrix());
  write_poses({lying});
  write_manifest({{"cameras_per_frame", 3}});
  EXPECT_EQ(run_cmd("encode"), 0);
  EXPECT_NE(out.str().find("1 warning(s)"), std::string::npos) << out.str();
  EXPECT_NE(err.str().find("frame 0 skipped"), std::string::npos);
  EXPECT_TRUE(files(dir / "out").empty());
}

TEST_F(Cli, EncodedHeatmapsRoundTripBitExactly) {
  write_poses(random_poses(3, 2));
  write_manifest();
  ASSERT_EQ(run_cmd("encode"), 0) << err.str();
  int viewpoint = 0, pose = 0;
  for (const auto& f : files(dir / "out")) {
    const std::string bytes = io::read_file(f);
    const Heatmap h = io::decode_heatmap(bytes);
    EXPECT_EQ(io::encode_heatmap(h), bytes);
    if (f.string().ends_with("_viewpoint.phm")) {
      ++viewpoint;
      EXPECT_EQ(h.channels(), 1);
      EXPECT_EQ(h.rows(), 64);
    } else {
      ++pose;
      EXPECT_EQ(h.channels(), 13);
      EXPECT_EQ(h.rows(), 128);
      EXPECT_EQ(h.cols(), 128);
    }
  }
  EXPECT_EQ(viewpoint, 3);
  EXPECT_EQ(pose, 3);
}

TEST_F(Cli, DecodeThenMetricsScoresTheReconstruction) {
  const auto poses = random_poses(4, 3);
  write_poses(poses);
  write_manifest({{"predictions", "out/decoded_poses.json"}});
  ASSERT_EQ(run_cmd("encode"), 0);
  ASSERT_EQ(run_cmd("decode"), 0) << err.str();
  const json decoded = read_json(dir / "out" / "decoded_poses.json");
  ASSERT_EQ(decoded.size(), 4u);
  ASSERT_EQ(run_cmd("metrics"), 0) << err.str();
  const json report = read_json(dir / "out" / "metrics_report.json");
  EXPECT_EQ(report["aggregate"]["frame_count"], 4);
  double bound = 0.0;
  for (const Pose& p : poses) bound = std::max(bound, quantization_bound_mm(decompose_pose(p).lengths, 128));
  EXPECT_LE(report["aggregate"]["rot_mpjpe_mm"].get<double>(), bound);
}

TEST_F(Cli, RoundTripConfigurations) {
  write_poses(random_poses(20, 4));
  write_manifest({{"cameras_per_frame", 2}});
  ASSERT_EQ(run_cmd("roundtrip"), 0) << err.str();
  const json r = read_json(dir / "out" / "roundtrip_report.json");
  const double bound = r["quantization_bound_mm"];
  EXPECT_GT(bound, 10.0);
  const json& c = r["configurations"];
  EXPECT_EQ(c["1"]["aggregate"]["frame_count"], 40);
  for (const auto& f : c["1"]["frames"]) EXPECT_LE(f["rot_mpjpe_mm"].get<double>(), bound);
  EXPECT_EQ(c["2"], c["3"]);
}

TEST_F(Cli, ScaledPresetLengthsAreAbsorbedByProcrustes) {
  write_poses(random_poses(10, 5));
  write_manifest({{"length_scale", 1.05}});
  ASSERT_EQ(run_cmd("roundtrip"), 0) << err.str();
  const json agg = read_json(dir / "out" / "roundtrip_report.json")["configurations"]["1"]["aggregate"];
  EXPECT_LT(agg["pa_mpjpe_mm"].get<double>(), 0.5 * agg["rot_mpjpe_mm"].get<double>());
}

TEST_F(Cli, NoisyPredictionsSeparateConfigurationOne) {
  write_poses(random_poses(10, 6));
  write_manifest({{"noise", 0.5}});
  ASSERT_EQ(run_cmd("roundtrip"), 0) << err.str();
  const json c = read_json(dir / "out" / "roundtrip_report.json")["configurations"];
  EXPECT_GT(c["2"]["aggregate"]["rot_mpjpe_mm"].get<double>(), c["1"]["aggregate"]["rot_mpjpe_mm"].get<double>());
}

TEST_F(Cli, AblationCensusShrinksWithDroppedParts) {
  // Column 16 faces both subjects head-on, so no part hides another.
  write_poses({testing::spread_eagle_pose(), testing::t_pose()});
  write_manifest({{"camera", "16,1"}, {"max_drop", 4}});
  ASSERT_EQ(run_cmd("ablate"), 0) << err.str();
  std::ifstream csv(dir / "out" / "ablation.csv");
  std::string line;
  std::getline(csv, line);
  int rows = 0;
  int previous = 0;
  while (std::getline(csv, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
    const int k = std::stoi(cells[3]);
    const int census = std::stoi(cells[5]);
    EXPECT_EQ(census, 9 - k) << line;
    if (k > 0) EXPECT_LE(census, previous);
    if (k == 3) EXPECT_LE(census, 6);
    previous = census;
    ++rows;
  }
  EXPECT_EQ(rows, 10);
  EXPECT_EQ(read_json(dir / "out" / "ablation_summary.json")["census_increases"], 0);
}

TEST_F(Cli, ExitCodes) {
  EXPECT_EQ(run({"--help"}), 0);
  EXPECT_EQ(run({"paint"}), 1);
  EXPECT_EQ(run({"render"}), 1);  // no pose file
  write_poses(random_poses(1, 7));
  write_manifest();
  EXPECT_EQ(run_cmd("render", {"--camera", "70,0"}), 1);
  EXPECT_EQ(run_cmd("render", {"--camera", "left"}), 1);
  EXPECT_EQ(run_cmd("render", {"--workers", "0"}), 1);
  EXPECT_EQ(run({"render", "--manifest", (dir / "missing.json").string()}), 2);
  write_manifest({{"colour", 3}});
  EXPECT_EQ(run_cmd("render"), 1);
  write_manifest({{"poses", "nowhere.json"}});
  EXPECT_EQ(run_cmd("render"), 2);
  io::write_file(dir / "poses.json", "[{\"joints\": 5}]");
  write_manifest();
  EXPECT_EQ(run_cmd("render"), 1);
}

}  // namespace
}  // namespace abstractpose
