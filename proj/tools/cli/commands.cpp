#include "cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <fstream>
#include <map>
#include <regex>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "abstractpose/io.hpp"
#include "abstractpose/metrics.hpp"
#include "abstractpose/pipeline.hpp"
#include "abstractpose/pose_codec.hpp"
#include "abstractpose/renderer.hpp"
#include "abstractpose/sampling.hpp"
#include "abstractpose/viewpoint_codec.hpp"

namespace abstractpose::cli {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

std::string file_stem(std::size_t frame, CameraIndex cam) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "frame_%06zu_cam_%02d_%d", frame, cam.col, cam.row);
  return buf;
}

std::string frame_warning(std::size_t frame, const std::string& what) {
  return "frame " + std::to_string(frame) + " skipped: " + what;
}

// Problems confined to one frame; anything else aborts the command.
bool is_frame_error(const Error& e) {
  return e.code() != ErrorCode::kIo && e.code() != ErrorCode::kParse;
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) fail(ErrorCode::kIo, "cannot create " + dir.string() + ": " + ec.message());
}

// fn(i) for every i < n on up to `workers` threads. Exceptions are rethrown
// after all workers stop, lowest index first.
template <class Fn>
void parallel_for(std::size_t n, int workers, Fn&& fn) {
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto loop = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::min<std::size_t>(static_cast<std::size_t>(workers), n);
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(loop);
    loop();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::vector<Pose> load_poses(const Manifest& m) {
  if (m.poses.empty()) fail(ErrorCode::kInvalidArgument, "no pose file given (manifest key \"poses\")");
  return io::read_poses(m.poses);
}

std::vector<CameraIndex> pick_cameras(const Manifest& m, const SyntheticEnvironment& env, std::mt19937_64& rng) {
  if (m.camera) return {*m.camera};
  std::vector<CameraIndex> cams;
  for (int k = 0; k < m.cameras_per_frame; ++k) cams.push_back(sample_camera(rng, env));
  return cams;
}

std::array<double, kNumBones> lengths_for(const Manifest& m, const std::array<double, kNumBones>& matched) {
  std::array<double, kNumBones> out = matched;
  if (m.length_mode == LengthMode::kNominal) out = nominal_bone_lengths();
  if (m.length_mode == LengthMode::kExplicit) out = m.bone_lengths;
  for (double& l : out) l *= m.length_scale;
  return out;
}

json vec_json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }
json index_json(CameraIndex c) { return json::array({c.col, c.row}); }

// Per-frame slot filled by workers and merged in frame order.
struct FrameSlot {
  bool ok = false;
  std::size_t outputs = 0;
  std::vector<std::string> warnings;
};

CommandResult merge(const std::vector<FrameSlot>& slots) {
  CommandResult r;
  for (const FrameSlot& s : slots) {
    r.frames += s.ok;
    r.outputs += s.outputs;
    r.warnings.insert(r.warnings.end(), s.warnings.begin(), s.warnings.end());
  }
  return r;
}

// Fisher-Yates driven by uniform_index so the order is the same on every
// standard library.
std::vector<int> part_permutation(int n, std::mt19937_64& rng) {
  std::vector<int> p(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = i;
  for (int i = n - 1; i > 0; --i) std::swap(p[static_cast<std::size_t>(i)], p[static_cast<std::size_t>(uniform_index(rng, i + 1))]);
  return p;
}

}  // namespace

CommandResult cmd_render(const Manifest& m) {
  const auto poses = load_poses(m);
  const SyntheticEnvironment env(m.env);
  ensure_dir(m.out_dir);
  std::vector<FrameSlot> slots(poses.size());
  parallel_for(poses.size(), m.workers, [&](std::size_t f) {
    std::mt19937_64 rng = frame_rng(m.seed, f);
    FrameSlot& slot = slots[f];
    try {
      validate_pose(poses[f]);
      for (const CameraIndex cam : pick_cameras(m, env, rng)) {
        const AbstractImage img = render_abstract(place_in_camera(env, cam, poses[f]), env.intrinsics(),
                                                  config_for_camera(env, cam, m.render));
        const std::string stem = file_stem(f, cam);
        io::write_ppm(m.out_dir / (stem + ".ppm"), img);
        io::write_pgm(m.out_dir / (stem + ".pgm"), img);
        slot.outputs += 2;
      }
      slot.ok = true;
    } catch (const Error& e) {
      if (!is_frame_error(e)) throw;
      slot.warnings.push_back(frame_warning(f, e.what()));
    }
  });
  return merge(slots);
}

CommandResult cmd_encode(const Manifest& m) {
  const auto poses = load_poses(m);
  const SyntheticEnvironment env(m.env);
  ensure_dir(m.out_dir);
  std::vector<FrameSlot> slots(poses.size());
  parallel_for(poses.size(), m.workers, [&](std::size_t f) {
    std::mt19937_64 rng = frame_rng(m.seed, f);
    FrameSlot& slot = slots[f];
    try {
      validate_pose(poses[f]);
      // Fails once per frame for a vertical forward vector.
      rotate_camera_array(env, forward_vector(poses[f]));
      for (const CameraIndex cam : pick_cameras(m, env, rng)) {
        const EncodedFrame enc = encode_frame(poses[f], cam, env, m.codec);
        const std::string stem = file_stem(f, cam);
        io::write_heatmap(m.out_dir / (stem + "_viewpoint.phm"), enc.viewpoint);
        io::write_heatmap(m.out_dir / (stem + "_pose.phm"), enc.pose);
        slot.outputs += 2;
      }
      slot.ok = true;
    } catch (const Error& e) {
      if (!is_frame_error(e)) throw;
      slot.warnings.push_back(frame_warning(f, e.what()));
    }
  });
  return merge(slots);
}

CommandResult cmd_decode(const Manifest& m) {
  const fs::path dir = m.heatmap_dir.empty() ? m.out_dir : m.heatmap_dir;
  if (!fs::is_directory(dir)) fail(ErrorCode::kIo, "heatmap directory " + dir.string() + " not found");

  struct Item {
    std::size_t frame;
    CameraIndex camera;
    fs::path viewpoint;
    fs::path pose;
  };
  std::vector<Item> items;
  const std::regex pattern(R"(frame_(\d+)_cam_(\d+)_(\d+)_viewpoint\.phm)");
  for (const auto& entry : fs::directory_iterator(dir)) {
    std::smatch match;
    const std::string name = entry.path().filename().string();
    if (!std::regex_match(name, match, pattern)) continue;
    const std::string stem = name.substr(0, name.size() - std::string("_viewpoint.phm").size());
    items.push_back({std::stoul(match[1]), {std::stoi(match[2]), std::stoi(match[3])}, entry.path(),
                     dir / (stem + "_pose.phm")});
  }
  std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
    return std::tie(a.frame, a.camera) < std::tie(b.frame, b.camera);
  });

  // Matched lengths need the ground truth; without a pose file the nominal
  // skeleton stands in.
  std::vector<Pose> truth;
  if (m.length_mode == LengthMode::kMatched && !m.poses.empty()) truth = io::read_poses(m.poses);

  const SyntheticEnvironment env(m.env);
  std::vector<FrameSlot> slots(items.size());
  std::vector<json> decoded(items.size());
  parallel_for(items.size(), m.workers, [&](std::size_t i) {
    const Item& item = items[i];
    FrameSlot& slot = slots[i];
    try {
      if (!fs::exists(item.pose)) fail(ErrorCode::kInvalidArgument, "missing " + item.pose.filename().string());
      const CameraIndex vp = decode_viewpoint(io::read_heatmap(item.viewpoint), env.config());
      const auto bones = decode_pose(io::read_heatmap(item.pose));
      std::array<double, kNumBones> matched = nominal_bone_lengths();
      if (!truth.empty()) {
        if (item.frame >= truth.size()) fail(ErrorCode::kInvalidArgument, "no ground-truth pose for this frame");
        matched = decompose_pose(truth[item.frame]).lengths;
      }
      const Reconstruction r = reconstruct(vp, bones, env, lengths_for(m, matched));
      json joints = json::array();
      for (const Vec3& j : r.pose.joints) joints.push_back(vec_json(j));
      decoded[i] = json{{"frame", item.frame},
                        {"camera", index_json(item.camera)},
                        {"viewpoint", index_json(vp)},
                        {"camera_indicator", vec_json(r.camera_indicator)},
                        {"joints", joints}};
      slot.ok = true;
    } catch (const Error& e) {
      if (!is_frame_error(e)) throw;
      slot.warnings.push_back(frame_warning(item.frame, e.what()));
    }
  });

  json out = json::array();
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (slots[i].ok) out.push_back(std::move(decoded[i]));
  }
  ensure_dir(m.out_dir);
  io::write_file(m.out_dir / "decoded_poses.json", out.dump(1));
  CommandResult r = merge(slots);
  r.outputs = 1;
  return r;
}

CommandResult cmd_roundtrip(const Manifest& m) {
  const auto poses = load_poses(m);
  const SyntheticEnvironment env(m.env);

  struct Slot {
    FrameSlot base;
    std::array<std::vector<FrameErrors>, 3> errors;
    std::array<std::vector<SkippedFrame>, 3> skipped;
    double bound = 0.0;
  };
  std::vector<Slot> slots(poses.size());
  parallel_for(poses.size(), m.workers, [&](std::size_t f) {
    std::mt19937_64 rng = frame_rng(m.seed, f);
    Slot& slot = slots[f];
    try {
      validate_pose(poses[f]);
      rotate_camera_array(env, forward_vector(poses[f]));
      for (const CameraIndex cam : pick_cameras(m, env, rng)) {
        const EncodedFrame enc = encode_frame(poses[f], cam, env, m.codec);
        const PredictedMaps predicted = predict_maps(enc, m.noise, rng);
        const auto lengths = lengths_for(m, enc.bones.lengths);
        slot.bound = std::max(slot.bound, quantization_bound_mm(enc.bones.lengths, m.codec.pose_map_size));
        for (std::size_t c = 0; c < kAllConfigurations.size(); ++c) {
          try {
            const Reconstruction r = reconstruct_frame(enc, predicted, kAllConfigurations[c], env, lengths);
            slot.errors[c].push_back({f, evaluate_pose(r.pose, poses[f])});
          } catch (const Error& e) {
            if (!is_frame_error(e)) throw;
            slot.skipped[c].push_back({f, e.what()});
          }
        }
      }
      slot.base.ok = true;
    } catch (const Error& e) {
      if (!is_frame_error(e)) throw;
      slot.base.warnings.push_back(frame_warning(f, e.what()));
    }
  });

  std::vector<FrameSlot> bases;
  std::array<std::vector<FrameErrors>, 3> errors;
  std::array<std::vector<SkippedFrame>, 3> skipped;
  double bound = 0.0;
  for (Slot& s : slots) {
    bases.push_back(s.base);
    bound = std::max(bound, s.bound);
    for (std::size_t c = 0; c < 3; ++c) {
      errors[c].insert(errors[c].end(), s.errors[c].begin(), s.errors[c].end());
      skipped[c].insert(skipped[c].end(), s.skipped[c].begin(), s.skipped[c].end());
    }
  }
  json configs = json::object();
  for (std::size_t c = 0; c < 3; ++c) {
    const EvalReport report = summarize(errors[c], skipped[c]);
    configs[std::to_string(static_cast<int>(kAllConfigurations[c]))] = json::parse(io::eval_report_to_json(report));
  }
  const json doc{{"quantization_bound_mm", bound},
                 {"noise", m.noise},
                 {"length_scale", m.length_scale},
                 {"configurations", configs}};
  ensure_dir(m.out_dir);
  io::write_file(m.out_dir / "roundtrip_report.json", doc.dump(2));
  CommandResult r = merge(bases);
  r.outputs = 1;
  return r;
}

CommandResult cmd_metrics(const Manifest& m) {
  if (m.predictions.empty()) fail(ErrorCode::kInvalidArgument, "no predictions file given (manifest key \"predictions\")");
  const auto truth = load_poses(m);
  const std::string text = io::read_file(m.predictions);
  const auto preds = io::poses_from_json(text);
  const json doc = json::parse(text);

  std::vector<FrameErrors> frames;
  std::vector<SkippedFrame> skipped;
  CommandResult r;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    const json& entry = doc.at(i);
    const std::size_t f = entry.contains("frame") ? entry.at("frame").get<std::size_t>() : i;
    if (f >= truth.size()) {
      fail(ErrorCode::kInvalidArgument, "prediction " + std::to_string(i) + " refers to missing frame " + std::to_string(f));
    }
    try {
      frames.push_back({f, evaluate_pose(preds[i], truth[f])});
      ++r.frames;
    } catch (const Error& e) {
      if (!is_frame_error(e)) throw;
      skipped.push_back({f, e.what()});
      r.warnings.push_back(frame_warning(f, e.what()));
    }
  }
  ensure_dir(m.out_dir);
  io::write_file(m.out_dir / "metrics_report.json", io::eval_report_to_json(summarize(frames, skipped)));
  r.outputs = 1;
  return r;
}

CommandResult cmd_ablate(const Manifest& m) {
  const auto poses = load_poses(m);
  const SyntheticEnvironment env(m.env);
  const int parts = m.render.part_count();

  struct Row {
    std::size_t frame;
    CameraIndex camera;
    int k;
    std::vector<int> dropped;
    int census;
    std::vector<int> undecodable;
  };
  struct Slot {
    FrameSlot base;
    std::vector<Row> rows;
  };
  std::vector<Slot> slots(poses.size());
  parallel_for(poses.size(), m.workers, [&](std::size_t f) {
    std::mt19937_64 rng = frame_rng(m.seed, f);
    Slot& slot = slots[f];
    try {
      validate_pose(poses[f]);
      const BoneDecomposition bones = decompose_pose(poses[f]);
      for (const CameraIndex cam : pick_cameras(m, env, rng)) {
        const Pose pose_cam = place_in_camera(env, cam, poses[f]);
        const RenderConfig cfg = config_for_camera(env, cam, m.render);
        const Heatmap maps = encode_pose(bones_to_camera_frame(bones, env.rotation(cam)), m.codec);
        const std::vector<int> order = part_permutation(parts, rng);
        for (int k = 0; k <= m.max_drop; ++k) {
          Row row{f, cam, k, {order.begin(), order.begin() + k}, 0, {}};
          std::sort(row.dropped.begin(), row.dropped.end());
          PartSet drop;
          for (int p : row.dropped) drop.set(static_cast<std::size_t>(p));
          row.census = render_with_missing_parts(pose_cam, env.intrinsics(), cfg, drop).color_census();
          // A dropped part leaves its bones without a heatmap response.
          Heatmap partial = maps;
          for (int b = 0; b < kNumBones; ++b) {
            if (drop.test(static_cast<std::size_t>(index_of(part_of_bone(b, cfg.separate_head))))) {
              for (float& v : partial.channel(b)) v = 0.0f;
            }
          }
          const auto decoded = decode_pose_partial(partial);
          for (int b = 0; b < kNumBones; ++b) {
            if (!decoded[static_cast<std::size_t>(b)]) row.undecodable.push_back(b);
          }
          slot.rows.push_back(std::move(row));
        }
      }
      slot.base.ok = true;
    } catch (const Error& e) {
      if (!is_frame_error(e)) throw;
      slot.base.warnings.push_back(frame_warning(f, e.what()));
      slot.rows.clear();
    }
  });

  auto join = [](const std::vector<int>& v, auto&& name) {
    std::string s;
    for (int x : v) s += (s.empty() ? "" : "|") + name(x);
    return s;
  };
  std::ostringstream csv;
  csv << "frame,camera_col,camera_row,k,dropped_parts,census,undecodable_bones\n";
  std::vector<double> census_sum(static_cast<std::size_t>(m.max_drop + 1), 0.0);
  std::vector<double> undecodable_sum(census_sum.size(), 0.0);
  std::vector<std::size_t> count(census_sum.size(), 0);
  int violations = 0;
  std::vector<FrameSlot> bases;
  for (const Slot& s : slots) {
    bases.push_back(s.base);
    for (std::size_t i = 0; i < s.rows.size(); ++i) {
      const Row& row = s.rows[i];
      csv << row.frame << ',' << row.camera.col << ',' << row.camera.row << ',' << row.k << ','
          << join(row.dropped, [](int p) { return std::string(part_name(static_cast<Part>(p))); }) << ','
          << row.census << ',' << join(row.undecodable, [](int b) { return std::to_string(b); }) << '\n';
      const auto k = static_cast<std::size_t>(row.k);
      census_sum[k] += row.census;
      undecodable_sum[k] += static_cast<double>(row.undecodable.size());
      ++count[k];
      if (row.k > 0 && row.census > s.rows[i - 1].census) ++violations;
    }
  }
  json summary{{"k", json::array()}, {"mean_census", json::array()}, {"mean_undecodable_bones", json::array()}};
  for (std::size_t k = 0; k < count.size(); ++k) {
    const double n = count[k] ? static_cast<double>(count[k]) : 1.0;
    summary["k"].push_back(k);
    summary["mean_census"].push_back(census_sum[k] / n);
    summary["mean_undecodable_bones"].push_back(undecodable_sum[k] / n);
  }
  summary["census_increases"] = violations;
  ensure_dir(m.out_dir);
  io::write_file(m.out_dir / "ablation.csv", csv.str());
  io::write_file(m.out_dir / "ablation_summary.json", summary.dump(2));
  CommandResult r = merge(bases);
  r.outputs = 2;
  return r;
}

}  // namespace abstractpose::cli
