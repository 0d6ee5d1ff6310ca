#include "cli/manifest.hpp"

#include <charconv>
#include <set>

#include <nlohmann/json.hpp>

#include "abstractpose/io.hpp"

namespace abstractpose::cli {
namespace {

using nlohmann::json;

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  const std::filesystem::path path(p);
  return path.is_absolute() || base.empty() ? path : base / path;
}

Rgb color(const json& j) {
  const auto v = j.get<std::array<int, 3>>();
  Rgb c{};
  for (std::size_t k = 0; k < 3; ++k) {
    if (v[k] < 0 || v[k] > 255) fail(ErrorCode::kInvalidArgument, "colour channels must lie in [0, 255]");
    c[k] = static_cast<std::uint8_t>(v[k]);
  }
  return c;
}

void check_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
  const std::set<std::string> names(allowed.begin(), allowed.end());
  for (const auto& item : obj.items()) {
    if (!names.contains(item.key())) {
      fail(ErrorCode::kInvalidArgument, "unknown key \"" + item.key() + "\" in " + where);
    }
  }
}

void read_render(const json& r, RenderConfig& cfg) {
  check_keys(r, {"limb_half_width_mm", "head_half_width_mm", "torso_depth_mm", "separate_head", "background", "palette"},
             "render");
  cfg.limb_half_width_mm = r.value("limb_half_width_mm", cfg.limb_half_width_mm);
  cfg.head_half_width_mm = r.value("head_half_width_mm", cfg.head_half_width_mm);
  cfg.torso_depth_mm = r.value("torso_depth_mm", cfg.torso_depth_mm);
  cfg.separate_head = r.value("separate_head", cfg.separate_head);
  if (r.contains("background")) cfg.background = color(r.at("background"));
  if (r.contains("palette")) {
    for (const auto& item : r.at("palette").items()) {
      const auto part = part_from_name(item.key());
      if (!part) fail(ErrorCode::kInvalidArgument, "unknown part \"" + item.key() + "\" in render.palette");
      cfg.palette[static_cast<std::size_t>(index_of(*part))] = color(item.value());
    }
  }
}

}  // namespace

std::optional<CameraIndex> parse_camera(std::string_view text) {
  if (text == "random") return std::nullopt;
  const auto comma = text.find(',');
  CameraIndex idx;
  auto parse_int = [&](std::string_view s, int& v) {
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    return res.ec == std::errc() && res.ptr == s.data() + s.size() && !s.empty();
  };
  if (comma == std::string_view::npos || !parse_int(text.substr(0, comma), idx.col) ||
      !parse_int(text.substr(comma + 1), idx.row)) {
    fail(ErrorCode::kInvalidArgument, "camera must be \"random\" or \"i,j\", got \"" + std::string(text) + "\"");
  }
  return idx;
}

void Manifest::validate() const {
  env.validate();
  codec.validate(env.heatmap_size);
  codec.validate(codec.pose_map_size);
  render.validate();
  if (camera && !(camera->col >= 0 && camera->col < env.grid_cols && camera->row >= 0 &&
                  camera->row < env.grid_rows)) {
    fail(ErrorCode::kInvalidArgument, "camera index outside the rig");
  }
  if (cameras_per_frame < 1) fail(ErrorCode::kInvalidArgument, "cameras_per_frame must be >= 1");
  if (workers < 1) fail(ErrorCode::kInvalidArgument, "workers must be >= 1");
  if (!(length_scale > 0.0)) fail(ErrorCode::kInvalidArgument, "length_scale must be > 0");
  if (!(noise >= 0.0)) fail(ErrorCode::kInvalidArgument, "noise must be >= 0");
  if (max_drop < 0 || max_drop > render.part_count()) {
    fail(ErrorCode::kInvalidArgument, "max_drop must lie in [0, " + std::to_string(render.part_count()) + "]");
  }
  if (length_mode == LengthMode::kExplicit) {
    for (double l : bone_lengths) {
      if (!(l > 0.0)) fail(ErrorCode::kInvalidArgument, "bone lengths must be positive");
    }
  }
}

Manifest manifest_from_json(std::string_view text, const std::filesystem::path& base_dir) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorCode::kParse, std::string("manifest: ") + e.what());
  }
  if (!doc.is_object()) fail(ErrorCode::kParse, "manifest must be a JSON object");
  check_keys(doc,
             {"poses", "predictions", "heatmap_dir", "out_dir", "seed", "camera", "cameras_per_frame", "workers",
              "env", "codec", "render", "bone_lengths", "length_scale", "noise", "max_drop"},
             "manifest");

  Manifest m;
  try {
    if (doc.contains("poses")) m.poses = resolve(base_dir, doc.at("poses").get<std::string>());
    if (doc.contains("predictions")) m.predictions = resolve(base_dir, doc.at("predictions").get<std::string>());
    if (doc.contains("heatmap_dir")) m.heatmap_dir = resolve(base_dir, doc.at("heatmap_dir").get<std::string>());
    if (doc.contains("out_dir")) m.out_dir = resolve(base_dir, doc.at("out_dir").get<std::string>());
    m.seed = doc.value("seed", m.seed);
    if (doc.contains("camera")) {
      const json& c = doc.at("camera");
      if (c.is_string()) {
        m.camera = parse_camera(c.get<std::string>());
      } else {
        const auto ij = c.get<std::array<int, 2>>();
        m.camera = CameraIndex{ij[0], ij[1]};
      }
    }
    m.cameras_per_frame = doc.value("cameras_per_frame", m.cameras_per_frame);
    m.workers = doc.value("workers", m.workers);

    if (doc.contains("env")) {
      const json& e = doc.at("env");
      m.env = e.is_string() ? io::read_env_config(resolve(base_dir, e.get<std::string>()))
                            : io::env_config_from_json(e.dump());
    }
    if (doc.contains("codec")) {
      const json& c = doc.at("codec");
      check_keys(c, {"sigma", "kernel_width", "pose_map_size"}, "codec");
      m.codec.sigma = c.value("sigma", m.codec.sigma);
      m.codec.kernel_width = c.value("kernel_width", m.codec.kernel_width);
      m.codec.pose_map_size = c.value("pose_map_size", m.codec.pose_map_size);
    }
    if (doc.contains("render")) read_render(doc.at("render"), m.render);

    if (doc.contains("bone_lengths")) {
      const json& l = doc.at("bone_lengths");
      if (l.is_array()) {
        m.length_mode = LengthMode::kExplicit;
        m.bone_lengths = io::bone_lengths_from_json(l.dump());
      } else if (l == "matched") {
        m.length_mode = LengthMode::kMatched;
      } else if (l == "nominal") {
        m.length_mode = LengthMode::kNominal;
      } else {
        m.length_mode = LengthMode::kExplicit;
        m.bone_lengths = io::read_bone_lengths(resolve(base_dir, l.get<std::string>()));
      }
    }
    m.length_scale = doc.value("length_scale", m.length_scale);
    m.noise = doc.value("noise", m.noise);
    m.max_drop = doc.value("max_drop", m.max_drop);
  } catch (const json::exception& e) {
    fail(ErrorCode::kInvalidArgument, std::string("manifest: ") + e.what());
  }
  return m;
}

Manifest read_manifest(const std::filesystem::path& path) {
  return manifest_from_json(io::read_file(path), path.parent_path());
}

}  // namespace abstractpose::cli
