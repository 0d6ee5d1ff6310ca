#include "abstractpose/io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace abstractpose::io {
namespace {

using nlohmann::json;

json parse(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorCode::kParse, e.what());
  }
}

double number(const json& j, const char* what) {
  if (!j.is_number()) fail(ErrorCode::kParse, std::string(what) + " must be a number");
  return j.get<double>();
}

json errors_to_json(const PoseErrors& e) {
  return json{{"mpjpe_mm", e.mpjpe},
              {"pa_mpjpe_mm", e.pa_mpjpe},
              {"rot_mpjpe_mm", e.rot_mpjpe},
              {"per_joint_rot_mm", e.per_joint_rot}};
}

}  // namespace

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kIo, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) fail(ErrorCode::kIo, "failed reading " + path.string());
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::kIo, "cannot open " + path.string() + " for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) fail(ErrorCode::kIo, "failed writing " + path.string());
}

std::vector<Pose> poses_from_json(std::string_view text) {
  const json doc = parse(text);
  if (!doc.is_array()) fail(ErrorCode::kParse, "pose file must be a JSON array of frames");
  std::vector<Pose> poses;
  poses.reserve(doc.size());
  for (const json& frame : doc) {
    if (!frame.is_object() || !frame.contains("joints")) {
      fail(ErrorCode::kParse, "frame " + std::to_string(poses.size()) + " has no \"joints\"");
    }
    const json& joints = frame.at("joints");
    if (!joints.is_array() || joints.size() != kNumJoints) {
      fail(ErrorCode::kParse, "frame " + std::to_string(poses.size()) + " needs 14 joints");
    }
    Pose p;
    for (std::size_t j = 0; j < kNumJoints; ++j) {
      const json& xyz = joints[j];
      if (!xyz.is_array() || xyz.size() != 3) fail(ErrorCode::kParse, "joint must be [x, y, z]");
      p.joints[j] = Vec3(number(xyz[0], "x"), number(xyz[1], "y"), number(xyz[2], "z"));
    }
    poses.push_back(p);
  }
  return poses;
}

std::string poses_to_json(std::span<const Pose> poses) {
  json doc = json::array();
  for (const Pose& p : poses) {
    json joints = json::array();
    for (const Vec3& v : p.joints) joints.push_back({v.x(), v.y(), v.z()});
    doc.push_back({{"joints", joints}});
  }
  return doc.dump(1);
}

std::vector<Pose> read_poses(const std::filesystem::path& path) {
  return poses_from_json(read_file(path));
}

void write_poses(const std::filesystem::path& path, std::span<const Pose> poses) {
  write_file(path, poses_to_json(poses));
}

EnvConfig env_config_from_json(std::string_view text) {
  const json doc = parse(text);
  if (!doc.is_object()) fail(ErrorCode::kParse, "environment config must be a JSON object");
  EnvConfig c;
  try {
    c.grid_cols = doc.value("grid_cols", c.grid_cols);
    c.grid_rows = doc.value("grid_rows", c.grid_rows);
    c.radius_mm = doc.value("radius_mm", c.radius_mm);
    c.fixed_point_scale = doc.value("fixed_point_scale", c.fixed_point_scale);
    c.heatmap_size = doc.value("heatmap_size", c.heatmap_size);
    c.elevation_min_deg = doc.value("elevation_min_deg", c.elevation_min_deg);
    c.elevation_max_deg = doc.value("elevation_max_deg", c.elevation_max_deg);
    if (doc.contains("seam_row_span")) {
      const json& span = doc.at("seam_row_span");
      if (!span.is_array() || span.size() != 2) fail(ErrorCode::kParse, "seam_row_span must be [first, last]");
      c.seam_row_first = span[0].get<int>();
      c.seam_row_last = span[1].get<int>();
    }
    if (doc.contains("intrinsics")) {
      const json& in = doc.at("intrinsics");
      c.intrinsics.focal_length = in.value("focal_length", c.intrinsics.focal_length);
      if (in.contains("image_size")) {
        c.intrinsics.width = in.at("image_size").at(0).get<int>();
        c.intrinsics.height = in.at("image_size").at(1).get<int>();
        c.intrinsics.principal_point = Vec2(0.5 * c.intrinsics.width, 0.5 * c.intrinsics.height);
      }
      if (in.contains("principal_point")) {
        c.intrinsics.principal_point =
            Vec2(in.at("principal_point").at(0).get<double>(), in.at("principal_point").at(1).get<double>());
      }
    }
  } catch (const json::exception& e) {
    fail(ErrorCode::kParse, e.what());
  }
  c.validate();
  return c;
}

std::string env_config_to_json(const EnvConfig& c) {
  const json doc = {
      {"grid_cols", c.grid_cols},
      {"grid_rows", c.grid_rows},
      {"radius_mm", c.radius_mm},
      {"fixed_point_scale", c.fixed_point_scale},
      {"seam_row_span", {c.seam_row_first, c.seam_row_last}},
      {"heatmap_size", c.heatmap_size},
      {"elevation_min_deg", c.elevation_min_deg},
      {"elevation_max_deg", c.elevation_max_deg},
      {"intrinsics",
       {{"focal_length", c.intrinsics.focal_length},
        {"principal_point", {c.intrinsics.principal_point.x(), c.intrinsics.principal_point.y()}},
        {"image_size", {c.intrinsics.width, c.intrinsics.height}}}},
  };
  return doc.dump(2);
}

EnvConfig read_env_config(const std::filesystem::path& path) {
  return env_config_from_json(read_file(path));
}

std::array<double, kNumBones> bone_lengths_from_json(std::string_view text) {
  const json doc = parse(text);
  if (!doc.is_array() || doc.size() != kNumBones) {
    fail(ErrorCode::kParse, "bone-length preset must be an array of 13 numbers");
  }
  std::array<double, kNumBones> out{};
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k] = number(doc[k], "bone length");
    if (!(out[k] > 0.0)) fail(ErrorCode::kInvalidArgument, "bone lengths must be positive");
  }
  return out;
}

std::array<double, kNumBones> read_bone_lengths(const std::filesystem::path& path) {
  return bone_lengths_from_json(read_file(path));
}

Raster rgb_raster(const AbstractImage& image) {
  const auto rgb = image.rgb();
  return {image.width(), image.height(), 3, {rgb.begin(), rgb.end()}};
}

Raster provenance_raster(const AbstractImage& image) {
  const auto ids = image.provenance_map();
  return {image.width(), image.height(), 1, {ids.begin(), ids.end()}};
}

std::string encode_pnm(const Raster& r) {
  if (r.channels != 1 && r.channels != 3) fail(ErrorCode::kInvalidArgument, "PNM needs 1 or 3 channels");
  const std::size_t expected =
      static_cast<std::size_t>(r.width) * static_cast<std::size_t>(r.height) * static_cast<std::size_t>(r.channels);
  if (r.data.size() != expected) fail(ErrorCode::kInvalidArgument, "raster size mismatch");
  std::string out = (r.channels == 3 ? "P6\n" : "P5\n") + std::to_string(r.width) + " " +
                    std::to_string(r.height) + "\n255\n";
  out.append(reinterpret_cast<const char*>(r.data.data()), r.data.size());
  return out;
}

Raster decode_pnm(std::string_view bytes) {
  std::size_t pos = 0;
  auto skip_space = [&] {
    while (pos < bytes.size()) {
      if (bytes[pos] == '#') {
        while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
      } else if (std::isspace(static_cast<unsigned char>(bytes[pos]))) {
        ++pos;
      } else {
        break;
      }
    }
  };
  auto read_int = [&] {
    skip_space();
    int v = 0;
    const auto [ptr, ec] = std::from_chars(bytes.data() + pos, bytes.data() + bytes.size(), v);
    if (ec != std::errc{}) fail(ErrorCode::kParse, "malformed PNM header");
    pos = static_cast<std::size_t>(ptr - bytes.data());
    return v;
  };
  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '5' && bytes[1] != '6')) {
    fail(ErrorCode::kParse, "not a binary PGM/PPM");
  }
  Raster r;
  r.channels = bytes[1] == '6' ? 3 : 1;
  pos = 2;
  r.width = read_int();
  r.height = read_int();
  const int maxval = read_int();
  if (r.width <= 0 || r.height <= 0 || maxval != 255) fail(ErrorCode::kParse, "unsupported PNM header");
  if (pos >= bytes.size() || !std::isspace(static_cast<unsigned char>(bytes[pos]))) {
    fail(ErrorCode::kParse, "malformed PNM header");
  }
  ++pos;
  const std::size_t n =
      static_cast<std::size_t>(r.width) * static_cast<std::size_t>(r.height) * static_cast<std::size_t>(r.channels);
  if (bytes.size() - pos != n) fail(ErrorCode::kParse, "PNM payload size mismatch");
  r.data.assign(bytes.begin() + static_cast<std::ptrdiff_t>(pos), bytes.end());
  return r;
}

void write_ppm(const std::filesystem::path& path, const AbstractImage& image) {
  write_file(path, encode_pnm(rgb_raster(image)));
}

void write_pgm(const std::filesystem::path& path, const AbstractImage& image) {
  write_file(path, encode_pnm(provenance_raster(image)));
}

std::string encode_heatmap(const Heatmap& map) {
  std::ostringstream out(std::ios::binary);
  write_phm(out, map);
  return out.str();
}

Heatmap decode_heatmap(std::string_view bytes) {
  std::istringstream in(std::string(bytes), std::ios::binary);
  Heatmap map = read_phm(in);
  if (in.peek() != std::char_traits<char>::eof()) fail(ErrorCode::kParse, "trailing bytes after PHM1 payload");
  return map;
}

void write_heatmap(const std::filesystem::path& path, const Heatmap& map) {
  write_file(path, encode_heatmap(map));
}

Heatmap read_heatmap(const std::filesystem::path& path) { return decode_heatmap(read_file(path)); }

std::string eval_report_to_json(const EvalReport& report, int indent) {
  json frames = json::array();
  for (const FrameErrors& f : report.frames) {
    json e = errors_to_json(f.errors);
    e["frame"] = f.frame;
    frames.push_back(std::move(e));
  }
  json skipped = json::array();
  for (const SkippedFrame& s : report.skipped) skipped.push_back({{"frame", s.frame}, {"reason", s.reason}});
  json agg = errors_to_json(report.aggregate);
  agg["frame_count"] = report.frames.size();
  return json{{"aggregate", agg}, {"frames", frames}, {"skipped", skipped}}.dump(indent);
}

}  // namespace abstractpose::io
