#include "abstractpose/pipeline.hpp"

#include "abstractpose/pose_codec.hpp"
#include "abstractpose/sampling.hpp"
#include "abstractpose/viewpoint_codec.hpp"

namespace abstractpose {

EncodedFrame encode_frame(const Pose& world, CameraIndex camera, const SyntheticEnvironment& env,
                          const CodecParams& params) {
  EncodedFrame out;
  out.camera = camera;
  out.bones = decompose_pose(world);
  const CameraIndexPermutation perm = rotate_camera_array(env, forward_vector(world));
  out.shift = perm.shift();
  out.rotated_camera = perm.to_rotated(camera);
  out.bones_cam = bones_to_camera_frame(out.bones, env.rotation(camera));
  out.viewpoint = encode_viewpoint(out.rotated_camera, params, env.config());
  out.pose = encode_pose(out.bones_cam, params);
  return out;
}

PredictedMaps predict_maps(const EncodedFrame& frame, double noise_amplitude, std::mt19937_64& rng) {
  if (!(noise_amplitude >= 0.0)) fail(ErrorCode::kInvalidArgument, "noise amplitude must be >= 0");
  PredictedMaps out{frame.viewpoint, frame.pose};
  if (noise_amplitude > 0.0) {
    add_uniform_noise(out.viewpoint, noise_amplitude, rng);
    add_uniform_noise(out.pose, noise_amplitude, rng);
  }
  return out;
}

Reconstruction reconstruct_frame(const EncodedFrame& frame, const PredictedMaps& predicted,
                                 Configuration config, const SyntheticEnvironment& env,
                                 std::span<const double> bone_lengths) {
  const CameraIndex index = config == Configuration::kDecodedAll
                                ? decode_viewpoint(predicted.viewpoint, env.config())
                                : frame.rotated_camera;
  const Heatmap& pose_maps = config == Configuration::kGroundTruth ? frame.pose : predicted.pose;
  return reconstruct(index, decode_pose(pose_maps), env, bone_lengths);
}

Reconstruction reconstruct_frame(const EncodedFrame& frame, Configuration config,
                                 const SyntheticEnvironment& env,
                                 std::span<const double> bone_lengths) {
  return reconstruct_frame(frame, PredictedMaps{frame.viewpoint, frame.pose}, config, env, bone_lengths);
}

void add_uniform_noise(Heatmap& map, double amplitude, std::mt19937_64& rng) {
  for (float& v : map.values()) {
    v = static_cast<float>(v + amplitude * (2.0 * uniform01(rng) - 1.0));
  }
}

}  // namespace abstractpose
