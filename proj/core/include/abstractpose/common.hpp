#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace abstractpose {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

enum class ErrorCode {
  kInvalidArgument,
  kOutOfRange,
  kDegenerate,
  kBehindCamera,
  kNoDetection,
  kIo,
  kParse,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library. The code lets callers (the CLI in
/// particular) tell validation problems apart from I/O problems.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

constexpr double kPi = 3.14159265358979323846;

constexpr double deg_to_rad(double deg) { return deg * kPi / 180.0; }
constexpr double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

/// Mathematical modulo: result always in [0, m).
constexpr int wrap_index(int value, int m) {
  const int r = value % m;
  return r < 0 ? r + m : r;
}

}  // namespace abstractpose
