// Copyright (c) 2026 The aeronav Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace aeronav {

using Vec3 = Eigen::Vector3d;

/// Agent / camera pose. World frame is right-handed with +z up; yaw 0 faces
/// +x and positive yaw turns toward +y. Pitch tilts the camera forward axis
/// up (+) or down (-). Roll is fixed to zero.
///
/// Camera frame: +x right, +y down, +z forward.
struct Pose {
  Vec3 position{0.0, 0.0, 0.0};
  double yaw = 0.0;    // radians, [-pi, pi)
  double pitch = 0.0;  // radians, [-pi/2, pi/2]

  /// Normalizes an angle to [-pi, pi).
  static double normalize_yaw(double a) {
    const double two_pi = 6.283185307179586476925286766559;
    double r = std::fmod(a + 3.1415926535897932384626433832795, two_pi);
    if (r < 0.0) r += two_pi;
    return r - 3.1415926535897932384626433832795;
  }

  /// Rotation taking camera-frame vectors to world frame.
  /// Columns are the camera axes (right, down, forward) expressed in world.
  Eigen::Matrix3d camera_to_world() const {
    const double cy = std::cos(yaw), sy = std::sin(yaw);
    const double cp = std::cos(pitch), sp = std::sin(pitch);
    const Vec3 forward(cp * cy, cp * sy, sp);
    const Vec3 right(sy, -cy, 0.0);
    const Vec3 down = forward.cross(right);
    Eigen::Matrix3d r;
    r.col(0) = right;
    r.col(1) = down;
    r.col(2) = forward;
    return r;
  }

  Vec3 forward_axis() const {
    const double cp = std::cos(pitch);
    return {cp * std::cos(yaw), cp * std::sin(yaw), std::sin(pitch)};
  }

  bool finite() const {
    return position.allFinite() && std::isfinite(yaw) && std::isfinite(pitch);
  }
};

struct CameraIntrinsics {
  double fx = 1.0, fy = 1.0;  // focal lengths, pixels
  double cx = 0.0, cy = 0.0;  // principal point, pixels
  int width = 0, height = 0;  // image size, pixels

  bool valid() const {
    return fx > 0.0 && fy > 0.0 && width > 0 && height > 0 && cx >= 0.0 &&
           cx < width && cy >= 0.0 && cy < height;
  }
};

/// Row-major depth buffer; a value of 0 or a non-finite value marks an
/// invalid (no return) pixel.
struct DepthImage {
  int width = 0;
  int height = 0;
  std::vector<double> data;

  DepthImage() = default;
  DepthImage(int w, int h) : width(w), height(h), data(static_cast<size_t>(w) * h, 0.0) {}

  double at(int u, int v) const { return data[static_cast<size_t>(v) * width + u]; }
  double& at(int u, int v) { return data[static_cast<size_t>(v) * width + u]; }

  bool valid_at(int u, int v) const {
    const double d = at(u, v);
    return d > 0.0 && std::isfinite(d);
  }
};

struct VoxelIndex {
  int x = 0, y = 0, z = 0;

  bool operator==(const VoxelIndex&) const = default;
  auto operator<=>(const VoxelIndex&) const = default;
};

/// Axis-aligned voxel grid. Cell (i,j,k) covers
/// [origin + res*(i,j,k), origin + res*(i+1,j+1,k+1)), i.e. cells are
/// left-closed/right-open, discretization is floor().
struct GridSpec {
  Vec3 origin{0.0, 0.0, 0.0};
  double resolution = 1.0;
  int nx = 1, ny = 1, nz = 1;

  std::size_t cell_count() const {
    return static_cast<std::size_t>(nx) * ny * nz;
  }

  bool contains(const VoxelIndex& v) const {
    return v.x >= 0 && v.x < nx && v.y >= 0 && v.y < ny && v.z >= 0 && v.z < nz;
  }

  // Row-major, x fastest.
  std::size_t flatten(const VoxelIndex& v) const {
    return static_cast<std::size_t>(v.z) * ny * nx + static_cast<std::size_t>(v.y) * nx + v.x;
  }

  Vec3 center(const VoxelIndex& v) const {
    return origin + resolution * Vec3(v.x + 0.5, v.y + 0.5, v.z + 0.5);
  }

  Vec3 min_corner() const { return origin; }
  Vec3 max_corner() const { return origin + resolution * Vec3(nx, ny, nz); }

  bool operator==(const GridSpec&) const = default;
};

struct BackProjectedPoint {
  Vec3 world;
  int u = 0, v = 0;
  double depth = 0.0;  // camera-frame z
};

struct ProjectedPixel {
  double u = 0.0, v = 0.0;
  double depth = 0.0;
};

/// Lifts every valid sampled pixel of a depth image into world space.
/// `stride` subsamples the pixel grid (1 = every pixel). Invalid pixels are
/// skipped. Throws std::invalid_argument on an image/intrinsics size mismatch.
std::vector<BackProjectedPoint> back_project(const DepthImage& depth,
                                             const CameraIntrinsics& k,
                                             const Pose& pose, int stride = 1);

/// Single-pixel back-projection (no validity checks beyond the formula).
Vec3 back_project_pixel(double u, double v, double depth,
                        const CameraIntrinsics& k, const Pose& pose);

/// Projects a world point into the image. Returns nothing when the point is
/// behind the camera (z <= 0) or lands outside [0,width) x [0,height).
std::optional<ProjectedPixel> project(const Vec3& p, const CameraIntrinsics& k,
                                      const Pose& pose);

/// floor((p - origin)/resolution); empty when outside the grid dims.
std::optional<VoxelIndex> world_to_voxel(const Vec3& p, const GridSpec& g);

}  // namespace aeronav

template <>
struct std::hash<aeronav::VoxelIndex> {
  std::size_t operator()(const aeronav::VoxelIndex& v) const noexcept {
    std::uint64_t h = 1469598103934665603ULL;
    for (std::uint64_t part : {static_cast<std::uint64_t>(static_cast<std::uint32_t>(v.x)),
                               static_cast<std::uint64_t>(static_cast<std::uint32_t>(v.y)),
                               static_cast<std::uint64_t>(static_cast<std::uint32_t>(v.z))}) {
      h ^= part;
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }
};
