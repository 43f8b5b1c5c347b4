// Copyright (c) 2026 The aeronav Authors
// SPDX-License-Identifier: Apache-2.0

#include "aeronav/geometry.hpp"

#include <stdexcept>

namespace aeronav {

std::vector<BackProjectedPoint> back_project(const DepthImage& depth,
                                             const CameraIntrinsics& k,
                                             const Pose& pose, int stride) {
  if (depth.width != k.width || depth.height != k.height) {
    throw std::invalid_argument("back_project: depth image size does not match intrinsics");
  }
  if (stride < 1) {
    throw std::invalid_argument("back_project: stride must be >= 1");
  }

  const Eigen::Matrix3d r = pose.camera_to_world();
  std::vector<BackProjectedPoint> out;
  out.reserve((static_cast<size_t>(depth.width) / stride + 1) *
              (static_cast<size_t>(depth.height) / stride + 1));

  for (int v = 0; v < depth.height; v += stride) {
    for (int u = 0; u < depth.width; u += stride) {
      if (!depth.valid_at(u, v)) continue;
      const double d = depth.at(u, v);
      const Vec3 cam((u - k.cx) * d / k.fx, (v - k.cy) * d / k.fy, d);
      out.push_back({pose.position + r * cam, u, v, d});
    }
  }
  return out;
}

Vec3 back_project_pixel(double u, double v, double depth,
                        const CameraIntrinsics& k, const Pose& pose) {
  const Vec3 cam((u - k.cx) * depth / k.fx, (v - k.cy) * depth / k.fy, depth);
  return pose.position + pose.camera_to_world() * cam;
}

std::optional<ProjectedPixel> project(const Vec3& p, const CameraIntrinsics& k,
                                      const Pose& pose) {
  // camera_to_world() is orthonormal, so the transpose is the inverse.
  const Vec3 cam = pose.camera_to_world().transpose() * (p - pose.position);
  if (!(cam.z() > 0.0)) return std::nullopt;
  const double u = k.fx * cam.x() / cam.z() + k.cx;
  const double v = k.fy * cam.y() / cam.z() + k.cy;
  if (u < 0.0 || u >= k.width || v < 0.0 || v >= k.height) return std::nullopt;
  return ProjectedPixel{u, v, cam.z()};
}

std::optional<VoxelIndex> world_to_voxel(const Vec3& p, const GridSpec& g) {
  const Vec3 q = (p - g.origin) / g.resolution;
  const VoxelIndex v{static_cast<int>(std::floor(q.x())),
                     static_cast<int>(std::floor(q.y())),
                     static_cast<int>(std::floor(q.z()))};
  if (!g.contains(v)) return std::nullopt;
  return v;
}

}  // namespace aeronav
