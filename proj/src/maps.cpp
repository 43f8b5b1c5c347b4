// Copyright (c) 2026 The aeronav Authors
// SPDX-License-Identifier: Apache-2.0

#include "aeronav/maps.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace aeronav {

namespace {

struct ObjectHits {
  int object = 0;
  int pixels = 0;
  double min_depth = std::numeric_limits<double>::infinity();
};

}  // namespace

void AttractionMap::update(const SemanticObservation& sem, const DepthImage& depth,
                           const CameraIntrinsics& k, const Pose& pose) {
  if (depth.width != k.width || depth.height != k.height) {
    throw std::invalid_argument("attraction update: depth image size does not match intrinsics");
  }

  const Eigen::Matrix3d rot = pose.camera_to_world();
  std::unordered_map<VoxelIndex, std::vector<ObjectHits>> hits;

  for (int i = 0; i < static_cast<int>(sem.size()); ++i) {
    const auto& obj = sem[i];
    if (obj.score < 0.0 || obj.score > 1.0) {
      throw std::invalid_argument("attraction update: score outside [0,1]");
    }
    for (const auto& [u, v] : obj.mask) {
      if (u < 0 || u >= depth.width || v < 0 || v >= depth.height) {
        throw std::invalid_argument("attraction update: mask pixel outside image bounds");
      }
      if (!depth.valid_at(u, v)) continue;
      const double d = depth.at(u, v);
      const Vec3 cam((u - k.cx) * d / k.fx, (v - k.cy) * d / k.fy, d);
      const auto cell = world_to_voxel(pose.position + rot * cam, grid_);
      if (!cell) continue;
      auto& per_object = hits[*cell];
      auto it = std::find_if(per_object.begin(), per_object.end(),
                             [i](const ObjectHits& h) { return h.object == i; });
      if (it == per_object.end()) {
        per_object.push_back({i, 1, d});
      } else {
        it->pixels += 1;
        it->min_depth = std::min(it->min_depth, d);
      }
    }
  }

  for (const auto& [cell, per_object] : hits) {
    // Majority ownership: most pixels wins, ties go to the earlier object.
    const ObjectHits* winner = &per_object.front();
    for (const auto& h : per_object) {
      if (h.pixels > winner->pixels || (h.pixels == winner->pixels && h.object < winner->object)) {
        winner = &h;
      }
    }
    observe(cell, sem[winner->object].score, winner->min_depth);
  }
}

bool AttractionMap::observe(const VoxelIndex& v, double score, double obs_depth) {
  const std::size_t idx = grid_.flatten(v);
  if (!(obs_depth < depths_[idx])) return false;
  scores_[idx] = score;
  depths_[idx] = obs_depth;
  return true;
}

double ExplorationMap::total_mass() const {
  return std::accumulate(values_.begin(), values_.end(), 0.0);
}

void ExplorationMap::update(std::span<const VisibleVoxel> visible, bool per_ray) {
  for (const auto& vv : visible) {
    const double gain = std::exp(-lambda_ * vv.distance);
    values_[grid_.flatten(vv.index)] += per_ray ? gain * vv.rays : gain;
  }
}

void ObstacleMap::update(std::span<const Vec3> points) {
  for (const auto& p : points) {
    if (auto v = world_to_voxel(p, grid_)) occ_[grid_.flatten(*v)] = 1;
  }
}

bool ObstacleMap::occupied_or_adjacent(const VoxelIndex& v) const {
  for (int dz = -1; dz <= 1; ++dz) {
    for (int dy = -1; dy <= 1; ++dy) {
      for (int dx = -1; dx <= 1; ++dx) {
        const VoxelIndex n{v.x + dx, v.y + dy, v.z + dz};
        if (grid_.contains(n) && occupied(n)) return true;
      }
    }
  }
  return false;
}

std::vector<VisibleVoxel> visible_voxels(const DepthImage& depth,
                                         const CameraIntrinsics& k,
                                         const Pose& pose, const GridSpec& g,
                                         int stride) {
  const auto points = back_project(depth, k, pose, stride);

  std::vector<VisibleVoxel> out;
  std::vector<std::uint32_t> slot(g.cell_count(), 0);  // 0 = unseen, else out index + 1

  for (const auto& p : points) {
    for (const auto& cell : traverse({pose.position, p.world}, g)) {
      auto& s = slot[g.flatten(cell)];
      if (s == 0) {
        out.push_back({cell, (g.center(cell) - pose.position).norm(), 1});
        s = static_cast<std::uint32_t>(out.size());
      } else {
        out[s - 1].rays += 1;
      }
    }
  }
  return out;
}

}  // namespace aeronav
