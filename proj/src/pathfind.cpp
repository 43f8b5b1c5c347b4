// Copyright (c) 2026 The aeronav Authors
// SPDX-License-Identifier: Apache-2.0

#include "aeronav/pathfind.hpp"

#include <deque>
#include <vector>

namespace aeronav {

std::optional<double> shortest_path_length(const Scene& scene, const Vec3& start,
                                           const Vec3& goal, double resolution,
                                           double success_distance) {
  const GridSpec g = grid_for_scene(scene, resolution);

  std::vector<std::uint8_t> blocked(g.cell_count(), 0);
  for (int z = 0; z < g.nz; ++z) {
    for (int y = 0; y < g.ny; ++y) {
      for (int x = 0; x < g.nx; ++x) {
        const VoxelIndex v{x, y, z};
        const Vec3 lo = g.origin + resolution * Vec3(x, y, z);
        const Box cell{lo, lo + Vec3::Constant(resolution)};
        for (const auto& obstacle : scene.obstacles) {
          if (cell.overlaps(obstacle)) {
            blocked[g.flatten(v)] = 1;
            break;
          }
        }
      }
    }
  }

  auto clamp_cell = [&](const Vec3& p) {
    const Vec3 q = (p - g.origin) / g.resolution;
    auto clampi = [](double v, int n) {
      const int i = static_cast<int>(std::floor(v));
      return std::min(std::max(i, 0), n - 1);
    };
    return VoxelIndex{clampi(q.x(), g.nx), clampi(q.y(), g.ny), clampi(q.z(), g.nz)};
  };

  const VoxelIndex start_cell = clamp_cell(start);
  auto reaches_goal = [&](const VoxelIndex& v) {
    return (g.center(v) - goal).norm() <= success_distance;
  };

  if (reaches_goal(start_cell)) return 0.0;

  std::vector<std::int32_t> dist(g.cell_count(), -1);
  std::deque<VoxelIndex> queue;
  dist[g.flatten(start_cell)] = 0;
  queue.push_back(start_cell);

  constexpr int kSteps[6][3] = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0},
                                {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
  while (!queue.empty()) {
    const VoxelIndex v = queue.front();
    queue.pop_front();
    const std::int32_t d = dist[g.flatten(v)];
    for (const auto& s : kSteps) {
      const VoxelIndex n{v.x + s[0], v.y + s[1], v.z + s[2]};
      if (!g.contains(n)) continue;
      const std::size_t idx = g.flatten(n);
      if (dist[idx] >= 0 || blocked[idx]) continue;
      dist[idx] = d + 1;
      if (reaches_goal(n)) return static_cast<double>(d + 1) * resolution;
      queue.push_back(n);
    }
  }
  return std::nullopt;
}

}  // namespace aeronav
