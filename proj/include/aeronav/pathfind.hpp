// Copyright (c) 2026 The aeronav Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>

#include "aeronav/scene.hpp"

namespace aeronav {

/// Shortest-path oracle: BFS over the 6-connected free-space voxel graph at
/// `resolution`, from the start cell to the first cell whose center lies
/// within `success_distance` of `goal`. A cell is blocked when its box
/// overlaps any obstacle. The start cell itself is always admitted (the
/// agent can stand close to a wall inside a coarse cell). Returns the path
/// length in meters (steps * resolution, 0 when the start already qualifies)
/// or nothing when no route exists.
std::optional<double> shortest_path_length(const Scene& scene, const Vec3& start,
                                           const Vec3& goal, double resolution,
                                           double success_distance);

}  // namespace aeronav
