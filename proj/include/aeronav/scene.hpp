// Copyright (c) 2026 The aeronav Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "aeronav/geometry.hpp"

namespace aeronav {

struct Box {
  Vec3 min{0.0, 0.0, 0.0};
  Vec3 max{0.0, 0.0, 0.0};

  Vec3 center() const { return 0.5 * (min + max); }
  Vec3 extent() const { return max - min; }
  double half_diagonal() const { return 0.5 * extent().norm(); }

  bool contains(const Vec3& p) const {
    return p.x() >= min.x() && p.x() <= max.x() && p.y() >= min.y() &&
           p.y() <= max.y() && p.z() >= min.z() && p.z() <= max.z();
  }
  bool contains_strict(const Vec3& p) const {
    return p.x() > min.x() && p.x() < max.x() && p.y() > min.y() &&
           p.y() < max.y() && p.z() > min.z() && p.z() < max.z();
  }
  bool overlaps(const Box& o) const {
    return min.x() < o.max.x() && o.min.x() < max.x() && min.y() < o.max.y() &&
           o.min.y() < max.y() && min.z() < o.max.z() && o.min.z() < max.z();
  }
  Box inflated(double margin) const {
    return {min - Vec3::Constant(margin), max + Vec3::Constant(margin)};
  }
};

struct SceneObject {
  int id = 0;
  std::string caption;
  Box box;
  double relevance = 0.0;  // goal-relevance score in [0,1]
  bool is_target = false;
};

/// Ground-truth world: bounds, solid obstacle boxes and labeled objects.
/// Immutable after generation/loading.
struct Scene {
  std::string id;
  std::uint64_t seed = 0;
  Box bounds;
  std::vector<Box> obstacles;
  std::vector<SceneObject> objects;
  std::string goal;
  Pose start;

  const SceneObject& target() const;
  bool inside_obstacle(const Vec3& p) const;
};

/// Procedural generation knobs. Difficulty presets live in the harness
/// config; everything is explicit here.
struct SceneGenParams {
  double arena_size = 200.0;      // x/y extent, meters
  double arena_height = 50.0;     // flyable ceiling above ground
  int n_obstacles = 8;            // towers/walls, excluding the ground slab
  double obstacle_min_size = 6.0;
  double obstacle_max_size = 25.0;
  double obstacle_max_height = 30.0;
  int n_distractors = 3;
  double distractor_relevance_min = 0.1;
  double distractor_relevance_max = 0.9;
  double object_min_size = 6.0;
  double object_max_size = 14.0;
  double min_start_distance = 60.0;
  double max_start_distance = 120.0;
  double start_height_min = 10.0;
  double start_height_max = 20.0;
  double start_clearance = 8.0;    // free space demanded around the start
  double wall_margin = 10.0;       // keep placements away from the arena edge
  double feasibility_resolution = 5.0;
  double success_distance = 20.0;  // feasibility check target radius
  double camera_pitch = -0.35;     // start pose camera tilt, radians
  int max_retries = 32;
  std::string goal = "target";
};

/// Seeded procedural scene: ground slab + obstacle boxes + distractors + one
/// target (relevance 1.0), with a collision-free start pose at the requested
/// distance band and a BFS-checked feasible route. Throws std::runtime_error
/// when constraints stay infeasible after bounded retries.
Scene generate_scene(std::uint64_t seed, const SceneGenParams& params);

/// Grid covering the scene bounds at the given resolution.
GridSpec grid_for_scene(const Scene& scene, double resolution);

std::string scene_to_json(const Scene& scene);
Scene scene_from_json(const std::string& text);
void save_scene(const std::string& path, const Scene& scene);
Scene load_scene(const std::string& path);

}  // namespace aeronav
