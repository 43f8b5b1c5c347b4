// Copyright (c) 2026 The aeronav Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "aeronav/geometry.hpp"
#include "aeronav/raycast.hpp"

namespace aeronav {

/// One segmented object in a frame: caption, goal-relevance score in [0,1]
/// and the pixel mask it owns.
struct SemanticObject {
  std::string caption;
  double score = 0.0;
  std::vector<std::pair<int, int>> mask;  // (u, v) pixel coordinates
};

using SemanticObservation = std::vector<SemanticObject>;

/// A voxel seen by the current frame, with the distance from the camera
/// position to its center and the number of rays that traversed it.
struct VisibleVoxel {
  VoxelIndex index;
  double distance = 0.0;
  int rays = 1;
};

/// Semantic relevance scores with the closest-observation depth that wrote
/// each of them. Unwritten cells have score 0 and depth +inf.
class AttractionMap {
 public:
  AttractionMap() = default;
  explicit AttractionMap(const GridSpec& g)
      : grid_(g),
        scores_(g.cell_count(), 0.0),
        depths_(g.cell_count(), std::numeric_limits<double>::infinity()) {}

  const GridSpec& grid() const { return grid_; }
  double score(const VoxelIndex& v) const { return scores_[grid_.flatten(v)]; }
  double depth(const VoxelIndex& v) const { return depths_[grid_.flatten(v)]; }
  std::span<const double> scores() const { return scores_; }
  std::span<const double> depths() const { return depths_; }
  std::span<double> mutable_scores() { return scores_; }
  std::span<double> mutable_depths() { return depths_; }

  /// Applies one frame of semantic masks. Per voxel: the object projecting
  /// the most mask pixels into it wins (ties by list order); the winner's
  /// minimum pixel depth must beat the stored observation depth for the cell
  /// to be overwritten. Throws std::invalid_argument on out-of-image mask
  /// pixels or score outside [0,1].
  void update(const SemanticObservation& sem, const DepthImage& depth,
              const CameraIntrinsics& k, const Pose& pose);

  /// Direct cell write honoring the closest-observation rule. Returns true
  /// when the cell changed.
  bool observe(const VoxelIndex& v, double score, double obs_depth);

 private:
  GridSpec grid_;
  std::vector<double> scores_;
  std::vector<double> depths_;
};

/// Accumulated observation gain per voxel: each visible voxel gains
/// exp(-lambda * distance) per update, added to its running total.
class ExplorationMap {
 public:
  ExplorationMap() = default;
  explicit ExplorationMap(const GridSpec& g, double lambda = 0.05, double epsilon = 5.0)
      : grid_(g), lambda_(lambda), epsilon_(epsilon), values_(g.cell_count(), 0.0) {}

  const GridSpec& grid() const { return grid_; }
  double lambda() const { return lambda_; }
  double epsilon() const { return epsilon_; }
  double value(const VoxelIndex& v) const { return values_[grid_.flatten(v)]; }
  std::span<const double> values() const { return values_; }
  std::span<double> mutable_values() { return values_; }

  double total_mass() const;

  /// `per_ray` multiplies the gain by the number of rays that traversed the
  /// voxel this frame; the default grants it once per frame (set semantics).
  void update(std::span<const VisibleVoxel> visible, bool per_ray = false);

 private:
  GridSpec grid_;
  double lambda_ = 0.05;
  double epsilon_ = 5.0;
  std::vector<double> values_;
};

/// Binary occupancy; cells only ever go 0 -> 1 within an episode.
class ObstacleMap {
 public:
  ObstacleMap() = default;
  explicit ObstacleMap(const GridSpec& g) : grid_(g), occ_(g.cell_count(), 0) {}

  const GridSpec& grid() const { return grid_; }
  bool occupied(const VoxelIndex& v) const { return occ_[grid_.flatten(v)] != 0; }
  std::span<const std::uint8_t> cells() const { return occ_; }
  std::span<std::uint8_t> mutable_cells() { return occ_; }

  /// Marks every in-bounds voxel containing at least one point.
  void update(std::span<const Vec3> points);
  void mark(const VoxelIndex& v) { occ_[grid_.flatten(v)] = 1; }

  /// True when the cell or any of its 26 neighbors is occupied.
  bool occupied_or_adjacent(const VoxelIndex& v) const;

 private:
  GridSpec grid_;
  std::vector<std::uint8_t> occ_;
};

/// The shared memory bundle: three co-registered maps, per-map version
/// counters and the detection state. Plain data; concurrent publication is
/// the orchestrator's job.
struct MapFrame {
  GridSpec grid;
  AttractionMap attraction;
  ExplorationMap exploration;
  ObstacleMap obstacle;
  std::uint64_t attraction_version = 0;
  std::uint64_t exploration_version = 0;
  std::uint64_t obstacle_version = 0;
  bool detected = false;
  Vec3 target_estimate{0.0, 0.0, 0.0};

  explicit MapFrame(const GridSpec& g, double lambda = 0.05, double epsilon = 5.0)
      : grid(g), attraction(g), exploration(g, lambda, epsilon), obstacle(g) {}
  MapFrame() = default;
};

/// Union over the sampled valid-depth pixels of the voxels each camera ray
/// traverses, each voxel once with the distance from the camera position to
/// its center and the ray multiplicity. Order is first-hit (row-major pixel
/// order), which keeps downstream accumulation deterministic.
std::vector<VisibleVoxel> visible_voxels(const DepthImage& depth,
                                         const CameraIntrinsics& k,
                                         const Pose& pose, const GridSpec& g,
                                         int stride = 1);

}  // namespace aeronav
