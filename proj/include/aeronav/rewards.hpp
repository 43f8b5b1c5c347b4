// Copyright (c) 2026 The aeronav Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>

#include "aeronav/maps.hpp"

namespace aeronav {

struct RewardConfig {
  double alpha = 0.2;             // attraction/exploration balance
  double d_thresh = 100.0;        // meters; linear decay horizon
  double epsilon = 5.0;           // exploration saturation (shared with ExplorationMap)
  double r_success = 10.0;
  double r_penalty = -10.0;
  double success_distance = 20.0; // meters (not a reference value; see README)

  bool valid() const {
    return alpha >= 0.0 && d_thresh > 0.0 && epsilon > 0.0 && r_success > 0.0 &&
           r_penalty < 0.0 && success_distance > 0.0;
  }
};

enum class RewardEvent { kNone, kSuccess, kCollision, kOutOfBounds };

/// Sum over visible voxels closer than d_thresh of score * (1 - d/d_thresh).
double attraction_reward(const AttractionMap& attr,
                         std::span<const VisibleVoxel> visible,
                         const RewardConfig& cfg);

/// Sum over visible voxels closer than d_thresh of
/// (epsilon - value) * (1 - d/d_thresh), evaluated on the map state before
/// this step's exploration update. Over-saturated voxels contribute
/// negatively (no clamping).
double exploration_reward(const ExplorationMap& expl,
                          std::span<const VisibleVoxel> visible,
                          const RewardConfig& cfg);

/// r_attr + alpha * r_expl + sparse term (r_success on success, r_penalty on
/// collision or out-of-bounds).
double total_reward(double r_attr, double r_expl, RewardEvent event,
                    const RewardConfig& cfg);

}  // namespace aeronav
