// Copyright (c) 2026 The aeronav Authors
// SPDX-License-Identifier: Apache-2.0

#include "aeronav/rewards.hpp"

namespace aeronav {

double attraction_reward(const AttractionMap& attr,
                         std::span<const VisibleVoxel> visible,
                         const RewardConfig& cfg) {
  double sum = 0.0;
  for (const auto& vv : visible) {
    if (vv.distance >= cfg.d_thresh) continue;
    sum += attr.score(vv.index) * (1.0 - vv.distance / cfg.d_thresh);
  }
  return sum;
}

double exploration_reward(const ExplorationMap& expl,
                          std::span<const VisibleVoxel> visible,
                          const RewardConfig& cfg) {
  double sum = 0.0;
  for (const auto& vv : visible) {
    if (vv.distance >= cfg.d_thresh) continue;
    sum += (cfg.epsilon - expl.value(vv.index)) * (1.0 - vv.distance / cfg.d_thresh);
  }
  return sum;
}

double total_reward(double r_attr, double r_expl, RewardEvent event,
                    const RewardConfig& cfg) {
  double sparse = 0.0;
  if (event == RewardEvent::kSuccess) sparse = cfg.r_success;
  if (event == RewardEvent::kCollision || event == RewardEvent::kOutOfBounds) {
    sparse = cfg.r_penalty;
  }
  return r_attr + cfg.alpha * r_expl + sparse;
}

}  // namespace aeronav
