// Copyright (c) 2026 The aeronav Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <string>
#include <vector>

#include "aeronav/maps.hpp"
#include "aeronav/rewards.hpp"
#include "aeronav/rng.hpp"
#include "aeronav/sim.hpp"

namespace aeronav {

/// Network/input geometry. `kMaps` feeds the three egocentric map crops;
/// `kRawDepth` feeds a pooled depth image instead (map-less ablation).
struct PolicyConfig {
  enum class Source { kMaps, kRawDepth };

  Source source = Source::kMaps;
  int crop_radius = 7;    // egocentric half-width in cells; crop is (2r+1)^2 x nz
  int pool_grid = 3;      // pooled patches per side over the crop
  int raw_pool_grid = 6;  // pooled patches per side over the depth image
  int feature_dim = 16;   // per-group extractor output width
  int hidden_dim = 32;    // actor/critic hidden width
  int n_actions = kNumActions;

  int pose_dim() const { return 6; }
  int crop_size() const { return 2 * crop_radius + 1; }
};

/// Raw policy input: one pooled tensor per input group (three maps, or one
/// depth image) plus normalized pose. This is what rollouts store, so a
/// training update can differentiate through the whole network.
struct PooledObs {
  std::vector<Eigen::VectorXd> groups;
  Eigen::VectorXd pose;
};

struct Dense {
  Eigen::MatrixXd w;
  Eigen::VectorXd b;
};

struct PolicyParams {
  PolicyConfig cfg;
  std::vector<int> group_dims;
  std::vector<Dense> extractors;  // one per input group, tanh
  Dense actor_hidden;             // tanh
  Dense actor_out;                // logits over actions
  Dense critic_hidden;            // tanh
  Dense critic_out;               // scalar value

  static PolicyParams init(const PolicyConfig& cfg, const std::vector<int>& group_dims,
                           Rng& rng);

  int trunk_dim() const;
  bool finite() const;

  // Fixed-layout flattening; shared by the optimizer, the finite-difference
  // checks and the checkpoint format.
  Eigen::VectorXd to_flat() const;
  void from_flat(const Eigen::VectorXd& flat);
  std::int64_t parameter_count() const;
};

/// Per-parameter gradients, same layout as PolicyParams.
struct PolicyGrads {
  std::vector<Dense> extractors;
  Dense actor_hidden, actor_out, critic_hidden, critic_out;

  static PolicyGrads zeros_like(const PolicyParams& p);
  void scale(double s);
  Eigen::VectorXd to_flat() const;
};

/// Extractor outputs concatenated with the normalized pose; the shared input
/// of both heads.
struct MapFeatures {
  Eigen::VectorXd values;
  int n_groups = 0;
  int group_dim = 0;  // feature_dim per group; pose occupies the tail
};

struct PolicyOutput {
  Eigen::VectorXd logits;
  Eigen::VectorXd probs;
  Eigen::VectorXd log_probs;
  double value = 0.0;
};

struct ForwardCache {
  std::vector<Eigen::VectorXd> hidden_groups;
  Eigen::VectorXd trunk;
  Eigen::VectorXd actor_hidden;
  Eigen::VectorXd critic_hidden;
  PolicyOutput out;
};

/// Pooled egocentric crops of the three maps (exploration scaled by 1/epsilon
/// so inputs stay O(1)) plus normalized pose. Cells outside the grid read 0.
PooledObs pool_maps(const MapFrame& frame, const Pose& pose, const PolicyConfig& cfg);

/// Pooled depth image (valid depths / max_range, misses read 1) plus pose.
PooledObs pool_raw_depth(const DepthImage& depth, double max_range, const Pose& pose,
                         const GridSpec& g, const PolicyConfig& cfg);

std::vector<int> group_dims_for(const PolicyConfig& cfg, const GridSpec& g);

/// Full differentiable pipeline: extractors -> trunk -> heads.
PolicyOutput forward_full(const PooledObs& obs, const PolicyParams& params,
                          ForwardCache* cache = nullptr);

/// Accumulates d(loss)/d(params) given upstream d(loss)/d(logits) and
/// d(loss)/d(value) for one sample.
void backward_full(const PooledObs& obs, const PolicyParams& params,
                   const ForwardCache& cache, const Eigen::VectorXd& dlogits,
                   double dvalue, PolicyGrads& grads);

/// Extractor stage only: crop+pool the maps and run the per-map extractors.
/// With all-zero maps this returns tanh(bias) per group (the bias pathway).
MapFeatures extract_features(const MapFrame& frame, const AgentState& s,
                             const PolicyParams& params);

/// Head stage: softmax action distribution and value from MapFeatures.
/// Throws std::runtime_error on non-finite parameters or features.
PolicyOutput policy_forward(const MapFeatures& f, const PolicyParams& params);

// ---------------------------------------------------------------------------
// Heuristic action decision
// ---------------------------------------------------------------------------

struct HeuristicConfig {
  double w_attr = 1.0;
  double w_expl = 0.2;
  double frustum_depth = 60.0;  // synthetic lookahead range, meters
  int frustum_stride = 6;       // pixel stride of lookahead rays
};

/// Safety test shared by the planners: the destination must stay inside the
/// grid, must not land in (or adjacent to) an occupied voxel, and the swept
/// segment must not cross an occupied voxel.
bool is_unsafe(const ObstacleMap& obst, const Vec3& from, const Vec3& to);

/// Voxels a synthetic frustum from `pose` would observe over the current
/// obstacle map: rays at `stride` through the image plane out to `depth`
/// meters, cut just after the first occupied voxel.
std::vector<VisibleVoxel> frustum_voxels(const ObstacleMap& obst, const Pose& pose,
                                         const CameraIntrinsics& k, int stride,
                                         double depth);

/// One-step lookahead over the maps: simulates every motion action, scores
/// safe ones with w_attr * R_attr + w_expl * R_expl over a synthetic frustum
/// from the hypothetical pose, and returns the argmax (ties by enumeration
/// order). Returns kStop when no action is safe.
Action heuristic_decide(const MapFrame& frame, const AgentState& s,
                        const HeuristicConfig& hcfg, const RewardConfig& rcfg,
                        const ActionConfig& acfg, const CameraIntrinsics& k);

// ---------------------------------------------------------------------------
// Checkpoints
// ---------------------------------------------------------------------------

void save_checkpoint(const std::string& path, const PolicyParams& params,
                     std::uint64_t seed);
struct Checkpoint {
  PolicyParams params;
  std::uint64_t seed = 0;
};
Checkpoint load_checkpoint(const std::string& path);

}  // namespace aeronav
