// Copyright (c) 2026 The aeronav Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "aeronav/maps.hpp"
#include "aeronav/scene.hpp"

namespace aeronav {

/// Discrete action set. Enumeration order is the planner tie-break order.
enum class Action {
  kForward = 0,
  kBackward,
  kLeft,
  kRight,
  kUp,
  kDown,
  kYawLeft,
  kYawRight,
  kStop,
};

inline constexpr int kNumActions = 9;
inline constexpr Action kMotionActions[8] = {
    Action::kForward, Action::kBackward, Action::kLeft,    Action::kRight,
    Action::kUp,      Action::kDown,     Action::kYawLeft, Action::kYawRight};

std::string to_string(Action a);
std::optional<Action> action_from_string(const std::string& name);

struct ActionConfig {
  double translation_step = 5.0;               // meters
  double yaw_step = 0.5235987755982988;        // 30 degrees
};

struct AgentState {
  Pose pose;
  bool collided = false;
  bool out_of_bounds = false;
  bool stopped = false;
  double path_length = 0.0;

  bool terminal() const { return collided || out_of_bounds || stopped; }
};

enum class StepEvent { kNone, kCollision, kOutOfBounds, kStopped };

std::string to_string(StepEvent e);

struct StepResult {
  AgentState state;
  StepEvent event = StepEvent::kNone;
};

/// Pixel-space detection emitted by the detector oracle. Bounds inclusive.
struct Detection {
  int u0 = 0, v0 = 0, u1 = 0, v1 = 0;
  double confidence = 0.0;
};

struct DetectorConfig {
  double frac_ref = 0.003;   // visible-pixel fraction that saturates confidence
  double range_ref = 100.0;  // meters; confidence decays exp(-range/range_ref)
  double conf_thresh = 0.5;  // grounding trigger
};

/// Depth (camera-frame z) plus the id of the scene object first hit per
/// pixel (-1 for obstacles and empty sky).
struct RenderResult {
  DepthImage depth;
  std::vector<std::int32_t> object_hit;
};

RenderResult render_scene(const Scene& scene, const Pose& pose,
                          const CameraIntrinsics& k, double max_range);

/// Per pixel: z-depth of the nearest obstacle/object along the ray, invalid
/// (0) when nothing is hit within max_range.
DepthImage render_depth(const Scene& scene, const Pose& pose,
                        const CameraIntrinsics& k, double max_range);

/// Deterministic stand-in for the caption+segmentation stack: every object
/// with at least one first-hit pixel yields (caption, relevance, mask of
/// exactly those pixels), in scene object order.
SemanticObservation semantic_oracle(const Scene& scene, const Pose& pose,
                                    const CameraIntrinsics& k,
                                    const DepthImage& depth, double max_range);

/// Deterministic stand-in for the open-vocabulary detector: the target, when
/// visible, yields one detection with its tight pixel bbox and confidence
/// min(1, visible_fraction/frac_ref) * exp(-range/range_ref).
std::vector<Detection> detector_oracle(const Scene& scene, const Pose& pose,
                                       const CameraIntrinsics& k,
                                       const DepthImage& depth, double max_range,
                                       const DetectorConfig& cfg);

/// Kinematic step with swept collision against obstacle boxes and the scene
/// bounds; the state freezes at first contact. Throws std::logic_error when
/// called on a terminal state.
StepResult step(const Scene& scene, const AgentState& s, Action a,
                const ActionConfig& cfg);

/// Pure kinematics of an action (no collision handling); kStop returns the
/// pose unchanged. Translation happens in the yaw-rotated body frame
/// (up/down along world z); yaw 0 faces +x.
Pose kinematic_apply(const Pose& pose, Action a, const ActionConfig& cfg);

/// Grounds a detection to a world point: bbox-center pixel back-projected at
/// the median valid depth inside the bbox. Empty when the bbox holds no
/// valid depth.
std::optional<Vec3> ground_target(const Detection& best, const DepthImage& depth,
                                  const CameraIntrinsics& k, const Pose& pose);

}  // namespace aeronav
