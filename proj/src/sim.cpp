// Copyright (c) 2026 The aeronav Authors
// SPDX-License-Identifier: Apache-2.0

#include "aeronav/sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace aeronav {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Entry parameter of ray o + t*dir into the box, or +inf on a miss. The ray
// is unnormalized; with dir built from a unit camera-forward component the
// returned t is the camera z-depth. A start point inside the box reports the
// exit distance (the visible surface from inside).
double ray_box_entry(const Vec3& o, const Vec3& dir, const Box& box) {
  double t0 = -kInf, t1 = kInf;
  for (int i = 0; i < 3; ++i) {
    if (dir[i] == 0.0) {
      if (o[i] < box.min[i] || o[i] > box.max[i]) return kInf;
      continue;
    }
    double lo = (box.min[i] - o[i]) / dir[i];
    double hi = (box.max[i] - o[i]) / dir[i];
    if (lo > hi) std::swap(lo, hi);
    t0 = std::max(t0, lo);
    t1 = std::min(t1, hi);
  }
  if (t0 > t1 || t1 <= 1e-12) return kInf;
  return t0 > 1e-12 ? t0 : t1;
}

// First strict-interior crossing of segment p -> p+d with the box, as a
// parameter in [0,1); +inf when the segment stays outside.
double segment_box_hit(const Vec3& p, const Vec3& d, const Box& box) {
  double t0 = -kInf, t1 = kInf;
  for (int i = 0; i < 3; ++i) {
    if (d[i] == 0.0) {
      if (p[i] <= box.min[i] || p[i] >= box.max[i]) return kInf;
      continue;
    }
    double lo = (box.min[i] - p[i]) / d[i];
    double hi = (box.max[i] - p[i]) / d[i];
    if (lo > hi) std::swap(lo, hi);
    t0 = std::max(t0, lo);
    t1 = std::min(t1, hi);
  }
  if (!(t0 < t1)) return kInf;  // touching contact only
  if (t1 <= 0.0 || t0 >= 1.0) return kInf;
  return std::max(t0, 0.0);
}

}  // namespace

std::string to_string(Action a) {
  switch (a) {
    case Action::kForward: return "forward";
    case Action::kBackward: return "backward";
    case Action::kLeft: return "left";
    case Action::kRight: return "right";
    case Action::kUp: return "up";
    case Action::kDown: return "down";
    case Action::kYawLeft: return "yaw_left";
    case Action::kYawRight: return "yaw_right";
    case Action::kStop: return "stop";
  }
  return "?";
}

std::optional<Action> action_from_string(const std::string& name) {
  for (int i = 0; i < kNumActions; ++i) {
    if (to_string(static_cast<Action>(i)) == name) return static_cast<Action>(i);
  }
  return std::nullopt;
}

std::string to_string(StepEvent e) {
  switch (e) {
    case StepEvent::kNone: return "none";
    case StepEvent::kCollision: return "collision";
    case StepEvent::kOutOfBounds: return "out_of_bounds";
    case StepEvent::kStopped: return "stopped";
  }
  return "?";
}

const SceneObject& Scene::target() const {
  for (const auto& obj : objects) {
    if (obj.is_target) return obj;
  }
  throw std::logic_error("scene has no target object");
}

bool Scene::inside_obstacle(const Vec3& p) const {
  for (const auto& box : obstacles) {
    if (box.contains_strict(p)) return true;
  }
  return false;
}

RenderResult render_scene(const Scene& scene, const Pose& pose,
                          const CameraIntrinsics& k, double max_range) {
  RenderResult res;
  res.depth = DepthImage(k.width, k.height);
  res.object_hit.assign(static_cast<size_t>(k.width) * k.height, -1);

  const Eigen::Matrix3d rot = pose.camera_to_world();
  const Vec3& origin = pose.position;

  for (int v = 0; v < k.height; ++v) {
    for (int u = 0; u < k.width; ++u) {
      const Vec3 dir = rot * Vec3((u - k.cx) / k.fx, (v - k.cy) / k.fy, 1.0);
      double best = kInf;
      std::int32_t hit = -1;
      for (const auto& box : scene.obstacles) {
        const double t = ray_box_entry(origin, dir, box);
        if (t < best) {
          best = t;
          hit = -1;
        }
      }
      for (std::size_t j = 0; j < scene.objects.size(); ++j) {
        const double t = ray_box_entry(origin, dir, scene.objects[j].box);
        if (t < best) {
          best = t;
          hit = static_cast<std::int32_t>(j);
        }
      }
      if (best <= max_range) {
        res.depth.at(u, v) = best;
        res.object_hit[static_cast<size_t>(v) * k.width + u] = hit;
      }
    }
  }
  return res;
}

DepthImage render_depth(const Scene& scene, const Pose& pose,
                        const CameraIntrinsics& k, double max_range) {
  return render_scene(scene, pose, k, max_range).depth;
}

SemanticObservation semantic_oracle(const Scene& scene, const Pose& pose,
                                    const CameraIntrinsics& k,
                                    const DepthImage& depth, double max_range) {
  if (depth.width != k.width || depth.height != k.height) {
    throw std::invalid_argument("semantic_oracle: depth image size does not match intrinsics");
  }
  const RenderResult res = render_scene(scene, pose, k, max_range);

  std::vector<std::vector<std::pair<int, int>>> masks(scene.objects.size());
  for (int v = 0; v < k.height; ++v) {
    for (int u = 0; u < k.width; ++u) {
      const std::int32_t hit = res.object_hit[static_cast<size_t>(v) * k.width + u];
      if (hit >= 0) masks[hit].push_back({u, v});
    }
  }

  SemanticObservation out;
  for (std::size_t j = 0; j < scene.objects.size(); ++j) {
    if (masks[j].empty()) continue;
    out.push_back({scene.objects[j].caption, scene.objects[j].relevance, std::move(masks[j])});
  }
  return out;
}

std::vector<Detection> detector_oracle(const Scene& scene, const Pose& pose,
                                       const CameraIntrinsics& k,
                                       const DepthImage& depth, double max_range,
                                       const DetectorConfig& cfg) {
  (void)depth;
  const RenderResult res = render_scene(scene, pose, k, max_range);

  std::int32_t target_idx = -1;
  for (std::size_t j = 0; j < scene.objects.size(); ++j) {
    if (scene.objects[j].is_target) target_idx = static_cast<std::int32_t>(j);
  }
  if (target_idx < 0) return {};

  int u0 = k.width, v0 = k.height, u1 = -1, v1 = -1;
  long long count = 0;
  for (int v = 0; v < k.height; ++v) {
    for (int u = 0; u < k.width; ++u) {
      if (res.object_hit[static_cast<size_t>(v) * k.width + u] != target_idx) continue;
      ++count;
      u0 = std::min(u0, u);
      v0 = std::min(v0, v);
      u1 = std::max(u1, u);
      v1 = std::max(v1, v);
    }
  }
  if (count == 0) return {};

  const double frac = static_cast<double>(count) / (static_cast<double>(k.width) * k.height);
  const double range = (scene.objects[target_idx].box.center() - pose.position).norm();
  const double conf = std::min(1.0, frac / cfg.frac_ref) * std::exp(-range / cfg.range_ref);
  return {Detection{u0, v0, u1, v1, std::clamp(conf, 0.0, 1.0)}};
}

Pose kinematic_apply(const Pose& pose, Action a, const ActionConfig& cfg) {
  Pose next = pose;
  if (a == Action::kStop) return next;
  if (a == Action::kYawLeft || a == Action::kYawRight) {
    const double sign = a == Action::kYawLeft ? 1.0 : -1.0;
    next.yaw = Pose::normalize_yaw(next.yaw + sign * cfg.yaw_step);
    return next;
  }
  const double cy = std::cos(pose.yaw), sy = std::sin(pose.yaw);
  Vec3 delta;
  switch (a) {
    case Action::kForward: delta = Vec3(cy, sy, 0.0); break;
    case Action::kBackward: delta = Vec3(-cy, -sy, 0.0); break;
    case Action::kLeft: delta = Vec3(-sy, cy, 0.0); break;
    case Action::kRight: delta = Vec3(sy, -cy, 0.0); break;
    case Action::kUp: delta = Vec3(0.0, 0.0, 1.0); break;
    case Action::kDown: delta = Vec3(0.0, 0.0, -1.0); break;
    default: delta = Vec3::Zero(); break;
  }
  next.position += cfg.translation_step * delta;
  return next;
}

StepResult step(const Scene& scene, const AgentState& s, Action a,
                const ActionConfig& cfg) {
  if (s.terminal()) throw std::logic_error("step: agent state is terminal");

  StepResult res{s, StepEvent::kNone};
  AgentState& next = res.state;

  if (a == Action::kStop) {
    next.stopped = true;
    res.event = StepEvent::kStopped;
    return res;
  }
  if (a == Action::kYawLeft || a == Action::kYawRight) {
    next.pose = kinematic_apply(next.pose, a, cfg);
    return res;
  }

  const Vec3 delta = kinematic_apply(s.pose, a, cfg).position - s.pose.position;

  // Earliest contact along the motion segment.
  double t_hit = kInf;
  StepEvent event = StepEvent::kNone;
  for (const auto& box : scene.obstacles) {
    const double t = segment_box_hit(s.pose.position, delta, box);
    if (t < t_hit) {
      t_hit = t;
      event = StepEvent::kCollision;
    }
  }
  // Exit parameter through the bounds box.
  double t_exit = kInf;
  for (int i = 0; i < 3; ++i) {
    if (delta[i] == 0.0) continue;
    const double face = delta[i] > 0.0 ? scene.bounds.max[i] : scene.bounds.min[i];
    t_exit = std::min(t_exit, (face - s.pose.position[i]) / delta[i]);
  }
  if (t_exit < t_hit && t_exit < 1.0) {
    t_hit = std::max(t_exit, 0.0);
    event = StepEvent::kOutOfBounds;
  }

  double applied = 1.0;
  if (event != StepEvent::kNone && t_hit <= 1.0) {
    applied = std::max(0.0, t_hit - 1e-9);
    next.collided = event == StepEvent::kCollision;
    next.out_of_bounds = event == StepEvent::kOutOfBounds;
    res.event = event;
  }
  next.pose.position += applied * delta;
  next.path_length += applied * delta.norm();
  return res;
}

std::optional<Vec3> ground_target(const Detection& best, const DepthImage& depth,
                                  const CameraIntrinsics& k, const Pose& pose) {
  std::vector<double> values;
  for (int v = std::max(0, best.v0); v <= std::min(k.height - 1, best.v1); ++v) {
    for (int u = std::max(0, best.u0); u <= std::min(k.width - 1, best.u1); ++u) {
      if (depth.valid_at(u, v)) values.push_back(depth.at(u, v));
    }
  }
  if (values.empty()) return std::nullopt;

  // Median = element n/2 of the sorted depths (upper middle for even n).
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + mid, values.end());
  const double d = values[mid];

  const double cu = 0.5 * (best.u0 + best.u1);
  const double cv = 0.5 * (best.v0 + best.v1);
  return back_project_pixel(cu, cv, d, k, pose);
}

}  // namespace aeronav
