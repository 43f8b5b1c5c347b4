// Copyright (c) 2026 The aeronav Authors
// SPDX-License-Identifier: Apache-2.0

#include "aeronav/scene.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "aeronav/pathfind.hpp"
#include "aeronav/rng.hpp"

namespace aeronav {

namespace {

using nlohmann::json;

json vec_to_json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

Vec3 vec_from_json(const json& j) {
  if (!j.is_array() || j.size() != 3) throw std::runtime_error("expected a 3-element array");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

json box_to_json(const Box& b) {
  return json{{"min", vec_to_json(b.min)}, {"max", vec_to_json(b.max)}};
}

Box box_from_json(const json& j) {
  return {vec_from_json(j.at("min")), vec_from_json(j.at("max"))};
}

Box random_footprint_box(Rng& rng, const Box& area, double min_size,
                         double max_size, double height_lo, double height_hi) {
  const double sx = rng.uniform(min_size, max_size);
  const double sy = rng.uniform(min_size, max_size);
  const double h = rng.uniform(height_lo, height_hi);
  const double x = rng.uniform(area.min.x(), area.max.x() - sx);
  const double y = rng.uniform(area.min.y(), area.max.y() - sy);
  return {{x, y, 0.0}, {x + sx, y + sy, h}};
}

}  // namespace

GridSpec grid_for_scene(const Scene& scene, double resolution) {
  const Vec3 extent = scene.bounds.extent();
  GridSpec g;
  g.origin = scene.bounds.min;
  g.resolution = resolution;
  g.nx = std::max(1, static_cast<int>(std::ceil(extent.x() / resolution - 1e-9)));
  g.ny = std::max(1, static_cast<int>(std::ceil(extent.y() / resolution - 1e-9)));
  g.nz = std::max(1, static_cast<int>(std::ceil(extent.z() / resolution - 1e-9)));
  return g;
}

Scene generate_scene(std::uint64_t seed, const SceneGenParams& p) {
  for (int attempt = 0; attempt < p.max_retries; ++attempt) {
    std::uint64_t mix = seed + 0x517cc1b727220a95ULL * static_cast<std::uint64_t>(attempt);
    Rng rng(Rng::splitmix64(mix));

    Scene scene;
    scene.seed = seed;
    {
      std::ostringstream id;
      id << "scene-" << seed;
      scene.id = id.str();
    }
    scene.goal = p.goal;
    scene.bounds = {{0.0, 0.0, -2.0}, {p.arena_size, p.arena_size, p.arena_height}};

    // Ground slab: makes "down" collisions depth-visible.
    scene.obstacles.push_back({{0.0, 0.0, -2.0}, {p.arena_size, p.arena_size, 0.0}});

    const Box placement{{p.wall_margin, p.wall_margin, 0.0},
                        {p.arena_size - p.wall_margin, p.arena_size - p.wall_margin, 0.0}};

    // Target first so obstacles can keep their distance from it.
    SceneObject target;
    target.id = 0;
    target.caption = p.goal;
    target.box = random_footprint_box(rng, placement, p.object_min_size, p.object_max_size,
                                      0.6 * p.object_min_size, p.object_max_size);
    target.relevance = 1.0;
    target.is_target = true;
    scene.objects.push_back(target);

    bool ok = true;
    for (int i = 0; i < p.n_distractors; ++i) {
      SceneObject obj;
      obj.id = i + 1;
      obj.caption = "distractor-" + std::to_string(i + 1);
      obj.relevance = rng.uniform(p.distractor_relevance_min, p.distractor_relevance_max);
      obj.is_target = false;
      bool placed = false;
      for (int tries = 0; tries < 64 && !placed; ++tries) {
        obj.box = random_footprint_box(rng, placement, p.object_min_size, p.object_max_size,
                                       0.6 * p.object_min_size, p.object_max_size);
        placed = !obj.box.inflated(2.0).overlaps(target.box);
        for (const auto& other : scene.objects) {
          placed = placed && !obj.box.inflated(2.0).overlaps(other.box);
        }
      }
      if (!placed) { ok = false; break; }
      scene.objects.push_back(obj);
    }
    if (!ok) continue;

    for (int i = 0; i < p.n_obstacles; ++i) {
      bool placed = false;
      Box box;
      for (int tries = 0; tries < 64 && !placed; ++tries) {
        box = random_footprint_box(rng, placement, p.obstacle_min_size, p.obstacle_max_size,
                                   0.5 * p.obstacle_max_height, p.obstacle_max_height);
        placed = true;
        for (const auto& obj : scene.objects) {
          if (box.overlaps(obj.box.inflated(4.0))) { placed = false; break; }
        }
      }
      if (!placed) { ok = false; break; }
      scene.obstacles.push_back(box);
    }
    if (!ok) continue;

    // Start pose: clearance from solids, inside the requested distance band.
    const Vec3 target_center = target.box.center();
    bool start_found = false;
    for (int tries = 0; tries < 256 && !start_found; ++tries) {
      Vec3 pos(rng.uniform(p.wall_margin, p.arena_size - p.wall_margin),
               rng.uniform(p.wall_margin, p.arena_size - p.wall_margin),
               rng.uniform(p.start_height_min, p.start_height_max));
      const double dist = (pos - target_center).norm();
      if (dist < p.min_start_distance || dist > p.max_start_distance) continue;
      bool clear = true;
      for (const auto& box : scene.obstacles) {
        if (box.inflated(p.start_clearance).contains(pos)) { clear = false; break; }
      }
      for (const auto& obj : scene.objects) {
        if (obj.box.inflated(p.start_clearance).contains(pos)) { clear = false; break; }
      }
      if (!clear) continue;
      scene.start.position = pos;
      scene.start.yaw = Pose::normalize_yaw(rng.uniform(-3.141592653589793, 3.141592653589793));
      scene.start.pitch = p.camera_pitch;
      start_found = true;
    }
    if (!start_found) continue;

    const auto route = shortest_path_length(scene, scene.start.position, target_center,
                                            p.feasibility_resolution, p.success_distance);
    if (!route) continue;

    return scene;
  }
  throw std::runtime_error("generate_scene: constraints infeasible after bounded retries");
}

std::string scene_to_json(const Scene& scene) {
  json j;
  j["version"] = 1;
  j["id"] = scene.id;
  j["seed"] = scene.seed;
  j["goal"] = scene.goal;
  j["bounds"] = box_to_json(scene.bounds);
  j["start"] = {{"position", vec_to_json(scene.start.position)},
                {"yaw", scene.start.yaw},
                {"pitch", scene.start.pitch}};
  j["obstacles"] = json::array();
  for (const auto& box : scene.obstacles) j["obstacles"].push_back(box_to_json(box));
  j["objects"] = json::array();
  for (const auto& obj : scene.objects) {
    j["objects"].push_back(json{{"id", obj.id},
                                {"caption", obj.caption},
                                {"box", box_to_json(obj.box)},
                                {"relevance", obj.relevance},
                                {"is_target", obj.is_target}});
  }
  return j.dump(2) + "\n";
}

Scene scene_from_json(const std::string& text) {
  const json j = json::parse(text);
  if (j.value("version", 0) != 1) throw std::runtime_error("unsupported scene file version");

  Scene scene;
  scene.id = j.at("id").get<std::string>();
  scene.seed = j.at("seed").get<std::uint64_t>();
  scene.goal = j.at("goal").get<std::string>();
  scene.bounds = box_from_json(j.at("bounds"));
  scene.start.position = vec_from_json(j.at("start").at("position"));
  scene.start.yaw = j.at("start").at("yaw").get<double>();
  scene.start.pitch = j.at("start").at("pitch").get<double>();
  for (const auto& item : j.at("obstacles")) scene.obstacles.push_back(box_from_json(item));
  int targets = 0;
  for (const auto& item : j.at("objects")) {
    SceneObject obj;
    obj.id = item.at("id").get<int>();
    obj.caption = item.at("caption").get<std::string>();
    obj.box = box_from_json(item.at("box"));
    obj.relevance = item.at("relevance").get<double>();
    obj.is_target = item.at("is_target").get<bool>();
    targets += obj.is_target ? 1 : 0;
    scene.objects.push_back(obj);
  }
  if (targets != 1) throw std::runtime_error("scene must contain exactly one target object");
  return scene;
}

void save_scene(const std::string& path, const Scene& scene) {
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  os << scene_to_json(scene);
}

Scene load_scene(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open: " + path);
  std::ostringstream buf;
  buf << is.rdbuf();
  return scene_from_json(buf.str());
}

}  // namespace aeronav
