// Copyright (c) 2026 The aeronav Authors
// SPDX-License-Identifier: Apache-2.0

#include "aeronav/policy.hpp"

#include <bit>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace aeronav {

namespace {

Dense init_dense(int out, int in, Rng& rng) {
  // Uniform Xavier bounds; biases start at zero.
  const double bound = std::sqrt(6.0 / (in + out));
  Dense d;
  d.w.resize(out, in);
  for (int r = 0; r < out; ++r) {
    for (int c = 0; c < in; ++c) d.w(r, c) = rng.uniform(-bound, bound);
  }
  d.b = Eigen::VectorXd::Zero(out);
  return d;
}

bool dense_finite(const Dense& d) { return d.w.allFinite() && d.b.allFinite(); }

void append_flat(Eigen::VectorXd& flat, std::int64_t& at, const Dense& d) {
  for (int c = 0; c < d.w.cols(); ++c) {
    for (int r = 0; r < d.w.rows(); ++r) flat[at++] = d.w(r, c);
  }
  for (int r = 0; r < d.b.size(); ++r) flat[at++] = d.b(r);
}

void read_flat(const Eigen::VectorXd& flat, std::int64_t& at, Dense& d) {
  for (int c = 0; c < d.w.cols(); ++c) {
    for (int r = 0; r < d.w.rows(); ++r) d.w(r, c) = flat[at++];
  }
  for (int r = 0; r < d.b.size(); ++r) d.b(r) = flat[at++];
}

std::int64_t dense_size(const Dense& d) { return d.w.size() + d.b.size(); }

Eigen::VectorXd pose_features(const Pose& pose, const GridSpec& g) {
  const Vec3 lo = g.min_corner();
  const Vec3 hi = g.max_corner();
  Eigen::VectorXd f(6);
  for (int i = 0; i < 3; ++i) {
    const double span = std::max(hi[i] - lo[i], 1e-9);
    f[i] = 2.0 * (pose.position[i] - lo[i]) / span - 1.0;
  }
  f[3] = std::sin(pose.yaw);
  f[4] = std::cos(pose.yaw);
  f[5] = pose.pitch * (2.0 / 3.141592653589793);
  return f;
}

// Mean-pools an egocentric (2r+1)^2 x nz crop into pool x pool patches with z
// as channels; out-of-grid cells contribute zeros.
Eigen::VectorXd pool_crop(const GridSpec& g, int cx, int cy, int radius, int pool,
                          const std::function<double(const VoxelIndex&)>& value) {
  const int size = 2 * radius + 1;
  Eigen::VectorXd out = Eigen::VectorXd::Zero(static_cast<int>(g.nz) * pool * pool);
  for (int py = 0; py < pool; ++py) {
    const int y_begin = py * size / pool, y_end = (py + 1) * size / pool;
    for (int px = 0; px < pool; ++px) {
      const int x_begin = px * size / pool, x_end = (px + 1) * size / pool;
      const double inv_count = 1.0 / ((y_end - y_begin) * (x_end - x_begin));
      for (int z = 0; z < g.nz; ++z) {
        double sum = 0.0;
        for (int y = y_begin; y < y_end; ++y) {
          for (int x = x_begin; x < x_end; ++x) {
            const VoxelIndex v{cx - radius + x, cy - radius + y, z};
            if (g.contains(v)) sum += value(v);
          }
        }
        out[z * pool * pool + py * pool + px] = sum * inv_count;
      }
    }
  }
  return out;
}

void softmax_into(const Eigen::VectorXd& logits, PolicyOutput& out) {
  const double m = logits.maxCoeff();
  Eigen::VectorXd shifted = logits.array() - m;
  Eigen::VectorXd e = shifted.array().exp();
  const double sum = e.sum();
  out.logits = logits;
  out.probs = e / sum;
  out.log_probs = shifted.array() - std::log(sum);
}

}  // namespace

PolicyParams PolicyParams::init(const PolicyConfig& cfg,
                                const std::vector<int>& group_dims, Rng& rng) {
  PolicyParams p;
  p.cfg = cfg;
  p.group_dims = group_dims;
  for (int dim : group_dims) p.extractors.push_back(init_dense(cfg.feature_dim, dim, rng));
  const int trunk = p.trunk_dim();
  p.actor_hidden = init_dense(cfg.hidden_dim, trunk, rng);
  p.actor_out = init_dense(cfg.n_actions, cfg.hidden_dim, rng);
  p.critic_hidden = init_dense(cfg.hidden_dim, trunk, rng);
  p.critic_out = init_dense(1, cfg.hidden_dim, rng);
  return p;
}

int PolicyParams::trunk_dim() const {
  return static_cast<int>(extractors.size()) * cfg.feature_dim + cfg.pose_dim();
}

bool PolicyParams::finite() const {
  for (const auto& e : extractors) {
    if (!dense_finite(e)) return false;
  }
  return dense_finite(actor_hidden) && dense_finite(actor_out) &&
         dense_finite(critic_hidden) && dense_finite(critic_out);
}

std::int64_t PolicyParams::parameter_count() const {
  std::int64_t n = 0;
  for (const auto& e : extractors) n += dense_size(e);
  return n + dense_size(actor_hidden) + dense_size(actor_out) +
         dense_size(critic_hidden) + dense_size(critic_out);
}

Eigen::VectorXd PolicyParams::to_flat() const {
  Eigen::VectorXd flat(parameter_count());
  std::int64_t at = 0;
  for (const auto& e : extractors) append_flat(flat, at, e);
  append_flat(flat, at, actor_hidden);
  append_flat(flat, at, actor_out);
  append_flat(flat, at, critic_hidden);
  append_flat(flat, at, critic_out);
  return flat;
}

void PolicyParams::from_flat(const Eigen::VectorXd& flat) {
  if (flat.size() != parameter_count()) {
    throw std::invalid_argument("from_flat: size mismatch");
  }
  std::int64_t at = 0;
  for (auto& e : extractors) read_flat(flat, at, e);
  read_flat(flat, at, actor_hidden);
  read_flat(flat, at, actor_out);
  read_flat(flat, at, critic_hidden);
  read_flat(flat, at, critic_out);
}

PolicyGrads PolicyGrads::zeros_like(const PolicyParams& p) {
  PolicyGrads g;
  auto zero = [](const Dense& d) {
    return Dense{Eigen::MatrixXd::Zero(d.w.rows(), d.w.cols()),
                 Eigen::VectorXd::Zero(d.b.size())};
  };
  for (const auto& e : p.extractors) g.extractors.push_back(zero(e));
  g.actor_hidden = zero(p.actor_hidden);
  g.actor_out = zero(p.actor_out);
  g.critic_hidden = zero(p.critic_hidden);
  g.critic_out = zero(p.critic_out);
  return g;
}

void PolicyGrads::scale(double s) {
  for (auto& e : extractors) {
    e.w *= s;
    e.b *= s;
  }
  for (Dense* d : {&actor_hidden, &actor_out, &critic_hidden, &critic_out}) {
    d->w *= s;
    d->b *= s;
  }
}

Eigen::VectorXd PolicyGrads::to_flat() const {
  std::int64_t n = 0;
  for (const auto& e : extractors) n += dense_size(e);
  n += dense_size(actor_hidden) + dense_size(actor_out) + dense_size(critic_hidden) +
       dense_size(critic_out);
  Eigen::VectorXd flat(n);
  std::int64_t at = 0;
  for (const auto& e : extractors) append_flat(flat, at, e);
  append_flat(flat, at, actor_hidden);
  append_flat(flat, at, actor_out);
  append_flat(flat, at, critic_hidden);
  append_flat(flat, at, critic_out);
  return flat;
}

std::vector<int> group_dims_for(const PolicyConfig& cfg, const GridSpec& g) {
  if (cfg.source == PolicyConfig::Source::kRawDepth) {
    return {cfg.raw_pool_grid * cfg.raw_pool_grid};
  }
  const int per_map = cfg.pool_grid * cfg.pool_grid * g.nz;
  return {per_map, per_map, per_map};
}

PooledObs pool_maps(const MapFrame& frame, const Pose& pose, const PolicyConfig& cfg) {
  const GridSpec& g = frame.grid;
  const Vec3 q = (pose.position - g.origin) / g.resolution;
  const int cx = static_cast<int>(std::floor(q.x()));
  const int cy = static_cast<int>(std::floor(q.y()));

  const double inv_eps = 1.0 / std::max(frame.exploration.epsilon(), 1e-9);
  PooledObs obs;
  obs.groups.push_back(pool_crop(g, cx, cy, cfg.crop_radius, cfg.pool_grid,
                                 [&](const VoxelIndex& v) { return frame.attraction.score(v); }));
  obs.groups.push_back(pool_crop(g, cx, cy, cfg.crop_radius, cfg.pool_grid,
                                 [&](const VoxelIndex& v) {
                                   return frame.exploration.value(v) * inv_eps;
                                 }));
  obs.groups.push_back(pool_crop(g, cx, cy, cfg.crop_radius, cfg.pool_grid,
                                 [&](const VoxelIndex& v) {
                                   return frame.obstacle.occupied(v) ? 1.0 : 0.0;
                                 }));
  obs.pose = pose_features(pose, g);
  return obs;
}

PooledObs pool_raw_depth(const DepthImage& depth, double max_range, const Pose& pose,
                         const GridSpec& g, const PolicyConfig& cfg) {
  const int pool = cfg.raw_pool_grid;
  PooledObs obs;
  Eigen::VectorXd values = Eigen::VectorXd::Zero(pool * pool);
  for (int py = 0; py < pool; ++py) {
    const int v_begin = py * depth.height / pool, v_end = (py + 1) * depth.height / pool;
    for (int px = 0; px < pool; ++px) {
      const int u_begin = px * depth.width / pool, u_end = (px + 1) * depth.width / pool;
      double sum = 0.0;
      int count = 0;
      for (int v = v_begin; v < v_end; ++v) {
        for (int u = u_begin; u < u_end; ++u) {
          sum += depth.valid_at(u, v) ? depth.at(u, v) / max_range : 1.0;
          ++count;
        }
      }
      values[py * pool + px] = count > 0 ? sum / count : 1.0;
    }
  }
  obs.groups.push_back(std::move(values));
  obs.pose = pose_features(pose, g);
  return obs;
}

PolicyOutput forward_full(const PooledObs& obs, const PolicyParams& params,
                          ForwardCache* cache) {
  if (obs.groups.size() != params.extractors.size()) {
    throw std::invalid_argument("forward_full: group count mismatch");
  }
  ForwardCache local;
  ForwardCache& c = cache ? *cache : local;

  c.hidden_groups.clear();
  c.trunk.resize(params.trunk_dim());
  int at = 0;
  for (std::size_t i = 0; i < obs.groups.size(); ++i) {
    const Dense& e = params.extractors[i];
    Eigen::VectorXd h = (e.w * obs.groups[i] + e.b).array().tanh();
    c.trunk.segment(at, h.size()) = h;
    at += static_cast<int>(h.size());
    c.hidden_groups.push_back(std::move(h));
  }
  c.trunk.segment(at, obs.pose.size()) = obs.pose;

  c.actor_hidden = (params.actor_hidden.w * c.trunk + params.actor_hidden.b).array().tanh();
  const Eigen::VectorXd logits = params.actor_out.w * c.actor_hidden + params.actor_out.b;
  c.critic_hidden = (params.critic_hidden.w * c.trunk + params.critic_hidden.b).array().tanh();
  const double value = (params.critic_out.w * c.critic_hidden + params.critic_out.b)(0);

  softmax_into(logits, c.out);
  c.out.value = value;
  if (!c.out.probs.allFinite() || !std::isfinite(value)) {
    throw std::runtime_error("forward_full: non-finite network output");
  }
  return c.out;
}

void backward_full(const PooledObs& obs, const PolicyParams& params,
                   const ForwardCache& cache, const Eigen::VectorXd& dlogits,
                   double dvalue, PolicyGrads& grads) {
  // Actor head.
  grads.actor_out.w.noalias() += dlogits * cache.actor_hidden.transpose();
  grads.actor_out.b += dlogits;
  Eigen::VectorXd d_actor_hidden =
      (params.actor_out.w.transpose() * dlogits).array() *
      (1.0 - cache.actor_hidden.array().square());
  grads.actor_hidden.w.noalias() += d_actor_hidden * cache.trunk.transpose();
  grads.actor_hidden.b += d_actor_hidden;
  Eigen::VectorXd d_trunk = params.actor_hidden.w.transpose() * d_actor_hidden;

  // Critic head.
  grads.critic_out.w.noalias() += dvalue * cache.critic_hidden.transpose();
  grads.critic_out.b(0) += dvalue;
  Eigen::VectorXd d_critic_hidden =
      (dvalue * params.critic_out.w.transpose()).array() *
      (1.0 - cache.critic_hidden.array().square());
  grads.critic_hidden.w.noalias() += d_critic_hidden * cache.trunk.transpose();
  grads.critic_hidden.b += d_critic_hidden;
  d_trunk.noalias() += params.critic_hidden.w.transpose() * d_critic_hidden;

  // Extractors (the pose tail of the trunk has no parameters upstream).
  int at = 0;
  for (std::size_t i = 0; i < params.extractors.size(); ++i) {
    const Eigen::VectorXd& h = cache.hidden_groups[i];
    Eigen::VectorXd d_pre = d_trunk.segment(at, h.size()).array() * (1.0 - h.array().square());
    grads.extractors[i].w.noalias() += d_pre * obs.groups[i].transpose();
    grads.extractors[i].b += d_pre;
    at += static_cast<int>(h.size());
  }
}

MapFeatures extract_features(const MapFrame& frame, const AgentState& s,
                             const PolicyParams& params) {
  const PooledObs obs = pool_maps(frame, s.pose, params.cfg);
  MapFeatures f;
  f.n_groups = static_cast<int>(params.extractors.size());
  f.group_dim = params.cfg.feature_dim;
  f.values.resize(params.trunk_dim());
  int at = 0;
  for (std::size_t i = 0; i < params.extractors.size(); ++i) {
    const Dense& e = params.extractors[i];
    f.values.segment(at, e.b.size()) = (e.w * obs.groups[i] + e.b).array().tanh();
    at += static_cast<int>(e.b.size());
  }
  f.values.segment(at, obs.pose.size()) = obs.pose;
  return f;
}

PolicyOutput policy_forward(const MapFeatures& f, const PolicyParams& params) {
  if (!params.finite()) throw std::runtime_error("policy_forward: non-finite parameters");
  if (!f.values.allFinite()) throw std::runtime_error("policy_forward: non-finite features");

  PolicyOutput out;
  const Eigen::VectorXd ah =
      (params.actor_hidden.w * f.values + params.actor_hidden.b).array().tanh();
  const Eigen::VectorXd logits = params.actor_out.w * ah + params.actor_out.b;
  const Eigen::VectorXd ch =
      (params.critic_hidden.w * f.values + params.critic_hidden.b).array().tanh();
  softmax_into(logits, out);
  out.value = (params.critic_out.w * ch + params.critic_out.b)(0);
  return out;
}

bool is_unsafe(const ObstacleMap& obst, const Vec3& from, const Vec3& to) {
  const GridSpec& g = obst.grid();
  const auto dest = world_to_voxel(to, g);
  if (!dest) return true;
  if (obst.occupied_or_adjacent(*dest)) return true;
  for (const auto& cell : traverse({from, to}, g)) {
    if (obst.occupied(cell)) return true;
  }
  return false;
}

std::vector<VisibleVoxel> frustum_voxels(const ObstacleMap& obst, const Pose& pose,
                                         const CameraIntrinsics& k, int stride,
                                         double depth) {
  const GridSpec& g = obst.grid();
  std::vector<VisibleVoxel> out;
  std::vector<std::uint32_t> slot(g.cell_count(), 0);

  for (int v = 0; v < k.height; v += stride) {
    for (int u = 0; u < k.width; u += stride) {
      const Vec3 end = back_project_pixel(u, v, depth, k, pose);
      for (const auto& cell : traverse({pose.position, end}, g)) {
        auto& s = slot[g.flatten(cell)];
        if (s == 0) {
          out.push_back({cell, (g.center(cell) - pose.position).norm(), 1});
          s = static_cast<std::uint32_t>(out.size());
        } else {
          out[s - 1].rays += 1;
        }
        if (obst.occupied(cell)) break;  // known geometry blocks the ray
      }
    }
  }
  return out;
}

Action heuristic_decide(const MapFrame& frame, const AgentState& s,
                        const HeuristicConfig& hcfg, const RewardConfig& rcfg,
                        const ActionConfig& acfg, const CameraIntrinsics& k) {
  Action best = Action::kStop;
  double best_score = -std::numeric_limits<double>::infinity();

  for (Action a : kMotionActions) {
    const Pose next = kinematic_apply(s.pose, a, acfg);
    if (is_unsafe(frame.obstacle, s.pose.position, next.position)) continue;
    const auto visible = frustum_voxels(frame.obstacle, next, k, hcfg.frustum_stride,
                                        hcfg.frustum_depth);
    const double score = hcfg.w_attr * attraction_reward(frame.attraction, visible, rcfg) +
                         hcfg.w_expl * exploration_reward(frame.exploration, visible, rcfg);
    if (score > best_score) {
      best_score = score;
      best = a;
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// Checkpoints: magic | version | config | group dims | flat parameters | seed.
// ---------------------------------------------------------------------------

namespace {

constexpr char kCkptMagic[8] = {'A', 'E', 'R', 'C', 'K', 'P', '0', '1'};

static_assert(std::endian::native == std::endian::little,
              "checkpoints are little-endian; big-endian hosts are unsupported");

void put_i64(std::ostream& os, std::int64_t v) { os.write(reinterpret_cast<const char*>(&v), 8); }

std::int64_t get_i64(std::istream& is) {
  std::int64_t v = 0;
  is.read(reinterpret_cast<char*>(&v), 8);
  return v;
}

}  // namespace

void save_checkpoint(const std::string& path, const PolicyParams& params,
                     std::uint64_t seed) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);

  os.write(kCkptMagic, sizeof(kCkptMagic));
  put_i64(os, 1);  // version
  put_i64(os, params.cfg.source == PolicyConfig::Source::kRawDepth ? 1 : 0);
  put_i64(os, params.cfg.crop_radius);
  put_i64(os, params.cfg.pool_grid);
  put_i64(os, params.cfg.raw_pool_grid);
  put_i64(os, params.cfg.feature_dim);
  put_i64(os, params.cfg.hidden_dim);
  put_i64(os, params.cfg.n_actions);
  put_i64(os, static_cast<std::int64_t>(params.group_dims.size()));
  for (int dim : params.group_dims) put_i64(os, dim);

  const Eigen::VectorXd flat = params.to_flat();
  put_i64(os, flat.size());
  os.write(reinterpret_cast<const char*>(flat.data()),
           static_cast<std::streamsize>(flat.size() * sizeof(double)));
  put_i64(os, static_cast<std::int64_t>(seed));
  if (!os) throw std::runtime_error("write failed: " + path);
}

Checkpoint load_checkpoint(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open: " + path);

  char magic[8];
  is.read(magic, 8);
  if (!is || std::memcmp(magic, kCkptMagic, 8) != 0) {
    throw std::runtime_error("not an aeronav checkpoint: " + path);
  }
  if (get_i64(is) != 1) throw std::runtime_error("unsupported checkpoint version: " + path);

  PolicyConfig cfg;
  cfg.source = get_i64(is) == 1 ? PolicyConfig::Source::kRawDepth : PolicyConfig::Source::kMaps;
  cfg.crop_radius = static_cast<int>(get_i64(is));
  cfg.pool_grid = static_cast<int>(get_i64(is));
  cfg.raw_pool_grid = static_cast<int>(get_i64(is));
  cfg.feature_dim = static_cast<int>(get_i64(is));
  cfg.hidden_dim = static_cast<int>(get_i64(is));
  cfg.n_actions = static_cast<int>(get_i64(is));

  std::vector<int> group_dims(static_cast<std::size_t>(get_i64(is)));
  for (auto& dim : group_dims) dim = static_cast<int>(get_i64(is));

  Rng rng(0);
  Checkpoint ckpt{PolicyParams::init(cfg, group_dims, rng), 0};
  const std::int64_t n = get_i64(is);
  if (n != ckpt.params.parameter_count()) {
    throw std::runtime_error("checkpoint parameter count mismatch: " + path);
  }
  Eigen::VectorXd flat(n);
  is.read(reinterpret_cast<char*>(flat.data()),
          static_cast<std::streamsize>(n * sizeof(double)));
  ckpt.params.from_flat(flat);
  ckpt.seed = static_cast<std::uint64_t>(get_i64(is));
  if (!is) throw std::runtime_error("truncated checkpoint: " + path);
  return ckpt;
}

}  // namespace aeronav
