// Copyright (c) 2026 The aeronav Authors
// SPDX-License-Identifier: Apache-2.0

#include "aeronav/raycast.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace aeronav {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Clips parameter range [0,1] of a + t*d against the slab [0, n] on one axis.
bool clip_axis(double a, double d, double n, double& t0, double& t1) {
  if (d == 0.0) {
    return a >= 0.0 && a <= n;
  }
  double lo = (0.0 - a) / d;
  double hi = (n - a) / d;
  if (lo > hi) std::swap(lo, hi);
  t0 = std::max(t0, lo);
  t1 = std::min(t1, hi);
  return t0 <= t1;
}

}  // namespace

std::vector<VoxelIndex> traverse(const Ray& r, const GridSpec& g) {
  if (g.resolution <= 0.0) throw std::invalid_argument("traverse: resolution must be > 0");

  const Vec3 a = (r.origin - g.origin) / g.resolution;
  const Vec3 b = (r.endpoint - g.origin) / g.resolution;
  const Vec3 d = b - a;
  const double n[3] = {static_cast<double>(g.nx), static_cast<double>(g.ny),
                       static_cast<double>(g.nz)};

  double t0 = 0.0, t1 = 1.0;
  for (int i = 0; i < 3; ++i) {
    if (!clip_axis(a[i], d[i], n[i], t0, t1)) return {};
  }

  std::vector<VoxelIndex> out;
  const Vec3 s = a + t0 * d;
  int c[3] = {static_cast<int>(std::floor(s.x())), static_cast<int>(std::floor(s.y())),
              static_cast<int>(std::floor(s.z()))};
  int step[3];
  for (int i = 0; i < 3; ++i) step[i] = d[i] > 0.0 ? 1 : (d[i] < 0.0 ? -1 : 0);

  auto emit = [&](const int cell[3]) {
    const VoxelIndex v{cell[0], cell[1], cell[2]};
    if (g.contains(v)) out.push_back(v);
  };

  // Parameter value at which axis i next changes its floor cell. For a
  // positive direction the flip happens *at* the boundary (left-closed cells);
  // for a negative direction it happens just after it.
  auto next_crossing = [&](int i) -> double {
    if (step[i] == 0) return kInf;
    const double boundary = step[i] > 0 ? c[i] + 1.0 : static_cast<double>(c[i]);
    return (boundary - a[i]) / d[i];
  };

  const int max_iters = g.nx + g.ny + g.nz + 8;
  double t_cur = t0;
  emit(c);
  for (int iter = 0; iter < max_iters; ++iter) {
    double tn[3];
    double t_step = kInf;
    for (int i = 0; i < 3; ++i) {
      tn[i] = std::max(next_crossing(i), t_cur);
      t_step = std::min(t_step, tn[i]);
    }
    if (t_step == kInf) break;

    bool pos_tied = false, neg_tied = false;
    for (int i = 0; i < 3; ++i) {
      if (tn[i] != t_step) continue;
      (step[i] > 0 ? pos_tied : neg_tied) = true;
    }
    // Positive-axis flips land on the boundary itself, so they may happen at
    // t_step == t1 (an endpoint exactly on a plane). Negative-axis flips
    // only happen strictly before the segment ends.
    const bool apply_pos = pos_tied && t_step <= t1;
    const bool apply_neg = neg_tied && t_step < t1;
    if (!apply_pos && !apply_neg) break;

    if (apply_pos) {
      for (int i = 0; i < 3; ++i) {
        if (tn[i] == t_step && step[i] > 0) c[i] += 1;
      }
      // A mixed +/- tie holds the positive-flip cell for a single instant;
      // the floor path still visits it.
      if (apply_neg) emit(c);
    }
    if (apply_neg) {
      for (int i = 0; i < 3; ++i) {
        if (tn[i] == t_step && step[i] < 0) c[i] -= 1;
      }
    }
    emit(c);
    t_cur = t_step;
    if (t_cur >= t1) break;
  }
  return out;
}

std::vector<VoxelIndex> sample_traverse(const Ray& r, const GridSpec& g,
                                        double interval) {
  if (interval <= 0.0) throw std::invalid_argument("sample_traverse: interval must be > 0");

  const Vec3 delta = r.endpoint - r.origin;
  const double len = delta.norm();
  std::vector<VoxelIndex> out;
  auto visit = [&](const Vec3& p) {
    if (auto v = world_to_voxel(p, g)) {
      if (out.empty() || !(out.back() == *v)) {
        // A straight segment never re-enters a cell, so checking the last
        // emitted cell is enough to de-duplicate.
        out.push_back(*v);
      }
    }
  };

  visit(r.origin);
  if (len > 0.0) {
    const long long n = static_cast<long long>(std::floor(len / interval));
    for (long long i = 1; i <= n; ++i) {
      visit(r.origin + delta * (static_cast<double>(i) * interval / len));
    }
    visit(r.endpoint);
  }
  return out;
}

}  // namespace aeronav
