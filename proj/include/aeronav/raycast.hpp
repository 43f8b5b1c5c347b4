// Copyright (c) 2026 The aeronav Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "aeronav/geometry.hpp"

namespace aeronav {

struct Ray {
  Vec3 origin;
  Vec3 endpoint;
};

/// Exact ordered list of in-bounds voxels swept by the segment, origin first.
///
/// Cell membership follows the grid's floor convention: the traversal is the
/// sequence of distinct values of floor((p(t) - origin)/resolution) as t runs
/// over the clipped segment. Consequences worth knowing:
///   - crossing an exact grid corner steps the tied axes together (x, then y,
///     then z within one boundary event), so zero-length corner cells are not
///     emitted;
///   - an endpoint lying exactly on a grid plane contributes the cell the
///     floor convention assigns it, even though the open segment only grazes
///     it. That keeps sample_traverse() a subset of traverse() for any
///     sampling interval, boundary samples included.
std::vector<VoxelIndex> traverse(const Ray& r, const GridSpec& g);

/// Reference traversal: voxels of points sampled every `interval` meters
/// along the segment (endpoint included), de-duplicated in first-hit order.
/// Can miss thin corner clippings; kept as the oracle for traverse().
std::vector<VoxelIndex> sample_traverse(const Ray& r, const GridSpec& g,
                                        double interval);

}  // namespace aeronav
