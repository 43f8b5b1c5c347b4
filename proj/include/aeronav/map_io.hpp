// Copyright (c) 2026 The aeronav Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <string>

#include "aeronav/maps.hpp"

namespace aeronav {

/// Flat binary map container (see docs/FORMATS.md):
///   magic "AERMAP01" | GridSpec (origin 3xf64, resolution f64, dims 3xi64,
///   all little-endian) | channel count i64 | per channel: tag i64 + payload.
/// Payloads are row-major x-fastest: f64 for score/depth/exploration, u8 for
/// occupancy. A text sidecar "<path>.meta" records the layout plus caller
/// metadata; both files are byte-deterministic for identical inputs.
enum class MapChannel : std::int64_t {
  kAttractionScore = 0,
  kObservationDepth = 1,
  kExploration = 2,
  kObstacle = 3,
};

void save_attraction_map(const std::string& path, const AttractionMap& map,
                         const std::map<std::string, std::string>& meta = {});
AttractionMap load_attraction_map(const std::string& path);

void save_map_frame(const std::string& path, const MapFrame& frame,
                    const std::map<std::string, std::string>& meta = {});
MapFrame load_map_frame(const std::string& path, double lambda = 0.05,
                        double epsilon = 5.0);

}  // namespace aeronav
