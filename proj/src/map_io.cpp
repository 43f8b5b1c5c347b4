// Copyright (c) 2026 The aeronav Authors
// SPDX-License-Identifier: Apache-2.0

#include "aeronav/map_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

static_assert(std::endian::native == std::endian::little,
              "map files are little-endian; big-endian hosts are unsupported");

namespace aeronav {

namespace {

constexpr char kMagic[8] = {'A', 'E', 'R', 'M', 'A', 'P', '0', '1'};

void put_i64(std::ostream& os, std::int64_t v) { os.write(reinterpret_cast<const char*>(&v), 8); }
void put_f64(std::ostream& os, double v) { os.write(reinterpret_cast<const char*>(&v), 8); }

std::int64_t get_i64(std::istream& is) {
  std::int64_t v = 0;
  is.read(reinterpret_cast<char*>(&v), 8);
  return v;
}

double get_f64(std::istream& is) {
  double v = 0.0;
  is.read(reinterpret_cast<char*>(&v), 8);
  return v;
}

struct Channel {
  MapChannel tag;
  std::span<const double> f64;
  std::span<const std::uint8_t> u8;
};

void write_file(const std::string& path, const GridSpec& g,
                std::span<const Channel> channels,
                const std::map<std::string, std::string>& meta) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);

  os.write(kMagic, sizeof(kMagic));
  put_f64(os, g.origin.x());
  put_f64(os, g.origin.y());
  put_f64(os, g.origin.z());
  put_f64(os, g.resolution);
  put_i64(os, g.nx);
  put_i64(os, g.ny);
  put_i64(os, g.nz);
  put_i64(os, static_cast<std::int64_t>(channels.size()));
  std::string channel_names;
  for (const auto& ch : channels) {
    put_i64(os, static_cast<std::int64_t>(ch.tag));
    if (ch.tag == MapChannel::kObstacle) {
      os.write(reinterpret_cast<const char*>(ch.u8.data()),
               static_cast<std::streamsize>(ch.u8.size()));
    } else {
      os.write(reinterpret_cast<const char*>(ch.f64.data()),
               static_cast<std::streamsize>(ch.f64.size() * sizeof(double)));
    }
    if (!channel_names.empty()) channel_names += ",";
    switch (ch.tag) {
      case MapChannel::kAttractionScore: channel_names += "attraction_score"; break;
      case MapChannel::kObservationDepth: channel_names += "observation_depth"; break;
      case MapChannel::kExploration: channel_names += "exploration"; break;
      case MapChannel::kObstacle: channel_names += "obstacle"; break;
    }
  }
  if (!os) throw std::runtime_error("write failed: " + path);
  os.close();

  std::ostringstream side;
  side << "format=aeronav-map\n";
  side << "version=1\n";
  side << "dims=" << g.nx << "x" << g.ny << "x" << g.nz << "\n";
  side << "resolution=" << g.resolution << "\n";
  side << "origin=" << g.origin.x() << "," << g.origin.y() << "," << g.origin.z() << "\n";
  side << "channels=" << channel_names << "\n";
  side << "layout=row-major,x-fastest\n";
  for (const auto& [key, value] : meta) side << key << "=" << value << "\n";

  std::ofstream ms(path + ".meta", std::ios::trunc);
  if (!ms) throw std::runtime_error("cannot open for writing: " + path + ".meta");
  ms << side.str();
}

struct Loaded {
  GridSpec grid;
  std::map<MapChannel, std::vector<double>> f64;
  std::map<MapChannel, std::vector<std::uint8_t>> u8;
};

Loaded read_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open: " + path);

  char magic[8];
  is.read(magic, 8);
  if (!is || std::memcmp(magic, kMagic, 8) != 0) {
    throw std::runtime_error("not an aeronav map file: " + path);
  }

  Loaded loaded;
  loaded.grid.origin = {get_f64(is), get_f64(is), get_f64(is)};
  loaded.grid.resolution = get_f64(is);
  loaded.grid.nx = static_cast<int>(get_i64(is));
  loaded.grid.ny = static_cast<int>(get_i64(is));
  loaded.grid.nz = static_cast<int>(get_i64(is));
  if (loaded.grid.nx < 1 || loaded.grid.ny < 1 || loaded.grid.nz < 1 ||
      loaded.grid.resolution <= 0.0) {
    throw std::runtime_error("corrupt map header: " + path);
  }
  const std::size_t cells = loaded.grid.cell_count();

  const std::int64_t n_channels = get_i64(is);
  for (std::int64_t i = 0; i < n_channels; ++i) {
    const auto tag = static_cast<MapChannel>(get_i64(is));
    if (tag == MapChannel::kObstacle) {
      std::vector<std::uint8_t> data(cells);
      is.read(reinterpret_cast<char*>(data.data()), static_cast<std::streamsize>(cells));
      loaded.u8[tag] = std::move(data);
    } else {
      std::vector<double> data(cells);
      is.read(reinterpret_cast<char*>(data.data()),
              static_cast<std::streamsize>(cells * sizeof(double)));
      loaded.f64[tag] = std::move(data);
    }
    if (!is) throw std::runtime_error("truncated map file: " + path);
  }
  return loaded;
}

}  // namespace

void save_attraction_map(const std::string& path, const AttractionMap& map,
                         const std::map<std::string, std::string>& meta) {
  const Channel channels[] = {
      {MapChannel::kAttractionScore, map.scores(), {}},
      {MapChannel::kObservationDepth, map.depths(), {}},
  };
  write_file(path, map.grid(), channels, meta);
}

AttractionMap load_attraction_map(const std::string& path) {
  Loaded loaded = read_file(path);
  AttractionMap map(loaded.grid);
  auto scores = loaded.f64.find(MapChannel::kAttractionScore);
  auto depths = loaded.f64.find(MapChannel::kObservationDepth);
  if (scores == loaded.f64.end() || depths == loaded.f64.end()) {
    throw std::runtime_error("map file lacks attraction channels: " + path);
  }
  std::copy(scores->second.begin(), scores->second.end(), map.mutable_scores().begin());
  std::copy(depths->second.begin(), depths->second.end(), map.mutable_depths().begin());
  return map;
}

void save_map_frame(const std::string& path, const MapFrame& frame,
                    const std::map<std::string, std::string>& meta) {
  const Channel channels[] = {
      {MapChannel::kAttractionScore, frame.attraction.scores(), {}},
      {MapChannel::kObservationDepth, frame.attraction.depths(), {}},
      {MapChannel::kExploration, frame.exploration.values(), {}},
      {MapChannel::kObstacle, {}, frame.obstacle.cells()},
  };
  write_file(path, frame.grid, channels, meta);
}

MapFrame load_map_frame(const std::string& path, double lambda, double epsilon) {
  Loaded loaded = read_file(path);
  MapFrame frame(loaded.grid, lambda, epsilon);
  if (auto it = loaded.f64.find(MapChannel::kAttractionScore); it != loaded.f64.end()) {
    std::copy(it->second.begin(), it->second.end(), frame.attraction.mutable_scores().begin());
  }
  if (auto it = loaded.f64.find(MapChannel::kObservationDepth); it != loaded.f64.end()) {
    std::copy(it->second.begin(), it->second.end(), frame.attraction.mutable_depths().begin());
  }
  if (auto it = loaded.f64.find(MapChannel::kExploration); it != loaded.f64.end()) {
    std::copy(it->second.begin(), it->second.end(), frame.exploration.mutable_values().begin());
  }
  if (auto it = loaded.u8.find(MapChannel::kObstacle); it != loaded.u8.end()) {
    std::copy(it->second.begin(), it->second.end(), frame.obstacle.mutable_cells().begin());
  }
  return frame;
}

}  // namespace aeronav
