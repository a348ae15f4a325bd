// Copyright (c) 2026 The RIPS Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rips/grid_map.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

namespace rips
{

GridMap::GridMap(int width, int height, Cell fill)
: width_(width), height_(height)
{
  if (width < 0 || height < 0) {
    throw MapError("negative map size");
  }
  cells_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
}

bool GridMap::contains(GridPoint p) const
{
  return p.x >= 0 && p.y >= 0 && p.x < width_ && p.y < height_;
}

std::size_t GridMap::index(GridPoint p) const
{
  if (!contains(p)) {
    throw MapError(
      "cell (" + std::to_string(p.x) + ", " + std::to_string(p.y) + ") outside the map");
  }
  return static_cast<std::size_t>(p.y) * static_cast<std::size_t>(width_) +
         static_cast<std::size_t>(p.x);
}

Cell GridMap::at(GridPoint p) const
{
  return cells_[index(p)];
}

void GridMap::set(GridPoint p, Cell c)
{
  cells_[index(p)] = c;
}

std::size_t GridMap::count(Cell c) const
{
  return static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), c));
}

GridMap read_map(std::istream & in)
{
  std::string line;
  if (!std::getline(in, line)) {
    throw MapError("empty map file");
  }
  std::istringstream header(line);
  int w = 0;
  int h = 0;
  std::string extra;
  if (!(header >> w >> h) || (header >> extra) || w <= 0 || h <= 0) {
    throw MapError("bad map header '" + line + "'");
  }
  GridMap map(w, h);
  for (int y = 0; y < h; ++y) {
    if (!std::getline(in, line)) {
      throw MapError("map ends after " + std::to_string(y) + " rows");
    }
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (static_cast<int>(line.size()) != w) {
      throw MapError("row " + std::to_string(y + 1) + " has " + std::to_string(line.size()) +
        " cells, expected " + std::to_string(w));
    }
    for (int x = 0; x < w; ++x) {
      switch (line[static_cast<std::size_t>(x)]) {
        case '.': map.set({x, y}, Cell::kFree); break;
        case '#': map.set({x, y}, Cell::kOccupied); break;
        case 'K': map.set({x, y}, Cell::kKeepout); break;
        default:
          throw MapError("unknown cell '" + std::string(1, line[static_cast<std::size_t>(x)]) +
            "' at row " + std::to_string(y + 1));
      }
    }
  }
  while (std::getline(in, line)) {
    if (!line.empty() && line != "\r") {
      throw MapError("trailing data after the last map row");
    }
  }
  return map;
}

GridMap load_map(const std::filesystem::path & path)
{
  std::ifstream in(path);
  if (!in) {
    throw MapError("cannot open map " + path.string());
  }
  return read_map(in);
}

void write_map(std::ostream & out, const GridMap & map)
{
  out << map.width() << ' ' << map.height() << '\n';
  for (int y = 0; y < map.height(); ++y) {
    std::string row(static_cast<std::size_t>(map.width()), '.');
    for (int x = 0; x < map.width(); ++x) {
      Cell c = map.at({x, y});
      row[static_cast<std::size_t>(x)] = c == Cell::kFree ? '.' : c == Cell::kOccupied ? '#' : 'K';
    }
    out << row << '\n';
  }
}

std::size_t toggle_keepout(GridMap & map, const GridRect & zone, bool on)
{
  if (zone.width < 0 || zone.height < 0) {
    throw MapError("negative zone size");
  }
  if (zone.width == 0 || zone.height == 0) {
    return 0;
  }
  if (!map.contains({zone.x, zone.y}) ||
    !map.contains({zone.x + zone.width - 1, zone.y + zone.height - 1}))
  {
    throw MapError("keep-out zone leaves the map");
  }
  const Cell from = on ? Cell::kFree : Cell::kKeepout;
  const Cell to = on ? Cell::kKeepout : Cell::kFree;
  std::size_t changed = 0;
  for (int y = zone.y; y < zone.y + zone.height; ++y) {
    for (int x = zone.x; x < zone.x + zone.width; ++x) {
      if (map.at({x, y}) == from) {
        map.set({x, y}, to);
        ++changed;
      }
    }
  }
  return changed;
}

std::optional<std::vector<GridPoint>> plan_path(
  const GridMap & map, GridPoint start, GridPoint goal)
{
  if (!map.contains(start) || !map.contains(goal) || map.at(start) != Cell::kFree ||
    map.at(goal) != Cell::kFree)
  {
    return std::nullopt;
  }
  const int w = map.width();
  auto idx = [w](GridPoint p) {
      return static_cast<std::size_t>(p.y) * static_cast<std::size_t>(w) +
             static_cast<std::size_t>(p.x);
    };
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> parent(map.size(), kNone);
  std::vector<bool> seen(map.size(), false);
  std::deque<GridPoint> frontier{start};
  seen[idx(start)] = true;
  static constexpr GridPoint kSteps[] = {{0, -1}, {-1, 0}, {1, 0}, {0, 1}};
  while (!frontier.empty()) {
    GridPoint p = frontier.front();
    frontier.pop_front();
    if (p == goal) {
      break;
    }
    for (const auto & d : kSteps) {
      GridPoint q{p.x + d.x, p.y + d.y};
      if (map.contains(q) && !seen[idx(q)] && map.at(q) == Cell::kFree) {
        seen[idx(q)] = true;
        parent[idx(q)] = idx(p);
        frontier.push_back(q);
      }
    }
  }
  if (!seen[idx(goal)]) {
    return std::nullopt;
  }
  std::vector<GridPoint> path;
  for (std::size_t i = idx(goal); i != kNone; i = parent[i]) {
    path.push_back({static_cast<int>(i % static_cast<std::size_t>(w)),
        static_cast<int>(i / static_cast<std::size_t>(w))});
  }
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace rips
