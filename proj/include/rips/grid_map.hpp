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

#ifndef RIPS__GRID_MAP_HPP_
#define RIPS__GRID_MAP_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace rips
{

enum class Cell : std::uint8_t { kFree, kOccupied, kKeepout };

struct GridPoint
{
  int x{0};
  int y{0};
  friend bool operator==(const GridPoint &, const GridPoint &) = default;
};

/// Axis-aligned block of cells starting at (x, y).
struct GridRect
{
  int x{0};
  int y{0};
  int width{0};
  int height{0};
};

class MapError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Occupancy grid. Row y = 0 is the first row of the file.
class GridMap
{
public:
  GridMap() = default;
  GridMap(int width, int height, Cell fill = Cell::kFree);

  int width() const {return width_;}
  int height() const {return height_;}
  std::size_t size() const {return cells_.size();}

  bool contains(GridPoint p) const;
  Cell at(GridPoint p) const;
  void set(GridPoint p, Cell c);

  std::size_t count(Cell c) const;
  std::size_t free_cells() const {return count(Cell::kFree);}
  /// Occupied and keep-out cells together.
  std::size_t blocked_cells() const {return size() - free_cells();}

  friend bool operator==(const GridMap &, const GridMap &) = default;

private:
  std::size_t index(GridPoint p) const;

  int width_{0};
  int height_{0};
  std::vector<Cell> cells_;
};

/// Text format: a `width height` header line followed by `height` rows of
/// `width` characters: `#` occupied, `.` free, `K` keep-out.
GridMap read_map(std::istream & in);
GridMap load_map(const std::filesystem::path & path);
void write_map(std::ostream & out, const GridMap & map);

/// Turns the free cells of `zone` into keep-out cells (on) or keep-out cells
/// back into free cells (off). Occupied cells are left alone. Returns the
/// number of cells changed. Throws MapError when the zone leaves the map.
std::size_t toggle_keepout(GridMap & map, const GridRect & zone, bool on);

/// Shortest 4-connected path over free cells, including both ends.
/// Neighbours are expanded up, left, right, down. nullopt when either end
/// is not free or no path exists.
std::optional<std::vector<GridPoint>> plan_path(
  const GridMap & map, GridPoint start, GridPoint goal);

}  // namespace rips

#endif  // RIPS__GRID_MAP_HPP_
