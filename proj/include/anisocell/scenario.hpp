#pragma once

#include <compare>
#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace anisocell {

/// Absolute grid position. (0, 0) is the first cell of the first map row.
struct Cell {
    int x = 0;
    int y = 0;
    friend constexpr auto operator<=>(const Cell&, const Cell&) = default;
};

class ScenarioError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Rectangular grid of 40 cm cells with walls and at least one exit.
class Scenario {
public:
    Scenario(int width, int height, const std::vector<Cell>& walls, const std::vector<Cell>& exits);

    int width() const { return width_; }
    int height() const { return height_; }
    std::size_t cell_count() const { return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_); }

    bool in_bounds(Cell c) const { return c.x >= 0 && c.y >= 0 && c.x < width_ && c.y < height_; }
    std::size_t index(Cell c) const {
        return static_cast<std::size_t>(c.y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(c.x);
    }
    Cell cell_at(std::size_t i) const {
        return {static_cast<int>(i % static_cast<std::size_t>(width_)), static_cast<int>(i / static_cast<std::size_t>(width_))};
    }
    bool is_wall(Cell c) const { return wall_[index(c)] != 0; }
    bool is_exit(Cell c) const { return exit_[index(c)] != 0; }
    /// In bounds and not a wall.
    bool walkable(Cell c) const { return in_bounds(c) && !is_wall(c); }

    const std::vector<Cell>& exits() const { return exits_; }
    std::size_t wall_count() const;
    std::size_t free_cell_count() const { return cell_count() - wall_count(); }

private:
    int width_;
    int height_;
    std::vector<char> wall_;
    std::vector<char> exit_;
    std::vector<Cell> exits_;
};

/// Validates and assembles a scenario. Throws ScenarioError on exits that
/// are out of bounds, on walls, or missing.
Scenario build_scenario(int width, int height, const std::vector<Cell>& walls, const std::vector<Cell>& exits);

// Text map: header "width height\n", then `height` rows of `width`
// characters ('.' free, '#' wall, 'E' exit), each terminated by '\n'.
// Row i of the file holds y = i.
Scenario read_scenario(std::istream& in);
Scenario load_scenario(const std::string& path);
void write_scenario(std::ostream& out, const Scenario& s);
void save_scenario(const std::string& path, const Scenario& s);
std::string scenario_to_string(const Scenario& s);
Scenario scenario_from_string(const std::string& text);

/// Open w x h room with the given exits.
Scenario open_room(int width, int height, const std::vector<Cell>& exits);

/// Lattice disc of the given radius centred on a lattice corner: cell (i, j)
/// is free when (i + 0.5)^2 + (j + 0.5)^2 <= radius^2 in centred
/// coordinates. The four cells touching the centre are the exits.
struct DiscScenario {
    Scenario scenario;
    Cell center_cell;  // grid cell whose lower-left corner is the disc centre
    double center_x;   // continuous centre in grid coordinates
    double center_y;
};
DiscScenario disc_scenario(int radius);

/// Straight corridor of the given width along the segment from `from` to
/// `to` (cell centres), with a single exit at `to`. Cells whose centres lie
/// within width/2 of the segment (extended by one cell at both ends) are
/// free; the grid is the bounding box plus a one-cell wall frame.
struct CorridorScenario {
    Scenario scenario;
    Cell start;
    Cell exit;
};
CorridorScenario corridor_scenario(int dx, int dy, double width = 3.0);

}  // namespace anisocell
