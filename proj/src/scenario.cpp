#include "anisocell/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace anisocell {

Scenario::Scenario(int width, int height, const std::vector<Cell>& walls, const std::vector<Cell>& exits)
    : width_(width), height_(height) {
    if (width <= 0 || height <= 0) throw ScenarioError("scenario dimensions must be positive");
    if (exits.empty()) throw ScenarioError("scenario needs at least one exit");
    wall_.assign(cell_count(), 0);
    exit_.assign(cell_count(), 0);
    for (const auto& w : walls) {
        if (!in_bounds(w)) throw ScenarioError("wall out of bounds");
        wall_[index(w)] = 1;
    }
    for (const auto& e : exits) {
        if (!in_bounds(e))
            throw ScenarioError("exit (" + std::to_string(e.x) + "," + std::to_string(e.y) + ") out of bounds");
        if (wall_[index(e)])
            throw ScenarioError("exit (" + std::to_string(e.x) + "," + std::to_string(e.y) + ") lies on a wall");
        if (!exit_[index(e)]) exits_.push_back(e);
        exit_[index(e)] = 1;
    }
    std::sort(exits_.begin(), exits_.end());
}

std::size_t Scenario::wall_count() const {
    return static_cast<std::size_t>(std::count(wall_.begin(), wall_.end(), 1));
}

Scenario build_scenario(int width, int height, const std::vector<Cell>& walls, const std::vector<Cell>& exits) {
    return Scenario(width, height, walls, exits);
}

Scenario read_scenario(std::istream& in) {
    std::string header;
    if (!std::getline(in, header)) throw ScenarioError("missing header line");
    std::istringstream hs(header);
    int w = 0, h = 0;
    std::string extra;
    if (!(hs >> w >> h) || (hs >> extra)) throw ScenarioError("header must be 'width height'");
    if (w <= 0 || h <= 0) throw ScenarioError("scenario dimensions must be positive");

    std::vector<Cell> walls, exits;
    std::string row;
    for (int y = 0; y < h; ++y) {
        if (!std::getline(in, row)) throw ScenarioError("expected " + std::to_string(h) + " rows");
        if (static_cast<int>(row.size()) != w)
            throw ScenarioError("row " + std::to_string(y) + " has length " + std::to_string(row.size()));
        for (int x = 0; x < w; ++x) {
            switch (row[static_cast<std::size_t>(x)]) {
                case '.': break;
                case '#': walls.push_back({x, y}); break;
                case 'E': exits.push_back({x, y}); break;
                default: throw ScenarioError("unknown map character in row " + std::to_string(y));
            }
        }
    }
    if (in.peek() != std::char_traits<char>::eof()) throw ScenarioError("trailing data after map rows");
    return Scenario(w, h, walls, exits);
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ScenarioError("cannot open scenario file " + path);
    return read_scenario(in);
}

void write_scenario(std::ostream& out, const Scenario& s) {
    out << s.width() << ' ' << s.height() << '\n';
    std::string row(static_cast<std::size_t>(s.width()), '.');
    for (int y = 0; y < s.height(); ++y) {
        for (int x = 0; x < s.width(); ++x) {
            const Cell c{x, y};
            row[static_cast<std::size_t>(x)] = s.is_wall(c) ? '#' : (s.is_exit(c) ? 'E' : '.');
        }
        out << row << '\n';
    }
}

void save_scenario(const std::string& path, const Scenario& s) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ScenarioError("cannot write scenario file " + path);
    write_scenario(out, s);
}

std::string scenario_to_string(const Scenario& s) {
    std::ostringstream os;
    write_scenario(os, s);
    return os.str();
}

Scenario scenario_from_string(const std::string& text) {
    std::istringstream is(text);
    return read_scenario(is);
}

Scenario open_room(int width, int height, const std::vector<Cell>& exits) { return Scenario(width, height, {}, exits); }

DiscScenario disc_scenario(int radius) {
    if (radius < 1) throw ScenarioError("disc radius must be positive");
    const int side = 2 * radius;
    const std::int64_t r2x4 = 4LL * radius * radius;
    std::vector<Cell> walls;
    for (int y = 0; y < side; ++y)
        for (int x = 0; x < side; ++x) {
            // centred doubled coordinates: 2 (x - radius) + 1
            const std::int64_t u = 2LL * (x - radius) + 1, v = 2LL * (y - radius) + 1;
            if (u * u + v * v > r2x4) walls.push_back({x, y});
        }
    const std::vector<Cell> exits = {
        {radius - 1, radius - 1}, {radius, radius - 1}, {radius - 1, radius}, {radius, radius}};
    return {Scenario(side, side, walls, exits), Cell{radius, radius}, static_cast<double>(radius),
            static_cast<double>(radius)};
}

CorridorScenario corridor_scenario(int dx, int dy, double width) {
    if (dx == 0 && dy == 0) throw ScenarioError("corridor needs a non-zero displacement");
    if (width <= 0) throw ScenarioError("corridor width must be positive");
    const int pad = static_cast<int>(std::ceil(width / 2.0)) + 2;
    const int min_x = std::min(0, dx) - pad, max_x = std::max(0, dx) + pad;
    const int min_y = std::min(0, dy) - pad, max_y = std::max(0, dy) + pad;
    const int w = max_x - min_x + 1, h = max_y - min_y + 1;

    const double len = std::hypot(dx, dy);
    const double ux = dx / len, uy = dy / len;
    const double half = width / 2.0;
    std::vector<Cell> walls;
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const double px = x + min_x, py = y + min_y;
            const double along = px * ux + py * uy;
            const double across = std::abs(-px * uy + py * ux);
            const bool inside = across <= half + 1e-9 && along >= -1.0 - 1e-9 && along <= len + 1.0 + 1e-9;
            const bool frame = x == 0 || y == 0 || x == w - 1 || y == h - 1;
            if (!inside || frame) walls.push_back({x, y});
        }
    const Cell start{-min_x, -min_y};
    const Cell exit{dx - min_x, dy - min_y};
    return {Scenario(w, h, walls, {exit}), start, exit};
}

}  // namespace anisocell
