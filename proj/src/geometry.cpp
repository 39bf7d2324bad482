#include "anisocell/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace anisocell {

int isqrt(std::int64_t n) {
    if (n < 0) throw std::invalid_argument("isqrt of negative value");
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return static_cast<int>(r);
}

Neighborhood::Neighborhood(int d2) : d2_(d2), extent_(0) {
    if (d2 < 0) throw std::invalid_argument("neighborhood d2 must be non-negative");
    extent_ = isqrt(d2);
    for (int x = -extent_; x <= extent_; ++x) {
        const int h = isqrt(static_cast<std::int64_t>(d2) - static_cast<std::int64_t>(x) * x);
        for (int y = -h; y <= h; ++y) cells_.push_back({x, y});
    }
}

const char* to_string(StepKind k) {
    switch (k) {
        case StepKind::vertical: return "vertical";
        case StepKind::antidiagonal: return "antidiagonal";
        case StepKind::other: return "other";
    }
    return "?";
}

std::vector<int> enumerate_complete_neighborhoods(int v_max) {
    if (v_max < 0) throw std::invalid_argument("v_max must be non-negative");
    // A neighborhood belongs to speed class floor(sqrt(d2)); collect every
    // realized squared radius below (v_max + 1)^2.
    const int limit = (v_max + 1) * (v_max + 1);
    std::vector<bool> seen(static_cast<std::size_t>(limit), false);
    for (int x = 0; x <= v_max; ++x)
        for (int y = 0; y <= x; ++y)
            if (x * x + y * y < limit) seen[static_cast<std::size_t>(x * x + y * y)] = true;
    std::vector<int> out;
    for (int d2 = 0; d2 < limit; ++d2)
        if (seen[static_cast<std::size_t>(d2)]) out.push_back(d2);
    return out;
}

Neighborhood cells_of(int d2) { return Neighborhood(d2); }

BorderStaircase border_staircase(int d2) {
    if (d2 < 1) throw std::invalid_argument("border_staircase requires d2 >= 1");
    const Neighborhood nb(d2);
    BorderStaircase st;
    st.d2 = d2;
    CellOffset cur{nb.extent(), 0};
    st.border.push_back(cur);
    while (cur.y < cur.x) {
        const int ny = cur.y + 1;
        const int row_max = isqrt(static_cast<std::int64_t>(d2) - static_cast<std::int64_t>(ny) * ny);
        CellOffset next{row_max, ny};
        if (row_max < cur.x - 1) {
            // Row maximum jumps by more than one column: bridge with the
            // antidiagonal neighbor, which must then lie in the neighborhood.
            const CellOffset bridge{cur.x - 1, ny};
            if (!nb.contains(bridge))
                throw StructuralError("border of d2=" + std::to_string(d2) +
                                      " needs a step that is neither vertical nor antidiagonal");
            next = bridge;
        }
        const CellOffset step = next - cur;
        if (step.x == 0 && step.y == 1)
            st.kinds.push_back(StepKind::vertical);
        else if (step.x == -1 && step.y == 1)
            st.kinds.push_back(StepKind::antidiagonal);
        else
            st.kinds.push_back(StepKind::other);
        st.border.push_back(next);
        cur = next;
    }
    return st;
}

namespace {

std::int64_t cross(CellOffset o, CellOffset a, CellOffset b) {
    return static_cast<std::int64_t>(a.x - o.x) * (b.y - o.y) -
           static_cast<std::int64_t>(a.y - o.y) * (b.x - o.x);
}

}  // namespace

std::vector<CellOffset> hull_vertices(int d2) {
    if (d2 < 1) throw std::invalid_argument("hull_vertices requires d2 >= 1");
    const int r = isqrt(d2);
    // Row maxima of the first quadrant, counter-clockwise from (r, 0) to (0, r).
    std::vector<CellOffset> pts;
    for (int y = 0; y <= r; ++y)
        pts.push_back({isqrt(static_cast<std::int64_t>(d2) - static_cast<std::int64_t>(y) * y), y});

    std::vector<CellOffset> hull;
    for (const auto& p : pts) {
        while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), p) <= 0) hull.pop_back();
        hull.push_back(p);
    }
    // Keep (r, 0) as the angular anchor and cut after the first vertex at or
    // beyond 45 degrees.
    std::vector<CellOffset> out;
    for (const auto& v : hull) {
        out.push_back(v);
        if (v.y >= v.x) break;
    }
    return out;
}

std::vector<CellOffset> reachable_set(int n_vn, int n_moore) {
    if (n_vn < 0 || n_moore < 0) throw std::invalid_argument("step counts must be non-negative");
    const int h = n_vn + n_moore;
    const int side = 2 * h + 1;
    auto at = [side, h](int x, int y) { return static_cast<std::size_t>((y + h) * side + (x + h)); };

    static constexpr CellOffset kVonNeumann[] = {{0, 0}, {1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    static constexpr CellOffset kMoore[] = {{0, 0},  {1, 0},  {-1, 0}, {0, 1},  {0, -1},
                                            {1, 1},  {1, -1}, {-1, 1}, {-1, -1}};

    std::vector<char> cur(static_cast<std::size_t>(side) * side, 0);
    cur[at(0, 0)] = 1;
    auto dilate = [&](const auto& steps) {
        std::vector<char> next(cur.size(), 0);
        for (int y = -h; y <= h; ++y)
            for (int x = -h; x <= h; ++x) {
                if (!cur[at(x, y)]) continue;
                for (const auto& s : steps) {
                    const int nx = x + s.x, ny = y + s.y;
                    if (nx < -h || nx > h || ny < -h || ny > h) continue;
                    next[at(nx, ny)] = 1;
                }
            }
        cur.swap(next);
    };
    for (int i = 0; i < n_vn; ++i) dilate(kVonNeumann);
    for (int i = 0; i < n_moore; ++i) dilate(kMoore);

    std::vector<CellOffset> out;
    for (int x = -h; x <= h; ++x)
        for (int y = -h; y <= h; ++y)
            if (cur[at(x, y)]) out.push_back({x, y});
    return out;
}

std::optional<Composition> moore_vn_composition(int d2, int v) {
    if (v < 1) throw std::invalid_argument("composition requires v >= 1");
    const Neighborhood target(d2);
    for (int n = 0; n <= v; ++n) {
        if (reachable_set(n, v - n) == target.cells()) return Composition{n, v - n};
    }
    return std::nullopt;
}

}  // namespace anisocell
