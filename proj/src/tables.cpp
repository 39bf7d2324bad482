#include "anisocell/tables.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace anisocell {

namespace {

std::string fixed(double v, int prec) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", prec, v);
    return buf;
}

// Emits a rounded decimal as a JSON number without binary noise.
nlohmann::json rounded(double v, int prec) { return nlohmann::json::parse(fixed(v, prec)); }

}  // namespace

TableFormat parse_table_format(const std::string& s) {
    if (s == "csv") return TableFormat::csv;
    if (s == "json") return TableFormat::json;
    throw std::invalid_argument("unknown table format: " + s);
}

std::string results_table(std::span<const NeighborhoodReport> reports, TableFormat fmt) {
    if (fmt == TableFormat::csv) {
        std::ostringstream os;
        os << "d2,v_av,dev_rel,dev_abs,n_von_neumann,n_moore\n";
        for (const auto& r : reports) {
            os << r.d2 << ',' << fixed(r.v_av, 2) << ',' << fixed(r.dev_rel, 3) << ',' << fixed(r.dev_abs, 4) << ',';
            if (r.composable)
                os << r.composable->n_von_neumann << ',' << r.composable->n_moore;
            else
                os << ',';
            os << '\n';
        }
        return os.str();
    }
    nlohmann::json j = nlohmann::json::array();
    for (const auto& r : reports) {
        nlohmann::json row = {{"d2", r.d2},
                              {"v_av", rounded(r.v_av, 2)},
                              {"dev_rel", rounded(r.dev_rel, 3)},
                              {"dev_abs", rounded(r.dev_abs, 4)}};
        row["composable"] = r.composable ? nlohmann::json{{"n_von_neumann", r.composable->n_von_neumann},
                                                          {"n_moore", r.composable->n_moore}}
                                         : nlohmann::json(nullptr);
        j.push_back(row);
    }
    return j.dump(2) + "\n";
}

std::string selection_table(TableFormat fmt) {
    std::ostringstream os;
    nlohmann::json j = nlohmann::json::array();
    if (fmt == TableFormat::csv) os << "speed,canonical,scoring,agree\n";
    for (int v = 1; v <= 10; ++v) {
        const int c = canonical_neighborhood(v);
        const int s = scoring_neighborhood(v);
        if (fmt == TableFormat::csv)
            os << v << ',' << c << ',' << s << ',' << (c == s ? "yes" : "no") << '\n';
        else
            j.push_back({{"speed", v}, {"canonical", c}, {"scoring", s}, {"agree", c == s}});
    }
    return fmt == TableFormat::csv ? os.str() : j.dump(2) + "\n";
}

std::string speed_map_table(const SpeedMap& map, TableFormat fmt) {
    if (fmt == TableFormat::json) {
        nlohmann::json rows = nlohmann::json::array();
        for (std::size_t y = map.size(); y-- > 0;) {
            nlohmann::json row = nlohmann::json::array();
            for (const auto& c : map[y]) row.push_back(c ? nlohmann::json(*c) : nlohmann::json(nullptr));
            rows.push_back(row);
        }
        return nlohmann::json{{"rows_top_to_bottom", rows}}.dump(2) + "\n";
    }
    // Top row is the largest y.
    std::ostringstream os;
    for (std::size_t y = map.size(); y-- > 0;) {
        for (std::size_t x = 0; x < map[y].size(); ++x) {
            if (x) os << ',';
            if (map[y][x]) os << *map[y][x];
        }
        os << '\n';
    }
    return os.str();
}

std::string profile_csv(const SpeedProfile& profile, int samples) {
    if (samples < 2) throw std::invalid_argument("need at least two samples");
    std::ostringstream os;
    os << "phi,v\n";
    for (int i = 0; i < samples; ++i) {
        const double phi = (std::numbers::pi / 4.0) * i / (samples - 1);
        os << fixed(phi, 6) << ',' << fixed(v_of_phi(profile, phi), 6) << '\n';
    }
    return os.str();
}

std::vector<std::string> emit_tables(const std::string& dir, TableFormat fmt, BorderMode mode) {
    std::filesystem::create_directories(dir);
    const std::string ext = fmt == TableFormat::csv ? ".csv" : ".json";
    const auto reports = report_all(10, mode);
    const std::pair<std::string, std::string> files[] = {
        {"results_table" + ext, results_table(reports, fmt)},
        {"selection_table" + ext, selection_table(fmt)},
        {"speed_map" + ext, speed_map_table(speed_map(10), fmt)},
    };
    std::vector<std::string> written;
    for (const auto& [name, body] : files) {
        const auto path = (std::filesystem::path(dir) / name).string();
        std::ofstream out(path, std::ios::binary);
        if (!out || !(out << body)) throw std::runtime_error("cannot write " + path);
        written.push_back(path);
    }
    return written;
}

}  // namespace anisocell
