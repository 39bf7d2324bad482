#pragma once

#include <span>
#include <string>
#include <vector>

#include "anisocell/kinematics.hpp"

namespace anisocell {

enum class TableFormat { csv, json };

TableFormat parse_table_format(const std::string& s);

// Rounded to 2 decimals for v_av and 3 for dev_rel; byte-stable.
std::string results_table(std::span<const NeighborhoodReport> reports, TableFormat fmt);

/// Canonical and scoring choices for speeds 1..10.
std::string selection_table(TableFormat fmt);

std::string speed_map_table(const SpeedMap& map, TableFormat fmt);

/// phi, v(phi) at `samples` evenly spaced angles over [0, pi/4] inclusive.
std::string profile_csv(const SpeedProfile& profile, int samples);

/// Writes results_table, selection_table and speed_map (.csv or .json) into
/// `dir`; returns the written paths. Throws std::runtime_error if a file
/// cannot be written.
std::vector<std::string> emit_tables(const std::string& dir, TableFormat fmt,
                                           BorderMode mode = BorderMode::staircase);

}  // namespace anisocell
