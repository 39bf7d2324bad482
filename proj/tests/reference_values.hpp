#pragma once

#include <array>
#include <optional>
#include <vector>

namespace anisocell::reference {

struct TableRow {
    int d2;
    double v_av;     // 2 decimals
    double dev_rel;  // 3 decimals
};

// Reference average speeds and relative deviations, d2 in 1..117.
inline constexpr std::array<TableRow, 50> kResultsTable = {{
    {1, 0.79, 0.105},    {2, 1.12, 0.105},    {4, 1.59, 0.105},   {5, 2.11, 0.033},   {8, 2.24, 0.105},
    {9, 2.52, 0.080},    {10, 2.98, 0.033},   {13, 3.28, 0.067},  {16, 3.47, 0.055},  {17, 3.82, 0.054},
    {18, 3.91, 0.043},   {20, 4.22, 0.033},   {25, 4.57, 0.064},  {26, 4.85, 0.039},  {29, 5.11, 0.024},
    {32, 5.17, 0.028},   {34, 5.40, 0.054},   {36, 5.52, 0.043},  {37, 5.75, 0.034},  {40, 5.97, 0.033},
    {41, 6.13, 0.026},   {45, 6.33, 0.033},   {49, 6.43, 0.030},  {50, 6.67, 0.035},  {52, 6.86, 0.039},
    {53, 7.05, 0.019},   {58, 7.22, 0.024},   {61, 7.35, 0.034},  {64, 7.44, 0.030},  {65, 7.77, 0.029},
    {68, 7.94, 0.019},   {72, 7.98, 0.021},   {73, 8.13, 0.024},  {74, 8.29, 0.023},  {80, 8.44, 0.033},
    {81, 8.52, 0.028},   {82, 8.66, 0.026},   {85, 8.92, 0.023},  {89, 9.06, 0.025},  {90, 9.20, 0.015},
    {97, 9.34, 0.025},   {98, 9.37, 0.026},   {100, 9.57, 0.030}, {101, 9.70, 0.025}, {104, 9.83, 0.021},
    {106, 9.96, 0.019},  {109, 10.09, 0.014}, {113, 10.18, 0.019}, {116, 10.31, 0.023}, {117, 10.43, 0.024},
}};

inline const std::vector<int> kComposable = {1, 2, 4, 5, 8, 10, 13, 17, 20, 29, 34, 40, 45, 58, 80, 97};

inline constexpr std::array<int, 10> kCanonical = {2, 5, 10, 18, 29, 40, 53, 72, 89, 109};

// Quarter-plane speed map, top row is y = 10; -1 marks an empty cell.
inline constexpr int kSpeedMap[11][11] = {
    {10, 10, 10, 10, -1, -1, -1, -1, -1, -1, -1},
    {9, 9, 9, 10, 10, 10, -1, -1, -1, -1, -1},
    {8, 8, 8, 9, 9, 9, 10, -1, -1, -1, -1},
    {7, 7, 7, 8, 8, 9, 9, 10, -1, -1, -1},
    {6, 6, 6, 7, 7, 8, 8, 9, 10, -1, -1},
    {5, 5, 5, 6, 7, 7, 8, 9, 9, 10, -1},
    {4, 4, 5, 5, 6, 7, 7, 8, 9, 10, -1},
    {3, 3, 4, 4, 5, 6, 7, 8, 9, 10, 10},
    {2, 2, 3, 4, 5, 5, 6, 7, 8, 9, 10},
    {1, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10},
    {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10},
};

}  // namespace anisocell::reference
