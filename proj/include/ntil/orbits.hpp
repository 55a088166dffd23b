// Rotation orbits of the grid and the orbit-variable rewrite of line and
// row constraints.
#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "ntil/grid.hpp"

namespace ntil {

// 90-degree rotation about the grid center: (i, j) -> (j, n-1-i).
// Throws std::invalid_argument if p is outside G_n.
GridPoint rotate(GridPoint p, int n);

// Partition of G_n into rotation orbits plus (odd n) the anti-diagonal sites
// fixed to zero. Representatives live in the fundamental domain
// H_n = [n/2]x[n/2] (even) or [(n+1)/2]x[(n-1)/2] (odd), indexed row-major.
// Off-diagonal orbits have 4 members; for odd n a main-diagonal representative
// (i, i) expands only under the half-turn, giving the 2-member orbit
// {(i, i), (n-1-i, n-1-i)}.
struct OrbitMap {
  int n = 0;
  std::vector<GridPoint> representatives;       // orbit index -> representative
  std::vector<std::vector<GridPoint>> members;  // orbit index -> member sites
  std::vector<GridPoint> fixed_zero;            // anti-diagonal for odd n
  std::vector<int> site_to_orbit;               // j*n + i -> orbit index, -1 = fixed

  bool even() const { return n % 2 == 0; }
  int orbit_count() const { return static_cast<int>(representatives.size()); }
  int orbit_of(GridPoint p) const { return site_to_orbit[p.j * n + p.i]; }
};

OrbitMap build_orbit_map(int n);

// A line constraint rewritten over orbit variables: weight of orbit o is the
// number of line points inside orbit o after removing fixed-to-zero sites.
// Weights are always 1 or 2.
struct ReducedLine {
  LineIncidence source;
  std::vector<std::pair<int, int>> coeffs;  // (orbit index, weight), sorted
};

// Rewrites one line; returns nullopt when the inequality is tautological
// (total achievable weight <= 2).
std::optional<ReducedLine> reduce_line(const LineIncidence& line, const OrbitMap& om);

// One representative per orbit of lines under the enforced rotation group
// (full quarter-turn group for even n, half-turn only for odd n). The
// canonical-key-least member represents each orbit; output sorted by key.
std::vector<LineIncidence> line_orbit_representatives(int n, const std::vector<LineIncidence>& lines);

// For each row r, the sparse orbit weights d_r: weight of orbit o is the
// number of members of o lying in row r (0, 1, or 2; zeros omitted).
std::vector<std::vector<std::pair<int, int>>> row_coefficients(const OrbitMap& om);

}  // namespace ntil
