// Lattice points and maximal collinear point sets of the n-by-n grid.
#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace ntil {

// A point of the grid G_n = {0,...,n-1}^2. i is the column, j the row.
struct GridPoint {
  int i = 0;
  int j = 0;
  auto operator<=>(const GridPoint&) const = default;
};

// A maximal collinear subset of the grid: every grid point of the underlying
// affine line, sorted lexicographically by (i, j). canonical_key is the sorted
// point list serialized as little-endian 16-bit (i, j) pairs; it is injective
// on point sets and gives the deterministic output order.
struct LineIncidence {
  std::vector<GridPoint> points;
  std::string canonical_key;
};

// Exact integer orientation test: true iff p, r, s lie on one affine line.
bool collinear(GridPoint p, GridPoint r, GridPoint s);

std::string canonical_key(const std::vector<GridPoint>& sorted_points);

// All maximal collinear sets with at least q grid points, one entry per
// distinct line, sorted by canonical_key. Throws std::invalid_argument for
// n < 2 or q < 2.
std::vector<LineIncidence> enumerate_lines(int n, int q);

// |result of enumerate_lines(n, q)| without materializing point lists.
std::uint64_t count_lines(int n, int q);

// Of the lines counted by count_lines(n, q), how many are horizontal.
std::uint64_t count_horizontal_lines(int n, int q);

}  // namespace ntil
