#include "ntil/grid.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <stdexcept>

namespace ntil {

bool collinear(GridPoint p, GridPoint r, GridPoint s) {
  const std::int64_t a = static_cast<std::int64_t>(r.i - p.i) * (s.j - p.j);
  const std::int64_t b = static_cast<std::int64_t>(r.j - p.j) * (s.i - p.i);
  return a == b;
}

std::string canonical_key(const std::vector<GridPoint>& sorted_points) {
  std::string key;
  key.reserve(sorted_points.size() * 4);
  for (const GridPoint& p : sorted_points) {
    key.push_back(static_cast<char>(p.i & 0xff));
    key.push_back(static_cast<char>((p.i >> 8) & 0xff));
    key.push_back(static_cast<char>(p.j & 0xff));
    key.push_back(static_cast<char>((p.j >> 8) & 0xff));
  }
  return key;
}

namespace {

void check_args(int n, int q) {
  if (n < 2) throw std::invalid_argument("grid size must be at least 2");
  if (q < 2) throw std::invalid_argument("line multiplicity must be at least 2");
  if (n > 32767) throw std::invalid_argument("grid size exceeds the 16-bit key encoding");
}

// Visits every maximal collinear set of >= q points exactly once. A line is
// generated from its base point (the end whose predecessor along the
// primitive direction leaves the grid) for exactly one canonical direction,
// so no deduplication is needed. Directions are canonicalized to dx > 0, or
// dx == 0 with dy > 0; walking from the base point then yields the points in
// lexicographic (i, j) order.
template <class Visit>
void walk_lines(int n, int q, Visit&& visit) {
  auto scan_direction = [&](int dx, int dy) {
    for (int x = 0; x < n; ++x) {
      for (int y = 0; y < n; ++y) {
        const int px = x - dx;
        const int py = y - dy;
        if (px >= 0 && px < n && py >= 0 && py < n) continue;  // not a base point
        // Closed-form number of grid points along (dx, dy) from (x, y).
        int steps = n;  // upper bound
        if (dx > 0) steps = std::min(steps, (n - 1 - x) / dx);
        if (dy > 0) steps = std::min(steps, (n - 1 - y) / dy);
        if (dy < 0) steps = std::min(steps, y / (-dy));
        const int count = steps + 1;
        if (count >= q) visit(x, y, dx, dy, count);
      }
    }
  };

  scan_direction(0, 1);
  scan_direction(1, 0);
  for (int dx = 1; dx < n; ++dx) {
    for (int dy = -(n - 1); dy < n; ++dy) {
      if (dy == 0) continue;
      if (std::gcd(dx, dy < 0 ? -dy : dy) != 1) continue;
      scan_direction(dx, dy);
    }
  }
}

}  // namespace

std::vector<LineIncidence> enumerate_lines(int n, int q) {
  check_args(n, q);
  std::vector<LineIncidence> lines;
  walk_lines(n, q, [&](int x, int y, int dx, int dy, int count) {
    LineIncidence li;
    li.points.reserve(count);
    for (int t = 0; t < count; ++t) {
      li.points.push_back(GridPoint{x + t * dx, y + t * dy});
    }
    assert(std::is_sorted(li.points.begin(), li.points.end()));
    li.canonical_key = canonical_key(li.points);
    lines.push_back(std::move(li));
  });
  std::sort(lines.begin(), lines.end(),
            [](const LineIncidence& a, const LineIncidence& b) {
              return a.canonical_key < b.canonical_key;
            });
  return lines;
}

std::uint64_t count_lines(int n, int q) {
  check_args(n, q);
  std::uint64_t total = 0;
  walk_lines(n, q, [&](int, int, int, int, int) { ++total; });
  return total;
}

std::uint64_t count_horizontal_lines(int n, int q) {
  check_args(n, q);
  return n >= q ? static_cast<std::uint64_t>(n) : 0;
}

}  // namespace ntil
