// Shared helpers for the test suites: independent oracles and fixture access.
#pragma once

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ntil/grid.hpp"
#include "ntil/verify.hpp"

namespace ntil::testutil {

// Independent line-enumeration oracle: for every point pair, materialize the
// maximal grid line through it by walking both directions, and deduplicate
// via a key map. Deliberately different from the production primitive-
// direction sweep.
inline std::set<std::string> pair_dedup_line_keys(int n, int q) {
  std::set<std::string> keys;
  for (int aj = 0; aj < n; ++aj) {
    for (int ai = 0; ai < n; ++ai) {
      for (int bj = 0; bj < n; ++bj) {
        for (int bi = 0; bi < n; ++bi) {
          if (bj < aj || (bj == aj && bi <= ai)) continue;
          int dx = bi - ai;
          int dy = bj - aj;
          const int g = std::gcd(dx < 0 ? -dx : dx, dy < 0 ? -dy : dy);
          dx /= g;
          dy /= g;
          std::vector<GridPoint> pts;
          int x = ai;
          int y = aj;
          while (x - dx >= 0 && x - dx < n && y - dy >= 0 && y - dy < n) {
            x -= dx;
            y -= dy;
          }
          for (; x >= 0 && x < n && y >= 0 && y < n; x += dx, y += dy) {
            pts.push_back(GridPoint{x, y});
          }
          std::sort(pts.begin(), pts.end());
          if (static_cast<int>(pts.size()) >= q) keys.insert(canonical_key(pts));
        }
      }
    }
  }
  return keys;
}

inline std::string fixture_path(int n) {
  return std::string(NTIL_DATA_DIR) + "/fixtures/reps_n" + std::to_string(n) + ".txt";
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline OrbitRepresentatives load_fixture(int n) {
  const ConfigFile f = parse_config(read_file(fixture_path(n)));
  OrbitRepresentatives reps;
  reps.n = f.n;
  reps.reps = f.reps;
  return reps;
}

inline const std::vector<int>& fixture_sizes() {
  static const std::vector<int> sizes{47, 49, 51, 53, 54, 55, 56, 57, 58, 59, 60};
  return sizes;
}

}  // namespace ntil::testutil
