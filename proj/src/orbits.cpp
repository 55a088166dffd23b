#include "ntil/orbits.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <unordered_map>

namespace ntil {

GridPoint rotate(GridPoint p, int n) {
  if (p.i < 0 || p.i >= n || p.j < 0 || p.j >= n) {
    throw std::invalid_argument("point outside the grid");
  }
  return GridPoint{p.j, n - 1 - p.i};
}

OrbitMap build_orbit_map(int n) {
  if (n < 2) throw std::invalid_argument("grid size must be at least 2");
  const bool odd = (n % 2) != 0;
  const int wi = odd ? (n + 1) / 2 : n / 2;
  const int wj = odd ? (n - 1) / 2 : n / 2;

  OrbitMap om;
  om.n = n;
  om.site_to_orbit.assign(static_cast<std::size_t>(n) * n, -1);
  if (odd) {
    om.fixed_zero.reserve(n);
    for (int i = 0; i < n; ++i) om.fixed_zero.push_back(GridPoint{i, n - 1 - i});
  }

  for (int j = 0; j < wj; ++j) {
    for (int i = 0; i < wi; ++i) {
      const GridPoint rep{i, j};
      std::vector<GridPoint> members;
      if (odd && i == j) {
        // Main-diagonal sites expand under the half-turn only.
        members = {rep, GridPoint{n - 1 - i, n - 1 - j}};
      } else {
        members.push_back(rep);
        for (GridPoint p = rotate(rep, n); p != rep; p = rotate(p, n)) {
          members.push_back(p);
        }
        if (members.size() != 4) throw std::logic_error("off-diagonal orbit is not a 4-cycle");
      }
      const int idx = om.orbit_count();
      for (const GridPoint& m : members) {
        int& slot = om.site_to_orbit[static_cast<std::size_t>(m.j) * n + m.i];
        if (slot != -1) throw std::logic_error("orbit members overlap");
        slot = idx;
      }
      om.representatives.push_back(rep);
      om.members.push_back(std::move(members));
    }
  }

  // Orbits plus fixed sites must partition the grid.
  std::size_t covered = om.fixed_zero.size();
  for (const auto& m : om.members) covered += m.size();
  if (covered != static_cast<std::size_t>(n) * n) throw std::logic_error("orbits do not partition the grid");
  for (const GridPoint& f : om.fixed_zero) {
    if (om.site_to_orbit[static_cast<std::size_t>(f.j) * n + f.i] != -1) {
      throw std::logic_error("fixed site inside an orbit");
    }
  }
  return om;
}

std::optional<ReducedLine> reduce_line(const LineIncidence& line, const OrbitMap& om) {
  std::map<int, int> acc;
  for (const GridPoint& p : line.points) {
    const int o = om.orbit_of(p);
    if (o < 0) continue;  // fixed to zero
    ++acc[o];
  }
  int total = 0;
  for (const auto& [o, w] : acc) {
    if (w > 2) throw std::logic_error("line meets an orbit in more than 2 points");
    total += w;
  }
  if (total <= 2) return std::nullopt;  // holds for any 0/1 assignment
  ReducedLine rl;
  rl.source = line;
  rl.coeffs.assign(acc.begin(), acc.end());
  return rl;
}

namespace {

std::string rotated_key(const std::vector<GridPoint>& points, int n, int times) {
  std::vector<GridPoint> pts = points;
  for (int t = 0; t < times; ++t) {
    for (GridPoint& p : pts) p = rotate(p, n);
  }
  std::sort(pts.begin(), pts.end());
  return canonical_key(pts);
}

}  // namespace

std::vector<LineIncidence> line_orbit_representatives(int n, const std::vector<LineIncidence>& lines) {
  // Even n: full quarter-turn group; odd n: half-turn only (rotations 0, 2).
  const int step = (n % 2 == 0) ? 1 : 2;
  // orbit id (least rotated key) -> least canonical key of a member
  std::unordered_map<std::string, std::string> least_member;
  for (const LineIncidence& line : lines) {
    std::string orbit_id = line.canonical_key;
    for (int t = step; t < 4; t += step) {
      std::string k = rotated_key(line.points, n, t);
      if (k < orbit_id) orbit_id = std::move(k);
    }
    auto [it, inserted] = least_member.try_emplace(std::move(orbit_id), line.canonical_key);
    if (!inserted && line.canonical_key < it->second) it->second = line.canonical_key;
  }

  std::vector<std::string> keys;
  keys.reserve(least_member.size());
  for (auto& [orbit_id, key] : least_member) keys.push_back(std::move(key));
  std::sort(keys.begin(), keys.end());

  std::unordered_map<std::string, const LineIncidence*> by_key;
  by_key.reserve(lines.size());
  for (const LineIncidence& line : lines) by_key.emplace(line.canonical_key, &line);

  std::vector<LineIncidence> reps;
  reps.reserve(keys.size());
  for (const std::string& k : keys) reps.push_back(*by_key.at(k));
  return reps;
}

std::vector<std::vector<std::pair<int, int>>> row_coefficients(const OrbitMap& om) {
  std::vector<std::map<int, int>> acc(om.n);
  for (int o = 0; o < om.orbit_count(); ++o) {
    for (const GridPoint& m : om.members[o]) ++acc[m.j][o];
  }
  std::vector<std::vector<std::pair<int, int>>> rows(om.n);
  for (int r = 0; r < om.n; ++r) rows[r].assign(acc[r].begin(), acc[r].end());
  return rows;
}

}  // namespace ntil
