#include "ntil/verify.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "ntil/orbits.hpp"

namespace ntil {

namespace {

std::string point_str(GridPoint p) {
  return "(" + std::to_string(p.i) + ", " + std::to_string(p.j) + ")";
}

void check_rep_domain(const OrbitRepresentatives& reps) {
  const int n = reps.n;
  if (n < 2) throw std::invalid_argument("grid size must be at least 2");
  const bool odd = (n % 2) != 0;
  const int wi = odd ? (n + 1) / 2 : n / 2;
  const int wj = odd ? (n - 1) / 2 : n / 2;
  int diagonal_count = 0;
  for (const RepSite& r : reps.reps) {
    if (r.site.i < 0 || r.site.i >= wi || r.site.j < 0 || r.site.j >= wj) {
      throw std::invalid_argument("representative " + point_str(r.site) +
                                  " outside the fundamental domain");
    }
    if (r.diagonal) {
      if (!odd || r.site.i != r.site.j) {
        throw std::invalid_argument("diagonal flag on non-diagonal representative " +
                                    point_str(r.site));
      }
      ++diagonal_count;
    } else if (odd && r.site.i == r.site.j) {
      throw std::invalid_argument("odd-n diagonal representative " + point_str(r.site) +
                                  " must carry the diagonal flag");
    }
  }
  const std::size_t expected = odd ? (n + 1) / 2 : n / 2;
  if (reps.reps.size() != expected) {
    throw std::invalid_argument("expected " + std::to_string(expected) +
                                " representatives, got " + std::to_string(reps.reps.size()));
  }
  if (odd && diagonal_count != 1) {
    throw std::invalid_argument("odd n requires exactly one diagonal representative");
  }
}

}  // namespace

Configuration expand(const OrbitRepresentatives& reps) {
  check_rep_domain(reps);
  const int n = reps.n;
  Configuration c;
  c.n = n;
  std::set<GridPoint> seen;
  for (const RepSite& r : reps.reps) {
    std::vector<GridPoint> orbit;
    if (r.diagonal) {
      orbit = {r.site, GridPoint{n - 1 - r.site.i, n - 1 - r.site.j}};
    } else {
      orbit.push_back(r.site);
      for (GridPoint p = rotate(r.site, n); p != r.site; p = rotate(p, n)) orbit.push_back(p);
    }
    for (const GridPoint& p : orbit) {
      if (!seen.insert(p).second) {
        throw std::invalid_argument("orbit expansion collision at " + point_str(p));
      }
      if ((n % 2) != 0 && p.j == n - 1 - p.i) {
        throw std::invalid_argument("expanded point " + point_str(p) + " lies on the anti-diagonal");
      }
    }
  }
  c.points.assign(seen.begin(), seen.end());
  return c;
}

OrbitRepresentatives representatives_from(const Configuration& c) {
  const OrbitMap om = build_orbit_map(c.n);
  const bool odd = (c.n % 2) != 0;
  std::map<GridPoint, RepSite> reps;
  for (const GridPoint& p : c.points) {
    const int o = om.orbit_of(p);
    if (o < 0) {
      throw std::invalid_argument("point " + point_str(p) + " lies on the forced-empty anti-diagonal");
    }
    const GridPoint rep = om.representatives[o];
    reps.emplace(rep, RepSite{rep, odd && rep.i == rep.j});
  }
  OrbitRepresentatives out;
  out.n = c.n;
  for (const auto& [site, rep] : reps) out.reps.push_back(rep);
  return out;
}

namespace {

Verdict fail_triple(GridPoint a, GridPoint b, GridPoint c) {
  Verdict v;
  v.pass = false;
  v.reason = "collinear triple " + point_str(a) + " " + point_str(b) + " " + point_str(c);
  std::array<GridPoint, 3> w{a, b, c};
  std::sort(w.begin(), w.end());
  v.collinear_witness = w;
  return v;
}

// Buckets the other points by primitive slope around each anchor; a repeated
// slope is a collinear triple. O(k^2 log k) over k points.
std::optional<Verdict> find_triple_buckets(const std::vector<GridPoint>& pts) {
  for (std::size_t a = 0; a < pts.size(); ++a) {
    std::map<std::pair<int, int>, GridPoint> dirs;
    for (std::size_t b = 0; b < pts.size(); ++b) {
      if (b == a) continue;
      int dx = pts[b].i - pts[a].i;
      int dy = pts[b].j - pts[a].j;
      const int g = std::gcd(dx < 0 ? -dx : dx, dy < 0 ? -dy : dy);
      dx /= g;
      dy /= g;
      if (dx < 0 || (dx == 0 && dy < 0)) {
        dx = -dx;
        dy = -dy;
      }
      const auto [it, inserted] = dirs.try_emplace({dx, dy}, pts[b]);
      if (!inserted) return fail_triple(pts[a], it->second, pts[b]);
    }
  }
  return std::nullopt;
}

std::optional<Verdict> find_triple_brute(const std::vector<GridPoint>& pts) {
  for (std::size_t a = 0; a < pts.size(); ++a) {
    for (std::size_t b = a + 1; b < pts.size(); ++b) {
      for (std::size_t c = b + 1; c < pts.size(); ++c) {
        if (collinear(pts[a], pts[b], pts[c])) return fail_triple(pts[a], pts[b], pts[c]);
      }
    }
  }
  return std::nullopt;
}

}  // namespace

Verdict verify(const Configuration& c, const VerifyOptions& opts) {
  Verdict v;
  for (const GridPoint& p : c.points) {
    if (p.i < 0 || p.i >= c.n || p.j < 0 || p.j >= c.n) {
      v.pass = false;
      v.reason = "point " + point_str(p) + " outside the grid";
      return v;
    }
  }
  std::vector<GridPoint> pts = c.points;
  std::sort(pts.begin(), pts.end());
  if (std::adjacent_find(pts.begin(), pts.end()) != pts.end()) {
    v.pass = false;
    v.reason = "duplicate point";
    return v;
  }
  if (opts.expect_count && static_cast<int>(pts.size()) != *opts.expect_count) {
    v.pass = false;
    v.reason = "expected " + std::to_string(*opts.expect_count) + " points, found " +
               std::to_string(pts.size());
    return v;
  }
  if (opts.two_per_row_and_column) {
    std::vector<int> row_count(c.n, 0), col_count(c.n, 0);
    for (const GridPoint& p : pts) {
      ++row_count[p.j];
      ++col_count[p.i];
    }
    for (int r = 0; r < c.n; ++r) {
      if (row_count[r] != 2) {
        v.pass = false;
        v.reason = "row " + std::to_string(r) + " holds " + std::to_string(row_count[r]) +
                   " points, expected 2";
        v.bad_row = r;
        return v;
      }
    }
    for (int i = 0; i < c.n; ++i) {
      if (col_count[i] != 2) {
        v.pass = false;
        v.reason = "column " + std::to_string(i) + " holds " + std::to_string(col_count[i]) +
                   " points, expected 2";
        v.bad_column = i;
        return v;
      }
    }
  }
  const auto triple = (opts.method == TripleCheck::brute_force) ? find_triple_brute(pts)
                                                                : find_triple_buckets(pts);
  if (triple) return *triple;
  return v;
}

namespace {

struct MaxSearch {
  int n = 0;
  int best = -1;
  std::vector<GridPoint> best_points;
  std::vector<GridPoint> chosen;

  bool extends(GridPoint p) const {
    for (std::size_t a = 0; a < chosen.size(); ++a) {
      for (std::size_t b = a + 1; b < chosen.size(); ++b) {
        if (collinear(chosen[a], chosen[b], p)) return false;
      }
    }
    return true;
  }

  void place_row(int row) {
    const int size = static_cast<int>(chosen.size());
    if (size + 2 * (n - row) <= best) return;  // cannot beat the incumbent
    if (row == n) {
      if (size > best) {
        best = size;
        best_points = chosen;
      }
      return;
    }
    for (int a = 0; a < n; ++a) {
      const GridPoint pa{a, row};
      if (!extends(pa)) continue;
      chosen.push_back(pa);
      for (int b = a + 1; b < n; ++b) {
        const GridPoint pb{b, row};
        if (!extends(pb)) continue;
        chosen.push_back(pb);
        place_row(row + 1);
        chosen.pop_back();
      }
      place_row(row + 1);  // one point in this row
      chosen.pop_back();
    }
    place_row(row + 1);  // empty row
  }
};

}  // namespace

std::pair<int, Configuration> brute_force_D(int n) {
  if (n < 2) throw std::invalid_argument("grid size must be at least 2");
  if (n > 6) throw std::invalid_argument("brute_force_D is guarded to n <= 6");
  MaxSearch s;
  s.n = n;
  s.place_row(0);
  Configuration witness;
  witness.n = n;
  witness.points = s.best_points;
  std::sort(witness.points.begin(), witness.points.end());
  return {s.best, witness};
}

std::int64_t count_collinear_triples(int n) {
  if (n < 2) throw std::invalid_argument("grid size must be at least 2");
  if (n > 40) throw std::invalid_argument("count_collinear_triples is guarded to n <= 40");
  std::vector<GridPoint> pts;
  pts.reserve(static_cast<std::size_t>(n) * n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) pts.push_back(GridPoint{i, j});
  }
  std::int64_t count = 0;
  const std::size_t m = pts.size();
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a + 1; b < m; ++b) {
      const int dx = pts[b].i - pts[a].i;
      const int dy = pts[b].j - pts[a].j;
      for (std::size_t c = b + 1; c < m; ++c) {
        if (static_cast<std::int64_t>(dx) * (pts[c].j - pts[a].j) ==
            static_cast<std::int64_t>(dy) * (pts[c].i - pts[a].i)) {
          ++count;
        }
      }
    }
  }
  return count;
}

// ---- configuration files ----

std::string write_config(const ConfigFile& f) {
  std::string out;
  out += "ntil-config 1\n";
  out += "n " + std::to_string(f.n) + "\n";
  for (const RepSite& r : f.reps) {
    out += (r.diagonal ? "repd " : "rep ");
    out += std::to_string(r.site.i) + " " + std::to_string(r.site.j) + "\n";
  }
  std::vector<GridPoint> pts = f.points;
  std::sort(pts.begin(), pts.end());
  for (const GridPoint& p : pts) {
    out += "point " + std::to_string(p.i) + " " + std::to_string(p.j) + "\n";
  }
  return out;
}

namespace {

int parse_coord(std::string_view s) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw std::invalid_argument("bad coordinate: " + std::string(s));
  }
  return value;
}

}  // namespace

ConfigFile parse_config(std::string_view text) {
  ConfigFile f;
  bool saw_magic = false;
  bool saw_n = false;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    if (line.empty()) continue;
    std::vector<std::string_view> fields;
    std::size_t p = 0;
    while (p < line.size()) {
      std::size_t next = line.find(' ', p);
      if (next == std::string_view::npos) next = line.size();
      if (next > p) fields.push_back(line.substr(p, next - p));
      p = next + 1;
    }
    if (!saw_magic) {
      if (fields.size() != 2 || fields[0] != "ntil-config" || fields[1] != "1") {
        throw std::invalid_argument("not an ntil-config file");
      }
      saw_magic = true;
      continue;
    }
    if (fields[0] == "n" && fields.size() == 2) {
      f.n = parse_coord(fields[1]);
      saw_n = true;
    } else if ((fields[0] == "rep" || fields[0] == "repd") && fields.size() == 3) {
      f.reps.push_back(RepSite{GridPoint{parse_coord(fields[1]), parse_coord(fields[2])},
                               fields[0] == "repd"});
    } else if (fields[0] == "point" && fields.size() == 3) {
      f.points.push_back(GridPoint{parse_coord(fields[1]), parse_coord(fields[2])});
    } else {
      throw std::invalid_argument("unrecognized config line: " + std::string(line));
    }
  }
  if (!saw_magic || !saw_n) throw std::invalid_argument("incomplete config file");
  return f;
}

}  // namespace ntil
