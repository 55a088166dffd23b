// Independent configuration checking, orbit expansion, and small-n oracles.
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ntil/grid.hpp"

namespace ntil {

// An occupied-site set on G_n claimed to contain no three collinear points.
struct Configuration {
  int n = 0;
  std::vector<GridPoint> points;
};

struct RepSite {
  GridPoint site;
  bool diagonal = false;  // odd n only: expand under the half-turn
  auto operator<=>(const RepSite&) const = default;
};

// Occupied-site orbit representatives inside the fundamental domain.
struct OrbitRepresentatives {
  int n = 0;
  std::vector<RepSite> reps;
};

// Applies the quarter-turn orbit (or half-turn orbit for diagonal-flagged
// sites) to every representative. Throws std::invalid_argument on malformed
// representatives or when two orbits collide; the message names the
// colliding site.
Configuration expand(const OrbitRepresentatives& reps);

// Recovers representatives (with diagonal flags) from a rotationally
// symmetric configuration; inverse of expand on its image.
OrbitRepresentatives representatives_from(const Configuration& c);

enum class TripleCheck { slope_buckets, brute_force };

struct VerifyOptions {
  std::optional<int> expect_count;
  bool two_per_row_and_column = false;
  TripleCheck method = TripleCheck::slope_buckets;
};

struct Verdict {
  bool pass = true;
  std::string reason;  // empty on pass
  std::optional<std::array<GridPoint, 3>> collinear_witness;
  std::optional<int> bad_row;
  std::optional<int> bad_column;
  explicit operator bool() const { return pass; }
};

// Failures are verdicts, never exceptions. The default triple check buckets
// primitive slopes per anchor point; brute_force tests all point triples and
// serves as the oracle mode.
Verdict verify(const Configuration& c, const VerifyOptions& opts = {});

// Exhaustive maximum no-three-in-line set, with witness. Guarded to n <= 6.
std::pair<int, Configuration> brute_force_D(int n);

// Exact number of collinear 3-subsets of G_n by testing every triple.
// Guarded to n <= 40.
std::int64_t count_collinear_triples(int n);

// Line-oriented configuration file: n, optional representatives (with
// diagonal flags), optional points. Writer output is bit-stable under a
// read/write round trip.
struct ConfigFile {
  int n = 0;
  std::vector<RepSite> reps;
  std::vector<GridPoint> points;
};

std::string write_config(const ConfigFile& f);
ConfigFile parse_config(std::string_view text);

}  // namespace ntil
