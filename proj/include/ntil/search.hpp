// Seeded, restarting backtracking search with counter propagation for the
// at-most-2 / exactly-2 constraint models.
#pragma once

#include <atomic>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "ntil/model.hpp"

namespace ntil {

enum class RestartPolicy { geometric, luby, none };

struct RestartSchedule {
  RestartPolicy policy = RestartPolicy::geometric;
  std::uint64_t base = 1000;  // node budget of the first pass (luby unit)
  double factor = 1.5;        // geometric growth
};

enum class Branching { row_pair, activity };

struct SearchConfig {
  std::uint64_t seed = 1;
  double timeout_seconds = 60.0;
  RestartSchedule restarts{};
  Branching branching = Branching::row_pair;
  // Decisions between checks of the stop signal and the wall clock.
  std::uint64_t cancel_poll_interval = 1024;
  // Lifts the num_vars <= 64 guard of exhaustive mode.
  bool force_exhaustive = false;
};

enum class SolveStatus { sat, timeout, cancelled, unsat };

const char* to_string(SolveStatus s);
SolveStatus status_from_string(std::string_view s);

struct SolveOutcome {
  SolveStatus status = SolveStatus::timeout;
  std::optional<std::vector<std::uint8_t>> assignment;  // 0/1 per variable
  double elapsed_seconds = 0.0;
  std::uint64_t nodes = 0;     // decisions taken
  std::uint64_t restarts = 0;
  // Largest observed decision gap between stop-signal polls; never exceeds
  // cancel_poll_interval.
  std::uint64_t max_poll_gap = 0;
};

// Exact evaluation of a full 0/1 assignment against every constraint.
bool satisfies(const ConstraintModel& m, std::span<const std::uint8_t> assignment);

// Randomized search with restarts. A sat assignment is re-verified against
// the model before it is returned. `stop` may be flipped by another thread;
// it is observed within cancel_poll_interval decisions. `live_nodes`, when
// given, is incremented once per decision while the search runs.
SolveOutcome solve(const ConstraintModel& m, const SearchConfig& cfg,
                   const std::atomic<bool>* stop = nullptr,
                   std::atomic<std::uint64_t>* live_nodes = nullptr);

// Complete search: no restarts; returns sat with a witness or unsat with the
// space exhausted. Guarded to num_vars <= 64 unless cfg.force_exhaustive.
SolveOutcome solve_exhaustive(const ConstraintModel& m, const SearchConfig& cfg,
                              const std::atomic<bool>* stop = nullptr);

struct EnumerationResult {
  std::vector<std::vector<std::uint8_t>> solutions;
  bool complete = false;  // space exhausted (no truncation by limit/timeout)
  std::uint64_t nodes = 0;
};

// Enumerates every satisfying assignment in exhaustive mode, up to
// max_solutions. Same guard as solve_exhaustive.
EnumerationResult enumerate_solutions(
    const ConstraintModel& m, const SearchConfig& cfg,
    std::size_t max_solutions = std::numeric_limits<std::size_t>::max());

}  // namespace ntil
