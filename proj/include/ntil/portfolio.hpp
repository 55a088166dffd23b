// Run-until-first-success racing and batched runtime-distribution sampling.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ntil/cdf.hpp"
#include "ntil/model.hpp"
#include "ntil/search.hpp"

namespace ntil {

struct InstanceOutcome {
  std::uint64_t seed = 0;
  SolveStatus status = SolveStatus::timeout;
  double elapsed_seconds = 0.0;
  std::uint64_t nodes = 0;
  // This instance's decision count sampled right after the first success was
  // signalled (0 when the race had no winner). A loser executes at most
  // cancel_poll_interval further decisions past this value.
  std::uint64_t nodes_at_first_sat = 0;
  std::uint64_t max_poll_gap = 0;
};

struct SolveRecord {
  int n = 0;
  ModelKind kind = ModelKind::direct;
  int instance_count = 0;
  std::uint64_t seed_base = 0;
  std::optional<std::uint64_t> winner_seed;
  double wall_time_to_first = 0.0;  // common launch to first success
  std::vector<InstanceOutcome> per_instance;
  std::optional<std::vector<std::uint8_t>> winning_assignment;
};

// Launches instance_count independent single-worker searches with seeds
// seed_base+0 .. seed_base+instance_count-1; the first sat stops the rest.
SolveRecord race(const ConstraintModel& m, int instance_count, std::uint64_t seed_base,
                 double timeout_seconds, SearchConfig base = {});

std::string write_record(const SolveRecord& r);

struct RunRow {
  std::uint64_t run_index = 0;
  std::uint64_t seed = 0;
  SolveStatus status = SolveStatus::timeout;
  double elapsed_seconds = 0.0;
};

// `runs` independent single solves with cutoff as the per-run timeout,
// distributed over a worker pool (workers <= 0 picks a default from
// NTIL_WORKERS or hardware concurrency). Results are deterministic per seed
// regardless of scheduling.
std::vector<RunRow> run_batch(const ConstraintModel& m, int runs, double cutoff_seconds,
                              std::uint64_t seed_base, int workers = 0, SearchConfig base = {});

// Completion times of sat rows within the cutoff; censored runs keep their
// place in total_runs.
EmpiricalCdf make_cdf(const std::vector<RunRow>& rows, double cutoff_seconds);

EmpiricalCdf collect_cdf(const ConstraintModel& m, int runs, double cutoff_seconds,
                         std::uint64_t seed_base, int workers = 0, SearchConfig base = {});

// CSV with header run_index,seed,status,elapsed_seconds.
void write_runs_csv(std::ostream& out, const std::vector<RunRow>& rows);
std::vector<RunRow> parse_runs_csv(std::istream& in);

int default_worker_count();

}  // namespace ntil
