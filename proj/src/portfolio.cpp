// Race orchestration: M independent solver instances over one immutable
// model, one stop flag, a common launch timestamp. Workers share no mutable
// search state; per-instance live node counters support the cancellation
// latency contract.
#include "ntil/portfolio.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <memory>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string_view>
#include <thread>

namespace ntil {

namespace {

using Clock = std::chrono::steady_clock;

}  // namespace

int default_worker_count() {
  if (const char* env = std::getenv("NTIL_WORKERS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 2 : static_cast<int>(hw);
}

SolveRecord race(const ConstraintModel& m, int instance_count, std::uint64_t seed_base,
                 double timeout_seconds, SearchConfig base) {
  if (instance_count < 1) throw std::invalid_argument("instance count must be at least 1");

  SolveRecord record;
  record.n = m.n;
  record.kind = m.kind;
  record.instance_count = instance_count;
  record.seed_base = seed_base;

  std::atomic<bool> stop{false};
  std::atomic<int> winner{-1};
  std::vector<SolveOutcome> outcomes(instance_count);
  std::vector<std::unique_ptr<std::atomic<std::uint64_t>>> live(instance_count);
  std::vector<std::uint64_t> nodes_at_first_sat(instance_count, 0);
  for (auto& counter : live) counter = std::make_unique<std::atomic<std::uint64_t>>(0);
  double wall_to_first = 0.0;

  const auto launch = Clock::now();
  std::vector<std::thread> workers;
  workers.reserve(instance_count);
  for (int k = 0; k < instance_count; ++k) {
    workers.emplace_back([&, k] {
      SearchConfig cfg = base;
      cfg.seed = seed_base + static_cast<std::uint64_t>(k);
      cfg.timeout_seconds = timeout_seconds;
      SolveOutcome out = solve(m, cfg, &stop, live[k].get());
      if (out.status == SolveStatus::sat) {
        int expected = -1;
        if (winner.compare_exchange_strong(expected, k)) {
          // First success: record the wall time, stop everyone, then sample
          // the node counters. Losers run at most one poll interval past the
          // flag, so final - sample bounds their overrun.
          wall_to_first = std::chrono::duration<double>(Clock::now() - launch).count();
          stop.store(true, std::memory_order_seq_cst);
          for (int i = 0; i < instance_count; ++i) {
            nodes_at_first_sat[i] = live[i]->load(std::memory_order_seq_cst);
          }
        }
      }
      outcomes[k] = std::move(out);
    });
  }
  for (std::thread& t : workers) t.join();

  const int widx = winner.load();
  record.per_instance.reserve(instance_count);
  for (int k = 0; k < instance_count; ++k) {
    InstanceOutcome io;
    io.seed = seed_base + static_cast<std::uint64_t>(k);
    io.status = outcomes[k].status;
    io.elapsed_seconds = outcomes[k].elapsed_seconds;
    io.nodes = outcomes[k].nodes;
    io.nodes_at_first_sat = nodes_at_first_sat[k];
    io.max_poll_gap = outcomes[k].max_poll_gap;
    record.per_instance.push_back(io);
  }
  if (widx >= 0) {
    record.winner_seed = seed_base + static_cast<std::uint64_t>(widx);
    record.wall_time_to_first = wall_to_first;
    record.winning_assignment = std::move(outcomes[widx].assignment);
  }
  return record;
}

std::string write_record(const SolveRecord& r) {
  std::ostringstream out;
  out << "ntil-race 1\n";
  out << "n " << r.n << "\n";
  out << "kind " << (r.kind == ModelKind::direct ? "direct" : "reduced") << "\n";
  out << "instances " << r.instance_count << "\n";
  out << "seed-base " << r.seed_base << "\n";
  if (r.winner_seed) {
    out << "winner-seed " << *r.winner_seed << "\n";
    out << "wall-time-to-first " << r.wall_time_to_first << "\n";
  } else {
    out << "winner-seed none\n";
  }
  for (const InstanceOutcome& io : r.per_instance) {
    out << "instance seed " << io.seed << " status " << to_string(io.status) << " elapsed "
        << io.elapsed_seconds << " nodes " << io.nodes << " nodes-at-first-sat "
        << io.nodes_at_first_sat << "\n";
  }
  return out.str();
}

std::vector<RunRow> run_batch(const ConstraintModel& m, int runs, double cutoff_seconds,
                              std::uint64_t seed_base, int workers, SearchConfig base) {
  if (runs < 1) throw std::invalid_argument("run count must be at least 1");
  if (cutoff_seconds <= 0.0) throw std::invalid_argument("cutoff must be positive");
  const int pool = std::min(runs, workers > 0 ? workers : default_worker_count());

  std::vector<RunRow> rows(runs);
  std::atomic<int> next{0};
  std::vector<std::thread> threads;
  threads.reserve(pool);
  for (int w = 0; w < pool; ++w) {
    threads.emplace_back([&] {
      for (;;) {
        const int idx = next.fetch_add(1);
        if (idx >= runs) return;
        SearchConfig cfg = base;
        cfg.seed = seed_base + static_cast<std::uint64_t>(idx);
        cfg.timeout_seconds = cutoff_seconds;
        const SolveOutcome out = solve(m, cfg);
        rows[idx] = RunRow{static_cast<std::uint64_t>(idx), cfg.seed, out.status,
                           out.elapsed_seconds};
      }
    });
  }
  for (std::thread& t : threads) t.join();
  return rows;
}

EmpiricalCdf make_cdf(const std::vector<RunRow>& rows, double cutoff_seconds) {
  std::vector<double> times;
  for (const RunRow& r : rows) {
    if (r.status == SolveStatus::sat && r.elapsed_seconds <= cutoff_seconds) {
      times.push_back(r.elapsed_seconds);
    }
  }
  return make_empirical_cdf(std::move(times), rows.size(), cutoff_seconds);
}

EmpiricalCdf collect_cdf(const ConstraintModel& m, int runs, double cutoff_seconds,
                         std::uint64_t seed_base, int workers, SearchConfig base) {
  return make_cdf(run_batch(m, runs, cutoff_seconds, seed_base, workers, std::move(base)),
                  cutoff_seconds);
}

void write_runs_csv(std::ostream& out, const std::vector<RunRow>& rows) {
  out << "run_index,seed,status,elapsed_seconds\n";
  char buf[64];
  for (const RunRow& r : rows) {
    const int len = std::snprintf(buf, sizeof buf, "%.17g", r.elapsed_seconds);
    out << r.run_index << ',' << r.seed << ',' << to_string(r.status) << ','
        << std::string_view(buf, len) << '\n';
  }
}

std::vector<RunRow> parse_runs_csv(std::istream& in) {
  std::vector<RunRow> rows;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (header) {
      if (line != "run_index,seed,status,elapsed_seconds") {
        throw std::invalid_argument("unexpected CSV header: " + line);
      }
      header = false;
      continue;
    }
    std::array<std::string_view, 4> fields;
    std::string_view rest = line;
    for (int f = 0; f < 4; ++f) {
      const std::size_t comma = rest.find(',');
      if ((f < 3) != (comma != std::string_view::npos)) {
        throw std::invalid_argument("bad CSV row: " + line);
      }
      fields[f] = rest.substr(0, comma);
      if (comma != std::string_view::npos) rest = rest.substr(comma + 1);
    }
    RunRow row;
    auto parse_u64 = [&](std::string_view s) {
      std::uint64_t v = 0;
      const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc{} || p != s.data() + s.size()) {
        throw std::invalid_argument("bad CSV integer: " + std::string(s));
      }
      return v;
    };
    row.run_index = parse_u64(fields[0]);
    row.seed = parse_u64(fields[1]);
    row.status = status_from_string(fields[2]);
    char* end = nullptr;
    const std::string num(fields[3]);
    row.elapsed_seconds = std::strtod(num.c_str(), &end);
    if (end != num.c_str() + num.size()) {
      throw std::invalid_argument("bad CSV elapsed value: " + num);
    }
    rows.push_back(row);
  }
  if (header) throw std::invalid_argument("empty CSV");
  return rows;
}

}  // namespace ntil
