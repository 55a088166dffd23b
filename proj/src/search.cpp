// Backtracking search over at-most-2 / exactly-2 models. Propagation keeps a
// committed-weight counter per inequality and committed/remaining counters
// per equality; with weights in {1, 2} this derives every unit consequence.
// Branching closes one row equality at a time: a decision assigns a full
// feasible completion of the row (chosen sites to 1, the rest to 0).
#include "ntil/search.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <stdexcept>

#include "ntil/rng.hpp"

namespace ntil {

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::sat: return "sat";
    case SolveStatus::timeout: return "timeout";
    case SolveStatus::cancelled: return "cancelled";
    case SolveStatus::unsat: return "unsat";
  }
  return "unknown";
}

SolveStatus status_from_string(std::string_view s) {
  if (s == "sat") return SolveStatus::sat;
  if (s == "timeout") return SolveStatus::timeout;
  if (s == "cancelled") return SolveStatus::cancelled;
  if (s == "unsat") return SolveStatus::unsat;
  throw std::invalid_argument("unknown solve status: " + std::string(s));
}

bool satisfies(const ConstraintModel& m, std::span<const std::uint8_t> assignment) {
  if (assignment.size() != static_cast<std::size_t>(m.num_vars)) return false;
  for (const WeightedSum& c : m.at_most_2) {
    int sum = 0;
    for (const Term& t : c.terms) sum += t.weight * assignment[t.var];
    if (sum > 2) return false;
  }
  for (const WeightedSum& c : m.exactly_2) {
    int sum = 0;
    for (const Term& t : c.terms) sum += t.weight * assignment[t.var];
    if (sum != 2) return false;
  }
  return true;
}

namespace {

using Clock = std::chrono::steady_clock;

void validate_model(const ConstraintModel& m) {
  if (m.num_vars < 0) throw std::invalid_argument("negative variable count");
  auto check = [&](const std::vector<WeightedSum>& cs) {
    for (const WeightedSum& c : cs) {
      for (const Term& t : c.terms) {
        if (t.var < 0 || t.var >= m.num_vars) throw std::invalid_argument("variable index out of range");
        if (t.weight < 1 || t.weight > 2) throw std::invalid_argument("constraint weights must be 1 or 2");
      }
    }
  };
  check(m.at_most_2);
  check(m.exactly_2);
}

void validate_config(const SearchConfig& cfg) {
  if (cfg.timeout_seconds <= 0.0) throw std::invalid_argument("timeout must be positive");
  if (cfg.restarts.base == 0) throw std::invalid_argument("restart base must be positive");
  if (cfg.restarts.policy == RestartPolicy::geometric && cfg.restarts.factor < 1.0) {
    throw std::invalid_argument("restart factor must be at least 1");
  }
  if (cfg.cancel_poll_interval == 0) throw std::invalid_argument("poll interval must be positive");
}

// Luby sequence 1 1 2 1 1 2 4 ...
std::uint64_t luby(std::uint64_t i) {
  for (std::uint64_t k = 1; k < 64; ++k) {
    if (i == (1ull << k) - 1) return 1ull << (k - 1);
  }
  std::uint64_t k = 1;
  while ((1ull << k) - 1 < i) ++k;
  --k;
  return luby(i - ((1ull << k) - 1));
}

class Searcher {
 public:
  Searcher(const ConstraintModel& m, const SearchConfig& cfg, const std::atomic<bool>* stop,
           std::atomic<std::uint64_t>* live_nodes, bool exhaustive)
      : model_(m),
        cfg_(cfg),
        stop_(stop),
        live_nodes_(live_nodes),
        exhaustive_(exhaustive),
        rng_(cfg.seed) {
    validate_model(m);
    validate_config(cfg);
    const std::size_t nv = static_cast<std::size_t>(m.num_vars);
    value_.assign(nv, kUnset);
    occ_le_.assign(nv, {});
    occ_eq_.assign(nv, {});
    for (std::size_t c = 0; c < m.at_most_2.size(); ++c) {
      le_.push_back(LeState{0, m.at_most_2[c].terms});
      for (const Term& t : m.at_most_2[c].terms) occ_le_[t.var].push_back({static_cast<int>(c), t.weight});
    }
    for (std::size_t c = 0; c < m.exactly_2.size(); ++c) {
      int total = 0;
      for (const Term& t : m.exactly_2[c].terms) total += t.weight;
      eq_.push_back(EqState{0, total, m.exactly_2[c].terms});
      for (const Term& t : m.exactly_2[c].terms) occ_eq_[t.var].push_back({static_cast<int>(c), t.weight});
    }
    if (cfg.branching == Branching::activity) activity_.assign(nv, 0.0);
  }

  SolveOutcome run() {
    const auto start = Clock::now();
    start_ = start;
    SolveOutcome out;
    if (!initial_propagate()) {
      out.status = SolveStatus::unsat;
      out.elapsed_seconds = std::chrono::duration<double>(Clock::now() - start).count();
      return out;
    }
    std::uint64_t budget = budget_for_pass(1);
    for (;;) {
      pass_nodes_ = 0;
      budget_ = exhaustive_ ? kNoBudget : budget;
      const Walk w = dfs();
      if (w == Walk::kSat) {
        out.status = SolveStatus::sat;
        out.assignment = snapshot_assignment();
        if (!satisfies(model_, *out.assignment)) {
          throw std::logic_error("search returned an assignment violating the model");
        }
        break;
      }
      if (w == Walk::kExhausted) {
        // The pass ran to completion without hitting its budget, so the
        // exploration was complete.
        out.status = SolveStatus::unsat;
        break;
      }
      if (w == Walk::kStopped) {
        out.status = cancelled_ ? SolveStatus::cancelled : SolveStatus::timeout;
        break;
      }
      undo_to(root_mark_);
      ++restarts_;
      budget = budget_for_pass(restarts_ + 1);
    }
    out.elapsed_seconds = std::chrono::duration<double>(Clock::now() - start).count();
    out.nodes = nodes_;
    out.restarts = restarts_;
    out.max_poll_gap = std::max(max_poll_gap_, since_poll_);
    return out;
  }

  EnumerationResult run_enumeration(std::size_t max_solutions) {
    start_ = Clock::now();
    enumerate_ = true;
    max_solutions_ = max_solutions;
    budget_ = kNoBudget;
    EnumerationResult res;
    if (!initial_propagate()) {
      res.complete = true;
      return res;
    }
    const Walk w = dfs();
    res.solutions = std::move(found_);
    res.complete = (w == Walk::kExhausted);
    res.nodes = nodes_;
    return res;
  }

 private:
  enum class Walk { kSat, kExhausted, kRestart, kStopped };
  static constexpr std::int8_t kUnset = -1;
  static constexpr std::uint64_t kNoBudget = ~0ull;

  struct Occ {
    int cons;
    int weight;
  };
  struct LeState {
    int committed;
    const std::vector<Term>& terms;
  };
  struct EqState {
    int committed;
    int remaining;  // total weight of unassigned terms
    const std::vector<Term>& terms;
  };

  std::uint64_t budget_for_pass(std::uint64_t pass_index) const {
    switch (cfg_.restarts.policy) {
      case RestartPolicy::none:
        return kNoBudget;
      case RestartPolicy::luby:
        return luby(pass_index) * cfg_.restarts.base;
      case RestartPolicy::geometric: {
        double b = static_cast<double>(cfg_.restarts.base);
        for (std::uint64_t k = 1; k < pass_index; ++k) b *= cfg_.restarts.factor;
        return b >= 1e18 ? kNoBudget : static_cast<std::uint64_t>(b);
      }
    }
    return kNoBudget;
  }

  std::vector<std::uint8_t> snapshot_assignment() const {
    std::vector<std::uint8_t> a(value_.size());
    for (std::size_t v = 0; v < value_.size(); ++v) a[v] = value_[v] == 1 ? 1 : 0;
    return a;
  }

  // ---- assignment and propagation ----

  // Scans every constraint once before the first decision; constraints that
  // already force assignments (or are infeasible outright) act here. The
  // resulting trail prefix survives restarts.
  bool initial_propagate() {
    pending_.clear();
    for (const LeState& c : le_) {
      if (!scan_le(c)) return false;
    }
    for (const EqState& c : eq_) {
      if (!scan_eq(c)) return false;
    }
    if (!drain_pending()) return false;
    root_mark_ = trail_.size();
    return true;
  }

  bool set_value(int v, int val) {
    if (value_[v] != kUnset) return value_[v] == val;
    value_[v] = static_cast<std::int8_t>(val);
    trail_.push_back(v);
    // All counters move before any conflict can return, so undo_to can always
    // reverse the full update.
    if (val == 1) {
      for (const Occ& o : occ_le_[v]) le_[o.cons].committed += o.weight;
    }
    for (const Occ& o : occ_eq_[v]) {
      eq_[o.cons].remaining -= o.weight;
      if (val == 1) eq_[o.cons].committed += o.weight;
    }
    if (val == 1) {
      for (const Occ& o : occ_le_[v]) {
        if (!scan_le(le_[o.cons])) return conflict(le_[o.cons].terms);
      }
    }
    for (const Occ& o : occ_eq_[v]) {
      if (!scan_eq(eq_[o.cons])) return conflict(eq_[o.cons].terms);
    }
    return true;
  }

  bool conflict(const std::vector<Term>& terms) {
    if (cfg_.branching == Branching::activity) {
      for (const Term& t : terms) {
        activity_[t.var] += activity_inc_;
      }
      activity_inc_ *= 1.05;
      if (activity_inc_ > 1e100) {
        for (double& a : activity_) a *= 1e-100;
        activity_inc_ *= 1e-100;
      }
    }
    return false;
  }

  bool scan_le(const LeState& c) {
    const int slack = 2 - c.committed;
    if (slack < 0) return false;
    if (slack >= 2) return true;  // weights are at most 2: nothing is forced
    for (const Term& t : c.terms) {
      if (value_[t.var] == kUnset && t.weight > slack) pending_.push_back({t.var, 0});
    }
    return true;
  }

  bool scan_eq(const EqState& c) {
    const int deficit = 2 - c.committed;
    if (deficit < 0 || c.remaining < deficit) return false;
    if (deficit == 0) {
      for (const Term& t : c.terms) {
        if (value_[t.var] == kUnset) pending_.push_back({t.var, 0});
      }
      return true;
    }
    if (c.remaining == deficit) {
      for (const Term& t : c.terms) {
        if (value_[t.var] == kUnset) pending_.push_back({t.var, 1});
      }
      return true;
    }
    // A variable is forced to 0 when its weight overshoots the deficit, and
    // to 1 when the rest cannot cover the deficit without it.
    if (deficit <= 1 || c.remaining <= deficit + 1) {
      for (const Term& t : c.terms) {
        if (value_[t.var] != kUnset) continue;
        if (t.weight > deficit) {
          pending_.push_back({t.var, 0});
        } else if (c.remaining - t.weight < deficit) {
          pending_.push_back({t.var, 1});
        }
      }
    }
    return true;
  }

  bool assign_and_propagate(int v, int val) {
    pending_.clear();
    if (!set_value(v, val)) return false;
    return drain_pending();
  }

  bool drain_pending() {
    for (std::size_t head = 0; head < pending_.size(); ++head) {
      const auto [v, val] = pending_[head];
      if (!set_value(v, val)) return false;
    }
    pending_.clear();
    return true;
  }

  void undo_to(std::size_t mark) {
    while (trail_.size() > mark) {
      const int v = trail_.back();
      trail_.pop_back();
      const int val = value_[v];
      value_[v] = kUnset;
      if (val == 1) {
        for (const Occ& o : occ_le_[v]) le_[o.cons].committed -= o.weight;
      }
      for (const Occ& o : occ_eq_[v]) {
        eq_[o.cons].remaining += o.weight;
        if (val == 1) eq_[o.cons].committed -= o.weight;
      }
    }
  }

  // ---- branching ----

  // Feasible completions of an open equality: every unassigned subset whose
  // weight equals the deficit. With weights in {1, 2} these are weight-2
  // singletons and/or weight-1 singletons/pairs.
  std::uint64_t completion_count(const EqState& c) const {
    const int deficit = 2 - c.committed;
    std::uint64_t ones = 0, twos = 0;
    for (const Term& t : c.terms) {
      if (value_[t.var] != kUnset) continue;
      if (t.weight == 1) ++ones;
      if (t.weight == 2) ++twos;
    }
    if (deficit == 1) return ones;
    return ones * (ones - 1) / 2 + twos;
  }

  int pick_open_row() {
    int best = -1;
    std::uint64_t best_count = ~0ull;
    int ties = 0;
    for (std::size_t c = 0; c < eq_.size(); ++c) {
      const int deficit = 2 - eq_[c].committed;
      if (deficit <= 0) continue;
      bool open = false;
      for (const Term& t : eq_[c].terms) {
        if (value_[t.var] == kUnset) {
          open = true;
          break;
        }
      }
      if (!open) continue;
      const std::uint64_t count = completion_count(eq_[c]);
      if (count < best_count) {
        best = static_cast<int>(c);
        best_count = count;
        ties = 1;
      } else if (count == best_count && rng_.bounded(static_cast<std::uint64_t>(++ties)) == 0) {
        best = static_cast<int>(c);
      }
    }
    return best;
  }

  using Branch = std::vector<std::pair<int, int>>;  // (var, value) assignments

  std::vector<Branch> row_branches(const EqState& c) {
    const int deficit = 2 - c.committed;
    std::vector<int> ones, twos, open;
    for (const Term& t : c.terms) {
      if (value_[t.var] != kUnset) continue;
      open.push_back(t.var);
      (t.weight == 1 ? ones : twos).push_back(t.var);
    }
    std::vector<Branch> branches;
    auto close_row = [&](const Branch& chosen) {
      Branch b = chosen;
      for (int v : open) {
        bool is_chosen = false;
        for (const auto& [cv, _] : chosen) is_chosen |= (cv == v);
        if (!is_chosen) b.emplace_back(v, 0);
      }
      branches.push_back(std::move(b));
    };
    if (deficit == 1) {
      for (int v : ones) close_row({{v, 1}});
    } else {
      for (int v : twos) close_row({{v, 1}});
      for (std::size_t a = 0; a < ones.size(); ++a) {
        for (std::size_t b = a + 1; b < ones.size(); ++b) {
          close_row({{ones[a], 1}, {ones[b], 1}});
        }
      }
    }
    rng_.shuffle(branches);
    return branches;
  }

  std::vector<Branch> decide() {
    if (cfg_.branching == Branching::row_pair) {
      const int row = pick_open_row();
      if (row >= 0) return row_branches(eq_[row]);
      // No open equality: finish any free variables by explicit branching.
      return free_variable_branches(first_unassigned());
    }
    const int v = activity_pick();
    if (v < 0) return {};
    return free_variable_branches(v);
  }

  int first_unassigned() const {
    for (std::size_t v = 0; v < value_.size(); ++v) {
      if (value_[v] == kUnset) return static_cast<int>(v);
    }
    return -1;
  }

  int activity_pick() {
    int best = -1;
    double best_score = -1.0;
    int ties = 0;
    for (std::size_t v = 0; v < value_.size(); ++v) {
      if (value_[v] != kUnset) continue;
      if (activity_[v] > best_score) {
        best = static_cast<int>(v);
        best_score = activity_[v];
        ties = 1;
      } else if (activity_[v] == best_score && rng_.bounded(static_cast<std::uint64_t>(++ties)) == 0) {
        best = static_cast<int>(v);
      }
    }
    return best;
  }

  std::vector<Branch> free_variable_branches(int v) {
    if (v < 0) return {};
    const int first = static_cast<int>(rng_.bounded(2));
    return {Branch{{v, first}}, Branch{{v, 1 - first}}};
  }

  // ---- main walk ----

  bool poll() {
    max_poll_gap_ = std::max(max_poll_gap_, since_poll_);
    since_poll_ = 0;
    if (stop_ != nullptr && stop_->load(std::memory_order_acquire)) {
      cancelled_ = true;
      return true;
    }
    const double elapsed = std::chrono::duration<double>(Clock::now() - start_).count();
    return elapsed > cfg_.timeout_seconds;
  }

  void on_solution() {
    if (!enumerate_) return;
    auto a = snapshot_assignment();
    if (!satisfies(model_, a)) {
      throw std::logic_error("enumeration produced an assignment violating the model");
    }
    found_.push_back(std::move(a));
  }

  Walk dfs() {
    const std::vector<Branch> branches = decide();
    if (branches.empty()) {
      on_solution();
      if (enumerate_) {
        return found_.size() >= max_solutions_ ? Walk::kStopped : Walk::kExhausted;
      }
      return Walk::kSat;
    }
    for (const Branch& branch : branches) {
      if (pass_nodes_ >= budget_) return Walk::kRestart;
      ++nodes_;
      ++pass_nodes_;
      ++since_poll_;
      if (live_nodes_ != nullptr) live_nodes_->fetch_add(1, std::memory_order_relaxed);
      if (since_poll_ >= cfg_.cancel_poll_interval && poll()) return Walk::kStopped;

      const std::size_t mark = trail_.size();
      bool ok = true;
      pending_.clear();
      for (const auto& [v, val] : branch) {
        if (!set_value(v, val)) {
          ok = false;
          break;
        }
      }
      if (ok) ok = drain_pending();
      if (ok) {
        const Walk w = dfs();
        if (w == Walk::kSat) return w;  // keep the trail: it holds the witness
        if (w == Walk::kRestart || w == Walk::kStopped) {
          undo_to(mark);
          return w;
        }
      }
      undo_to(mark);
    }
    return Walk::kExhausted;
  }

  const ConstraintModel& model_;
  const SearchConfig& cfg_;
  const std::atomic<bool>* stop_;
  std::atomic<std::uint64_t>* live_nodes_;
  const bool exhaustive_;
  Rng rng_;

  std::vector<std::int8_t> value_;
  std::vector<int> trail_;
  std::vector<std::vector<Occ>> occ_le_;
  std::vector<std::vector<Occ>> occ_eq_;
  std::vector<LeState> le_;
  std::vector<EqState> eq_;
  std::vector<std::pair<int, int>> pending_;
  std::vector<double> activity_;
  double activity_inc_ = 1.0;

  Clock::time_point start_{};
  std::size_t root_mark_ = 0;
  std::uint64_t nodes_ = 0;
  std::uint64_t pass_nodes_ = 0;
  std::uint64_t budget_ = kNoBudget;
  std::uint64_t restarts_ = 0;
  std::uint64_t since_poll_ = 0;
  std::uint64_t max_poll_gap_ = 0;
  bool cancelled_ = false;
  bool enumerate_ = false;
  std::size_t max_solutions_ = 0;
  std::vector<std::vector<std::uint8_t>> found_;
};

void check_exhaustive_guard(const ConstraintModel& m, const SearchConfig& cfg) {
  if (m.num_vars > 64 && !cfg.force_exhaustive) {
    throw std::invalid_argument("exhaustive mode guarded to 64 variables; set force_exhaustive");
  }
}

}  // namespace

SolveOutcome solve(const ConstraintModel& m, const SearchConfig& cfg,
                   const std::atomic<bool>* stop, std::atomic<std::uint64_t>* live_nodes) {
  Searcher s(m, cfg, stop, live_nodes, /*exhaustive=*/false);
  return s.run();
}

SolveOutcome solve_exhaustive(const ConstraintModel& m, const SearchConfig& cfg,
                              const std::atomic<bool>* stop) {
  check_exhaustive_guard(m, cfg);
  Searcher s(m, cfg, stop, nullptr, /*exhaustive=*/true);
  return s.run();
}

EnumerationResult enumerate_solutions(const ConstraintModel& m, const SearchConfig& cfg,
                                      std::size_t max_solutions) {
  check_exhaustive_guard(m, cfg);
  Searcher s(m, cfg, nullptr, nullptr, /*exhaustive=*/true);
  return s.run_enumeration(max_solutions);
}

}  // namespace ntil
