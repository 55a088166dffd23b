#include "ntil/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "ntil/analytics.hpp"
#include "ntil/model.hpp"
#include "ntil/orbits.hpp"
#include "ntil/portfolio.hpp"
#include "ntil/search.hpp"
#include "ntil/verify.hpp"

namespace ntil {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
  if (!out) throw std::runtime_error("failed writing " + path);
}

ConstraintModel build(int n, bool reduced) {
  return reduced ? build_reduced(n) : build_direct(n);
}

// Turns a sat assignment into a full configuration. Reduced assignments pass
// through orbit expansion; every result is re-checked by the verifier.
Configuration configuration_from(const ConstraintModel& m,
                                 const std::vector<std::uint8_t>& assignment) {
  Configuration c;
  c.n = m.n;
  if (m.kind == ModelKind::direct) {
    for (int v = 0; v < m.num_vars; ++v) {
      if (assignment[v]) c.points.push_back(m.var_names[v]);
    }
    std::sort(c.points.begin(), c.points.end());
    return c;
  }
  OrbitRepresentatives reps;
  reps.n = m.n;
  const bool odd = (m.n % 2) != 0;
  for (int v = 0; v < m.num_vars; ++v) {
    if (assignment[v]) {
      const GridPoint site = m.var_names[v];
      reps.reps.push_back(RepSite{site, odd && site.i == site.j});
    }
  }
  return expand(reps);
}

void print_points(std::ostream& out, const std::vector<GridPoint>& pts) {
  for (std::size_t k = 0; k < pts.size(); ++k) {
    out << (k ? " " : "") << "(" << pts[k].i << "," << pts[k].j << ")";
  }
  out << "\n";
}

ConfigFile config_file_from(const Configuration& c) {
  ConfigFile f;
  f.n = c.n;
  f.points = c.points;
  try {
    const OrbitRepresentatives reps = representatives_from(c);
    const Configuration roundtrip = expand(reps);
    if (roundtrip.points == c.points) f.reps = reps.reps;
  } catch (const std::exception&) {
    // not rotationally symmetric; points only
  }
  return f;
}

std::string default_solution_path(const ConstraintModel& m, std::uint64_t seed) {
  return "ntil-solution-n" + std::to_string(m.n) +
         (m.kind == ModelKind::reduced ? "-reduced" : "-direct") + "-seed" +
         std::to_string(seed) + ".txt";
}

int report_solution(std::ostream& out, const ConstraintModel& m, const SolveOutcome& res,
                    std::uint64_t seed, const std::string& out_path) {
  if (res.status != SolveStatus::sat) {
    out << to_string(res.status) << " elapsed " << res.elapsed_seconds << " s, " << res.nodes
        << " nodes, " << res.restarts << " restarts\n";
    return res.status == SolveStatus::unsat ? 0 : 2;
  }
  const Configuration c = configuration_from(m, *res.assignment);
  VerifyOptions vo;
  vo.expect_count = 2 * m.n;
  vo.two_per_row_and_column = true;
  const Verdict v = verify(c, vo);
  if (!v) throw std::runtime_error("internal check failed: " + v.reason);
  out << "sat " << c.points.size() << " points, elapsed " << res.elapsed_seconds << " s, "
      << res.nodes << " nodes, " << res.restarts << " restarts\n";
  print_points(out, c.points);
  const std::string path = out_path.empty() ? default_solution_path(m, seed) : out_path;
  write_file(path, write_config(config_file_from(c)));
  out << "wrote " << path << "\n";
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"no-three-in-line model generator, solver, verifier, and runtime statistics"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate a model file");
  int gen_n = 0;
  bool gen_reduced = false;
  std::string gen_format = "text";
  std::string gen_out;
  gen->add_option("--n", gen_n, "grid size")->required();
  gen->add_flag("--reduced", gen_reduced, "rotation-symmetric model");
  gen->add_option("--format", gen_format, "opb or text")->capture_default_str();
  gen->add_option("--out", gen_out, "output path (default: stdout)");

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "search for a configuration");
  int solve_n = 0;
  bool solve_reduced = false;
  std::uint64_t solve_seed = 1;
  double solve_timeout = 60.0;
  std::string solve_out;
  solve_cmd->add_option("--n", solve_n, "grid size")->required();
  solve_cmd->add_flag("--reduced", solve_reduced, "rotation-symmetric model");
  solve_cmd->add_option("--seed", solve_seed, "PRNG seed")->capture_default_str();
  solve_cmd->add_option("--timeout", solve_timeout, "seconds")->capture_default_str();
  solve_cmd->add_option("--out", solve_out, "solution file path");

  // race
  auto* race_cmd = app.add_subcommand("race", "run M seeded instances until the first success");
  int race_n = 0, race_m = 0;
  bool race_reduced = false;
  std::uint64_t race_seed_base = 1;
  double race_timeout = 60.0;
  std::string race_out;
  race_cmd->add_option("--n", race_n, "grid size")->required();
  race_cmd->add_flag("--reduced", race_reduced, "rotation-symmetric model");
  race_cmd->add_option("-M,--instances", race_m, "instance count")->required();
  race_cmd->add_option("--seed-base", race_seed_base, "seeds are seed-base+0..M-1")
      ->capture_default_str();
  race_cmd->add_option("--timeout", race_timeout, "seconds")->capture_default_str();
  race_cmd->add_option("--out", race_out, "winning solution file path");

  // cdf
  auto* cdf_cmd = app.add_subcommand("cdf", "collect single-run completion times");
  int cdf_n = 0, cdf_runs = 0, cdf_workers = 0;
  bool cdf_reduced = false;
  double cdf_cutoff = 0.0;
  std::uint64_t cdf_seed_base = 1;
  std::string cdf_out;
  cdf_cmd->add_option("--n", cdf_n, "grid size")->required();
  cdf_cmd->add_flag("--reduced", cdf_reduced, "rotation-symmetric model");
  cdf_cmd->add_option("--runs", cdf_runs, "independent runs")->required();
  cdf_cmd->add_option("--cutoff", cdf_cutoff, "per-run cutoff in seconds")->required();
  cdf_cmd->add_option("--seed-base", cdf_seed_base, "seeds are seed-base+run_index")
      ->capture_default_str();
  cdf_cmd->add_option("--workers", cdf_workers,
                      "worker threads (default: NTIL_WORKERS or hardware)");
  cdf_cmd->add_option("--out", cdf_out, "CSV output path")->required();

  // fit
  auto* fit_cmd = app.add_subcommand("fit", "fit the shifted-exponential runtime model");
  std::string fit_in;
  int fit_m = 0;
  double fit_window_p = 0.98;
  fit_cmd->add_option("--in", fit_in, "runs CSV from cdf")->required();
  fit_cmd->add_option("-M,--instances", fit_m, "parallelism for the transform")->required();
  fit_cmd->add_option("--window-p", fit_window_p, "fit samples with 0 < F_M <= P")
      ->capture_default_str();

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "check a configuration file");
  std::string verify_in;
  bool verify_expect_2n = false;
  bool verify_brute = false;
  verify_cmd->add_option("--in", verify_in, "configuration file")->required();
  verify_cmd->add_flag("--expect-2n", verify_expect_2n,
                       "require 2n points with exactly 2 per row and column");
  verify_cmd->add_flag("--brute", verify_brute, "all-triples check instead of slope buckets");

  // expand
  auto* expand_cmd = app.add_subcommand("expand", "expand orbit representatives to a configuration");
  std::string expand_in, expand_out;
  expand_cmd->add_option("--in", expand_in, "representatives file")->required();
  expand_cmd->add_option("--out", expand_out, "configuration output path")->required();

  // stats
  auto* stats_cmd = app.add_subcommand("stats", "collinear-triple and heuristic-count statistics");
  int stats_n = 0;
  std::int64_t stats_k = -1;
  stats_cmd->add_option("--n", stats_n, "grid size")->required();
  stats_cmd->add_option("--k", stats_k, "subset size (default 2n)");

  // oracle
  auto* oracle_cmd = app.add_subcommand("oracle", "exhaustive maximum for small n");
  int oracle_n = 0;
  std::string oracle_out;
  oracle_cmd->add_option("--n", oracle_n, "grid size (at most 6)")->required();
  oracle_cmd->add_option("--out", oracle_out, "witness configuration path");

  // sizes
  auto* sizes_cmd = app.add_subcommand("sizes", "model size table");
  int sizes_from = 2, sizes_to = 2;
  sizes_cmd->add_option("--from", sizes_from, "first grid size")->required();
  sizes_cmd->add_option("--to", sizes_to, "last grid size")->required();

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("ntil");
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (*gen) {
      const ConstraintModel m = build(gen_n, gen_reduced);
      const std::string text = export_model(m, model_format_from_string(gen_format));
      if (gen_out.empty()) {
        out << text;
      } else {
        write_file(gen_out, text);
        out << "wrote " << gen_out << " (" << m.num_vars << " vars, " << m.constraint_count()
            << " constraints)\n";
      }
      return 0;
    }

    if (*solve_cmd) {
      const ConstraintModel m = build(solve_n, solve_reduced);
      SearchConfig cfg;
      cfg.seed = solve_seed;
      cfg.timeout_seconds = solve_timeout;
      const SolveOutcome res = solve(m, cfg);
      return report_solution(out, m, res, solve_seed, solve_out);
    }

    if (*race_cmd) {
      const ConstraintModel m = build(race_n, race_reduced);
      const SolveRecord rec = race(m, race_m, race_seed_base, race_timeout);
      out << write_record(rec);
      if (!rec.winner_seed) return 2;
      const Configuration c = configuration_from(m, *rec.winning_assignment);
      VerifyOptions vo;
      vo.expect_count = 2 * m.n;
      vo.two_per_row_and_column = true;
      const Verdict v = verify(c, vo);
      if (!v) throw std::runtime_error("internal check failed: " + v.reason);
      print_points(out, c.points);
      const std::string path =
          race_out.empty() ? default_solution_path(m, *rec.winner_seed) : race_out;
      write_file(path, write_config(config_file_from(c)));
      out << "wrote " << path << "\n";
      return 0;
    }

    if (*cdf_cmd) {
      const ConstraintModel m = build(cdf_n, cdf_reduced);
      const std::vector<RunRow> rows =
          run_batch(m, cdf_runs, cdf_cutoff, cdf_seed_base, cdf_workers);
      std::ostringstream csv;
      write_runs_csv(csv, rows);
      write_file(cdf_out, csv.str());
      std::uint64_t completions = 0;
      for (const RunRow& r : rows) completions += (r.status == SolveStatus::sat);
      out << "runs " << rows.size() << " completions " << completions << " censored "
          << (rows.size() - completions) << " cutoff " << cdf_cutoff << "\n";
      out << "wrote " << cdf_out << "\n";
      return 0;
    }

    if (*fit_cmd) {
      std::istringstream in(read_file(fit_in));
      const std::vector<RunRow> rows = parse_runs_csv(in);
      double cutoff = 0.0;
      for (const RunRow& r : rows) cutoff = std::max(cutoff, r.elapsed_seconds);
      const EmpiricalCdf cdf = make_cdf(rows, cutoff);
      const auto samples = transformed_samples(cdf, fit_m);
      const ShiftedExpFit fit =
          fit_shifted_exponential(samples, fit_m, std::nullopt, fit_window_p);
      const FitStats median = fit_statistics(fit, 0.5);
      const FitStats q98 = fit_statistics(fit, 0.98);
      out << "t0,t1,mean,median,q98\n";
      char buf[160];
      std::snprintf(buf, sizeof buf, "%.6g,%.6g,%.6g,%.6g,%.6g\n", fit.t0, fit.t1, median.mean,
                    median.quantile, q98.quantile);
      out << buf;
      return 0;
    }

    if (*verify_cmd) {
      const ConfigFile f = parse_config(read_file(verify_in));
      Configuration c;
      if (!f.points.empty()) {
        c.n = f.n;
        c.points = f.points;
      } else if (!f.reps.empty()) {
        OrbitRepresentatives reps;
        reps.n = f.n;
        reps.reps = f.reps;
        c = expand(reps);
      } else {
        throw std::runtime_error(verify_in + " holds neither points nor representatives");
      }
      VerifyOptions vo;
      vo.method = verify_brute ? TripleCheck::brute_force : TripleCheck::slope_buckets;
      if (verify_expect_2n) {
        vo.expect_count = 2 * c.n;
        vo.two_per_row_and_column = true;
      }
      const Verdict v = verify(c, vo);
      if (!v) {
        err << "fail: " << v.reason << "\n";
        return 1;
      }
      out << "pass: " << c.points.size() << " points on the " << c.n << "x" << c.n << " grid\n";
      return 0;
    }

    if (*expand_cmd) {
      const ConfigFile f = parse_config(read_file(expand_in));
      if (f.reps.empty()) throw std::runtime_error(expand_in + " holds no representatives");
      OrbitRepresentatives reps;
      reps.n = f.n;
      reps.reps = f.reps;
      const Configuration c = expand(reps);
      ConfigFile result;
      result.n = c.n;
      result.reps = f.reps;
      result.points = c.points;
      write_file(expand_out, write_config(result));
      out << "expanded " << reps.reps.size() << " representatives to " << c.points.size()
          << " points; wrote " << expand_out << "\n";
      return 0;
    }

    if (*stats_cmd) {
      const std::int64_t k = stats_k >= 0 ? stats_k : 2 * static_cast<std::int64_t>(stats_n);
      out << "n,t_n,q_n,logC\n";
      char buf[160];
      std::snprintf(buf, sizeof buf, "%d,%" PRId64 ",%.12Lg,%.6f\n", stats_n,
                    triple_count_formula(stats_n), collinear_triple_probability(stats_n),
                    heuristic_count_log(stats_n, k));
      out << buf;
      return 0;
    }

    if (*oracle_cmd) {
      const auto [value, witness] = brute_force_D(oracle_n);
      out << "D(" << oracle_n << ") = " << value << "\n";
      print_points(out, witness.points);
      if (!oracle_out.empty()) {
        ConfigFile f;
        f.n = witness.n;
        f.points = witness.points;
        write_file(oracle_out, write_config(f));
        out << "wrote " << oracle_out << "\n";
      }
      return 0;
    }

    if (*sizes_cmd) {
      out << "n,direct_vars,reduced_vars,direct_constraints,reduced_constraints\n";
      for (const ModelSizeRow& row : model_size_report(sizes_from, sizes_to)) {
        out << row.n << ',' << row.direct_vars << ',' << row.reduced_vars << ','
            << row.direct_constraints << ',' << row.reduced_constraints << "\n";
      }
      return 0;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  err << "error: no subcommand\n";
  return 1;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  args.reserve(argc > 0 ? argc - 1 : 0);
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args, out, err);
}

}  // namespace ntil
