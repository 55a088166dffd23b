#include "ntil/model.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>
#include <stdexcept>

#include "ntil/orbits.hpp"

namespace ntil {

namespace {

bool is_horizontal(const std::vector<GridPoint>& pts) {
  for (const GridPoint& p : pts) {
    if (p.j != pts.front().j) return false;
  }
  return true;
}

// Whether the line's orbit under the enforced rotation group contains a
// horizontal line. Those inequalities are implied by the row equalities and
// are left out of both models.
bool orbit_contains_horizontal(const LineIncidence& line, int n) {
  const int step = (n % 2 == 0) ? 1 : 2;
  std::vector<GridPoint> pts = line.points;
  for (int t = 0; t < 4; t += step) {
    for (int s = 0; t > 0 && s < step; ++s) {
      for (GridPoint& p : pts) p = rotate(p, n);
    }
    if (is_horizontal(pts)) return true;
  }
  return false;
}

void validate(const ConstraintModel& m) {
  for (const WeightedSum& c : m.exactly_2) {
    int max_sum = 0;
    for (const Term& t : c.terms) max_sum += t.weight;
    if (max_sum < 2) throw std::logic_error("trivially infeasible equality constraint");
  }
  for (const WeightedSum& c : m.at_most_2) {
    int max_sum = 0;
    for (const Term& t : c.terms) {
      if (t.weight < 1) throw std::logic_error("non-positive constraint weight");
      max_sum += t.weight;
    }
    if (max_sum <= 2) throw std::logic_error("tautological inequality constraint");
  }
}

}  // namespace

ConstraintModel build_direct(int n) {
  if (n < 2) throw std::invalid_argument("grid size must be at least 2");
  ConstraintModel m;
  m.n = n;
  m.kind = ModelKind::direct;
  m.num_vars = n * n;
  m.var_names.reserve(m.num_vars);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) m.var_names.push_back(GridPoint{i, j});
  }

  for (const LineIncidence& line : enumerate_lines(n, 3)) {
    if (is_horizontal(line.points)) continue;  // subsumed by the row equality
    WeightedSum c;
    c.terms.reserve(line.points.size());
    for (const GridPoint& p : line.points) c.terms.push_back(Term{p.j * n + p.i, 1});
    m.at_most_2.push_back(std::move(c));
  }

  for (int r = 0; r < n; ++r) {
    WeightedSum c;
    c.terms.reserve(n);
    for (int i = 0; i < n; ++i) c.terms.push_back(Term{r * n + i, 1});
    m.exactly_2.push_back(std::move(c));
  }
  validate(m);
  return m;
}

ConstraintModel build_reduced(int n, const ReducedOptions& opts) {
  if (n < 2) throw std::invalid_argument("grid size must be at least 2");
  const OrbitMap om = build_orbit_map(n);

  ConstraintModel m;
  m.n = n;
  m.kind = ModelKind::reduced;
  m.num_vars = om.orbit_count();
  m.var_names = om.representatives;

  const std::vector<LineIncidence> lines = enumerate_lines(n, 3);
  std::set<std::vector<Term>> seen;
  for (const LineIncidence& rep : line_orbit_representatives(n, lines)) {
    if (orbit_contains_horizontal(rep, n)) continue;
    const std::optional<ReducedLine> rl = reduce_line(rep, om);
    if (!rl) continue;  // tautological after the rewrite
    WeightedSum c;
    c.terms.reserve(rl->coeffs.size());
    for (const auto& [orbit, weight] : rl->coeffs) c.terms.push_back(Term{orbit, weight});
    if (opts.dedup_incidence_vectors && !seen.insert(c.terms).second) continue;
    m.at_most_2.push_back(std::move(c));
  }

  const auto rows = row_coefficients(om);
  for (int r = 0; r < n; ++r) {
    WeightedSum c;
    c.terms.reserve(rows[r].size());
    for (const auto& [orbit, weight] : rows[r]) c.terms.push_back(Term{orbit, weight});
    m.exactly_2.push_back(std::move(c));
  }
  validate(m);
  return m;
}

ModelFormat model_format_from_string(std::string_view s) {
  if (s == "opb") return ModelFormat::opb;
  if (s == "text") return ModelFormat::text;
  throw std::invalid_argument("unknown model format: " + std::string(s));
}

namespace {

void append_terms(std::string& out, const WeightedSum& c, int index_base) {
  for (const Term& t : c.terms) {
    out += '+';
    out += std::to_string(t.weight);
    out += " x";
    out += std::to_string(t.var + index_base);
    out += ' ';
  }
}

std::string export_opb(const ConstraintModel& m) {
  std::string out;
  out += "* #variable= " + std::to_string(m.num_vars) +
         " #constraint= " + std::to_string(m.constraint_count()) + "\n";
  for (const WeightedSum& c : m.at_most_2) {
    append_terms(out, c, 1);
    out += "<= 2 ;\n";
  }
  for (const WeightedSum& c : m.exactly_2) {
    append_terms(out, c, 1);
    out += "= 2 ;\n";
  }
  return out;
}

std::string export_text(const ConstraintModel& m) {
  std::string out;
  out += "ntil-model 1\n";
  out += "n " + std::to_string(m.n) + "\n";
  out += std::string("kind ") + (m.kind == ModelKind::direct ? "direct" : "reduced") + "\n";
  out += "vars " + std::to_string(m.num_vars) + "\n";
  for (int v = 0; v < m.num_vars; ++v) {
    out += "var " + std::to_string(v) + " " + std::to_string(m.var_names[v].i) + " " +
           std::to_string(m.var_names[v].j) + "\n";
  }
  for (const WeightedSum& c : m.at_most_2) {
    out += "le2 ";
    append_terms(out, c, 0);
    out.back() = '\n';
  }
  for (const WeightedSum& c : m.exactly_2) {
    out += "eq2 ";
    append_terms(out, c, 0);
    out.back() = '\n';
  }
  return out;
}

int parse_int(std::string_view s, const char* what) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw std::invalid_argument(std::string("bad ") + what + ": " + std::string(s));
  }
  return value;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (pos < line.size()) {
    const std::size_t next = line.find(' ', pos);
    const std::size_t end = (next == std::string_view::npos) ? line.size() : next;
    if (end > pos) fields.push_back(line.substr(pos, end - pos));
    pos = end + 1;
  }
  return fields;
}

WeightedSum parse_terms(const std::vector<std::string_view>& fields, std::size_t from) {
  if ((fields.size() - from) % 2 != 0) throw std::invalid_argument("odd term list");
  WeightedSum c;
  for (std::size_t k = from; k < fields.size(); k += 2) {
    std::string_view w = fields[k];
    std::string_view x = fields[k + 1];
    if (w.empty() || w.front() != '+' || x.size() < 2 || x.front() != 'x') {
      throw std::invalid_argument("bad constraint term");
    }
    c.terms.push_back(Term{parse_int(x.substr(1), "variable index"),
                           parse_int(w.substr(1), "term weight")});
  }
  return c;
}

}  // namespace

std::string export_model(const ConstraintModel& m, ModelFormat format) {
  switch (format) {
    case ModelFormat::opb:
      return export_opb(m);
    case ModelFormat::text:
      return export_text(m);
  }
  throw std::invalid_argument("unknown model format");
}

ConstraintModel parse_model_text(std::string_view text) {
  ConstraintModel m;
  bool saw_magic = false;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    const std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    if (line.empty()) continue;
    const auto fields = split_fields(line);
    if (!saw_magic) {
      if (fields.size() != 2 || fields[0] != "ntil-model" || fields[1] != "1") {
        throw std::invalid_argument("not an ntil-model file");
      }
      saw_magic = true;
      continue;
    }
    if (fields[0] == "n" && fields.size() == 2) {
      m.n = parse_int(fields[1], "grid size");
    } else if (fields[0] == "kind" && fields.size() == 2) {
      if (fields[1] == "direct") {
        m.kind = ModelKind::direct;
      } else if (fields[1] == "reduced") {
        m.kind = ModelKind::reduced;
      } else {
        throw std::invalid_argument("bad model kind");
      }
    } else if (fields[0] == "vars" && fields.size() == 2) {
      m.num_vars = parse_int(fields[1], "variable count");
      m.var_names.resize(m.num_vars);
    } else if (fields[0] == "var" && fields.size() == 4) {
      const int v = parse_int(fields[1], "variable index");
      if (v < 0 || v >= m.num_vars) throw std::invalid_argument("variable index out of range");
      m.var_names[v] = GridPoint{parse_int(fields[2], "i"), parse_int(fields[3], "j")};
    } else if (fields[0] == "le2") {
      m.at_most_2.push_back(parse_terms(fields, 1));
    } else if (fields[0] == "eq2") {
      m.exactly_2.push_back(parse_terms(fields, 1));
    } else {
      throw std::invalid_argument("unrecognized model line: " + std::string(line));
    }
  }
  if (!saw_magic) throw std::invalid_argument("empty model file");
  return m;
}

std::vector<ModelSizeRow> model_size_report(int n_min, int n_max) {
  if (n_min < 2 || n_min > n_max) throw std::invalid_argument("bad size-report range");
  std::vector<ModelSizeRow> rows;
  rows.reserve(n_max - n_min + 1);
  for (int n = n_min; n <= n_max; ++n) {
    ModelSizeRow row;
    row.n = n;
    row.direct_vars = n * n;
    row.direct_constraints =
        count_lines(n, 3) - count_horizontal_lines(n, 3) + static_cast<std::uint64_t>(n);
    const ConstraintModel reduced = build_reduced(n);
    row.reduced_vars = reduced.num_vars;
    row.reduced_constraints = reduced.constraint_count();
    rows.push_back(row);
  }
  return rows;
}

}  // namespace ntil
