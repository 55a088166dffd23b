// Binary constraint models: the direct formulation over grid sites and the
// symmetry-reduced formulation over orbit variables.
#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ntil/grid.hpp"

namespace ntil {

enum class ModelKind { direct, reduced };

struct Term {
  int var = 0;
  int weight = 0;
  auto operator<=>(const Term&) const = default;
};

// A sparse weighted sum of binary variables, terms sorted by variable index.
struct WeightedSum {
  std::vector<Term> terms;
  auto operator<=>(const WeightedSum&) const = default;
};

// Binary variables with weighted at-most-2 inequalities and weighted
// exactly-2 row equalities. var_names maps a variable index to the grid site
// (direct) or the orbit representative (reduced); indices are row-major.
struct ConstraintModel {
  int n = 0;
  ModelKind kind = ModelKind::direct;
  int num_vars = 0;
  std::vector<WeightedSum> at_most_2;
  std::vector<WeightedSum> exactly_2;
  std::vector<GridPoint> var_names;

  std::uint64_t constraint_count() const { return at_most_2.size() + exactly_2.size(); }
};

struct ReducedOptions {
  // Keep one inequality per distinct incidence vector. The published model
  // size table is only reproduced with this on, so on is the default.
  bool dedup_incidence_vectors = true;
};

// Direct model: one binary per grid site, an at-most-2 inequality per
// non-horizontal line of >= 3 points (horizontal lines are subsumed by the
// row equalities), and n exactly-2 row equalities.
ConstraintModel build_direct(int n);

// Reduced model: one binary per rotation orbit; line-orbit representative
// inequalities rewritten over orbit weights with tautologies discarded, plus
// n row equalities.
ConstraintModel build_reduced(int n, const ReducedOptions& opts = {});

enum class ModelFormat { opb, text };

// Accepts "opb" or "text"; anything else throws std::invalid_argument.
ModelFormat model_format_from_string(std::string_view s);

// Deterministic serialization. OPB uses the pseudo-Boolean competition term
// syntax with 1-based variables; text is a self-describing record format that
// parse_model_text() reads back losslessly.
std::string export_model(const ConstraintModel& m, ModelFormat format);
ConstraintModel parse_model_text(std::string_view text);

struct ModelSizeRow {
  int n = 0;
  int direct_vars = 0;
  int reduced_vars = 0;
  std::uint64_t direct_constraints = 0;
  std::uint64_t reduced_constraints = 0;
};

std::vector<ModelSizeRow> model_size_report(int n_min, int n_max);

}  // namespace ntil
