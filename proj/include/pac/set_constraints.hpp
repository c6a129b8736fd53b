#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pac/structure.hpp"

namespace pac {

/// Containment (sub x y: x is a subset of y), disjointness (dis) and
/// disequality (neq) constraints over set-valued variables.
struct SetConstraintInstance {
  std::vector<std::string> variables;
  std::vector<std::pair<int, int>> sub;
  std::vector<std::pair<int, int>> dis;
  std::vector<std::pair<int, int>> neq;

  int size() const { return static_cast<int>(variables.size()); }
  /// Throws on endpoints outside the declared variables.
  void validate() const;
  /// Variables named v0, v1, ...
  static SetConstraintInstance with_variables(int n);
};

/// `vars x y z` header, then lines `sub x y` | `dis x y` | `neq x y`.
SetConstraintInstance parse_set_constraints(std::istream &in);
SetConstraintInstance parse_set_constraints(std::string_view text);
void write_set_constraints(std::ostream &out, const SetConstraintInstance &inst);

/// Pattern test: build the containment digraph with reflexive reachability
/// and reject iff
///   - some neq pair has both ends in one strongly connected component
///     (this covers neq(x,x)), or
///   - some neq pair (x,y) and dis pair (u,v) admit an e with x, y reaching e
///     and e reaching u and v.
/// Returns true on accept.
bool set_constraint_pac(const SetConstraintInstance &inst);

/// Exhaustive search for subsets of {0..m-1} satisfying every constraint,
/// by backtracking with constraint checks as variables get assigned.
/// m defaults to 2^|vars|, which is complete. Throws CapExceeded when more
/// than `node_budget` partial assignments are tried or m > 20.
bool set_constraint_oracle(const SetConstraintInstance &inst,
                           std::optional<int> m = std::nullopt,
                           std::uint64_t node_budget = 200'000'000);

/// Venn-region model search: every model is described by which membership
/// signatures (subsets of the variables) occur; enumerate all sets of
/// signatures. At most 4 variables.
bool set_constraint_region_oracle(const SetConstraintInstance &inst);

} // namespace pac
