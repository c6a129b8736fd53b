#pragma once

#include <cstdint>

#include "pac/set_constraints.hpp"
#include "pac/structure.hpp"
#include "pac/templates.hpp"

namespace pac {

// Seeded random instances. Same arguments, same output.

/// Symmetric loop-free graph over {E/2}, each edge present with probability p.
Structure random_graph(int vertices, double p, std::uint64_t seed);

/// Clauses over distinct variables, literals with random signs.
Cnf2 random_cnf2(int variables, int clauses, std::uint64_t seed);

struct PointAlgebraShape {
  int variables = 10;
  int leq = 10; ///< number of leq constraints drawn
  int neq = 5;  ///< number of neq constraints drawn
  /// Draw constraints consistent with a hidden assignment so the instance is
  /// satisfiable (every peek then runs a full AC pass).
  bool planted = false;
};

Structure random_point_algebra(const PointAlgebraShape &shape,
                               std::uint64_t seed);

SetConstraintInstance random_set_constraints(int variables, int sub, int dis,
                                             int neq, std::uint64_t seed);

} // namespace pac
