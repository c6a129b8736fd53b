#pragma once

#include "pac/ac.hpp"
#include "pac/pac.hpp"
#include "pac/structure.hpp"

namespace pac {

/// {leq/2, neq/2}
Signature point_algebra_signature();

/// Descriptor for (Q; <=, !=). The template has a single orbit, represented by
/// the rational 0. Pinned atoms are the signs N (< 0), Z (= 0), P (> 0); the
/// unpinned context has the single atom Q. Support tables are derived from
/// witness rationals.
const TemplateDescriptor &point_algebra_descriptor();

/// The finite structure ({N, Z, P}; leq, neq) whose relations are the pinned
/// support tables. Used by tests to cross-check the descriptor engine against a
/// power-structure homomorphism search.
Structure point_algebra_sign_structure();

PeekReport point_algebra_pac(const Structure &a, const PacOptions &options = {});

/// Satisfiable iff no neq pair (self-pairs included) lies inside one strongly
/// connected component of the leq digraph.
bool point_algebra_oracle(const Structure &a);

/// Satisfying assignment for a satisfiable instance: SCC ranks in topological
/// order, so leq edges go up and distinct components get distinct values.
std::vector<long> point_algebra_model(const Structure &a);

} // namespace pac
