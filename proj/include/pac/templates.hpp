#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pac/algebra.hpp"
#include "pac/structure.hpp"

namespace pac {

// ---------------------------------------------------------------------------
// 2-SAT

/// ({0,1}; R00, R01, R11, R10) where R_st = {0,1}^2 minus {(s,t)}.
/// R10 is the reverse of R01, added so every clause has a direct encoding.
Structure two_sat_template();

struct Literal {
  int variable; // 0-based
  bool negative;
  bool operator==(const Literal &) const = default;
};

struct Cnf2 {
  int variables = 0;
  std::vector<std::pair<Literal, Literal>> clauses;
};

/// Clause (l1 v l2) becomes R_{s1 s2}(x1, x2) with s = 1 for a negative
/// literal, i.e. the relation forbidding the falsifying assignment.
Structure cnf2_to_instance(const Cnf2 &cnf);

/// DIMACS-like input: optional `p cnf <vars> <clauses>`, `c` comments, one
/// clause per line as `l1 l2 0` with 1-based signed literals.
Cnf2 parse_cnf2(std::istream &in);
Cnf2 parse_cnf2(std::string_view text);
void write_cnf2(std::ostream &out, const Cnf2 &cnf);

/// Exhaustive assignment search (at most 30 variables).
bool cnf2_satisfiable_brute_force(const Cnf2 &cnf);

// ---------------------------------------------------------------------------
// Graphs

/// ({0,1}; E = {(0,1),(1,0)})
Structure k2_template();

/// Breadth-first 2-colouring; the graph's E is read as undirected.
bool is_bipartite(const Structure &g);

struct BipartiteReduction {
  bool trivial = false;  ///< E is empty: instances without edges map anywhere
  bool bipartite = true; ///< false: no collapse map, outside the reduction
  std::vector<Element> from_k2;              ///< 0 -> s, 1 -> s'
  std::optional<std::vector<Element>> to_k2; ///< part-collapse map G -> K2
};

/// Witnesses that a symmetric graph G is homomorphically equivalent to K2.
/// Throws if G's edge relation is not symmetric.
BipartiteReduction bipartite_reduce(const Structure &g);

// ---------------------------------------------------------------------------
// Oriented cycles

struct CycleOrientation {
  /// forward[i]: the edge between d_i and d_{i+1 mod n} is (d_i, d_{i+1});
  /// otherwise it is (d_{i+1}, d_i).
  std::vector<bool> forward;

  int length() const { return static_cast<int>(forward.size()); }
  int forward_count() const;
  /// Bits as '1'/'0', e.g. "111" for the directed 3-cycle.
  static CycleOrientation parse(std::string_view bits);
  std::string to_string() const;
};

Structure cycle_template(const CycleOrientation &c);
bool is_unbalanced(const CycleOrientation &c);

/// Searches all linear orders of the vertices (at most 10) for one whose
/// median operation is a polymorphism. The order lists elements from least to
/// greatest; the first hit in lexicographic permutation order is returned.
std::optional<std::vector<Element>> find_median_order(const CycleOrientation &c);

// ---------------------------------------------------------------------------
// Ternary operations

Operation dual_discriminator(int universe);
/// Median with respect to `order` (least first).
Operation median_op(const std::vector<Element> &order);
/// For every b, x,y -> t(x,y,b) is idempotent, commutative and associative.
bool is_slice_semilattice(const Operation &t);

// ---------------------------------------------------------------------------

/// ({0,1}; R = even-parity triples, C0 = {0}, C1 = {1}).
Structure parity_template();

/// Singleton structure with every relation full.
Structure one_element_template(const Signature &sig);

} // namespace pac
