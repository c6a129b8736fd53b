#pragma once

#include <functional>
#include <span>
#include <vector>

#include "pac/structure.hpp"

namespace pac {

/// Total finitary operation on {0, ..., universe-1}, stored as a table indexed
/// in mixed radix (first argument most significant).
class Operation {
public:
  Operation(int arity, int universe, std::vector<Element> table);
  static Operation from_function(int arity, int universe,
                                 const std::function<Element(std::span<const Element>)> &f);

  int arity() const { return arity_; }
  int universe() const { return universe_; }
  Element operator()(std::span<const Element> args) const;
  Element operator()(Element x, Element y, Element z) const;

private:
  int arity_;
  int universe_;
  std::vector<Element> table_;
};

/// True iff every relation of b is closed under coordinatewise application.
bool is_polymorphism(const Operation &f, const Structure &b);

struct OrbitPartition {
  std::vector<int> orbit_of;                // element -> orbit index
  std::vector<std::vector<Element>> orbits; // ascending, orbits ordered by least element
  std::vector<Element> representatives() const;
};

/// Orbits of the automorphism group, by enumerating bijections with pruning.
/// Throws CapExceeded above `cap` elements.
OrbitPartition automorphism_orbits(const Structure &b, int cap = 8);

/// Orbit representatives, falling back to every element when the structure is
/// above the cap. Peeking every element is redundant but never wrong.
std::vector<Element> peek_representatives(const Structure &b, int cap = 8);

} // namespace pac
