#pragma once

#include <string>
#include <vector>

#include "pac/structure.hpp"

namespace pac {

struct SizeCaps {
  /// Largest base universe accepted by power_structure.
  int power_universe = 12;
  /// Largest universe accepted by product, power and ind_peek_power.
  std::size_t product_universe = 1'000'000;
  /// Largest number of tuples a single constructed relation may hold.
  std::size_t product_tuples = 20'000'000;
};

/// The power structure: universe is every nonempty subset of the base
/// universe, element i standing for the subset with mask i + 1.
struct PowerStructure {
  Structure structure;
  int base_size = 0;

  Mask subset(Element e) const { return static_cast<Mask>(e) + 1; }
  Element element(Mask m) const { return static_cast<Element>(m - 1); }
};

PowerStructure power_structure(const Structure &b, const SizeCaps &caps = {});

/// Elements of the product are pairs, numbered a * |B| + b.
Structure product(const Structure &a, const Structure &b,
                  const SizeCaps &caps = {});

/// n-fold product with flat n-tuples as elements, numbered in mixed radix
/// with the first coordinate most significant.
Structure power(const Structure &a, int n, const SizeCaps &caps = {});

/// Induced substructure of P^n on tuples with at least one singleton
/// coordinate. `coords[e]` lists the power-structure elements of tuple e.
struct IndPower {
  Structure structure;
  std::vector<std::vector<Element>> coords;
};

IndPower ind_peek_power(const PowerStructure &p, int n,
                        const SizeCaps &caps = {});

/// Adds a unary symbol (default "U") interpreted as `subset`.
Structure expand_with_unary(const Structure &a, const std::vector<Element> &subset,
                            const std::string &symbol = "U");

/// Induced substructure on `keep` (elements renumbered in the given order).
Structure induced_substructure(const Structure &a,
                               const std::vector<Element> &keep);

std::string subset_name(const Structure &base, Mask m);

} // namespace pac
