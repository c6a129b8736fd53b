#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "pac/structure.hpp"

namespace pac {

enum class SearchStatus { found, none, budget_exhausted };

struct HomSearchOptions {
  /// Maximum number of tentative assignments before giving up.
  std::uint64_t node_budget = 100'000'000;
};

struct HomSearchResult {
  SearchStatus status = SearchStatus::none;
  std::vector<Element> map; // valid iff status == found
  std::uint64_t nodes = 0;

  bool found() const { return status == SearchStatus::found; }
};

/// Checks the homomorphism condition by a direct scan of every tuple.
bool is_homomorphism(const Structure &a, const Structure &b,
                     std::span<const Element> map);

/// Backtracking search over source elements in canonical order, target values
/// ascending, with forward checking on every constraint touching the last
/// assigned element. The first map in lexicographic order is returned.
HomSearchResult find_homomorphism(const Structure &a, const Structure &b,
                                  const HomSearchOptions &options = {});

/// Reference enumeration of all |B|^|A| maps; only for tiny inputs.
std::optional<std::vector<Element>>
find_homomorphism_exhaustive(const Structure &a, const Structure &b);

} // namespace pac
