#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "pac/constructions.hpp"
#include "pac/homomorphism.hpp"
#include "pac/pp_formula.hpp"
#include "pac/structure.hpp"

namespace pac {

/// True iff the power structure of b maps homomorphically to b. Throws
/// CapExceeded when the power structure or the search budget is too large.
bool ac_solvability_check(const Structure &b, const SizeCaps &caps = {},
                          const HomSearchOptions &search = {});

struct BoundedHold {
  int n;
  bool holds;
  bool operator==(const BoundedHold &) const = default;
};

/// holds(n) iff Ind(P(b)^n) maps to b, for n = 1.. n_max, stopping after the
/// first failure. A failure certifies that PAC does not decide CSP(b);
/// passing up to n_max is only evidence.
std::vector<BoundedHold> pac_characterization_check(
    const Structure &b, int n_max = 3, const SizeCaps &caps = {},
    const HomSearchOptions &search = {});

struct InstanceBound {
  int variables = 3;
  int tuples = 5;
};

/// Visits every instance over exactly `variables` elements with at most
/// `tuples` tuples, one per class of variable renamings (the least tuple set
/// in candidate order). Returns the number visited. Serial, in canonical order.
std::uint64_t for_each_instance(const Signature &sig, InstanceBound bound,
                                const std::function<void(const Structure &)> &visit);

enum class Procedure { ac, pac };

struct EmpiricalResult {
  bool decides = true;
  InstanceBound bound;
  std::uint64_t instances = 0;
  std::uint64_t agreements = 0;
  /// Procedure rejected an instance that has a homomorphism. Must stay 0.
  std::uint64_t soundness_violations = 0;
  /// First instance (by size, then canonical order) the procedure accepts
  /// although no homomorphism exists.
  std::optional<Structure> counterexample;
};

/// Compares the procedure against homomorphism search on every canonical
/// instance up to the bound. Sizes are scanned in increasing order and the
/// scan stops after the first size containing a counterexample. Parallel over
/// instances, with a result independent of the thread count.
EmpiricalResult empirical_decides(const Structure &b, Procedure procedure,
                                  InstanceBound bound = {});
EmpiricalResult empirical_pac_decides(const Structure &b,
                                      InstanceBound bound = {});

/// Expands b by the relation each formula defines. Names must be fresh.
Structure pp_expand(const Structure &b,
                    const std::vector<std::pair<std::string, PPFormula>> &defs);

/// Random well-formed formula with `arity` free variables and depth at most
/// `max_depth`, over the symbols of `sig`.
PPFormula random_pp_formula(const Signature &sig, int arity, int max_depth,
                            std::mt19937_64 &rng);

struct CharacterizationReport {
  std::string id;
  bool ac_solvable = false;
  std::vector<BoundedHold> pac_bounded;
  EmpiricalResult empirical;

  std::string to_text() const;
  /// `template <id> ac <y/n> pac_n 1:<y/n> 2:<y/n> ... empirical <y/n>`
  std::string to_line() const;
};

CharacterizationReport characterize(const std::string &id, const Structure &b,
                                    int n_max = 3, InstanceBound bound = {},
                                    const SizeCaps &caps = {});

} // namespace pac
