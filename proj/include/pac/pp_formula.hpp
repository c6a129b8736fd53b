#pragma once

#include <string>
#include <vector>

#include "pac/structure.hpp"

namespace pac {

/// Node of a primitive positive formula: an atom, a conjunction (the empty
/// conjunction is "true"), or an existential quantifier over one variable.
struct PPNode {
  enum class Kind { atom, conjunction, exists };

  Kind kind = Kind::conjunction;
  std::string symbol;             // atom
  std::vector<std::string> args;  // atom
  std::string bound;              // exists
  std::vector<PPNode> children;   // conjunction (any), exists (exactly one)
};

namespace pp {
PPNode atom(std::string symbol, std::vector<std::string> args);
PPNode conj(std::vector<PPNode> children);
PPNode exists(std::string var, PPNode child);
} // namespace pp

/// phi(v1, ..., vk). The free list may repeat a variable; the defined relation
/// then lists that variable's value at each repeated position.
struct PPFormula {
  std::vector<std::string> free;
  PPNode body;

  /// Throws if some atom mentions a variable that is neither free nor bound
  /// by an enclosing quantifier, or if the free list is empty.
  void validate() const;
  /// Checks symbols and atom arities against a signature.
  void validate(const Signature &sig) const;

  int depth() const;
  std::string to_string() const;
};

/// Relation defined by `phi` in `b`, computed bottom-up: atoms become tables of
/// satisfying assignments, conjunction joins them, exists projects.
Relation eval_pp(const PPFormula &phi, const Structure &b);

/// Reference semantics: enumerate every assignment to every variable of phi and
/// evaluate the formula directly. Exponential; for tests.
Relation eval_pp_brute_force(const PPFormula &phi, const Structure &b);

} // namespace pac
