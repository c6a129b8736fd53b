#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pac/structure.hpp"

namespace pac {

/// Per-variable candidate sets. For finite templates bit v stands for template
/// element v; for descriptors it stands for atom v of the active context, and a
/// label is the union of the atoms it contains. 0 is the empty set / bottom.
using DomainMap = std::vector<Mask>;

/// Value tuples a template allows, per symbol, over an alphabet of at most 64
/// values. For a finite template this is the template itself.
struct SupportTable {
  Signature signature;
  int values = 0;
  std::vector<Relation> allowed;

  Mask top() const { return values >= 64 ? ~Mask{0} : (bit(values) - 1); }

  static SupportTable from_structure(const Structure &b);
};

/// Instance compiled for propagation: one constraint per instance tuple.
class Network {
public:
  struct Constraint {
    int symbol;
    std::vector<Element> scope;
    bool repeats; // some variable occurs at two positions
  };

  explicit Network(const Structure &a);

  int variables() const { return variables_; }
  const std::vector<Constraint> &constraints() const { return constraints_; }
  /// Constraints mentioning variable v (each listed once).
  const std::vector<int> &watching(Element v) const { return watch_[v]; }

private:
  int variables_ = 0;
  std::vector<Constraint> constraints_;
  std::vector<std::vector<int>> watch_;
};

struct TraceEvent {
  int constraint;
  int position;
  Mask before;
  Mask after;

  bool operator==(const TraceEvent &) const = default;
};

enum class Consistency { consistent, inconsistent };

struct PropagationOutcome {
  Consistency status = Consistency::consistent;
  DomainMap domains;
  std::vector<TraceEvent> trace;

  bool consistent() const { return status == Consistency::consistent; }
};

enum class AcMode {
  worklist, ///< support-driven queue, re-examines only touched constraints
  naive     ///< sweep every constraint until a full pass changes nothing
};

struct AcOptions {
  AcMode mode = AcMode::worklist;
  bool trace = false;
  /// Randomises the worklist order; the fixpoint must not depend on it.
  std::optional<std::uint64_t> shuffle_seed;
};

/// Shrinks each position of one constraint to the values that occur at that
/// position in some allowed tuple lying inside the current domains. Positions
/// are projected independently, also when a variable repeats.
void revise(const Relation &allowed, std::span<const Mask> labels,
            std::span<Mask> out);

/// Greatest fixpoint of `revise` over all constraints, starting from `initial`.
PropagationOutcome propagate(const Network &net, const SupportTable &table,
                             DomainMap initial, const AcOptions &options = {});

/// (variable, template element)
using FinitePins = std::vector<std::pair<Element, Element>>;

PropagationOutcome ac_finite(const Structure &a, const Structure &b,
                             const FinitePins &pins = {},
                             const AcOptions &options = {});

// ---------------------------------------------------------------------------
// Descriptors: finite encodings of infinite templates.

/// Atom partition and support table valid for one pinned constant (or none).
struct DescriptorContext {
  std::vector<std::string> atoms;
  SupportTable table;
  Mask pin = 0; // label given to a variable pinned to this context's constant
};

class TemplateDescriptor {
public:
  TemplateDescriptor(std::string name, Signature signature,
                     DescriptorContext unpinned,
                     std::vector<std::pair<std::string, DescriptorContext>> pinned);

  const std::string &name() const { return name_; }
  const Signature &signature() const { return signature_; }
  int representative_count() const { return static_cast<int>(pinned_.size()); }
  const std::string &representative(int r) const { return pinned_.at(r).first; }
  std::optional<int> find_representative(std::string_view name) const;

  const DescriptorContext &context(std::optional<int> rep) const;

  static constexpr Mask bottom() { return 0; }
  Mask top(std::optional<int> rep) const { return context(rep).table.top(); }
  static Mask meet(Mask a, Mask b) { return a & b; }
  Mask pin(int rep) const { return context(rep).pin; }

  /// Refined label per scope position for one constraint.
  std::vector<Mask> propagate(int symbol, std::span<const Mask> labels,
                              std::optional<int> rep) const;

  std::string label_name(Mask label, std::optional<int> rep) const;

private:
  std::string name_;
  Signature signature_;
  DescriptorContext unpinned_;
  std::vector<std::pair<std::string, DescriptorContext>> pinned_;
};

/// Builds a context by testing every atom tuple against sample witnesses:
/// an atom tuple is allowed iff some choice of witnesses satisfies `holds`.
/// Sound as long as each atom's witnesses realise every configuration the
/// relations can distinguish.
struct WitnessAtom {
  std::string name;
  std::vector<long> witnesses;
};

template <typename Pred>
DescriptorContext context_from_witnesses(const Signature &sig,
                                         const std::vector<WitnessAtom> &atoms,
                                         Mask pin, Pred holds);

/// (variable, representative index)
using DescriptorPins = std::vector<std::pair<Element, int>>;

/// All pins must name the same representative.
PropagationOutcome ac_descriptor(const Structure &a,
                                 const TemplateDescriptor &desc,
                                 const DescriptorPins &pins = {},
                                 const AcOptions &options = {});

bool acc_holds(const Structure &a, const Structure &b);
bool acc_holds(const Structure &a, const TemplateDescriptor &desc);

// ---------------------------------------------------------------------------

template <typename Pred>
DescriptorContext context_from_witnesses(const Signature &sig,
                                         const std::vector<WitnessAtom> &atoms,
                                         Mask pin, Pred holds) {
  DescriptorContext ctx;
  for (const auto &a : atoms)
    ctx.atoms.push_back(a.name);
  ctx.pin = pin;
  ctx.table.signature = sig;
  ctx.table.values = static_cast<int>(atoms.size());
  const int n = static_cast<int>(atoms.size());
  for (int s = 0; s < sig.size(); ++s) {
    const int k = sig[s].arity;
    std::vector<Element> flat;
    std::vector<Element> at(k, 0);
    while (true) {
      // Search witness combinations for this atom tuple.
      std::vector<std::size_t> w(k, 0);
      std::vector<long> vals(k);
      bool realised = false;
      while (!realised) {
        for (int p = 0; p < k; ++p)
          vals[p] = atoms[at[p]].witnesses[w[p]];
        realised = holds(s, std::span<const long>(vals));
        int p = k - 1;
        while (p >= 0 && ++w[p] == atoms[at[p]].witnesses.size()) {
          w[p] = 0;
          --p;
        }
        if (p < 0)
          break;
      }
      if (realised)
        flat.insert(flat.end(), at.begin(), at.end());
      int p = k - 1;
      while (p >= 0 && ++at[p] == n) {
        at[p] = 0;
        --p;
      }
      if (p < 0)
        break;
    }
    ctx.table.allowed.emplace_back(k, std::move(flat));
  }
  return ctx;
}

} // namespace pac
