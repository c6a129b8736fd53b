#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pac/ac.hpp"
#include "pac/structure.hpp"

namespace pac {

enum class PeekOutcome {
  pass,      ///< AC with the pin is consistent
  fail,      ///< AC with the pin wipes out a domain
  skipped,   ///< an earlier representative already passed (short-circuit)
  unexplored ///< variable lies after the rejecting one (reject-fast)
};

const char *to_string(PeekOutcome o);

struct PeekResult {
  int representative;
  PeekOutcome outcome;
  std::vector<TraceEvent> trace; // only with PacOptions::trace

  bool operator==(const PeekResult &) const = default;
};

struct VariableReport {
  Element variable;
  std::vector<PeekResult> peeks;

  bool passed() const;
  bool explored() const;
  bool operator==(const VariableReport &) const = default;
};

enum class Decision { accept, reject };

struct PeekReport {
  Decision decision = Decision::accept;
  std::optional<Element> rejecting_variable;
  std::vector<VariableReport> variables;
  std::vector<std::string> representative_names;

  bool accepted() const { return decision == Decision::accept; }
  /// Stable line-oriented rendering; identical for any worker count.
  std::string to_text(const std::vector<std::string> &variable_names) const;
  bool operator==(const PeekReport &) const = default;
};

struct PacOptions {
  /// Worker threads; 0 picks the available parallelism. With 1 worker the
  /// serial reference loop runs.
  int workers = 0;
  /// Stop peeking a variable once one representative passes.
  bool short_circuit = true;
  /// Stop at the first variable all of whose peeks fail.
  bool reject_fast = true;
  bool trace = false;
  AcOptions ac;
};

int default_workers();

/// Peek arc consistency against a finite template. Representatives are the
/// automorphism-orbit representatives (all elements above the orbit cap, or
/// when `use_orbits` is false).
class FinitePac {
public:
  explicit FinitePac(Structure b, bool use_orbits = true, int orbit_cap = 8);

  const Structure &target() const { return b_; }
  const std::vector<Element> &representatives() const { return reps_; }

  PeekReport decide(const Structure &a, const PacOptions &options = {}) const;
  PeekReport decide_serial(const Structure &a,
                           const PacOptions &options = {}) const;

private:
  Structure b_;
  SupportTable table_;
  std::vector<Element> reps_;
};

PeekReport pac_decide(const Structure &a, const Structure &b,
                      const PacOptions &options = {});
PeekReport pac_decide(const Structure &a, const TemplateDescriptor &desc,
                      const PacOptions &options = {});

/// Serial reference implementations; the parallel kernels must agree exactly.
PeekReport pac_decide_serial(const Structure &a, const Structure &b,
                             const PacOptions &options = {});
PeekReport pac_decide_serial(const Structure &a, const TemplateDescriptor &desc,
                             const PacOptions &options = {});

bool pacc_holds(const Structure &a, const Structure &b);
bool pacc_holds(const Structure &a, const TemplateDescriptor &desc);

} // namespace pac
