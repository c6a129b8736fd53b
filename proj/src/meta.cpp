#include "pac/meta.hpp"

#include <algorithm>
#include <exception>
#include <numeric>
#include <sstream>

#include "pac/ac.hpp"
#include "pac/pac.hpp"

namespace pac {

namespace {

void require_found(const HomSearchResult &r) {
  if (r.status == SearchStatus::budget_exhausted)
    throw CapExceeded("homomorphism search budget exhausted after " +
                      std::to_string(r.nodes) + " nodes");
}

// All tuples over v variables, indexed in (symbol, tuple) lexicographic order,
// plus the action of every variable permutation on those indices.
class InstanceSpace {
public:
  InstanceSpace(const Signature &sig, int v) : sig_(sig), v_(v) {
    if (v < 0 || v > 8)
      throw Error("instance enumeration supports 0..8 variables");
    for (int s = 0; s < sig.size(); ++s) {
      const int k = sig[s].arity;
      std::vector<Element> t(k, 0);
      if (v == 0)
        break;
      while (true) {
        candidates_.push_back({s, t});
        int p = k - 1;
        while (p >= 0 && ++t[p] == v) {
          t[p] = 0;
          --p;
        }
        if (p < 0)
          break;
      }
    }
    std::vector<Element> perm(v);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<Element> mapped;
    do {
      if (std::is_sorted(perm.begin(), perm.end()))
        continue;
      std::vector<int> image(candidates_.size());
      for (std::size_t c = 0; c < candidates_.size(); ++c) {
        const auto &[s, t] = candidates_[c];
        mapped.assign(t.size(), 0);
        for (std::size_t p = 0; p < t.size(); ++p)
          mapped[p] = perm[t[p]];
        image[c] = index_of(s, mapped);
      }
      images_.push_back(std::move(image));
    } while (std::next_permutation(perm.begin(), perm.end()));
  }

  int candidates() const { return static_cast<int>(candidates_.size()); }

  bool canonical(const std::vector<int> &combo, std::vector<int> &scratch) const {
    for (const auto &image : images_) {
      scratch.clear();
      for (int c : combo)
        scratch.push_back(image[c]);
      std::sort(scratch.begin(), scratch.end());
      if (scratch < combo)
        return false;
    }
    return true;
  }

  Structure build(const std::vector<int> &combo) const {
    StructureBuilder b(sig_, v_);
    for (int c : combo) {
      const auto &[s, t] = candidates_[c];
      b.add(s, std::span<const Element>(t));
    }
    return std::move(b).build();
  }

  /// Combos of size k whose least index is `first`, in lexicographic order.
  /// `visit` returns false to stop early.
  template <typename Visit>
  void for_each_combo(int k, int first, Visit &&visit) const {
    std::vector<int> combo;
    if (k == 0) {
      visit(combo);
      return;
    }
    const int n = candidates();
    combo.resize(k);
    combo[0] = first;
    for (int i = 1; i < k; ++i)
      combo[i] = first + i;
    if (combo[k - 1] >= n)
      return;
    while (true) {
      if (!visit(combo))
        return;
      int i = k - 1;
      while (i >= 1 && combo[i] == n - k + i)
        --i;
      if (i < 1)
        return;
      ++combo[i];
      for (int j = i + 1; j < k; ++j)
        combo[j] = combo[j - 1] + 1;
    }
  }

private:
  int index_of(int s, const std::vector<Element> &t) const {
    // Candidates of symbol s form a contiguous mixed-radix block.
    int offset = 0;
    for (int r = 0; r < s; ++r) {
      int block = 1;
      for (int i = 0; i < sig_[r].arity; ++i)
        block *= v_;
      offset += block;
    }
    int idx = 0;
    for (Element e : t)
      idx = idx * v_ + e;
    return offset + idx;
  }

  const Signature &sig_;
  int v_;
  std::vector<std::pair<int, std::vector<Element>>> candidates_;
  std::vector<std::vector<int>> images_;
};

int task_count(const InstanceSpace &space, int k) {
  return k == 0 ? 1 : std::max(0, space.candidates() - k + 1);
}

} // namespace

bool ac_solvability_check(const Structure &b, const SizeCaps &caps,
                          const HomSearchOptions &search) {
  const PowerStructure p = power_structure(b, caps);
  const auto r = find_homomorphism(p.structure, b, search);
  require_found(r);
  return r.found();
}

std::vector<BoundedHold> pac_characterization_check(const Structure &b,
                                                    int n_max,
                                                    const SizeCaps &caps,
                                                    const HomSearchOptions &search) {
  if (n_max < 1)
    throw Error("n_max must be at least 1");
  const PowerStructure p = power_structure(b, caps);
  std::vector<BoundedHold> out;
  for (int n = 1; n <= n_max; ++n) {
    const IndPower ind = ind_peek_power(p, n, caps);
    const auto r = find_homomorphism(ind.structure, b, search);
    require_found(r);
    out.push_back({n, r.found()});
    if (!r.found())
      break;
  }
  return out;
}

std::uint64_t for_each_instance(const Signature &sig, InstanceBound bound,
                                const std::function<void(const Structure &)> &visit) {
  const InstanceSpace space(sig, bound.variables);
  std::uint64_t count = 0;
  std::vector<int> scratch;
  for (int k = 0; k <= bound.tuples; ++k)
    for (int first = 0; first < task_count(space, k); ++first)
      space.for_each_combo(k, first, [&](const std::vector<int> &combo) {
        if (space.canonical(combo, scratch)) {
          visit(space.build(combo));
          ++count;
        }
        return true;
      });
  return count;
}

EmpiricalResult empirical_decides(const Structure &b, Procedure procedure,
                                  InstanceBound bound) {
  const InstanceSpace space(b.signature(), bound.variables);
  const FinitePac pac(b);
  const SupportTable table = SupportTable::from_structure(b);
  PacOptions serial;
  serial.workers = 1;

  auto accepts = [&](const Structure &a) {
    if (procedure == Procedure::pac)
      return pac.decide(a, serial).accepted();
    DomainMap dom(a.size(), table.top());
    return propagate(Network(a), table, std::move(dom)).consistent();
  };

  struct Task {
    std::uint64_t instances = 0, agreements = 0, violations = 0;
    std::optional<std::vector<int>> counterexample;
    std::exception_ptr error;
  };

  EmpiricalResult result;
  result.bound = bound;
  for (int k = 0; k <= bound.tuples && result.decides; ++k) {
    const int tasks = task_count(space, k);
    std::vector<Task> out(tasks);
#pragma omp parallel for schedule(dynamic, 1)
    for (int first = 0; first < tasks; ++first) {
      Task &t = out[first];
      std::vector<int> scratch;
      try {
        space.for_each_combo(k, first, [&](const std::vector<int> &combo) {
          if (!space.canonical(combo, scratch))
            return true;
          const Structure a = space.build(combo);
          const bool accept = accepts(a);
          const auto hom = find_homomorphism(a, b);
          require_found(hom);
          ++t.instances;
          if (accept == hom.found())
            ++t.agreements;
          else if (!accept)
            ++t.violations;
          else {
            t.counterexample = combo;
            return false;
          }
          return true;
        });
      } catch (...) {
        t.error = std::current_exception();
      }
    }
    for (auto &t : out) {
      if (t.error)
        std::rethrow_exception(t.error);
      result.instances += t.instances;
      result.agreements += t.agreements;
      result.soundness_violations += t.violations;
      if (t.counterexample && result.decides) {
        result.decides = false;
        result.counterexample = space.build(*t.counterexample);
      }
    }
  }
  return result;
}

EmpiricalResult empirical_pac_decides(const Structure &b, InstanceBound bound) {
  return empirical_decides(b, Procedure::pac, bound);
}

Structure pp_expand(const Structure &b,
                    const std::vector<std::pair<std::string, PPFormula>> &defs) {
  Signature sig = b.signature();
  std::vector<Relation> rels = b.relations();
  for (const auto &[name, phi] : defs) {
    if (sig.find(name))
      throw Error("pp-expansion symbol '" + name + "' already exists");
    sig.add(name, static_cast<int>(phi.free.size()));
    rels.push_back(eval_pp(phi, b));
  }
  return Structure(std::move(sig), b.names(), std::move(rels));
}

namespace {

class FormulaGen {
public:
  FormulaGen(const Signature &sig, std::mt19937_64 &rng) : sig_(sig), rng_(rng) {}

  PPNode node(int depth, std::vector<std::string> &scope) {
    std::uniform_int_distribution<int> kind(0, 2);
    const int k = depth <= 1 ? 0 : kind(rng_);
    if (k == 0)
      return atom(scope);
    if (k == 1) {
      std::uniform_int_distribution<int> width(2, 3);
      std::vector<PPNode> children;
      for (int i = width(rng_); i > 0; --i)
        children.push_back(node(depth - 1, scope));
      return pp::conj(std::move(children));
    }
    std::string w = "w" + std::to_string(fresh_++);
    scope.push_back(w);
    PPNode child = node(depth - 1, scope);
    scope.pop_back();
    return pp::exists(w, std::move(child));
  }

private:
  PPNode atom(const std::vector<std::string> &scope) {
    std::uniform_int_distribution<int> sym(0, sig_.size() - 1);
    std::uniform_int_distribution<std::size_t> var(0, scope.size() - 1);
    const Symbol &s = sig_[sym(rng_)];
    std::vector<std::string> args;
    for (int i = 0; i < s.arity; ++i)
      args.push_back(scope[var(rng_)]);
    return pp::atom(s.name, std::move(args));
  }

  const Signature &sig_;
  std::mt19937_64 &rng_;
  int fresh_ = 0;
};

} // namespace

PPFormula random_pp_formula(const Signature &sig, int arity, int max_depth,
                            std::mt19937_64 &rng) {
  if (sig.size() == 0)
    throw Error("random pp-formula needs a nonempty signature");
  if (arity < 1 || max_depth < 1)
    throw Error("random pp-formula needs arity >= 1 and depth >= 1");
  PPFormula phi;
  for (int i = 0; i < arity; ++i)
    phi.free.push_back("v" + std::to_string(i + 1));
  std::vector<std::string> scope = phi.free;
  phi.body = FormulaGen(sig, rng).node(max_depth, scope);
  phi.validate(sig);
  return phi;
}

std::string CharacterizationReport::to_text() const {
  std::ostringstream out;
  out << "template " << id << '\n';
  out << "  AC decides (P(B) -> B): " << (ac_solvable ? "yes" : "no") << '\n';
  out << "  Ind(P(B)^n) -> B:";
  for (const auto &h : pac_bounded)
    out << " n=" << h.n << ' ' << (h.holds ? "yes" : "no");
  out << '\n';
  out << "  empirical PAC (" << empirical.bound.variables << " vars, <= "
      << empirical.bound.tuples << " tuples): " << empirical.instances
      << " instances, " << empirical.agreements << " agree, decides "
      << (empirical.decides ? "yes" : "no") << '\n';
  if (empirical.counterexample)
    out << "  counterexample (PAC accepts, no homomorphism):\n"
        << to_string(*empirical.counterexample);
  return out.str();
}

std::string CharacterizationReport::to_line() const {
  std::ostringstream out;
  out << "template " << id << " ac " << (ac_solvable ? 'y' : 'n') << " pac_n";
  for (const auto &h : pac_bounded)
    out << ' ' << h.n << ':' << (h.holds ? 'y' : 'n');
  out << " empirical " << (empirical.decides ? 'y' : 'n');
  return out.str();
}

CharacterizationReport characterize(const std::string &id, const Structure &b,
                                    int n_max, InstanceBound bound,
                                    const SizeCaps &caps) {
  CharacterizationReport r;
  r.id = id;
  r.ac_solvable = ac_solvability_check(b, caps);
  r.pac_bounded = pac_characterization_check(b, n_max, caps);
  r.empirical = empirical_pac_decides(b, bound);
  return r;
}

} // namespace pac
