#include "pac/constructions.hpp"

#include <algorithm>
#include <bit>
#include <unordered_set>

namespace pac {

namespace {

void require_same_signature(const Structure &a, const Structure &b) {
  if (!(a.signature() == b.signature()))
    throw Error("structures have different signatures");
}

struct MaskTupleHash {
  std::size_t operator()(const std::vector<Mask> &v) const {
    std::size_t h = 1469598103934665603ull;
    for (Mask m : v)
      h = (h ^ m) * 1099511628211ull;
    return h;
  }
};

} // namespace

std::string subset_name(const Structure &base, Mask m) {
  std::string s = "{";
  bool first = true;
  for (Element e = 0; e < base.size(); ++e)
    if (m & bit(e)) {
      if (!first)
        s += ',';
      s += base.name(e);
      first = false;
    }
  return s + "}";
}

PowerStructure power_structure(const Structure &b, const SizeCaps &caps) {
  const int m = b.size();
  if (m > caps.power_universe || m > 62)
    throw CapExceeded("power structure of a " + std::to_string(m) +
                      "-element universe exceeds the cap of " +
                      std::to_string(caps.power_universe));
  const Mask count = (Mask{1} << m) - 1;
  std::vector<std::string> names;
  names.reserve(count);
  for (Mask s = 1; s <= count; ++s)
    names.push_back(subset_name(b, s));

  std::vector<Relation> rels;
  for (int r = 0; r < b.signature().size(); ++r) {
    const Relation &rel = b.relation(r);
    const int k = b.signature()[r].arity;
    // Projections of nonempty S are exactly the coordinatewise unions of the
    // singleton projections of its members; close under union with members.
    std::unordered_set<std::vector<Mask>, MaskTupleHash> seen;
    std::vector<std::vector<Mask>> found;
    std::vector<Mask> single(k);
    for (std::size_t i = 0; i < rel.size(); ++i) {
      auto t = rel[i];
      for (int j = 0; j < k; ++j)
        single[j] = bit(t[j]);
      const std::size_t before = found.size();
      if (seen.insert(single).second)
        found.push_back(single);
      for (std::size_t p = 0; p < before; ++p) {
        std::vector<Mask> u = found[p];
        for (int j = 0; j < k; ++j)
          u[j] |= single[j];
        if (seen.insert(u).second)
          found.push_back(std::move(u));
      }
    }
    std::vector<Element> flat;
    flat.reserve(found.size() * k);
    for (const auto &u : found)
      for (Mask x : u)
        flat.push_back(static_cast<Element>(x - 1));
    rels.emplace_back(k, std::move(flat));
  }
  return {Structure(b.signature(), std::move(names), std::move(rels)), m};
}

Structure product(const Structure &a, const Structure &b, const SizeCaps &caps) {
  require_same_signature(a, b);
  const std::size_t n = static_cast<std::size_t>(a.size()) * b.size();
  if (n > caps.product_universe)
    throw CapExceeded("product universe of " + std::to_string(n) +
                      " elements exceeds the cap");
  std::vector<std::string> names;
  names.reserve(n);
  for (Element x = 0; x < a.size(); ++x)
    for (Element y = 0; y < b.size(); ++y)
      names.push_back("(" + a.name(x) + "," + b.name(y) + ")");
  std::vector<Relation> rels;
  for (int r = 0; r < a.signature().size(); ++r) {
    const auto &ra = a.relation(r);
    const auto &rb = b.relation(r);
    const int k = a.signature()[r].arity;
    if (ra.size() * rb.size() > caps.product_tuples)
      throw CapExceeded("product relation exceeds the tuple cap");
    std::vector<Element> flat;
    flat.reserve(ra.size() * rb.size() * k);
    for (std::size_t i = 0; i < ra.size(); ++i)
      for (std::size_t j = 0; j < rb.size(); ++j)
        for (int p = 0; p < k; ++p)
          flat.push_back(ra[i][p] * b.size() + rb[j][p]);
    rels.emplace_back(k, std::move(flat));
  }
  return Structure(a.signature(), std::move(names), std::move(rels));
}

namespace {

// Enumerates all n-tuples of tuples of `rel` (as index vectors), calling
// `visit(choice)` for each.
template <typename Visit>
void for_each_choice(std::size_t count, int n, Visit &&visit) {
  if (count == 0)
    return;
  std::vector<std::size_t> choice(n, 0);
  while (true) {
    visit(choice);
    int i = n - 1;
    while (i >= 0 && ++choice[i] == count) {
      choice[i] = 0;
      --i;
    }
    if (i < 0)
      return;
  }
}

std::string tuple_name(const Structure &a, const std::vector<Element> &coords) {
  std::string s = "(";
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (i)
      s += ',';
    s += a.name(coords[i]);
  }
  return s + ")";
}

} // namespace

Structure power(const Structure &a, int n, const SizeCaps &caps) {
  if (n < 1)
    throw Error("power exponent must be >= 1");
  std::size_t total = 1;
  for (int i = 0; i < n; ++i) {
    total *= static_cast<std::size_t>(a.size());
    if (total > caps.product_universe)
      throw CapExceeded("power universe exceeds the cap");
  }
  std::vector<std::string> names;
  names.reserve(total);
  std::vector<Element> coords(n, 0);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rest = idx;
    for (int i = n - 1; i >= 0; --i) {
      coords[i] = static_cast<Element>(rest % a.size());
      rest /= a.size();
    }
    names.push_back(tuple_name(a, coords));
  }
  std::vector<Relation> rels;
  for (int r = 0; r < a.signature().size(); ++r) {
    const auto &rel = a.relation(r);
    const int k = a.signature()[r].arity;
    std::size_t tuples = 1;
    for (int i = 0; i < n; ++i) {
      tuples *= rel.size();
      if (tuples > caps.product_tuples)
        throw CapExceeded("power relation exceeds the tuple cap");
    }
    std::vector<Element> flat;
    flat.reserve(tuples * k);
    for_each_choice(rel.size(), n, [&](const std::vector<std::size_t> &ch) {
      for (int p = 0; p < k; ++p) {
        Element e = 0;
        for (int i = 0; i < n; ++i)
          e = e * a.size() + rel[ch[i]][p];
        flat.push_back(e);
      }
    });
    rels.emplace_back(k, std::move(flat));
  }
  return Structure(a.signature(), std::move(names), std::move(rels));
}

IndPower ind_peek_power(const PowerStructure &p, int n, const SizeCaps &caps) {
  if (n < 1)
    throw Error("ind_peek_power exponent must be >= 1");
  const Structure &ps = p.structure;
  const std::size_t m = ps.size();
  std::size_t total = 1;
  for (int i = 0; i < n; ++i) {
    total *= m;
    if (total > caps.product_universe)
      throw CapExceeded("peek power universe exceeds the cap");
  }
  auto is_singleton = [&](Element e) { return std::has_single_bit(p.subset(e)); };

  // Map full-power index -> restricted index (or -1).
  std::vector<Element> restricted(total, -1);
  IndPower out;
  std::vector<std::string> names;
  std::vector<Element> coords(n);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rest = idx;
    bool any = false;
    for (int i = n - 1; i >= 0; --i) {
      coords[i] = static_cast<Element>(rest % m);
      rest /= m;
      any = any || is_singleton(coords[i]);
    }
    if (!any)
      continue;
    restricted[idx] = static_cast<Element>(out.coords.size());
    out.coords.push_back(coords);
    names.push_back(tuple_name(ps, coords));
  }

  std::vector<Relation> rels;
  for (int r = 0; r < ps.signature().size(); ++r) {
    const auto &rel = ps.relation(r);
    const int k = ps.signature()[r].arity;
    std::size_t tuples = 1;
    for (int i = 0; i < n; ++i) {
      tuples *= rel.size();
      if (tuples > caps.product_tuples)
        throw CapExceeded("peek power relation exceeds the tuple cap");
    }
    std::vector<Element> flat;
    std::vector<Element> t(k);
    for_each_choice(rel.size(), n, [&](const std::vector<std::size_t> &ch) {
      for (int q = 0; q < k; ++q) {
        std::size_t e = 0;
        for (int i = 0; i < n; ++i)
          e = e * m + rel[ch[i]][q];
        t[q] = restricted[e];
        if (t[q] < 0)
          return;
      }
      flat.insert(flat.end(), t.begin(), t.end());
    });
    rels.emplace_back(k, std::move(flat));
  }
  out.structure = Structure(ps.signature(), std::move(names), std::move(rels));
  return out;
}

Structure expand_with_unary(const Structure &a, const std::vector<Element> &subset,
                            const std::string &symbol) {
  if (a.signature().find(symbol))
    throw Error("signature already contains '" + symbol + "'");
  Signature sig = a.signature();
  sig.add(symbol, 1);
  for (Element e : subset)
    if (e < 0 || e >= a.size())
      throw Error("unary expansion mentions an element outside the universe");
  std::vector<Relation> rels = a.relations();
  rels.emplace_back(1, subset);
  return Structure(std::move(sig), a.names(), std::move(rels));
}

Structure induced_substructure(const Structure &a,
                               const std::vector<Element> &keep) {
  std::vector<Element> index(a.size(), -1);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < keep.size(); ++i) {
    if (keep[i] < 0 || keep[i] >= a.size() || index[keep[i]] >= 0)
      throw Error("induced_substructure: invalid or repeated element");
    index[keep[i]] = static_cast<Element>(i);
    names.push_back(a.name(keep[i]));
  }
  std::vector<Relation> rels;
  for (int r = 0; r < a.signature().size(); ++r) {
    const auto &rel = a.relation(r);
    const int k = a.signature()[r].arity;
    std::vector<Element> flat;
    for (std::size_t i = 0; i < rel.size(); ++i) {
      auto t = rel[i];
      bool inside = std::all_of(t.begin(), t.end(),
                                [&](Element e) { return index[e] >= 0; });
      if (!inside)
        continue;
      for (Element e : t)
        flat.push_back(index[e]);
    }
    rels.emplace_back(k, std::move(flat));
  }
  return Structure(a.signature(), std::move(names), std::move(rels));
}

} // namespace pac
