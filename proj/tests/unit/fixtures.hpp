#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "pac/structure.hpp"

namespace fixtures {

using pac::Element;
using pac::Signature;
using pac::Structure;
using pac::StructureBuilder;

inline Signature graph_sig() { return Signature{{"E", 2}}; }

/// Undirected cycle on n vertices (both directions stored).
inline Structure cycle_graph(int n) {
  StructureBuilder b(graph_sig(), n);
  for (Element i = 0; i < n; ++i) {
    b.add(0, {i, static_cast<Element>((i + 1) % n)});
    b.add(0, {static_cast<Element>((i + 1) % n), i});
  }
  return std::move(b).build();
}

inline Structure triangle() { return cycle_graph(3); }

inline Structure path_graph(int n) {
  StructureBuilder b(graph_sig(), n);
  for (Element i = 0; i + 1 < n; ++i) {
    b.add(0, {i, i + 1});
    b.add(0, {i + 1, i});
  }
  return std::move(b).build();
}

/// Every structure over `sig` with universe {0..n-1} whose tuples are a subset
/// of the first `max_candidates` candidate tuples, up to `max_tuples` tuples.
/// Labelled (no symmetry reduction); meant for tiny exhaustive sweeps.
inline void for_each_labelled(const Signature &sig, int n, int max_tuples,
                              const std::function<void(const Structure &)> &visit) {
  std::vector<std::pair<int, std::vector<Element>>> cand;
  for (int s = 0; s < sig.size(); ++s) {
    const int k = sig[s].arity;
    std::vector<Element> t(k, 0);
    while (true) {
      cand.push_back({s, t});
      int p = k - 1;
      while (p >= 0 && ++t[p] == n) {
        t[p] = 0;
        --p;
      }
      if (p < 0)
        break;
    }
  }
  std::vector<int> pick;
  std::function<void(int)> rec = [&](int from) {
    StructureBuilder b(sig, n);
    for (int c : pick)
      b.add(cand[c].first, std::span<const Element>(cand[c].second));
    visit(std::move(b).build());
    if (static_cast<int>(pick.size()) == max_tuples)
      return;
    for (int c = from; c < static_cast<int>(cand.size()); ++c) {
      pick.push_back(c);
      rec(c + 1);
      pick.pop_back();
    }
  };
  rec(0);
}

/// Random structure with `n` elements and about `tuples` tuples.
inline Structure random_structure(const Signature &sig, int n, int tuples,
                                  std::mt19937_64 &rng) {
  StructureBuilder b(sig, n);
  std::uniform_int_distribution<int> sym(0, sig.size() - 1);
  std::uniform_int_distribution<Element> el(0, n - 1);
  for (int i = 0; i < tuples; ++i) {
    const int s = sym(rng);
    std::vector<Element> t(sig[s].arity);
    for (auto &e : t)
      e = el(rng);
    b.add(s, std::span<const Element>(t));
  }
  return std::move(b).build();
}

/// All structures over a single binary relation on {0,1}, by relation bitmask.
inline Structure two_element_binary(int mask) {
  std::vector<Element> flat;
  for (int i = 0; i < 4; ++i)
    if (mask & (1 << i)) {
      flat.push_back(i >> 1);
      flat.push_back(i & 1);
    }
  return Structure(Signature{{"R", 2}}, 2, {pac::Relation(2, std::move(flat))});
}

} // namespace fixtures
