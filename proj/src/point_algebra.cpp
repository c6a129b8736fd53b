#include "pac/point_algebra.hpp"

#include <algorithm>

namespace pac {

Signature point_algebra_signature() { return Signature{{"leq", 2}, {"neq", 2}}; }

namespace {

bool holds(int symbol, std::span<const long> v) {
  return symbol == 0 ? v[0] <= v[1] : v[0] != v[1];
}

TemplateDescriptor build_descriptor() {
  const Signature sig = point_algebra_signature();
  // Two witnesses per open ray so that both strict orders are realised.
  auto unpinned =
      context_from_witnesses(sig, {{"Q", {-1, 0, 1}}}, bit(0), holds);
  auto pinned = context_from_witnesses(
      sig, {{"N", {-2, -1}}, {"Z", {0}}, {"P", {1, 2}}}, bit(1), holds);
  return TemplateDescriptor("pointalg", sig, std::move(unpinned),
                            {{"0", std::move(pinned)}});
}

// Tarjan's algorithm, iterative. Returns component ids in reverse topological
// order of discovery (sinks first).
std::vector<int> strongly_connected(int n,
                                    const std::vector<std::vector<int>> &adj) {
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1), stack;
  std::vector<bool> on_stack(n, false);
  int next = 0, ncomp = 0;
  std::vector<std::pair<int, std::size_t>> call;
  for (int s = 0; s < n; ++s) {
    if (index[s] >= 0)
      continue;
    call.emplace_back(s, 0);
    index[s] = low[s] = next++;
    stack.push_back(s);
    on_stack[s] = true;
    while (!call.empty()) {
      auto &[u, i] = call.back();
      if (i < adj[u].size()) {
        int w = adj[u][i++];
        if (index[w] < 0) {
          index[w] = low[w] = next++;
          stack.push_back(w);
          on_stack[w] = true;
          call.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[u] = std::min(low[u], index[w]);
        }
        continue;
      }
      if (low[u] == index[u]) {
        int w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = ncomp;
        } while (w != u);
        ++ncomp;
      }
      int done = u;
      call.pop_back();
      if (!call.empty())
        low[call.back().first] = std::min(low[call.back().first], low[done]);
    }
  }
  return comp;
}

std::vector<int> leq_components(const Structure &s) {
  std::vector<std::vector<int>> adj(s.size());
  const auto &leq = s.relation(0);
  for (std::size_t i = 0; i < leq.size(); ++i)
    adj[leq[i][0]].push_back(leq[i][1]);
  return strongly_connected(s.size(), adj);
}

} // namespace

const TemplateDescriptor &point_algebra_descriptor() {
  static const TemplateDescriptor desc = build_descriptor();
  return desc;
}

Structure point_algebra_sign_structure() {
  const auto &ctx = point_algebra_descriptor().context(0);
  return Structure(ctx.table.signature, ctx.atoms, ctx.table.allowed);
}

PeekReport point_algebra_pac(const Structure &a, const PacOptions &options) {
  return pac_decide(a, point_algebra_descriptor(), options);
}

bool point_algebra_oracle(const Structure &a) {
  const Structure s = align(a, point_algebra_signature());
  const auto comp = leq_components(s);
  const auto &neq = s.relation(1);
  for (std::size_t i = 0; i < neq.size(); ++i)
    if (comp[neq[i][0]] == comp[neq[i][1]])
      return false;
  return true;
}

std::vector<long> point_algebra_model(const Structure &a) {
  if (!point_algebra_oracle(a))
    throw Error("instance is unsatisfiable");
  const Structure s = align(a, point_algebra_signature());
  const auto comp = leq_components(s);
  // Tarjan numbers sinks first, so a larger id means earlier in the order.
  std::vector<long> value(s.size());
  for (Element v = 0; v < s.size(); ++v)
    value[v] = -static_cast<long>(comp[v]);
  return value;
}

} // namespace pac
