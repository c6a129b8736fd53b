#include "pac/homomorphism.hpp"

#include <algorithm>

namespace pac {

bool is_homomorphism(const Structure &a, const Structure &b,
                     std::span<const Element> map) {
  if (!(a.signature() == b.signature()))
    throw Error("structures have different signatures");
  if (static_cast<int>(map.size()) != a.size())
    return false;
  for (Element v : map)
    if (v < 0 || v >= b.size())
      return false;
  std::vector<Element> image;
  for (int r = 0; r < a.signature().size(); ++r) {
    const auto &ra = a.relation(r);
    const auto &rb = b.relation(r);
    for (std::size_t i = 0; i < ra.size(); ++i) {
      auto t = ra[i];
      image.assign(t.size(), 0);
      for (std::size_t p = 0; p < t.size(); ++p)
        image[p] = map[t[p]];
      if (!rb.contains(image))
        return false;
    }
  }
  return true;
}

namespace {

struct Constraint {
  int symbol;
  std::vector<Element> scope;
  std::vector<std::pair<int, int>> equal_positions;
};

class Search {
public:
  Search(const Structure &a, const Structure &b, const HomSearchOptions &opt)
      : a_(a), b_(b), opt_(opt), n_(a.size()), m_(b.size()),
        words_((b.size() + 63) / 64), touching_(a.size()) {
    for (int r = 0; r < a.signature().size(); ++r) {
      const auto &rel = a.relation(r);
      for (std::size_t i = 0; i < rel.size(); ++i) {
        Constraint c{r, {rel[i].begin(), rel[i].end()}, {}};
        for (std::size_t p = 0; p < c.scope.size(); ++p)
          for (std::size_t q = p + 1; q < c.scope.size(); ++q)
            if (c.scope[p] == c.scope[q])
              c.equal_positions.emplace_back(static_cast<int>(p),
                                             static_cast<int>(q));
        const int id = static_cast<int>(constraints_.size());
        std::vector<Element> vars = c.scope;
        std::sort(vars.begin(), vars.end());
        vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
        for (Element v : vars)
          touching_[v].push_back(id);
        constraints_.push_back(std::move(c));
      }
    }
  }

  HomSearchResult run() {
    HomSearchResult res;
    if (n_ == 0) {
      res.status = SearchStatus::found;
      return res;
    }
    if (m_ == 0) {
      res.status = SearchStatus::none;
      return res;
    }
    levels_.assign(n_ + 1, std::vector<std::uint64_t>(n_ * words_, 0));
    auto &top = levels_[0];
    for (int v = 0; v < n_; ++v)
      for (int x = 0; x < m_; ++x)
        set(top, v, x);
    map_.assign(n_, -1);
    const bool ok = descend(0);
    res.nodes = nodes_;
    if (exhausted_)
      res.status = SearchStatus::budget_exhausted;
    else if (ok) {
      res.status = SearchStatus::found;
      res.map = map_;
    } else
      res.status = SearchStatus::none;
    return res;
  }

private:
  bool has(const std::vector<std::uint64_t> &d, int v, int x) const {
    return (d[v * words_ + x / 64] >> (x % 64)) & 1u;
  }
  void set(std::vector<std::uint64_t> &d, int v, int x) const {
    d[v * words_ + x / 64] |= std::uint64_t{1} << (x % 64);
  }
  bool empty(const std::vector<std::uint64_t> &d, int v) const {
    for (int w = 0; w < words_; ++w)
      if (d[v * words_ + w])
        return false;
    return true;
  }

  bool descend(int v) {
    if (v == n_)
      return true;
    const auto &cur = levels_[v];
    auto &next = levels_[v + 1];
    for (int x = 0; x < m_; ++x) {
      if (!has(cur, v, x))
        continue;
      if (++nodes_ > opt_.node_budget) {
        exhausted_ = true;
        return false;
      }
      next = cur;
      for (int w = 0; w < words_; ++w)
        next[v * words_ + w] = 0;
      set(next, v, x);
      if (!forward_check(next, v))
        continue;
      map_[v] = x;
      if (descend(v + 1))
        return true;
      if (exhausted_)
        return false;
    }
    return false;
  }

  // Generalised arc revision of every constraint on v, restricted to the
  // unassigned positions.
  bool forward_check(std::vector<std::uint64_t> &d, int v) {
    for (int cid : touching_[v]) {
      const Constraint &c = constraints_[cid];
      const auto &rel = b_.relation(c.symbol);
      const int k = static_cast<int>(c.scope.size());
      support_.assign(static_cast<std::size_t>(k) * words_, 0);
      bool any = false;
      for (std::size_t i = 0; i < rel.size(); ++i) {
        auto t = rel[i];
        bool fits = true;
        for (int p = 0; p < k && fits; ++p)
          fits = has(d, c.scope[p], t[p]);
        for (auto [p, q] : c.equal_positions)
          fits = fits && t[p] == t[q];
        if (!fits)
          continue;
        any = true;
        for (int p = 0; p < k; ++p)
          support_[p * words_ + t[p] / 64] |= std::uint64_t{1} << (t[p] % 64);
      }
      if (!any)
        return false;
      for (int p = 0; p < k; ++p) {
        const int u = c.scope[p];
        if (u <= v)
          continue;
        for (int w = 0; w < words_; ++w)
          d[u * words_ + w] &= support_[p * words_ + w];
        if (empty(d, u))
          return false;
      }
    }
    return true;
  }

  const Structure &a_;
  const Structure &b_;
  const HomSearchOptions &opt_;
  int n_, m_, words_;
  std::vector<Constraint> constraints_;
  std::vector<std::vector<int>> touching_;
  std::vector<std::vector<std::uint64_t>> levels_;
  std::vector<std::uint64_t> support_;
  std::vector<Element> map_;
  std::uint64_t nodes_ = 0;
  bool exhausted_ = false;
};

} // namespace

HomSearchResult find_homomorphism(const Structure &a, const Structure &b,
                                  const HomSearchOptions &options) {
  if (!(a.signature() == b.signature()))
    throw Error("structures have different signatures");
  return Search(a, b, options).run();
}

std::optional<std::vector<Element>>
find_homomorphism_exhaustive(const Structure &a, const Structure &b) {
  if (!(a.signature() == b.signature()))
    throw Error("structures have different signatures");
  const int n = a.size();
  const int m = b.size();
  std::vector<Element> map(n, 0);
  if (n == 0)
    return map;
  if (m == 0)
    return std::nullopt;
  while (true) {
    if (is_homomorphism(a, b, map))
      return map;
    int i = n - 1;
    while (i >= 0 && ++map[i] == m) {
      map[i] = 0;
      --i;
    }
    if (i < 0)
      return std::nullopt;
  }
}

} // namespace pac
