#include "pac/algebra.hpp"

#include <algorithm>
#include <numeric>

namespace pac {

Operation::Operation(int arity, int universe, std::vector<Element> table)
    : arity_(arity), universe_(universe), table_(std::move(table)) {
  if (arity < 1 || universe < 1)
    throw Error("operation needs arity >= 1 and a nonempty universe");
  std::size_t expected = 1;
  for (int i = 0; i < arity; ++i)
    expected *= static_cast<std::size_t>(universe);
  if (table_.size() != expected)
    throw Error("operation table has the wrong size");
  for (Element e : table_)
    if (e < 0 || e >= universe)
      throw Error("operation table leaves the universe");
}

Operation Operation::from_function(
    int arity, int universe,
    const std::function<Element(std::span<const Element>)> &f) {
  std::size_t total = 1;
  for (int i = 0; i < arity; ++i)
    total *= static_cast<std::size_t>(universe);
  std::vector<Element> table(total);
  std::vector<Element> args(arity, 0);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rest = idx;
    for (int i = arity - 1; i >= 0; --i) {
      args[i] = static_cast<Element>(rest % universe);
      rest /= universe;
    }
    table[idx] = f(args);
  }
  return Operation(arity, universe, std::move(table));
}

Element Operation::operator()(std::span<const Element> args) const {
  if (static_cast<int>(args.size()) != arity_)
    throw Error("operation applied to the wrong number of arguments");
  std::size_t idx = 0;
  for (Element a : args)
    idx = idx * universe_ + a;
  return table_[idx];
}

Element Operation::operator()(Element x, Element y, Element z) const {
  const Element args[3] = {x, y, z};
  return (*this)(std::span<const Element>(args, 3));
}

bool is_polymorphism(const Operation &f, const Structure &b) {
  if (f.universe() != b.size())
    throw Error("operation universe does not match the structure");
  const int n = f.arity();
  std::vector<Element> args(n);
  std::vector<Element> image;
  for (int r = 0; r < b.signature().size(); ++r) {
    const auto &rel = b.relation(r);
    const int k = b.signature()[r].arity;
    if (rel.empty())
      continue;
    image.assign(k, 0);
    std::vector<std::size_t> choice(n, 0);
    while (true) {
      for (int p = 0; p < k; ++p) {
        for (int i = 0; i < n; ++i)
          args[i] = rel[choice[i]][p];
        image[p] = f(args);
      }
      if (!rel.contains(image))
        return false;
      int i = n - 1;
      while (i >= 0 && ++choice[i] == rel.size()) {
        choice[i] = 0;
        --i;
      }
      if (i < 0)
        break;
    }
  }
  return true;
}

std::vector<Element> OrbitPartition::representatives() const {
  std::vector<Element> reps;
  for (const auto &o : orbits)
    reps.push_back(o.front());
  return reps;
}

namespace {

// Backtracking over partial bijections; a tuple is checked once all its
// entries are mapped. For finite structures f(R) subset of R already forces
// f(R) = R, so the forward direction suffices.
class AutomorphismSearch {
public:
  explicit AutomorphismSearch(const Structure &b) : b_(b), n_(b.size()) {
    last_.resize(n_);
    for (int r = 0; r < b.signature().size(); ++r) {
      const auto &rel = b.relation(r);
      for (std::size_t i = 0; i < rel.size(); ++i) {
        auto t = rel[i];
        Element hi = *std::max_element(t.begin(), t.end());
        last_[hi].emplace_back(r, i);
      }
    }
  }

  OrbitPartition run() {
    parent_.resize(n_);
    std::iota(parent_.begin(), parent_.end(), 0);
    image_.assign(n_, -1);
    used_.assign(n_, false);
    extend(0);
    OrbitPartition out;
    out.orbit_of.assign(n_, -1);
    for (Element e = 0; e < n_; ++e) {
      Element root = find(e);
      if (out.orbit_of[root] < 0) {
        out.orbit_of[root] = static_cast<int>(out.orbits.size());
        out.orbits.emplace_back();
      }
      out.orbit_of[e] = out.orbit_of[root];
      out.orbits[out.orbit_of[e]].push_back(e);
    }
    return out;
  }

private:
  Element find(Element e) {
    while (parent_[e] != e)
      e = parent_[e] = parent_[parent_[e]];
    return e;
  }

  void extend(Element e) {
    if (e == n_) {
      for (Element x = 0; x < n_; ++x) {
        Element a = find(x), c = find(image_[x]);
        if (a != c)
          parent_[std::max(a, c)] = std::min(a, c);
      }
      return;
    }
    for (Element v = 0; v < n_; ++v) {
      if (used_[v])
        continue;
      image_[e] = v;
      used_[v] = true;
      if (consistent(e))
        extend(e + 1);
      used_[v] = false;
    }
    image_[e] = -1;
  }

  bool consistent(Element e) {
    for (auto [r, i] : last_[e]) {
      auto t = b_.relation(r)[i];
      img_.assign(t.size(), 0);
      for (std::size_t p = 0; p < t.size(); ++p)
        img_[p] = image_[t[p]];
      if (!b_.relation(r).contains(img_))
        return false;
    }
    return true;
  }

  const Structure &b_;
  int n_;
  std::vector<std::vector<std::pair<int, std::size_t>>> last_;
  std::vector<Element> parent_;
  std::vector<Element> image_;
  std::vector<bool> used_;
  std::vector<Element> img_;
};

} // namespace

OrbitPartition automorphism_orbits(const Structure &b, int cap) {
  if (b.size() > cap)
    throw CapExceeded("automorphism search on " + std::to_string(b.size()) +
                      " elements exceeds the cap of " + std::to_string(cap));
  return AutomorphismSearch(b).run();
}

std::vector<Element> peek_representatives(const Structure &b, int cap) {
  if (b.size() <= cap)
    return automorphism_orbits(b, cap).representatives();
  std::vector<Element> all(b.size());
  std::iota(all.begin(), all.end(), 0);
  return all;
}

} // namespace pac
