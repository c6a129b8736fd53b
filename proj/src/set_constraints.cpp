#include "pac/set_constraints.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

namespace pac {

void SetConstraintInstance::validate() const {
  const int n = size();
  for (const auto *list : {&sub, &dis, &neq})
    for (auto [x, y] : *list)
      if (x < 0 || x >= n || y < 0 || y >= n)
        throw Error("set constraint mentions an undeclared variable");
}

SetConstraintInstance SetConstraintInstance::with_variables(int n) {
  SetConstraintInstance inst;
  for (int i = 0; i < n; ++i)
    inst.variables.push_back("v" + std::to_string(i));
  return inst;
}

SetConstraintInstance parse_set_constraints(std::istream &in) {
  SetConstraintInstance inst;
  bool header = false;
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string &msg) {
    throw Error("line " + std::to_string(lineno) + ": " + msg);
  };
  auto lookup = [&](const std::string &name) {
    auto it = std::find(inst.variables.begin(), inst.variables.end(), name);
    if (it == inst.variables.end())
      fail("undeclared variable '" + name + "'");
    return static_cast<int>(it - inst.variables.begin());
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.resize(hash);
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw))
      continue;
    if (kw == "vars") {
      if (header)
        fail("duplicate 'vars' header");
      header = true;
      std::string v;
      while (ls >> v) {
        if (std::find(inst.variables.begin(), inst.variables.end(), v) !=
            inst.variables.end())
          fail("duplicate variable '" + v + "'");
        inst.variables.push_back(v);
      }
      continue;
    }
    if (!header)
      fail("expected 'vars' header before constraints");
    std::string x, y, extra;
    if (!(ls >> x >> y) || (ls >> extra))
      fail("expected '" + kw + " <var> <var>'");
    std::pair<int, int> p{lookup(x), lookup(y)};
    if (kw == "sub")
      inst.sub.push_back(p);
    else if (kw == "dis")
      inst.dis.push_back(p);
    else if (kw == "neq")
      inst.neq.push_back(p);
    else
      fail("unknown constraint '" + kw + "'");
  }
  if (!header)
    throw Error("missing 'vars' header");
  return inst;
}

SetConstraintInstance parse_set_constraints(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_set_constraints(in);
}

void write_set_constraints(std::ostream &out,
                           const SetConstraintInstance &inst) {
  out << "vars";
  for (const auto &v : inst.variables)
    out << ' ' << v;
  out << '\n';
  auto emit = [&](const char *kw, const auto &list) {
    for (auto [x, y] : list)
      out << kw << ' ' << inst.variables[x] << ' ' << inst.variables[y] << '\n';
  };
  emit("sub", inst.sub);
  emit("dis", inst.dis);
  emit("neq", inst.neq);
}

bool set_constraint_pac(const SetConstraintInstance &inst) {
  inst.validate();
  const int n = inst.size();
  // reach[x][y]: x is contained in y via a chain of sub constraints.
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (int x = 0; x < n; ++x)
    reach[x][x] = true;
  for (auto [x, y] : inst.sub)
    reach[x][y] = true;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      if (reach[i][k])
        for (int j = 0; j < n; ++j)
          if (reach[k][j])
            reach[i][j] = true;

  for (auto [x, y] : inst.neq) {
    if (reach[x][y] && reach[y][x])
      return false;
    for (int e = 0; e < n; ++e) {
      if (!reach[x][e] || !reach[y][e])
        continue;
      for (auto [u, v] : inst.dis)
        if (reach[e][u] && reach[e][v])
          return false;
    }
  }
  return true;
}

namespace {

class SetSearch {
public:
  SetSearch(const SetConstraintInstance &inst, int m, std::uint64_t budget)
      : inst_(inst), full_((std::uint32_t{1} << m) - 1), budget_(budget),
        value_(inst.size(), 0) {}

  bool run() { return extend(0); }

private:
  // Constraints whose later endpoint is v are checked when v is assigned.
  bool consistent(int v) const {
    auto ready = [&](std::pair<int, int> p) {
      return std::max(p.first, p.second) == v;
    };
    for (auto p : inst_.sub)
      if (ready(p) && (value_[p.first] & ~value_[p.second]))
        return false;
    for (auto p : inst_.dis)
      if (ready(p) && (value_[p.first] & value_[p.second]))
        return false;
    for (auto p : inst_.neq)
      if (ready(p) && value_[p.first] == value_[p.second])
        return false;
    return true;
  }

  bool extend(int v) {
    if (v == inst_.size())
      return true;
    for (std::uint32_t s = 0;; ++s) {
      if (++nodes_ > budget_)
        throw CapExceeded("set-constraint search budget exhausted");
      value_[v] = s;
      if (consistent(v) && extend(v + 1))
        return true;
      if (s == full_)
        break;
    }
    return false;
  }

  const SetConstraintInstance &inst_;
  std::uint32_t full_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  std::vector<std::uint32_t> value_;
};

} // namespace

bool set_constraint_oracle(const SetConstraintInstance &inst,
                           std::optional<int> m, std::uint64_t node_budget) {
  inst.validate();
  const int n = inst.size();
  const int universe = m ? *m : (n <= 4 ? 1 << n : -1);
  if (universe < 0 || universe > 20)
    throw CapExceeded("set-constraint oracle needs a universe of 0..20 "
                      "elements; pass m explicitly above 4 variables");
  // Assign greedily the variable with the most constraints into the already
  // placed ones, so checks fire early.
  std::vector<std::vector<int>> adj(n);
  for (const auto *list : {&inst.sub, &inst.dis, &inst.neq})
    for (auto [x, y] : *list) {
      adj[x].push_back(y);
      adj[y].push_back(x);
    }
  std::vector<int> order, pos(n, -1), links(n, 0);
  for (int step = 0; step < n; ++step) {
    int best = -1;
    for (int v = 0; v < n; ++v)
      if (pos[v] < 0 &&
          (best < 0 || links[v] > links[best] ||
           (links[v] == links[best] && adj[v].size() > adj[best].size())))
        best = v;
    pos[best] = step;
    order.push_back(best);
    for (int w : adj[best])
      ++links[w];
  }
  SetConstraintInstance renamed = SetConstraintInstance::with_variables(n);
  auto remap = [&](const auto &from, auto &to) {
    for (auto [x, y] : from)
      to.emplace_back(pos[x], pos[y]);
  };
  remap(inst.sub, renamed.sub);
  remap(inst.dis, renamed.dis);
  remap(inst.neq, renamed.neq);
  return SetSearch(renamed, universe, node_budget).run();
}

bool set_constraint_region_oracle(const SetConstraintInstance &inst) {
  inst.validate();
  const int n = inst.size();
  if (n > 4)
    throw CapExceeded("region oracle is limited to 4 variables");
  // Signature sig (bit x set iff the region lies inside x) is allowed when it
  // violates no sub or dis constraint. Allowed regions can all be present at
  // once, and adding regions only helps neq, so the model with every allowed
  // region is the best candidate; still enumerate all region sets to keep
  // the oracle a plain search.
  std::vector<std::uint32_t> sigs;
  for (std::uint32_t sig = 1; sig < (1u << n); ++sig)
    sigs.push_back(sig);
  const std::uint32_t count = static_cast<std::uint32_t>(sigs.size());
  for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << count); ++pick) {
    bool ok = true;
    auto present = [&](std::uint32_t i) { return (pick >> i) & 1; };
    for (std::uint32_t i = 0; i < count && ok; ++i) {
      if (!present(i))
        continue;
      const auto s = sigs[i];
      for (auto [x, y] : inst.sub)
        ok = ok && !(((s >> x) & 1) && !((s >> y) & 1));
      for (auto [x, y] : inst.dis)
        ok = ok && !(((s >> x) & 1) && ((s >> y) & 1));
    }
    for (auto [x, y] : inst.neq) {
      if (!ok)
        break;
      bool split = false;
      for (std::uint32_t i = 0; i < count && !split; ++i)
        split = present(i) && (((sigs[i] >> x) & 1) != ((sigs[i] >> y) & 1));
      ok = split;
    }
    if (ok)
      return true;
  }
  return false;
}

} // namespace pac
