#include "pac/pp_formula.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace pac {

namespace pp {

PPNode atom(std::string symbol, std::vector<std::string> args) {
  PPNode n;
  n.kind = PPNode::Kind::atom;
  n.symbol = std::move(symbol);
  n.args = std::move(args);
  return n;
}

PPNode conj(std::vector<PPNode> children) {
  PPNode n;
  n.kind = PPNode::Kind::conjunction;
  n.children = std::move(children);
  return n;
}

PPNode exists(std::string var, PPNode child) {
  PPNode n;
  n.kind = PPNode::Kind::exists;
  n.bound = std::move(var);
  n.children.push_back(std::move(child));
  return n;
}

} // namespace pp

namespace {

void check_scope(const PPNode &n, std::vector<std::string> &scope) {
  switch (n.kind) {
  case PPNode::Kind::atom:
    if (n.args.empty())
      throw Error("atom '" + n.symbol + "' has no arguments");
    for (const auto &v : n.args)
      if (std::find(scope.begin(), scope.end(), v) == scope.end())
        throw Error("variable '" + v + "' is neither free nor bound");
    break;
  case PPNode::Kind::conjunction:
    for (const auto &c : n.children)
      check_scope(c, scope);
    break;
  case PPNode::Kind::exists:
    if (n.children.size() != 1)
      throw Error("exists must have exactly one child");
    scope.push_back(n.bound);
    check_scope(n.children[0], scope);
    scope.pop_back();
    break;
  }
}

void check_symbols(const PPNode &n, const Signature &sig) {
  if (n.kind == PPNode::Kind::atom) {
    const int s = sig.index(n.symbol);
    if (sig[s].arity != static_cast<int>(n.args.size()))
      throw Error("atom '" + n.symbol + "' has " +
                  std::to_string(n.args.size()) + " arguments, arity is " +
                  std::to_string(sig[s].arity));
  }
  for (const auto &c : n.children)
    check_symbols(c, sig);
}

int node_depth(const PPNode &n) {
  int d = 0;
  for (const auto &c : n.children)
    d = std::max(d, node_depth(c));
  return n.kind == PPNode::Kind::atom ? 1 : d + 1;
}

void print(const PPNode &n, std::string &out) {
  switch (n.kind) {
  case PPNode::Kind::atom:
    out += n.symbol + "(";
    for (std::size_t i = 0; i < n.args.size(); ++i)
      out += (i ? "," : "") + n.args[i];
    out += ")";
    break;
  case PPNode::Kind::conjunction:
    if (n.children.empty()) {
      out += "true";
      break;
    }
    out += "(";
    for (std::size_t i = 0; i < n.children.size(); ++i) {
      if (i)
        out += " & ";
      print(n.children[i], out);
    }
    out += ")";
    break;
  case PPNode::Kind::exists:
    out += "E" + n.bound + ".";
    print(n.children[0], out);
    break;
  }
}

// Satisfying assignments of a subformula over its own variables.
struct Table {
  std::vector<std::string> vars;
  std::set<std::vector<Element>> rows;

  int column(const std::string &v) const {
    auto it = std::find(vars.begin(), vars.end(), v);
    return it == vars.end() ? -1 : static_cast<int>(it - vars.begin());
  }
};

Table join(const Table &a, const Table &b) {
  Table out;
  out.vars = a.vars;
  std::vector<std::pair<int, int>> shared; // (col in a, col in b)
  std::vector<int> extra;                  // cols of b not in a
  for (int j = 0; j < static_cast<int>(b.vars.size()); ++j) {
    int i = a.column(b.vars[j]);
    if (i >= 0)
      shared.emplace_back(i, j);
    else {
      extra.push_back(j);
      out.vars.push_back(b.vars[j]);
    }
  }
  for (const auto &ra : a.rows)
    for (const auto &rb : b.rows) {
      bool ok = std::all_of(shared.begin(), shared.end(),
                            [&](auto p) { return ra[p.first] == rb[p.second]; });
      if (!ok)
        continue;
      std::vector<Element> row = ra;
      for (int j : extra)
        row.push_back(rb[j]);
      out.rows.insert(std::move(row));
    }
  return out;
}

Table evaluate(const PPNode &n, const Structure &b) {
  switch (n.kind) {
  case PPNode::Kind::atom: {
    Table t;
    std::vector<int> col(n.args.size());
    for (std::size_t i = 0; i < n.args.size(); ++i) {
      int c = t.column(n.args[i]);
      if (c < 0) {
        c = static_cast<int>(t.vars.size());
        t.vars.push_back(n.args[i]);
      }
      col[i] = c;
    }
    const auto &rel = b.relation(n.symbol);
    std::vector<Element> row;
    for (std::size_t k = 0; k < rel.size(); ++k) {
      auto tup = rel[k];
      row.assign(t.vars.size(), -1);
      bool ok = true;
      for (std::size_t i = 0; i < tup.size() && ok; ++i) {
        if (row[col[i]] < 0)
          row[col[i]] = tup[i];
        else
          ok = row[col[i]] == tup[i];
      }
      if (ok)
        t.rows.insert(row);
    }
    return t;
  }
  case PPNode::Kind::conjunction: {
    Table t;
    t.rows.insert(std::vector<Element>{});
    for (const auto &c : n.children)
      t = join(t, evaluate(c, b));
    return t;
  }
  case PPNode::Kind::exists: {
    Table child = evaluate(n.children[0], b);
    const int c = child.column(n.bound);
    if (c < 0) {
      // Unconstrained witness: exists w. true holds iff the universe is nonempty.
      if (b.size() == 0)
        child.rows.clear();
      return child;
    }
    Table t;
    for (std::size_t i = 0; i < child.vars.size(); ++i)
      if (static_cast<int>(i) != c)
        t.vars.push_back(child.vars[i]);
    for (const auto &r : child.rows) {
      std::vector<Element> row;
      for (std::size_t i = 0; i < r.size(); ++i)
        if (static_cast<int>(i) != c)
          row.push_back(r[i]);
      t.rows.insert(std::move(row));
    }
    return t;
  }
  }
  return {};
}

} // namespace

void PPFormula::validate() const {
  if (free.empty())
    throw Error("pp-formula needs at least one free variable");
  std::vector<std::string> scope = free;
  check_scope(body, scope);
}

void PPFormula::validate(const Signature &sig) const {
  validate();
  check_symbols(body, sig);
}

int PPFormula::depth() const { return node_depth(body); }

std::string PPFormula::to_string() const {
  std::string out = "phi(";
  for (std::size_t i = 0; i < free.size(); ++i)
    out += (i ? "," : "") + free[i];
  out += ") = ";
  print(body, out);
  return out;
}

Relation eval_pp(const PPFormula &phi, const Structure &b) {
  phi.validate(b.signature());
  Table t = evaluate(phi.body, b);
  // Free variables the body never mentions range over the whole universe.
  std::vector<std::string> distinct;
  for (const auto &v : phi.free)
    if (std::find(distinct.begin(), distinct.end(), v) == distinct.end())
      distinct.push_back(v);
  for (const auto &v : distinct) {
    if (t.column(v) >= 0)
      continue;
    Table all;
    all.vars = {v};
    for (Element e = 0; e < b.size(); ++e)
      all.rows.insert({e});
    t = join(t, all);
  }
  std::vector<int> cols;
  for (const auto &v : phi.free)
    cols.push_back(t.column(v));
  std::vector<Element> flat;
  for (const auto &r : t.rows)
    for (int c : cols)
      flat.push_back(r[c]);
  return Relation(static_cast<int>(phi.free.size()), std::move(flat));
}

Relation eval_pp_brute_force(const PPFormula &phi, const Structure &b) {
  phi.validate(b.signature());
  std::map<std::string, Element> env;
  std::function<bool(const PPNode &)> sat = [&](const PPNode &n) -> bool {
    switch (n.kind) {
    case PPNode::Kind::atom: {
      std::vector<Element> t;
      for (const auto &v : n.args)
        t.push_back(env.at(v));
      return b.relation(n.symbol).contains(t);
    }
    case PPNode::Kind::conjunction:
      return std::all_of(n.children.begin(), n.children.end(), sat);
    case PPNode::Kind::exists: {
      auto saved = env.find(n.bound) == env.end()
                       ? std::optional<Element>{}
                       : std::optional<Element>{env[n.bound]};
      bool any = false;
      for (Element e = 0; e < b.size() && !any; ++e) {
        env[n.bound] = e;
        any = sat(n.children[0]);
      }
      if (saved)
        env[n.bound] = *saved;
      else
        env.erase(n.bound);
      return any;
    }
    }
    return false;
  };

  std::vector<std::string> distinct;
  for (const auto &v : phi.free)
    if (std::find(distinct.begin(), distinct.end(), v) == distinct.end())
      distinct.push_back(v);
  std::vector<Element> flat;
  std::vector<Element> values(distinct.size(), 0);
  if (b.size() == 0)
    return Relation(static_cast<int>(phi.free.size()), {});
  while (true) {
    env.clear();
    for (std::size_t i = 0; i < distinct.size(); ++i)
      env[distinct[i]] = values[i];
    if (sat(phi.body))
      for (const auto &v : phi.free)
        flat.push_back(env[v]);
    std::size_t i = distinct.size();
    while (i > 0 && ++values[i - 1] == b.size()) {
      values[i - 1] = 0;
      --i;
    }
    if (i == 0)
      break;
  }
  return Relation(static_cast<int>(phi.free.size()), std::move(flat));
}

} // namespace pac
