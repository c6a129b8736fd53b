#include "pac/templates.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <queue>
#include <sstream>

#include "pac/homomorphism.hpp"

namespace pac {

Structure two_sat_template() {
  Signature sig{{"R00", 2}, {"R01", 2}, {"R11", 2}, {"R10", 2}};
  std::vector<Relation> rels;
  for (auto [s, t] : {std::pair{0, 0}, {0, 1}, {1, 1}, {1, 0}}) {
    std::vector<Element> flat;
    for (Element a = 0; a < 2; ++a)
      for (Element b = 0; b < 2; ++b)
        if (a != s || b != t) {
          flat.push_back(a);
          flat.push_back(b);
        }
    rels.emplace_back(2, std::move(flat));
  }
  return Structure(std::move(sig), 2, std::move(rels));
}

Structure cnf2_to_instance(const Cnf2 &cnf) {
  std::vector<std::string> names;
  for (int v = 0; v < cnf.variables; ++v)
    names.push_back("x" + std::to_string(v + 1));
  StructureBuilder b(two_sat_template().signature(), std::move(names));
  static constexpr const char *symbol[2][2] = {{"R00", "R01"}, {"R10", "R11"}};
  for (const auto &[l1, l2] : cnf.clauses) {
    if (l1.variable < 0 || l1.variable >= cnf.variables || l2.variable < 0 ||
        l2.variable >= cnf.variables)
      throw Error("clause mentions an undeclared variable");
    b.add(symbol[l1.negative][l2.negative], {l1.variable, l2.variable});
  }
  return std::move(b).build();
}

Cnf2 parse_cnf2(std::istream &in) {
  Cnf2 cnf;
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string &msg) {
    throw Error("line " + std::to_string(lineno) + ": " + msg);
  };
  auto literal = [&](long v) {
    if (v == 0)
      fail("literal 0 inside a clause");
    Literal l{static_cast<int>((v < 0 ? -v : v) - 1), v < 0};
    cnf.variables = std::max(cnf.variables, l.variable + 1);
    return l;
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first) || first == "c" || first[0] == '#')
      continue;
    if (first == "p") {
      std::string fmt;
      long n = 0, m = 0;
      if (!(ls >> fmt >> n >> m) || fmt != "cnf" || n < 0 || m < 0)
        fail("malformed header, expected 'p cnf <vars> <clauses>'");
      cnf.variables = std::max(cnf.variables, static_cast<int>(n));
      continue;
    }
    std::vector<long> lits;
    try {
      lits.push_back(std::stol(first));
      std::string tok;
      while (ls >> tok)
        lits.push_back(std::stol(tok));
    } catch (const std::exception &) {
      fail("expected integers");
    }
    if (lits.size() != 3 || lits[2] != 0)
      fail("a clause must be exactly two literals followed by 0");
    cnf.clauses.emplace_back(literal(lits[0]), literal(lits[1]));
  }
  return cnf;
}

Cnf2 parse_cnf2(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_cnf2(in);
}

void write_cnf2(std::ostream &out, const Cnf2 &cnf) {
  out << "p cnf " << cnf.variables << ' ' << cnf.clauses.size() << '\n';
  auto lit = [](Literal l) { return (l.negative ? -1 : 1) * (l.variable + 1); };
  for (const auto &[a, b] : cnf.clauses)
    out << lit(a) << ' ' << lit(b) << " 0\n";
}

bool cnf2_satisfiable_brute_force(const Cnf2 &cnf) {
  if (cnf.variables > 30)
    throw CapExceeded("brute-force 2-SAT is limited to 30 variables");
  const std::uint64_t total = std::uint64_t{1} << cnf.variables;
  auto sat = [](std::uint64_t asg, Literal l) {
    return (((asg >> l.variable) & 1) != 0) != l.negative;
  };
  for (std::uint64_t asg = 0; asg < total; ++asg) {
    bool ok = true;
    for (const auto &[a, b] : cnf.clauses)
      if (!sat(asg, a) && !sat(asg, b)) {
        ok = false;
        break;
      }
    if (ok)
      return true;
  }
  return false;
}

Structure k2_template() {
  return Structure(Signature{{"E", 2}}, 2, {Relation(2, {0, 1, 1, 0})});
}

namespace {

const Relation &edges(const Structure &g) {
  if (g.signature().size() != 1 || g.signature()[0].arity != 2)
    throw Error("expected a graph with a single binary edge relation");
  return g.relation(0);
}

// -1 when not 2-colourable.
std::vector<int> two_colouring(const Structure &g) {
  const auto &e = edges(g);
  std::vector<std::vector<Element>> adj(g.size());
  for (std::size_t i = 0; i < e.size(); ++i) {
    adj[e[i][0]].push_back(e[i][1]);
    adj[e[i][1]].push_back(e[i][0]);
  }
  std::vector<int> colour(g.size(), -1);
  for (Element s = 0; s < g.size(); ++s) {
    if (colour[s] >= 0)
      continue;
    colour[s] = 0;
    std::queue<Element> q;
    q.push(s);
    while (!q.empty()) {
      Element u = q.front();
      q.pop();
      for (Element w : adj[u]) {
        if (colour[w] < 0) {
          colour[w] = 1 - colour[u];
          q.push(w);
        } else if (colour[w] == colour[u]) {
          return {};
        }
      }
    }
  }
  return colour;
}

} // namespace

bool is_bipartite(const Structure &g) {
  return g.size() == 0 || !two_colouring(g).empty();
}

BipartiteReduction bipartite_reduce(const Structure &g) {
  const auto &e = edges(g);
  for (std::size_t i = 0; i < e.size(); ++i) {
    const Element rev[2] = {e[i][1], e[i][0]};
    if (!e.contains(rev))
      throw Error("edge relation is not symmetric");
  }
  BipartiteReduction r;
  if (e.empty()) {
    r.trivial = true;
    return r;
  }
  r.from_k2 = {e[0][0], e[0][1]};
  auto colour = two_colouring(g);
  if (colour.empty()) {
    r.bipartite = false;
    return r;
  }
  r.to_k2 = std::vector<Element>(colour.begin(), colour.end());
  return r;
}

int CycleOrientation::forward_count() const {
  return static_cast<int>(std::count(forward.begin(), forward.end(), true));
}

CycleOrientation CycleOrientation::parse(std::string_view bits) {
  CycleOrientation c;
  for (char ch : bits) {
    if (ch != '0' && ch != '1')
      throw Error("cycle orientation must be a string of 0/1 bits");
    c.forward.push_back(ch == '1');
  }
  return c;
}

std::string CycleOrientation::to_string() const {
  std::string s;
  for (bool f : forward)
    s += f ? '1' : '0';
  return s;
}

Structure cycle_template(const CycleOrientation &c) {
  const int n = c.length();
  if (n < 3)
    throw Error("an oriented cycle needs at least 3 vertices");
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i)
    names.push_back("d" + std::to_string(i));
  StructureBuilder b(Signature{{"E", 2}}, std::move(names));
  for (int i = 0; i < n; ++i) {
    const Element u = i, v = (i + 1) % n;
    if (c.forward[i])
      b.add(0, {u, v});
    else
      b.add(0, {v, u});
  }
  return std::move(b).build();
}

bool is_unbalanced(const CycleOrientation &c) {
  if (c.length() < 3)
    throw Error("an oriented cycle needs at least 3 vertices");
  return 2 * c.forward_count() != c.length();
}

std::optional<std::vector<Element>>
find_median_order(const CycleOrientation &c) {
  if (c.length() > 10)
    throw CapExceeded("median-order search is limited to 10 vertices");
  const Structure d = cycle_template(c);
  std::vector<Element> order(d.size());
  std::iota(order.begin(), order.end(), 0);
  do {
    if (is_polymorphism(median_op(order), d))
      return order;
  } while (std::next_permutation(order.begin(), order.end()));
  return std::nullopt;
}

Operation dual_discriminator(int universe) {
  return Operation::from_function(3, universe, [](std::span<const Element> a) {
    return a[0] == a[1] ? a[0] : a[2];
  });
}

Operation median_op(const std::vector<Element> &order) {
  const int n = static_cast<int>(order.size());
  std::vector<int> rank(n, -1);
  for (int i = 0; i < n; ++i) {
    if (order[i] < 0 || order[i] >= n || rank[order[i]] >= 0)
      throw Error("median order must be a permutation of the universe");
    rank[order[i]] = i;
  }
  return Operation::from_function(3, n, [&](std::span<const Element> a) {
    Element v[3] = {a[0], a[1], a[2]};
    std::sort(v, v + 3, [&](Element x, Element y) { return rank[x] < rank[y]; });
    return v[1];
  });
}

bool is_slice_semilattice(const Operation &t) {
  if (t.arity() != 3)
    throw Error("slice-semilattice check needs a ternary operation");
  const int n = t.universe();
  for (Element b = 0; b < n; ++b) {
    for (Element x = 0; x < n; ++x) {
      if (t(x, x, b) != x)
        return false;
      for (Element y = 0; y < n; ++y) {
        if (t(x, y, b) != t(y, x, b))
          return false;
        for (Element z = 0; z < n; ++z)
          if (t(t(x, y, b), z, b) != t(x, t(y, z, b), b))
            return false;
      }
    }
  }
  return true;
}

Structure parity_template() {
  std::vector<Element> even;
  for (Element a = 0; a < 2; ++a)
    for (Element b = 0; b < 2; ++b)
      for (Element c = 0; c < 2; ++c)
        if ((a + b + c) % 2 == 0)
          even.insert(even.end(), {a, b, c});
  return Structure(Signature{{"R", 3}, {"C0", 1}, {"C1", 1}}, 2,
                   {Relation(3, std::move(even)), Relation(1, {0}),
                    Relation(1, {1})});
}

Structure one_element_template(const Signature &sig) {
  std::vector<Relation> rels;
  for (const auto &s : sig)
    rels.emplace_back(s.arity, std::vector<Element>(s.arity, 0));
  return Structure(sig, 1, std::move(rels));
}

} // namespace pac
