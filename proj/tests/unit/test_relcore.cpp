#include "doctest.h"

#include <set>

#include "fixtures.hpp"
#include "pac/algebra.hpp"
#include "pac/constructions.hpp"
#include "pac/homomorphism.hpp"
#include "pac/pp_formula.hpp"
#include "pac/templates.hpp"

using namespace pac;
using namespace fixtures;

namespace {

std::set<std::vector<Element>> tuples(const Relation &r) {
  std::set<std::vector<Element>> out;
  for (std::size_t i = 0; i < r.size(); ++i)
    out.insert({r[i].begin(), r[i].end()});
  return out;
}

// Power-structure element of the given subset mask.
Element ps(Mask m) { return static_cast<Element>(m - 1); }

} // namespace

TEST_CASE("signature invariants") {
  Signature s;
  CHECK(s.add("E", 2) == 0);
  CHECK_THROWS_AS(s.add("E", 1), Error);
  CHECK_THROWS_AS(s.add("F", 0), Error);
  CHECK(s.find("E") == 0);
  CHECK_FALSE(s.find("F").has_value());
}

TEST_CASE("structure validation and deduplication") {
  StructureBuilder b(graph_sig(), 2);
  b.add(0, {0, 1}).add(0, {0, 1}).add(0, {1, 0});
  const Structure s = std::move(b).build();
  CHECK(s.relation(0).size() == 2);
  CHECK_THROWS_AS(Structure(graph_sig(), 2, {Relation(2, {0, 2})}), Error);
  CHECK_THROWS_AS(Structure(graph_sig(), 2, {Relation(1, {0})}), Error);
}

TEST_CASE("structure text format round trip") {
  const char *text = "# a path\n"
                     "universe a b c\n"
                     "relation E 2\n"
                     "a b   # first edge\n"
                     "b c\n"
                     "a b\n"
                     "relation U 1\n";
  const Structure s = parse_structure(text);
  CHECK(s.size() == 3);
  CHECK(s.relation("E").size() == 2);
  CHECK(s.relation("U").empty());
  CHECK(s.find_element("c") == 2);
  const Structure again = parse_structure(to_string(s));
  CHECK(again.names() == s.names());
  CHECK(again.relations() == s.relations());
}

TEST_CASE("structure parse errors carry line numbers") {
  auto message = [](const char *text) {
    try {
      parse_structure(text);
    } catch (const Error &e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  CHECK(message("universe a\nrelation E 2\na b\n").rfind("line 3:", 0) == 0);
  CHECK(message("universe a\nrelation E 2\na\n").rfind("line 3:", 0) == 0);
  CHECK(message("relation E 2\n").rfind("line 1:", 0) == 0);
  CHECK(message("universe a a\n").rfind("line 1:", 0) == 0);
  CHECK(message("universe a\nrelation E x\n").rfind("line 2:", 0) == 0);
  CHECK(message("universe a\nrelation E 1\nrelation E 1\n") != "no error");
  CHECK(message("") != "no error");
}

TEST_CASE("align pads missing symbols with empty relations") {
  const Structure a = parse_structure("universe x\nrelation C1 1\nx\n");
  const Structure aligned = align(a, parity_template().signature());
  CHECK(aligned.signature() == parity_template().signature());
  CHECK(aligned.relation("R").empty());
  CHECK(aligned.relation("C1").size() == 1);
  CHECK_THROWS_AS(align(parse_structure("universe x\nrelation Z 1\n"),
                        parity_template().signature()),
                  Error);
  CHECK_THROWS_AS(align(parse_structure("universe x\nrelation R 2\n"),
                        parity_template().signature()),
                  Error);
}

TEST_CASE("power structure examples") {
  SUBCASE("K2") {
    const auto p = power_structure(k2_template());
    CHECK(p.structure.size() == 3);
    CHECK(p.structure.names() ==
          std::vector<std::string>{"{0}", "{1}", "{0,1}"});
    CHECK(tuples(p.structure.relation(0)) ==
          std::set<std::vector<Element>>{
              {ps(0b01), ps(0b10)}, {ps(0b10), ps(0b01)}, {ps(0b11), ps(0b11)}});
  }
  SUBCASE("empty relation stays empty") {
    const Structure b(graph_sig(), 2, {Relation(2)});
    CHECK(power_structure(b).structure.relation(0).empty());
  }
  SUBCASE("order relation has six projections") {
    const Structure b(Signature{{"R", 2}}, 2, {Relation(2, {0, 0, 0, 1, 1, 1})});
    const auto rel = tuples(power_structure(b).structure.relation(0));
    CHECK(rel.size() == 6);
    CHECK(rel.count({ps(0b01), ps(0b11)}) == 1);
    CHECK(rel.count({ps(0b11), ps(0b11)}) == 1);
  }
  SUBCASE("cap") {
    SizeCaps caps;
    caps.power_universe = 3;
    CHECK_THROWS_AS(power_structure(cycle_graph(4), caps), CapExceeded);
  }
}

TEST_CASE("power structure matches subset enumeration") {
  // Oracle: project every nonempty subset of every relation directly.
  std::mt19937_64 rng(11);
  const Signature sig{{"R", 2}, {"T", 3}};
  for (int round = 0; round < 30; ++round) {
    const Structure b = random_structure(sig, 3, 5, rng);
    const auto p = power_structure(b);
    for (int r = 0; r < sig.size(); ++r) {
      const auto &rel = b.relation(r);
      const int k = sig[r].arity;
      std::set<std::vector<Element>> expect;
      for (std::uint64_t s = 1; s < (std::uint64_t{1} << rel.size()); ++s) {
        std::vector<Mask> proj(k, 0);
        for (std::size_t i = 0; i < rel.size(); ++i)
          if ((s >> i) & 1)
            for (int q = 0; q < k; ++q)
              proj[q] |= bit(rel[i][q]);
        std::vector<Element> t;
        for (Mask m : proj)
          t.push_back(ps(m));
        expect.insert(t);
      }
      CHECK(tuples(p.structure.relation(r)) == expect);
    }
  }
}

TEST_CASE("product and power") {
  const Structure k2 = k2_template();
  const Structure sq = product(k2, k2);
  CHECK(sq.size() == 4);
  // (a,b) is numbered 2a+b.
  CHECK(tuples(sq.relation(0)) ==
        std::set<std::vector<Element>>{{0, 3}, {1, 2}, {2, 1}, {3, 0}});
  CHECK(power(k2, 2).relations() == sq.relations());
  const Structure p1 = power(k2, 1);
  CHECK(p1.relations() == k2.relations());
  // Unit law: product with a one-element full structure.
  const Structure one = one_element_template(graph_sig());
  const Structure c5 = cycle_graph(5);
  CHECK(product(c5, one).relations() == c5.relations());
  CHECK_THROWS_AS(product(k2, parity_template()), Error);
  SizeCaps caps;
  caps.product_universe = 10;
  CHECK_THROWS_AS(power(k2, 4, caps), CapExceeded);
}

TEST_CASE("ind_peek_power examples") {
  const auto p = power_structure(k2_template());
  const auto i1 = ind_peek_power(p, 1);
  CHECK(i1.structure.size() == 2);
  CHECK(i1.structure.names() == std::vector<std::string>{"({0})", "({1})"});
  const auto i2 = ind_peek_power(p, 2);
  CHECK(i2.structure.size() == 8);
  for (Element b = 0; b < 2; ++b) {
    const std::vector<Element> diag{ps(bit(b)), ps(bit(b))};
    CHECK(std::find(i2.coords.begin(), i2.coords.end(), diag) != i2.coords.end());
  }
  // Induced: every tuple of the full power over kept elements survives.
  const Structure full = power(p.structure, 2);
  std::vector<Element> keep;
  for (const auto &c : i2.coords)
    keep.push_back(c[0] * p.structure.size() + c[1]);
  CHECK(induced_substructure(full, keep).relations() == i2.structure.relations());
  CHECK_THROWS_AS(ind_peek_power(p, 0), Error);
}

TEST_CASE("expand_with_unary") {
  const Structure k2 = k2_template();
  CHECK(expand_with_unary(k2, {0}).relation("U").size() == 1);
  CHECK(expand_with_unary(k2, {}).relation("U").empty());
  CHECK(expand_with_unary(k2, {0, 1}).relation("U").size() == 2);
  CHECK_THROWS_AS(expand_with_unary(k2, {2}), Error);
  CHECK_THROWS_AS(expand_with_unary(expand_with_unary(k2, {0}), {1}), Error);
}

TEST_CASE("find_homomorphism examples") {
  const Structure k2 = k2_template();
  CHECK(find_homomorphism(triangle(), k2).status == SearchStatus::none);
  const auto id = find_homomorphism(k2, k2);
  REQUIRE(id.found());
  CHECK(id.map == std::vector<Element>{0, 1});
  const auto c4 = find_homomorphism(cycle_graph(4), k2);
  REQUIRE(c4.found());
  CHECK(is_homomorphism(cycle_graph(4), k2, c4.map));
  HomSearchOptions tiny;
  tiny.node_budget = 3;
  CHECK(find_homomorphism(cycle_graph(9), triangle(), tiny).status ==
        SearchStatus::budget_exhausted);
}

TEST_CASE("find_homomorphism agrees with exhaustive enumeration") {
  std::mt19937_64 rng(5);
  const Signature sig{{"R", 2}, {"T", 3}, {"U", 1}};
  int found = 0, none = 0;
  for (int round = 0; round < 400; ++round) {
    const Structure b = random_structure(sig, 1 + round % 4, 2 + round % 7, rng);
    const Structure a = random_structure(sig, 1 + round % 6, 1 + round % 5, rng);
    const auto fast = find_homomorphism(a, b);
    const auto slow = find_homomorphism_exhaustive(a, b);
    REQUIRE(fast.status != SearchStatus::budget_exhausted);
    CHECK(fast.found() == slow.has_value());
    if (fast.found()) {
      CHECK(is_homomorphism(a, b, fast.map));
      CHECK(fast.map == *slow); // both lexicographically first
      ++found;
    } else {
      ++none;
    }
  }
  CHECK(found > 40);
  CHECK(none > 40);
}

TEST_CASE("singleton lift: a homomorphism to B gives one to P(B)") {
  std::mt19937_64 rng(17);
  const Signature sig{{"R", 2}, {"U", 1}};
  int checked = 0;
  for (int round = 0; round < 300; ++round) {
    const Structure b = random_structure(sig, 1 + round % 4, 3 + round % 5, rng);
    const Structure a = random_structure(sig, 1 + round % 5, 1 + round % 6, rng);
    const auto h = find_homomorphism(a, b);
    if (!h.found())
      continue;
    const auto p = power_structure(b);
    std::vector<Element> lifted;
    for (Element x : h.map)
      lifted.push_back(p.element(bit(x)));
    CHECK(is_homomorphism(a, p.structure, lifted));
    ++checked;
  }
  CHECK(checked > 50);
}

TEST_CASE("power lift: f: B' -> B induces U -> f(U) on power structures") {
  std::mt19937_64 rng(23);
  const Signature sig{{"R", 2}};
  int checked = 0;
  for (int round = 0; round < 300; ++round) {
    const Structure b = random_structure(sig, 2 + round % 3, 4 + round % 4, rng);
    const Structure b2 = random_structure(sig, 2 + round % 3, 2 + round % 3, rng);
    const auto f = find_homomorphism(b2, b);
    if (!f.found())
      continue;
    const auto p2 = power_structure(b2), p = power_structure(b);
    std::vector<Element> lifted(p2.structure.size());
    for (Element u = 0; u < p2.structure.size(); ++u) {
      Mask img = 0;
      for (Element x = 0; x < b2.size(); ++x)
        if (p2.subset(u) & bit(x))
          img |= bit(f.map[x]);
      lifted[u] = p.element(img);
      if (std::has_single_bit(p2.subset(u)))
        CHECK(std::has_single_bit(img));
    }
    CHECK(is_homomorphism(p2.structure, p.structure, lifted));
    ++checked;
  }
  CHECK(checked > 50);
}

TEST_CASE("coordinate duplication embeds Ind(P(B)^n) into Ind(P(B)^(n+1))") {
  std::mt19937_64 rng(29);
  const Signature sig{{"R", 2}};
  for (int round = 0; round < 12; ++round) {
    const Structure b = random_structure(sig, 1 + round % 3, 1 + round % 5, rng);
    const auto p = power_structure(b);
    for (int n = 1; n <= 2; ++n) {
      const auto small = ind_peek_power(p, n), big = ind_peek_power(p, n + 1);
      std::vector<Element> map;
      for (const auto &c : small.coords) {
        auto d = c;
        d.push_back(c.back());
        auto it = std::find(big.coords.begin(), big.coords.end(), d);
        REQUIRE(it != big.coords.end());
        map.push_back(static_cast<Element>(it - big.coords.begin()));
      }
      CHECK(is_homomorphism(small.structure, big.structure, map));
    }
  }
}

TEST_CASE("eval_pp examples") {
  const Structure sat = two_sat_template();
  PPFormula both{{"v1", "v2"},
                 pp::conj({pp::atom("R01", {"v1", "v2"}),
                           pp::atom("R01", {"v2", "v1"})})};
  // Both conjuncts forbid a different mixed pair, leaving the diagonal.
  CHECK(tuples(eval_pp(both, sat)) ==
        std::set<std::vector<Element>>{{0, 0}, {1, 1}});

  const Structure k2 = k2_template();
  PPFormula proj{{"v"}, pp::exists("w", pp::atom("E", {"v", "w"}))};
  CHECK(tuples(eval_pp(proj, k2)) == std::set<std::vector<Element>>{{0}, {1}});
  PPFormula atom{{"v1", "v2"}, pp::atom("E", {"v1", "v2"})};
  CHECK(eval_pp(atom, k2) == k2.relation(0));

  PPFormula bad{{"v"}, pp::atom("F", {"v", "v"})};
  CHECK_THROWS_AS(eval_pp(bad, k2), Error);
  PPFormula unbound{{"v"}, pp::atom("E", {"v", "z"})};
  CHECK_THROWS_AS(unbound.validate(), Error);
  PPFormula arity{{"v"}, pp::atom("E", {"v"})};
  CHECK_THROWS_AS(eval_pp(arity, k2), Error);
}

TEST_CASE("eval_pp handles repeated and unmentioned free variables") {
  const Structure k2 = k2_template();
  PPFormula diag{{"v", "v"}, pp::conj({})};
  CHECK(tuples(eval_pp(diag, k2)) ==
        std::set<std::vector<Element>>{{0, 0}, {1, 1}});
  PPFormula loose{{"v", "u"}, pp::exists("w", pp::atom("E", {"v", "w"}))};
  CHECK(eval_pp(loose, k2).size() == 4);
}

TEST_CASE("eval_pp agrees with assignment enumeration") {
  std::mt19937_64 rng(31);
  const Signature sig{{"R", 2}, {"T", 3}, {"U", 1}};
  // Random formulas of depth <= 4 built by hand-rolled recursion.
  std::function<PPNode(int, std::vector<std::string> &, int &)> gen =
      [&](int depth, std::vector<std::string> &scope, int &fresh) -> PPNode {
    std::uniform_int_distribution<int> kind(0, 2);
    const int k = depth <= 1 ? 0 : kind(rng);
    if (k == 0) {
      std::uniform_int_distribution<int> s(0, sig.size() - 1);
      std::uniform_int_distribution<std::size_t> v(0, scope.size() - 1);
      const auto &sym = sig[s(rng)];
      std::vector<std::string> args;
      for (int i = 0; i < sym.arity; ++i)
        args.push_back(scope[v(rng)]);
      return pp::atom(sym.name, args);
    }
    if (k == 1)
      return pp::conj({gen(depth - 1, scope, fresh), gen(depth - 1, scope, fresh)});
    std::string w = "w" + std::to_string(fresh++);
    scope.push_back(w);
    PPNode c = gen(depth - 1, scope, fresh);
    scope.pop_back();
    return pp::exists(w, c);
  };
  for (int round = 0; round < 300; ++round) {
    const Structure b = random_structure(sig, 1 + round % 4, 3 + round % 8, rng);
    PPFormula phi;
    phi.free = round % 3 == 0 ? std::vector<std::string>{"a"}
                              : std::vector<std::string>{"a", "b"};
    std::vector<std::string> scope = phi.free;
    int fresh = 0;
    phi.body = gen(1 + round % 4, scope, fresh);
    REQUIRE(phi.depth() <= 4);
    CHECK(eval_pp(phi, b) == eval_pp_brute_force(phi, b));
  }
}

TEST_CASE("automorphism orbits") {
  const auto k2 = automorphism_orbits(k2_template());
  CHECK(k2.orbits.size() == 1);
  CHECK(k2.representatives() == std::vector<Element>{0});
  const auto sat = automorphism_orbits(two_sat_template());
  CHECK(sat.orbits.size() == 2);
  CHECK(automorphism_orbits(one_element_template(graph_sig())).orbits.size() == 1);
  // Path a-b-c: ends swap, middle is fixed.
  const auto p3 = automorphism_orbits(path_graph(3));
  CHECK(p3.orbit_of[0] == p3.orbit_of[2]);
  CHECK(p3.orbit_of[0] != p3.orbit_of[1]);
  CHECK(automorphism_orbits(cycle_graph(6)).orbits.size() == 1);
  CHECK_THROWS_AS(automorphism_orbits(cycle_graph(9)), CapExceeded);
  CHECK(peek_representatives(cycle_graph(9)).size() == 9);
}

TEST_CASE("automorphism orbits agree with brute-force permutation search") {
  std::mt19937_64 rng(37);
  const Signature sig{{"R", 2}, {"U", 1}};
  for (int round = 0; round < 60; ++round) {
    const Structure b = random_structure(sig, 1 + round % 5, round % 9, rng);
    std::vector<Element> perm(b.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::set<Element>> expect(b.size());
    do {
      bool aut = true;
      for (int r = 0; r < sig.size() && aut; ++r) {
        const auto &rel = b.relation(r);
        for (std::size_t i = 0; i < rel.size() && aut; ++i) {
          std::vector<Element> img;
          for (Element e : rel[i])
            img.push_back(perm[e]);
          aut = rel.contains(img);
        }
      }
      if (aut)
        for (Element e = 0; e < b.size(); ++e)
          expect[e].insert(perm[e]);
    } while (std::next_permutation(perm.begin(), perm.end()));
    const auto orb = automorphism_orbits(b);
    for (Element e = 0; e < b.size(); ++e) {
      const auto &o = orb.orbits[orb.orbit_of[e]];
      CHECK(std::set<Element>(o.begin(), o.end()) == expect[e]);
    }
  }
}

TEST_CASE("is_polymorphism examples") {
  CHECK(is_polymorphism(dual_discriminator(2), two_sat_template()));
  CHECK(is_polymorphism(dual_discriminator(2), k2_template()));
  const Operation id = Operation::from_function(
      1, 3, [](std::span<const Element> a) { return a[0]; });
  CHECK(is_polymorphism(id, triangle()));
  // Even parity is affine; the dual discriminator breaks it.
  CHECK_FALSE(is_polymorphism(dual_discriminator(2), parity_template()));
  CHECK_THROWS_AS(is_polymorphism(dual_discriminator(3), k2_template()), Error);
  CHECK_THROWS_AS(Operation(2, 2, {0, 1, 1}), Error);
}
