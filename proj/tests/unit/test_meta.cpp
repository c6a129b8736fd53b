#include "doctest.h"

#include <numeric>
#include <set>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "fixtures.hpp"
#include "pac/ac.hpp"
#include "pac/homomorphism.hpp"
#include "pac/meta.hpp"
#include "pac/pac.hpp"
#include "pac/templates.hpp"

using namespace pac;
using namespace fixtures;

TEST_CASE("ac_solvability_check examples") {
  const Structure order(Signature{{"R", 2}}, 2, {Relation(2, {0, 0, 0, 1, 1, 1})});
  CHECK(ac_solvability_check(order));
  // Witness: {0} -> 0, {1} -> 1, {0,1} -> 0.
  const auto p = power_structure(order);
  CHECK(is_homomorphism(p.structure, order, std::vector<Element>{0, 1, 0}));
  CHECK_FALSE(ac_solvability_check(k2_template()));
  CHECK(ac_solvability_check(one_element_template(two_sat_template().signature())));
  HomSearchOptions tiny;
  tiny.node_budget = 1;
  CHECK_THROWS_AS(ac_solvability_check(order, {}, tiny), CapExceeded);
}

TEST_CASE("pac_characterization_check examples") {
  const auto k2 = pac_characterization_check(k2_template(), 3);
  CHECK(k2 == std::vector<BoundedHold>{{1, true}, {2, true}, {3, true}});
  const auto parity = pac_characterization_check(parity_template(), 3);
  REQUIRE_FALSE(parity.empty());
  CHECK_FALSE(parity.back().holds);
  CHECK(parity.back().n == 2); // minimal failing exponent, measured
  CHECK_THROWS_AS(pac_characterization_check(k2_template(), 0), Error);
}

TEST_CASE("bounded checks are antitone") {
  std::mt19937_64 rng(89);
  const Signature sig{{"R", 2}};
  for (int mask = 0; mask < 16; ++mask) {
    const auto h = pac_characterization_check(two_element_binary(mask), 3);
    for (std::size_t i = 1; i < h.size(); ++i)
      CHECK((!h[i].holds || h[i - 1].holds));
    for (std::size_t i = 0; i + 1 < h.size(); ++i)
      CHECK(h[i].holds); // only the last entry may fail
  }
  for (int round = 0; round < 10; ++round) {
    const Structure b = random_structure(sig, 3, 2 + round % 5, rng);
    const auto h = pac_characterization_check(b, 2);
    for (std::size_t i = 0; i + 1 < h.size(); ++i)
      CHECK(h[i].holds);
  }
}

TEST_CASE("for_each_instance visits one instance per renaming class") {
  // Oracle: canonicalise every labelled instance by brute force.
  const Signature sig{{"R", 2}, {"U", 1}};
  for (auto [v, t] : {std::pair{2, 3}, {3, 2}, {3, 3}}) {
    std::set<std::string> classes;
    for_each_labelled(sig, v, t, [&](const Structure &a) {
      std::vector<Element> perm(v);
      std::iota(perm.begin(), perm.end(), 0);
      std::string best;
      do {
        StructureBuilder b(sig, v);
        for (int r = 0; r < sig.size(); ++r) {
          const auto &rel = a.relation(r);
          for (std::size_t i = 0; i < rel.size(); ++i) {
            std::vector<Element> img;
            for (Element e : rel[i])
              img.push_back(perm[e]);
            b.add(r, std::span<const Element>(img));
          }
        }
        const std::string s = to_string(std::move(b).build());
        if (best.empty() || s < best)
          best = s;
      } while (std::next_permutation(perm.begin(), perm.end()));
      classes.insert(best);
    });
    std::uint64_t visited = 0;
    std::set<std::string> seen;
    for_each_instance(sig, {v, t}, [&](const Structure &a) {
      ++visited;
      seen.insert(to_string(a));
    });
    CHECK(visited == classes.size());
    CHECK(seen.size() == visited);
  }
}

TEST_CASE("empirical_pac_decides examples") {
  const auto sat = empirical_pac_decides(two_sat_template(), {3, 6});
  CHECK(sat.decides);
  CHECK(sat.soundness_violations == 0);
  CHECK(sat.agreements == sat.instances);
  CHECK(sat.instances > 100000);

  const auto one = empirical_pac_decides(one_element_template(parity_template().signature()));
  CHECK(one.decides);

  const auto parity = empirical_pac_decides(parity_template(), {5, 4});
  REQUIRE_FALSE(parity.decides);
  REQUIRE(parity.counterexample);
  const Structure &a = *parity.counterexample;
  CHECK(pacc_holds(a, parity_template()));
  CHECK_FALSE(find_homomorphism_exhaustive(a, parity_template()).has_value());
  CHECK(parity.soundness_violations == 0);
}

TEST_CASE("empirical results do not depend on the thread count") {
  const auto a = empirical_pac_decides(parity_template(), {4, 4});
  const auto b = empirical_decides(two_element_binary(0b0110), Procedure::ac, {3, 4});
#ifdef _OPENMP
  const int saved = omp_get_max_threads();
  omp_set_num_threads(3);
#endif
  const auto a3 = empirical_pac_decides(parity_template(), {4, 4});
  const auto b3 = empirical_decides(two_element_binary(0b0110), Procedure::ac, {3, 4});
#ifdef _OPENMP
  omp_set_num_threads(saved);
#endif
  CHECK(a.instances == a3.instances);
  CHECK(a.decides == a3.decides);
  CHECK(b.instances == b3.instances);
  CHECK(b.decides == b3.decides);
  REQUIRE(b.counterexample);
  REQUIRE(b3.counterexample);
  CHECK(to_string(*b.counterexample) == to_string(*b3.counterexample));
}

TEST_CASE("pp_expand") {
  const Structure sat = two_sat_template();
  PPFormula e{{"v1", "v2"},
              pp::conj({pp::atom("R01", {"v1", "v2"}), pp::atom("R01", {"v2", "v1"})})};
  const Structure x = pp_expand(sat, {{"D", e}});
  CHECK(x.signature().size() == 5);
  CHECK(x.relation("D").size() == 2);

  const Structure k2 = k2_template();
  PPFormula eq{{"v", "v"}, pp::conj({})};
  const Structure diag = pp_expand(k2, {{"T", eq}});
  CHECK(diag.relation("T") == Relation(2, {0, 0, 1, 1}));
  PPFormula proj{{"v"}, pp::exists("w", pp::atom("E", {"v", "w"}))};
  CHECK(pp_expand(k2, {{"P", proj}}).relation("P").size() == 2);

  CHECK_THROWS_AS(pp_expand(k2, {{"E", proj}}), Error);
  PPFormula wrong{{"v"}, pp::atom("E", {"v"})};
  CHECK_THROWS_AS(pp_expand(k2, {{"W", wrong}}), Error);
}

TEST_CASE("random pp formulas are well formed and bounded") {
  std::mt19937_64 rng(97);
  const Signature sig = two_sat_template().signature();
  for (int round = 0; round < 200; ++round) {
    const int depth = 1 + round % 3;
    const PPFormula phi = random_pp_formula(sig, 1 + round % 2, depth, rng);
    CHECK(phi.depth() <= depth);
    CHECK_NOTHROW(phi.validate(sig));
    CHECK(eval_pp(phi, two_sat_template()) ==
          eval_pp_brute_force(phi, two_sat_template()));
  }
  CHECK_THROWS_AS(random_pp_formula(Signature{}, 1, 2, rng), Error);
}

TEST_CASE("characterization report rendering") {
  const auto r = characterize("k2", k2_template(), 2, {3, 3});
  CHECK(r.to_line() == "template k2 ac n pac_n 1:y 2:y empirical y");
  CHECK(r.to_text().find("AC decides") != std::string::npos);
  const auto p = characterize("parity", parity_template(), 3, {5, 4});
  CHECK(p.to_line() == "template parity ac n pac_n 1:y 2:n empirical n");
  CHECK(p.to_text().find("counterexample") != std::string::npos);
}

TEST_CASE("AC characterization on a few two-element templates") {
  for (int mask : {0b0000, 0b0110, 0b1011, 0b1111, 0b1001}) {
    const Structure b = two_element_binary(mask);
    CHECK(ac_solvability_check(b) ==
          empirical_decides(b, Procedure::ac, {3, 4}).decides);
  }
}

TEST_CASE("templates with a slice-semilattice polymorphism are decided by PAC") {
  std::vector<Structure> shipped = {k2_template(), two_sat_template(), parity_template()};
  for (const char *bits : {"110", "1110", "11010", "10000"})
    shipped.push_back(cycle_template(CycleOrientation::parse(bits)));
  int with_polymorphism = 0;
  for (const Structure &b : shipped) {
    bool found = is_polymorphism(dual_discriminator(b.size()), b);
    std::vector<Element> order(b.size());
    std::iota(order.begin(), order.end(), 0);
    do {
      found = found || is_polymorphism(median_op(order), b);
    } while (!found && std::next_permutation(order.begin(), order.end()));
    if (!found)
      continue;
    ++with_polymorphism;
    CHECK(empirical_pac_decides(b).decides);
  }
  CHECK(with_polymorphism == 5); // parity and 10000 have none
}
