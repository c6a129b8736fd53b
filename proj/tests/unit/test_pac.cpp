#include "doctest.h"

#include "fixtures.hpp"
#include "pac/generators.hpp"
#include "pac/homomorphism.hpp"
#include "pac/meta.hpp"
#include "pac/pac.hpp"
#include "pac/point_algebra.hpp"
#include "pac/templates.hpp"

using namespace pac;
using namespace fixtures;

namespace {

PacOptions full_report(int workers) {
  PacOptions o;
  o.workers = workers;
  o.short_circuit = false;
  o.reject_fast = false;
  return o;
}

PacOptions with_workers(int workers) {
  PacOptions o;
  o.workers = workers;
  return o;
}

} // namespace

TEST_CASE("pac_decide examples") {
  const Structure k2 = k2_template();
  const auto tri = pac_decide(triangle(), k2, full_report(1));
  CHECK_FALSE(tri.accepted());
  CHECK(tri.rejecting_variable == 0);
  // K2 has one orbit, so one peek per variable.
  REQUIRE(tri.variables.size() == 3);
  CHECK(tri.variables[0].peeks.size() == 1);
  CHECK(tri.variables[0].peeks[0].outcome == PeekOutcome::fail);

  // Peeking every value also fails at v0 on both pins.
  const FinitePac all(k2, false);
  const auto both = all.decide(triangle(), full_report(1));
  REQUIRE(both.variables[0].peeks.size() == 2);
  CHECK(both.variables[0].peeks[0].outcome == PeekOutcome::fail);
  CHECK(both.variables[0].peeks[1].outcome == PeekOutcome::fail);

  CHECK(pac_decide(cycle_graph(4), k2).accepted());

  const Cnf2 unsat = parse_cnf2("1 2 0\n1 -2 0\n-1 2 0\n-1 -2 0\n");
  CHECK_FALSE(pac_decide(cnf2_to_instance(unsat), two_sat_template()).accepted());

  const Structure cyc = parse_structure("universe a1 a2 a3\n"
                                        "relation leq 2\na1 a2\na2 a3\na3 a1\n"
                                        "relation neq 2\na1 a3\n");
  const auto r = pac_decide(cyc, point_algebra_descriptor(), full_report(1));
  CHECK_FALSE(r.accepted());
  for (const auto &v : r.variables)
    CHECK_FALSE(v.passed()); // every variable fails by symmetry

  CHECK_THROWS_AS(pac_decide(triangle(), k2, with_workers(-1)), Error);
}

TEST_CASE("pacc_holds examples") {
  CHECK(pacc_holds(cycle_graph(6), k2_template()));
  CHECK_FALSE(pacc_holds(triangle(), k2_template()));
  const Structure empty(graph_sig(), 0, {Relation(2)});
  CHECK(pacc_holds(empty, k2_template()));
}

TEST_CASE("report rendering and flags") {
  const Structure k2 = k2_template();
  const Structure two_triangles = [] {
    StructureBuilder b(graph_sig(), 4);
    for (auto [u, v] : {std::pair{0, 1}, {1, 2}, {2, 0}})
      b.add(0, {u, v}).add(0, {v, u});
    return std::move(b).build();
  }();
  const FinitePac all(k2, false);
  const auto fast = all.decide(two_triangles, with_workers(1));
  CHECK(fast.to_text(two_triangles.names()) ==
        "decision reject variable 0\n"
        "peek 0 0 fail\npeek 0 1 fail\n"
        "peek 1 0 unexplored\npeek 1 1 unexplored\n"
        "peek 2 0 unexplored\npeek 2 1 unexplored\n"
        "peek 3 0 unexplored\npeek 3 1 unexplored\n");

  const auto c4 = all.decide(cycle_graph(4), with_workers(1));
  CHECK(c4.variables[0].peeks[0].outcome == PeekOutcome::pass);
  CHECK(c4.variables[0].peeks[1].outcome == PeekOutcome::skipped);
  const auto full = all.decide(cycle_graph(4), full_report(1));
  CHECK(full.variables[0].peeks[1].outcome == PeekOutcome::pass);

  PacOptions traced = full_report(1);
  traced.trace = true;
  const auto t = all.decide(triangle(), traced);
  CHECK_FALSE(t.variables[0].peeks[0].trace.empty());
}

TEST_CASE("reports do not depend on the worker count") {
  std::mt19937_64 rng(59);
  const Structure k2 = k2_template(), sat = two_sat_template();
  for (int round = 0; round < 60; ++round) {
    const Structure g = random_graph(12, 0.2, rng());
    const Structure cnf = cnf2_to_instance(random_cnf2(10, 12, rng()));
    const Structure pa = random_point_algebra({20, 25, 8, false}, rng());
    for (bool fast : {true, false}) {
      PacOptions base = fast ? with_workers(1) : full_report(1);
      const auto rg = pac_decide_serial(g, k2, base);
      const auto rc = pac_decide_serial(cnf, sat, base);
      const auto rp = pac_decide_serial(pa, point_algebra_descriptor(), base);
      for (int w : {1, 2, 8}) {
        PacOptions o = base;
        o.workers = w;
        CHECK(pac_decide(g, k2, o) == rg);
        CHECK(pac_decide(cnf, sat, o) == rc);
        CHECK(pac_decide(pa, point_algebra_descriptor(), o) == rp);
      }
    }
  }
}

TEST_CASE("soundness, PACC implies ACC, and orbit reduction") {
  std::mt19937_64 rng(61);
  const Signature sig{{"R", 2}, {"T", 3}};
  int rejects = 0;
  for (int round = 0; round < 400; ++round) {
    const Structure b = random_structure(sig, 1 + round % 4, 3 + round % 6, rng);
    const Structure a = random_structure(sig, 1 + round % 6, 2 + round % 8, rng);
    const auto r = pac_decide(a, b, with_workers(1));
    if (!r.accepted()) {
      ++rejects;
      CHECK_FALSE(find_homomorphism(a, b).found());
    } else {
      CHECK(acc_holds(a, b));
    }
    if (find_homomorphism(a, b).found())
      CHECK(r.accepted());
    const FinitePac every(b, false);
    CHECK(every.decide(a, with_workers(1)).accepted() == r.accepted());
  }
  CHECK(rejects > 50);
}

TEST_CASE("PAC decides K2, 2-SAT and unbalanced cycles on small instances") {
  SUBCASE("K2 and 2-SAT, all instances with <= 3 variables") {
    for (const Structure &b : {k2_template(), two_sat_template()}) {
      const FinitePac pac(b);
      std::uint64_t n = for_each_instance(b.signature(), {3, 4}, [&](const Structure &a) {
        CHECK(pac.decide(a, with_workers(1)).accepted() ==
              find_homomorphism(a, b).found());
      });
      CHECK(n >= 50);
    }
  }
  SUBCASE("unbalanced orientations up to length 5") {
    int cycles = 0;
    for (int n = 3; n <= 5; ++n)
      for (int bits = 0; bits < (1 << n); ++bits) {
        CycleOrientation c;
        for (int i = 0; i < n; ++i)
          c.forward.push_back((bits >> i) & 1);
        if (!is_unbalanced(c))
          continue;
        ++cycles;
        const Structure d = cycle_template(c);
        const FinitePac pac(d);
        for (int v = 1; v <= 4; ++v)
          for_each_instance(d.signature(), {v, v <= 3 ? 6 : 5},
                            [&](const Structure &a) {
                              CHECK(pac.decide(a, with_workers(1)).accepted() ==
                                    find_homomorphism(a, d).found());
                            });
      }
    CHECK(cycles == 8 + 10 + 32); // six balanced 4-cycles excluded
  }
  SUBCASE("randomised larger instances") {
    std::mt19937_64 rng(67);
    const Structure k2 = k2_template();
    const Structure d = cycle_template(CycleOrientation::parse("11010"));
    for (int round = 0; round < 300; ++round) {
      const Structure g = random_graph(9, 0.25, rng());
      CHECK(pac_decide(g, k2, with_workers(1)).accepted() == is_bipartite(g));
      const Structure a = random_structure(graph_sig(), 7, 6 + round % 6, rng);
      CHECK(pac_decide(a, d, with_workers(1)).accepted() ==
            find_homomorphism(a, d).found());
    }
  }
}
