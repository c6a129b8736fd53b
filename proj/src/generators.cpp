#include "pac/generators.hpp"

#include <random>

#include "pac/point_algebra.hpp"

namespace pac {

namespace {

void require(bool ok, const char *msg) {
  if (!ok)
    throw Error(msg);
}

} // namespace

Structure random_graph(int vertices, double p, std::uint64_t seed) {
  require(vertices >= 0, "vertex count must be non-negative");
  require(p >= 0.0 && p <= 1.0, "edge probability must lie in [0, 1]");
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  StructureBuilder b(Signature{{"E", 2}}, vertices);
  for (Element u = 0; u < vertices; ++u)
    for (Element v = u + 1; v < vertices; ++v)
      if (coin(rng)) {
        b.add(0, {u, v});
        b.add(0, {v, u});
      }
  return std::move(b).build();
}

Cnf2 random_cnf2(int variables, int clauses, std::uint64_t seed) {
  require(variables >= 0 && clauses >= 0, "sizes must be non-negative");
  require(clauses == 0 || variables >= 2,
          "clauses over distinct variables need at least 2 variables");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> var(0, std::max(0, variables - 1));
  std::bernoulli_distribution sign(0.5);
  Cnf2 cnf{variables, {}};
  for (int i = 0; i < clauses; ++i) {
    int x = var(rng), y = var(rng);
    while (y == x)
      y = var(rng);
    cnf.clauses.push_back({{x, sign(rng)}, {y, sign(rng)}});
  }
  return cnf;
}

Structure random_point_algebra(const PointAlgebraShape &shape,
                               std::uint64_t seed) {
  const int n = shape.variables;
  require(n >= 0 && shape.leq >= 0 && shape.neq >= 0,
          "sizes must be non-negative");
  require(n > 0 || shape.leq + shape.neq == 0,
          "constraints need at least one variable");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Element> var(0, std::max(0, n - 1));
  // Hidden values with ties, so planted leq may also close cycles.
  std::uniform_int_distribution<int> val(0, std::max(1, n / 2));
  std::vector<int> hidden(n);
  for (auto &h : hidden)
    h = val(rng);
  StructureBuilder b(point_algebra_signature(), n);
  for (int i = 0; i < shape.leq; ++i) {
    Element x = var(rng), y = var(rng);
    if (shape.planted && hidden[x] > hidden[y])
      std::swap(x, y);
    b.add(0, {x, y});
  }
  for (int i = 0; i < shape.neq; ++i) {
    Element x = var(rng), y = var(rng);
    if (shape.planted) {
      int tries = 0;
      while (hidden[x] == hidden[y] && ++tries < 64) {
        x = var(rng);
        y = var(rng);
      }
      if (hidden[x] == hidden[y])
        continue;
    }
    b.add(1, {x, y});
  }
  return std::move(b).build();
}

SetConstraintInstance random_set_constraints(int variables, int sub, int dis,
                                             int neq, std::uint64_t seed) {
  require(variables >= 0 && sub >= 0 && dis >= 0 && neq >= 0,
          "sizes must be non-negative");
  require(variables > 0 || sub + dis + neq == 0,
          "constraints need at least one variable");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> var(0, std::max(0, variables - 1));
  auto inst = SetConstraintInstance::with_variables(variables);
  auto draw = [&](int count, auto &list) {
    for (int i = 0; i < count; ++i)
      list.emplace_back(var(rng), var(rng));
  };
  draw(sub, inst.sub);
  draw(dis, inst.dis);
  draw(neq, inst.neq);
  return inst;
}

} // namespace pac
