#include "hartman/corpus.hpp"

#include <random>
#include <utility>

namespace hartman {

namespace {

using Arcs = std::vector<std::pair<Rational, Rational>>;

Rational q(std::int64_t p, std::int64_t d) { return Rational(p) / d; }

StepFunction box(const GroupShape& s, Arcs arcs, std::vector<std::int64_t> fiber, ComplexQ v) {
  return StepFunction::box(s, arcs, std::move(fiber), v);
}

// Values in {−2, …, 2}/3 on the cells of a uniform grid; engine output is reduced
// directly so the corpus does not depend on the standard library's distributions.
StepFunction random_raster(const GroupShape& s, int cells, std::mt19937_64& rng) {
  Raster<Rational> r;
  r.shape = s;
  for (int j = 0; j < s.torus_rank; ++j) {
    std::vector<Rational> cut;
    for (int i = 0; i <= cells; ++i) cut.push_back(q(i, cells));
    r.cuts.push_back(std::move(cut));
  }
  std::size_t n = r.torus_cells() * static_cast<std::size_t>(s.finite_size());
  for (std::size_t i = 0; i < n; ++i) r.values.emplace_back(q(static_cast<std::int64_t>(rng() % 5) - 2, 3));
  return from_raster(r);
}

ExactPoint point(std::vector<Rational> torus, std::vector<std::int64_t> finite = {}) {
  return ExactPoint{std::move(torus), std::move(finite)};
}

Character golden() { return Character::quadratic(-1, 1, 5, 2); }
Character silver() { return Character::quadratic(-1, 1, 2, 1); }
Character root3() { return Character::quadratic(-1, 1, 3, 1); }

}  // namespace

GroupShape circle_shape() { return GroupShape{1, {}}; }
GroupShape plane_shape() { return GroupShape{2, {}}; }
GroupShape circle_mod2_shape() { return GroupShape{1, {2}}; }

std::vector<NamedStep> step_corpus(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<NamedStep> out;
  const auto T = circle_shape();
  const auto T2 = plane_shape();
  const auto TZ = circle_mod2_shape();
  const ComplexQ one(1), i(0, 1);

  out.push_back({"T: arc [0,1/3)", box(T, {{0, q(1, 3)}}, {}, one)});
  out.push_back({"T: arc [1/4,3/4)", box(T, {{q(1, 4), q(3, 4)}}, {}, one)});
  out.push_back({"T: period 1/2", box(T, {{0, q(1, 4)}}, {}, one) + box(T, {{q(1, 2), q(3, 4)}}, {}, one)});
  out.push_back({"T: period 1/3", box(T, {{0, q(1, 6)}}, {}, one) + box(T, {{q(1, 3), q(1, 2)}}, {}, one) +
                                       box(T, {{q(2, 3), q(5, 6)}}, {}, one)});
  out.push_back({"T: constant 1", StepFunction::constant(T, one)});
  out.push_back({"T: signed halves", box(T, {{0, q(1, 2)}}, {}, one) + box(T, {{q(1, 2), 1}}, {}, ComplexQ(-1))});
  out.push_back({"T: value i on [1/5,2/7)", box(T, {{q(1, 5), q(2, 7)}}, {}, i)});
  out.push_back({"T: wrapping arc [5/6,1/6)", box(T, {{q(5, 6), q(1, 6)}}, {}, ComplexQ(q(2, 3)))});
  out.push_back({"T: random raster", random_raster(T, 8, rng)});
  out.push_back({"T: zero", StepFunction(T)});

  out.push_back({"T2: x-only box", box(T2, {{0, q(1, 2)}, {0, 0}}, {}, one)});
  out.push_back({"T2: checkerboard", box(T2, {{0, q(1, 2)}, {0, q(1, 2)}}, {}, one) +
                                         box(T2, {{q(1, 2), 1}, {q(1, 2), 1}}, {}, one)});
  out.push_back({"T2: rectangle", box(T2, {{q(1, 3), q(2, 3)}, {0, q(1, 4)}}, {}, ComplexQ(q(3, 2)))});
  out.push_back({"T2: random raster", random_raster(T2, 4, rng)});
  out.push_back({"T2: y period 1/3", box(T2, {{0, 0}, {0, q(1, 6)}}, {}, one) +
                                         box(T2, {{0, 0}, {q(1, 3), q(1, 2)}}, {}, one) +
                                         box(T2, {{0, 0}, {q(2, 3), q(5, 6)}}, {}, one)});
  out.push_back({"T2: complex box", box(T2, {{0, q(1, 2)}, {0, q(1, 3)}}, {}, ComplexQ(1, -1))});

  out.push_back({"TxZ2: fiber only", box(TZ, {{0, 0}}, {0}, one)});
  out.push_back({"TxZ2: mixed torsion", box(TZ, {{0, q(1, 2)}}, {0}, one) + box(TZ, {{q(1, 2), 1}}, {1}, one)});
  out.push_back({"TxZ2: arc on both fibers", box(TZ, {{0, q(1, 3)}}, {}, one)});
  out.push_back({"TxZ2: random raster", random_raster(TZ, 6, rng)});
  out.push_back({"TxZ2: constant -1/2", StepFunction::constant(TZ, ComplexQ(q(-1, 2)))});
  out.push_back({"TxZ2: value i on [1/4,1/2)x{1}", box(TZ, {{q(1, 4), q(1, 2)}}, {1}, i)});
  return out;
}

std::vector<NamedSubgroup> supported_subgroups(const GroupShape& s) {
  std::vector<NamedSubgroup> out;
  out.push_back({"trivial", SubgroupH::trivial(s)});
  if (s == circle_shape()) {
    out.push_back({"{0,1/2}", SubgroupH::generated(s, {}, {point({q(1, 2)})})});
    out.push_back({"<1/3>", SubgroupH::generated(s, {}, {point({q(1, 3)})})});
    out.push_back({"T", SubgroupH::generated(s, {0}, {})});
  } else if (s == plane_shape()) {
    out.push_back({"<(1/2,1/2)>", SubgroupH::generated(s, {}, {point({q(1, 2), q(1, 2)})})});
    out.push_back({"<(1/2,0),(0,1/3)>", SubgroupH::generated(s, {}, {point({q(1, 2), 0}), point({0, q(1, 3)})})});
    out.push_back({"T x 0", SubgroupH::generated(s, {0}, {})});
    out.push_back({"0 x T", SubgroupH::generated(s, {1}, {})});
    out.push_back({"T x <1/3>", SubgroupH::generated(s, {0}, {point({0, q(1, 3)})})});
    out.push_back({"T2", SubgroupH::generated(s, {0, 1}, {})});
  } else if (s == circle_mod2_shape()) {
    out.push_back({"0 x Z/2", SubgroupH::generated(s, {}, {point({0}, {1})})});
    out.push_back({"<(1/2;1)>", SubgroupH::generated(s, {}, {point({q(1, 2)}, {1})})});
    out.push_back({"<(1/2;0)>", SubgroupH::generated(s, {}, {point({q(1, 2)}, {0})})});
    out.push_back({"T x 0", SubgroupH::generated(s, {0}, {})});
    out.push_back({"T x Z/2", SubgroupH::generated(s, {0}, {point({0}, {1})})});
  }
  return out;
}

std::vector<NamedSequence> step_realized_corpus() {
  std::vector<NamedSequence> out;
  out.push_back({"cut golden 1/3", cut_sequence(golden(), q(1, 3))});
  out.push_back({"cut sqrt2-1 1/3", cut_sequence(silver(), q(1, 3))});
  {
    const auto c = Compactification::from_embedding({silver()}, {}, {});
    const auto f = box(c.shape(), {{0, q(1, 4)}}, {}, ComplexQ(1)) + box(c.shape(), {{q(1, 2), q(3, 4)}}, {}, ComplexQ(1));
    out.push_back({"sqrt2-1 on a period-1/2 set", HartmanFunction::realized(c, f)});
  }
  {
    const auto c = Compactification::from_embedding({golden()}, {2}, {1});
    const auto f = box(c.shape(), {{0, q(1, 2)}}, {0}, ComplexQ(1)) +
                   box(c.shape(), {{q(1, 4), q(3, 4)}}, {1}, ComplexQ(q(1, 2)));
    out.push_back({"golden x Z/2 step", HartmanFunction::realized(c, f)});
  }
  {
    const auto c = Compactification::from_embedding({silver(), root3()}, {}, {});
    const auto f = box(c.shape(), {{0, q(1, 2)}, {0, q(1, 3)}}, {}, ComplexQ(1));
    out.push_back({"T2 box over (sqrt2-1, sqrt3-1)", HartmanFunction::realized(c, f)});
  }
  return out;
}

std::vector<NamedSequence> realized_corpus() {
  auto out = step_realized_corpus();
  out.push_back({"cos2 product n=2", cos2_product(2)});
  out.push_back({"alternating", alternating()});
  out.push_back({"character sqrt3-1", character_sequence(root3(), 0.5)});
  return out;
}

}  // namespace hartman
