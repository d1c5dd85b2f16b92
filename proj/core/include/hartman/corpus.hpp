#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hartman/distance_filter.hpp"
#include "hartman/hartman_function.hpp"
#include "hartman/step_function.hpp"

namespace hartman {

/// Reference inputs shared by `verify`, the tests and the benchmarks.
struct NamedStep {
  std::string name;
  StepFunction f;
};

struct NamedSubgroup {
  std::string name;
  SubgroupH H;
};

struct NamedSequence {
  std::string name;
  HartmanFunction phi;
};

inline constexpr std::uint64_t kCorpusSeed = 20240601;

GroupShape circle_shape();       ///< 𝕋
GroupShape plane_shape();        ///< 𝕋²
GroupShape circle_mod2_shape();  ///< 𝕋 × ℤ/2

/// Rational step functions on 𝕋, 𝕋² and 𝕋 × ℤ/2: arcs, periodic sets, signed and
/// complex values, constants, zero, and seeded random rasters.
std::vector<NamedStep> step_corpus(std::uint64_t seed = kCorpusSeed);

/// Every supported H shape that fits the group: trivial, finite rational torsion,
/// subgroups of F, mixed torsion, coordinate subtori, and subtori times torsion.
std::vector<NamedSubgroup> supported_subgroups(const GroupShape& shape);

/// Sequences realized by rational step functions over exact irrational embeddings.
std::vector<NamedSequence> step_realized_corpus();

/// step_realized_corpus() plus trigonometric realizations: a cos² product, (−1)^n
/// and a pure character.
std::vector<NamedSequence> realized_corpus();

}  // namespace hartman
