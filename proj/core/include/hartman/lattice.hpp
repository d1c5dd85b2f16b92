#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "hartman/rational.hpp"

namespace hartman::lattice {

using IntVector = std::vector<Integer>;
using IntMatrix = std::vector<IntVector>;  // row-major, every row the same length

/// Row Hermite normal form of the lattice spanned by the rows of an integer matrix.
///
/// Pivots are strictly increasing and positive; entries above each pivot are
/// reduced into [0, pivot). `transform` expresses each echelon row as an integer
/// combination of the input rows.
struct HermiteForm {
  IntMatrix rows;
  std::vector<std::size_t> pivots;
  IntMatrix transform;
  std::size_t columns = 0;
};

HermiteForm hermite_form(const IntMatrix& input);

/// Coefficients x with Σ x_i · hnf.rows[i] = target, or nullopt when target is not
/// in the lattice.
std::optional<IntVector> solve_echelon(const HermiteForm& hnf, IntVector target);

/// Same, expressed in the original input rows.
std::optional<IntVector> solve_input(const HermiteForm& hnf, const IntVector& target);

/// Nonzero invariant factors d_1 | d_2 | ... of an integer matrix.
IntVector smith_invariants(IntMatrix m);

/// U·A·V = diag(d) for a square nonsingular A, with U, V unimodular. The d_i are
/// positive but not ordered by divisibility. `right_inverse` is V⁻¹.
struct DiagonalForm {
  IntVector diagonal;
  IntMatrix right;
  IntMatrix right_inverse;
};

DiagonalForm diagonal_form(IntMatrix a);

}  // namespace hartman::lattice
