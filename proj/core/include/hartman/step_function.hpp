#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "hartman/group_shape.hpp"
#include "hartman/rational.hpp"

namespace hartman {

template <class S>
struct StepScalar;

template <>
struct StepScalar<Rational> {
  using value_type = ComplexQ;
  using point_type = ExactPoint;
  static constexpr bool exact = true;
};

template <>
struct StepScalar<double> {
  using value_type = std::complex<double>;
  using point_type = Point;
  static constexpr bool exact = false;
};

/// Half-open arc [lo, hi) with 0 <= lo < hi <= 1.
template <class S>
struct Arc {
  S lo;
  S hi;
  friend bool operator==(const Arc&, const Arc&) = default;
};

template <class S>
struct StepPiece {
  std::vector<Arc<S>> box;          ///< one arc per torus coordinate
  std::vector<std::int64_t> fiber;  ///< flat indices into F, sorted and unique
  typename StepScalar<S>::value_type value;
};

/// A finitely piecewise-constant function on 𝕋^k × F; zero off its pieces.
///
/// S = Rational is the exact class; S = double holds translates by irrational
/// points and everything derived from them is approximate.
template <class S>
class BasicStepFunction {
 public:
  using scalar_type = S;
  using value_type = typename StepScalar<S>::value_type;
  using point_type = typename StepScalar<S>::point_type;
  using piece_type = StepPiece<S>;

  BasicStepFunction() = default;
  explicit BasicStepFunction(GroupShape shape);
  /// Validates ranges and pairwise disjointness; drops zero-valued pieces.
  BasicStepFunction(GroupShape shape, std::vector<piece_type> pieces);

  static BasicStepFunction constant(const GroupShape& shape, const value_type& value);
  /// value on the product of arcs [a_j, b_j) (a_j > b_j wraps through 0; a_j == b_j
  /// is the full circle) times the fiber (all of F when empty).
  static BasicStepFunction box(const GroupShape& shape, const std::vector<std::pair<S, S>>& arcs,
                               std::vector<std::int64_t> fiber, const value_type& value);

  const GroupShape& shape() const { return shape_; }
  const std::vector<piece_type>& pieces() const { return pieces_; }

  value_type at(const point_type& x) const;
  /// Floating evaluation at a point given by raw coordinates.
  std::complex<double> evaluate(const double* torus, const std::int64_t* finite) const;
  std::complex<double> evaluate(const Point& x) const { return evaluate(x.torus.data(), x.finite.data()); }

  double sup_abs() const;
  bool is_real() const;

 private:
  struct FastPiece {
    std::vector<double> lo, hi;
    std::vector<bool> fiber_mask;
    std::complex<double> value;
  };
  void build_cache();

  GroupShape shape_;
  std::vector<piece_type> pieces_;
  std::vector<FastPiece> fast_;
};

using StepFunction = BasicStepFunction<Rational>;
using ApproxStepFunction = BasicStepFunction<double>;

/// Values of a step function on the cells of a product grid.
template <class S>
struct Raster {
  using value_type = typename StepScalar<S>::value_type;

  GroupShape shape;
  std::vector<std::vector<S>> cuts;  ///< per coordinate, increasing from 0 to 1
  std::vector<value_type> values;    ///< torus cells mixed-radix (first coordinate slowest), then fiber

  std::size_t torus_cells() const;
  std::vector<std::size_t> cell_index(std::size_t torus_cell) const;
  S cell_length(std::size_t coordinate, std::size_t i) const { return cuts[coordinate][i + 1] - cuts[coordinate][i]; }
  /// Haar measure of one torus cell times one fiber element.
  S cell_measure(std::size_t torus_cell) const;
};

template <class S>
std::vector<std::vector<S>> own_cuts(const BasicStepFunction<S>& f);
template <class S>
std::vector<std::vector<S>> merge_cuts(const std::vector<std::vector<S>>& a, const std::vector<std::vector<S>>& b);
/// Throws std::invalid_argument when pieces overlap on a cell of positive measure.
template <class S>
Raster<S> rasterize(const BasicStepFunction<S>& f, const std::vector<std::vector<S>>& cuts);
template <class S>
BasicStepFunction<S> from_raster(const Raster<S>& r);

template <class S>
typename StepScalar<S>::value_type haar_integral(const BasicStepFunction<S>& f);

/// (τ_x f)(y) = f(y + x).
template <class S>
BasicStepFunction<S> translate(const BasicStepFunction<S>& f, const typename StepScalar<S>::point_type& x);
ApproxStepFunction translate_approx(const StepFunction& f, const Point& x);

template <class S>
BasicStepFunction<S> linear_combination(const BasicStepFunction<S>& f, const typename StepScalar<S>::value_type& a,
                                        const BasicStepFunction<S>& g, const typename StepScalar<S>::value_type& b);
template <class S>
BasicStepFunction<S> operator+(const BasicStepFunction<S>& f, const BasicStepFunction<S>& g);
template <class S>
BasicStepFunction<S> operator-(const BasicStepFunction<S>& f, const BasicStepFunction<S>& g);

/// ∫|f − g| dμ.
template <class S>
double l1_distance(const BasicStepFunction<S>& f, const BasicStepFunction<S>& g);
/// Exact ∫|f − g| when every difference value is real or purely imaginary.
std::optional<Rational> l1_distance_exact(const StepFunction& f, const StepFunction& g);
std::optional<Rational> l1_norm_exact(const StepFunction& f);

/// f = g almost everywhere.
template <class S>
bool equal_ae(const BasicStepFunction<S>& f, const BasicStepFunction<S>& g);

ApproxStepFunction approximate(const StepFunction& f);

/// Continuous piecewise-linear witnesses lower ≤ f ≤ upper (separately for real and
/// imaginary parts) with ∫(upper − lower) < eps: every arc indicator is replaced by a
/// ramped minorant and majorant of width δ = eps / (4·k·P·max|value|).
class Sandwich {
 public:
  double delta() const { return delta_; }
  /// ∫(Re upper − Re lower) + ∫(Im upper − Im lower), computed in closed form.
  double gap() const { return gap_; }
  std::complex<double> lower(const Point& x) const { return eval(x, false); }
  std::complex<double> upper(const Point& x) const { return eval(x, true); }

  friend Sandwich sandwich(const StepFunction& f, double eps);

 private:
  std::complex<double> eval(const Point& x, bool upper) const;

  ApproxStepFunction f_;
  double delta_ = 0.0;
  double gap_ = 0.0;
};

Sandwich sandwich(const StepFunction& f, double eps);

/// ∫ of the ramped majorant / minorant of one arc indicator.
double ramp_upper_integral(double length, double delta);
double ramp_lower_integral(double length, double delta);

}  // namespace hartman
