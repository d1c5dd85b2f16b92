#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hartman/group_shape.hpp"
#include "hartman/hartman_function.hpp"
#include "hartman/step_function.hpp"

namespace hartman {

/// Estimates of d_φ(g) = m(|φ − τ_g φ|) on a window of translations.
struct DistanceProfile {
  std::int64_t window_radius = 0;  ///< N of the averaging window
  std::int64_t g_window = 0;       ///< g ranges over [−G, G]
  std::vector<double> values;      ///< values[g + G]

  double at(std::int64_t g) const { return values.at(static_cast<std::size_t>(g + g_window)); }
};

/// (1/(2N+1)) Σ_{|n|≤N} |φ(n) − φ(n+g)|.
double distance_on_Z(const HartmanFunction& phi, std::int64_t g, std::int64_t N);
DistanceProfile distance_profile(const HartmanFunction& phi, std::int64_t G, std::int64_t N);

/// ‖f − τ_x f‖₁, exact when the values of f are real or purely imaginary.
std::optional<Rational> distance_on_X_exact(const StepFunction& f, const ExactPoint& x);
double distance_on_X(const StepFunction& f, const ExactPoint& x);
/// Floating version for irrational points; the result is approximate.
double distance_on_X(const StepFunction& f, const Point& x);

/// A closed subgroup 𝕋^C × H_fin of 𝕋^k × F: full circles on the coordinates C and a
/// finite group of rational translations (zero on C).
class SubgroupH {
 public:
  SubgroupH() = default;
  static SubgroupH trivial(const GroupShape& shape);
  /// The closure of the generators; throws std::invalid_argument if a generator
  /// has the wrong shape.
  static SubgroupH generated(const GroupShape& shape, std::vector<int> subtorus, const std::vector<ExactPoint>& generators);

  const GroupShape& shape() const { return shape_; }
  const std::vector<int>& subtorus() const { return subtorus_; }
  /// All elements of H_fin, sorted, starting with zero.
  const std::vector<ExactPoint>& finite_elements() const { return elements_; }
  std::vector<ExactPoint> generators() const;

  bool is_trivial() const { return subtorus_.empty() && elements_.size() == 1; }
  bool contains(const ExactPoint& x) const;
  std::string describe() const;

  friend bool operator==(const SubgroupH& a, const SubgroupH& b) {
    return a.shape_ == b.shape_ && a.subtorus_ == b.subtorus_ && a.elements_ == b.elements_;
  }

 private:
  ExactPoint project(ExactPoint x) const;  ///< zeroes the subtorus coordinates

  GroupShape shape_;
  std::vector<int> subtorus_;
  std::vector<ExactPoint> elements_;
};

/// {x : f = τ_x f a.e.}, computed exactly from the jump hyperplanes of f.
SubgroupH kernel_subgroup(const StepFunction& f);

struct FilterSet {
  double eps = 0.0;
  std::int64_t g_window = 0;
  std::int64_t window_radius = 0;
  std::vector<std::int64_t> members;  ///< increasing
};

FilterSet filter_set(const DistanceProfile& profile, double eps);
FilterSet filter_set(const HartmanFunction& phi, double eps, std::int64_t G, std::int64_t N);

enum class MembershipVerdict { consistent, inconsistent, inconclusive };
std::string to_string(MembershipVerdict v);

struct MembershipParams {
  std::int64_t g_window = 2000;
  std::int64_t N = 100000;
  double delta_min = 1e-4;
  double delta_ratio = 1.25;              ///< geometric spacing of the δ grid
  std::size_t min_members = 4;            ///< nonzero members for a δ to count as resolved
  double consistent_threshold = 0.25;     ///< E at the finest resolved δ
  double inconsistent_threshold = 0.5;    ///< E at every resolved δ
};

struct EnvelopePoint {
  double delta = 0.0;
  double envelope = 0.0;  ///< max |1 − χ(g)| over the filter set at level δ
  std::size_t members = 0;
};

struct MembershipReport {
  double chi_alpha = 0.0;
  MembershipParams params;
  std::complex<double> coefficient;  ///< m̂(φχ̄) on the same window
  std::vector<EnvelopePoint> envelope;
  std::optional<double> resolution_delta;  ///< finest resolved δ
  /// max over g of |1 − χ(g)|·|m̂(φχ̄)| − d̂(g) − 2|g|·sup|φ|/(2N+1); ≤ 0 means the
  /// finite-window inequality holds everywhere.
  double inequality_excess = 0.0;
  bool inequality_holds = false;
  MembershipVerdict verdict = MembershipVerdict::inconclusive;
  std::string detail;
};

MembershipReport sub_membership_test(const HartmanFunction& phi, const Character& chi, const MembershipParams& params);
/// Same, reusing a profile computed with params.g_window and params.N.
MembershipReport sub_membership_test(const HartmanFunction& phi, const DistanceProfile& profile,
                                     const Character& chi, const MembershipParams& params);

/// L with |d(x) − d(y)| ≤ L·‖x − y‖_∞ on the torus coordinates.
double distance_lipschitz_bound(const StepFunction& f);

/// A certified lower bound for d_{f} on the complement of the ball {‖x‖_∞ < r, z = 0}
/// from a grid of the given resolution per coordinate and the Lipschitz bound.
double distance_lower_bound_outside_ball(const StepFunction& f, double r, int grid);

/// Members of a filter set at level ε whose image d_{φ*}(ι(g)) exceeds ε + slack.
struct InclusionCheck {
  double eps = 0.0;
  double radius = 0.0;        ///< reverse check only
  double lower_bound = 0.0;   ///< reverse check only
  std::size_t members = 0;
  std::size_t violations = 0;
  double worst = 0.0;
  bool passed = false;
};

/// Every g ∈ F(φ, ε) on the window satisfies d_{φ*}(ι(g)) < ε + slack.
InclusionCheck check_filter_in_neighborhood(const HartmanFunction& phi, const DistanceProfile& profile, double eps,
                                            double slack);
/// For an aperiodic realization: with ε = (lower bound of d_{φ*} off the r-ball) − slack,
/// every g ∈ F(φ, ε) on the window has ι(g) in the r-ball.
InclusionCheck check_neighborhood_in_filter(const HartmanFunction& phi, const DistanceProfile& profile, double radius,
                                            double slack, int grid);

/// ‖x‖ for the neighbourhood basis of 0: sup of circle distances, infinite when the
/// finite part is nonzero.
double neighborhood_norm(const Point& x);

}  // namespace hartman
