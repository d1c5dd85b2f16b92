#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hartman/character.hpp"
#include "hartman/group_shape.hpp"
#include "hartman/rational.hpp"

namespace hartman {

/// Thrown when rational dependence among floating characters cannot be settled
/// within the configured search budget.
class CannotCertify : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bounds for deciding rational (in)dependence of floating rotation numbers.
struct CertifyOptions {
  std::int64_t denominator_bound = 1'000'000;   ///< largest rational denominator considered
  std::int64_t coefficient_bound = 1000;        ///< max |a_j| in relations d·γ = Σ a_j ω_j + p/q,
                                                ///< shrunk to fit the false-match budget
  std::int64_t relation_denominator_bound = 4;  ///< largest d in such relations
  /// Expected number of coincidental matches tolerated per search; caps the
  /// effective denominator bound for loose tolerances.
  double false_match_budget = 1e-2;
  std::uint64_t search_budget = 20'000'000;  ///< max relation candidates per character
};

enum class Certification { exact, numerical };
enum class Verdict { yes, no, undecided };

std::string to_string(Certification c);
std::string to_string(Verdict v);

/// A finitely generated subgroup Γ ≤ ℤ̂ ≅ 𝕋, given by generators.
struct SpectralSubgroup {
  std::vector<Character> generators;

  /// Drops trivial generators and exact duplicates.
  SpectralSubgroup reduced() const;
};

/// Γ ≅ ℤ^k × ℤ/g with an explicit free basis β_1..β_k and torsion generator 1/g.
struct Presentation {
  struct Coordinates {
    std::vector<Integer> torus;  ///< α = Σ m_j β_j + t/g (mod 1)
    Integer torsion;             ///< t in [0, g)
  };

  std::vector<Character> free_generators;
  std::int64_t torsion_order = 1;
  std::vector<Coordinates> generator_coordinates;  ///< one per input generator
  Certification certification = Certification::exact;

  int rank() const { return static_cast<int>(free_generators.size()); }
};

Presentation present(std::span<const Character> generators, const CertifyOptions& options = {});

/// The group 𝕋^k × F together with ι(n) = (nβ_1, …, nβ_k; n·u_1, …, n·u_N).
class Compactification {
 public:
  Compactification();  ///< the trivial compactification

  /// The compactification C_Γ induced by Γ, in the normal form 𝕋^k × ℤ/g.
  static Compactification induced(const SpectralSubgroup& gamma, const CertifyOptions& options = {});

  /// An explicit compactification; throws std::invalid_argument if ι(ℤ) is not dense.
  static Compactification from_embedding(std::vector<Character> torus_generators,
                                         std::vector<std::int64_t> finite_orders,
                                         std::vector<std::int64_t> torsion_units,
                                         const CertifyOptions& options = {});

  const GroupShape& shape() const { return shape_; }
  int torus_rank() const { return shape_.torus_rank; }
  const std::vector<std::int64_t>& finite_part() const { return shape_.finite_orders; }
  const std::vector<Character>& torus_generators() const { return torus_; }
  const std::vector<std::int64_t>& torsion_units() const { return units_; }
  Certification certification() const { return certification_; }

  /// β_1..β_k followed by u_i / n_i; these generate Γ(ι, X).
  std::vector<Character> coordinate_characters() const;
  SpectralSubgroup subgroup() const { return {coordinate_characters()}; }

  Point embed(std::int64_t n) const;
  /// Exact image, available when the torus rank is zero.
  std::optional<ExactPoint> embed_exact(std::int64_t n) const;

  /// The character η ∘ ι of ℤ for the character η of X with the given frequency.
  Character character_of(const Frequency& freq) const;

  /// Invariant factors of F (n_1 | n_2 | …), dropping trivial factors.
  std::vector<std::int64_t> invariant_factors() const;

  std::string describe() const;

 private:
  GroupShape shape_;
  std::vector<Character> torus_;
  std::vector<std::int64_t> units_;
  Certification certification_ = Certification::exact;
};

struct CoverResult {
  Verdict verdict = Verdict::undecided;
  Certification certification = Certification::exact;
  std::string detail;
};

/// Whether (ι₁, X₁) is covered by (ι₂, X₂), i.e. Γ(c1) ⊆ Γ(c2).
CoverResult covers(const Compactification& c1, const Compactification& c2, const CertifyOptions& options = {});

struct Location {
  Verdict verdict = Verdict::undecided;
  Certification certification = Certification::exact;
  std::optional<Frequency> frequency;  ///< χ = η_frequency ∘ ι when found
};

/// Expresses χ as a character of X composed with ι, when χ ∈ Γ(ι, X).
Location locate(const Compactification& c, const Character& chi, const CertifyOptions& options = {});

}  // namespace hartman
