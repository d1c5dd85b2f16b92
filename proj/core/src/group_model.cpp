#include "hartman/group_model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "hartman/continued_fraction.hpp"
#include "hartman/lattice.hpp"

namespace hartman {

std::string to_string(Certification c) { return c == Certification::exact ? "exact" : "numerical"; }

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::yes: return "yes";
    case Verdict::no: return "no";
    case Verdict::undecided: return "undecided";
  }
  return "undecided";
}

SpectralSubgroup SpectralSubgroup::reduced() const {
  SpectralSubgroup out;
  for (const auto& g : generators) {
    if (g.is_trivial()) continue;
    if (std::find(out.generators.begin(), out.generators.end(), g) != out.generators.end()) continue;
    out.generators.push_back(g);
  }
  return out;
}

namespace {

// One element of a ℚ-basis of the span of {1} ∪ {characters}, excluding 1 itself.
struct BasisElement {
  bool surd = false;
  Integer radicand;
  long double value = 0.0L;
  double tol = 0.0;
};

struct QCoords {
  Rational rational{0};
  std::vector<Rational> irrational;
};

// Grows a ℚ-basis of irrationals and assigns rational coordinates to characters.
// Exact characters use the square-free radicands as basis; floating ones are
// matched against the current basis by a bounded relation search
//   d·γ − Σ a_j ω_j ≡ p/q (mod 1),  1 ≤ d ≤ D,  |a_j| ≤ B,  q ≤ Q_eff.
class QBasis {
 public:
  explicit QBasis(const CertifyOptions& options) : opts_(options) {}

  QCoords add(const Character& c) {
    const bool floating_basis = std::any_of(elems_.begin(), elems_.end(), [](const BasisElement& e) { return !e.surd; });
    if (c.is_exact() && (c.surds().empty() || !floating_basis)) return add_exact(c);
    // A surd meeting a floating basis can only be compared numerically.
    numerical_ = true;
    if (c.is_exact()) return add_floating(c.value(), 1e-16);
    return add_floating(c.value(), c.tolerance());
  }

  std::size_t size() const { return elems_.size(); }
  bool numerical() const { return numerical_; }
  const std::vector<BasisElement>& elements() const { return elems_; }

 private:
  QCoords add_exact(const Character& c) {
    QCoords out;
    out.rational = c.rational_part();
    out.irrational.assign(elems_.size(), Rational(0));
    for (const auto& s : c.surds()) {
      std::size_t idx = elems_.size();
      for (std::size_t j = 0; j < elems_.size(); ++j) {
        if (elems_[j].surd && elems_[j].radicand == s.radicand) idx = j;
      }
      if (idx == elems_.size()) {
        BasisElement e;
        e.surd = true;
        e.radicand = s.radicand;
        e.value = std::sqrt(static_cast<long double>(s.radicand.convert_to<double>()));
        e.value = e.value - std::floor(e.value);
        elems_.push_back(e);
        out.irrational.push_back(Rational(0));
      }
      out.irrational[idx] += s.coefficient;
    }
    // The surd basis is √c mod 1 for the floating search, but √c itself for
    // exact coordinates; the integer part of √c is absorbed into ℤ.
    return out;
  }

  QCoords add_floating(double gamma, double tol) {
    const std::size_t k = elems_.size();
    const std::int64_t dmax = k == 0 ? 1 : std::max<std::int64_t>(1, opts_.relation_denominator_bound);
    // Shrink the coefficient box until the expected number of coincidental integer
    // matches (q = 1) over the whole search stays within the false-match budget.
    double tol_sum = 0.0;
    for (const auto& e : elems_) tol_sum += e.tol;
    auto expected_false = [&](std::int64_t bb) {
      const long double n = static_cast<long double>(dmax) * std::pow(static_cast<long double>(2 * bb + 1), static_cast<long double>(k));
      return static_cast<double>(n) * 2.0 * (static_cast<double>(dmax) * tol + static_cast<double>(bb) * tol_sum);
    };
    std::int64_t b = opts_.coefficient_bound;
    while (k > 0 && b > 0 && expected_false(b) > opts_.false_match_budget) b = b * 3 / 4;
    if (k > 0 && b == 0) {
      throw CannotCertify("frequency tolerances too loose to test even unit relations against " + std::to_string(k) +
                          " basis elements");
    }
    long double tests = static_cast<long double>(dmax) * std::pow(static_cast<long double>(2 * b + 1), static_cast<long double>(k));
    if (tests > static_cast<long double>(opts_.search_budget)) {
      throw CannotCertify("relation search over " + std::to_string(k) + " irrational basis elements exceeds the search budget");
    }

    struct Hit {
      std::int64_t d;
      std::int64_t a_norm;
      std::int64_t q;
      double score;
      std::vector<std::int64_t> a;
      RationalMatch match;
      long double residue;
    };
    std::optional<Hit> best;
    std::vector<std::int64_t> a(k, -b);
    auto better = [](const Hit& x, const Hit& y) {
      if (x.d != y.d) return x.d < y.d;
      if (x.a_norm != y.a_norm) return x.a_norm < y.a_norm;
      if (x.q != y.q) return x.q < y.q;
      return x.score < y.score;
    };

    for (std::int64_t d = 1; d <= dmax; ++d) {
      std::fill(a.begin(), a.end(), -b);
      while (true) {
        long double residue = static_cast<long double>(d) * gamma;
        double tol_total = static_cast<double>(d) * tol;
        std::int64_t a_norm = 0;
        for (std::size_t j = 0; j < k; ++j) {
          residue -= static_cast<long double>(a[j]) * elems_[j].value;
          tol_total += static_cast<double>(std::llabs(a[j])) * elems_[j].tol;
          a_norm += std::llabs(a[j]);
        }
        tol_total += 4e-16 * static_cast<double>(d + a_norm + 1);
        double q_cap = std::sqrt(opts_.false_match_budget / (static_cast<double>(tests) * 2.0 * tol_total));
        std::int64_t q_eff = q_cap >= static_cast<double>(opts_.denominator_bound)
                                 ? opts_.denominator_bound
                                 : std::max<std::int64_t>(1, static_cast<std::int64_t>(q_cap));
        if (auto m = match_rational(static_cast<double>(residue - std::floor(residue)), q_eff, tol_total)) {
          Hit h{d, a_norm, m->q, m->error / tol_total, a, *m, residue};
          if (!best || better(h, *best)) best = std::move(h);
        }
        // odometer over [-b, b]^k
        std::size_t j = 0;
        for (; j < k; ++j) {
          if (a[j] < b) {
            ++a[j];
            break;
          }
          a[j] = -b;
        }
        if (j == k) break;
      }
    }

    QCoords out;
    if (best) {
      // d·γ = Σ a_j ω_j + p/q + K exactly, K the integer part of the residue.
      long double rat_part = static_cast<long double>(best->match.p) / best->match.q;
      long double k_int = std::round(best->residue - rat_part);
      Rational shifted = Rational(best->match.p, best->match.q) + Rational(Integer(static_cast<std::int64_t>(k_int)));
      out.rational = shifted / Rational(best->d);
      out.irrational.resize(k);
      for (std::size_t j = 0; j < k; ++j) out.irrational[j] = Rational(best->a[j], best->d);
      // Surd elements are √c mod 1 in the search but √c in the coordinates.
      for (std::size_t j = 0; j < k; ++j) {
        if (!elems_[j].surd || out.irrational[j] == 0) continue;
        long double root = std::sqrt(static_cast<long double>(elems_[j].radicand.convert_to<double>()));
        out.rational -= out.irrational[j] * Rational(Integer(static_cast<std::int64_t>(std::floor(root))));
      }
      return out;
    }
    // Independent within the bounds: γ or −γ becomes a new basis element in (0, 1/2].
    BasisElement e;
    bool flip = gamma > 0.5;
    e.value = flip ? 1.0L - gamma : gamma;
    e.tol = tol;
    elems_.push_back(e);
    out.rational = 0;
    out.irrational.assign(k + 1, Rational(0));
    out.irrational[k] = flip ? -1 : 1;
    return out;
  }

  CertifyOptions opts_;
  std::vector<BasisElement> elems_;
  bool numerical_ = false;
};

struct Scaled {
  Integer denominator;
  std::vector<lattice::IntVector> rows;  // [irrational..., rational]
};

Scaled scale_rows(const std::vector<QCoords>& coords, std::size_t k) {
  Scaled out;
  out.denominator = 1;
  for (const auto& c : coords) {
    out.denominator = lcm(out.denominator, boost::multiprecision::denominator(c.rational));
    for (const auto& x : c.irrational) out.denominator = lcm(out.denominator, boost::multiprecision::denominator(x));
  }
  for (const auto& c : coords) {
    lattice::IntVector row(k + 1, Integer(0));
    for (std::size_t j = 0; j < c.irrational.size(); ++j) {
      Rational v = c.irrational[j] * Rational(out.denominator);
      row[j] = boost::multiprecision::numerator(v);
    }
    Rational v = c.rational * Rational(out.denominator);
    row[k] = boost::multiprecision::numerator(v);
    out.rows.push_back(std::move(row));
  }
  return out;
}

lattice::IntVector integer_row(std::size_t k, const Integer& last) {
  lattice::IntVector row(k + 1, Integer(0));
  row[k] = last;
  return row;
}

Character character_from_row(const lattice::IntVector& row, const Integer& denominator, const QBasis& basis) {
  const auto& elems = basis.elements();
  const std::size_t k = elems.size();
  Rational rat(row[k], denominator);
  bool exact = std::all_of(elems.begin(), elems.end(), [](const BasisElement& e) { return e.surd; });
  if (exact) {
    std::vector<Surd> surds;
    for (std::size_t j = 0; j < k; ++j) {
      if (row[j] != 0) surds.push_back({elems[j].radicand, Rational(row[j], denominator)});
    }
    return Character::exact(rat, std::move(surds));
  }
  long double value = static_cast<long double>(to_double(frac(rat)));
  double tol = 0.0;
  for (std::size_t j = 0; j < k; ++j) {
    if (row[j] == 0) continue;
    long double coef = static_cast<long double>(to_double(Rational(row[j], denominator)));
    long double term = elems[j].value;
    if (elems[j].surd) term = std::sqrt(static_cast<long double>(elems[j].radicand.convert_to<double>()));
    value += coef * term;
    value -= std::floor(value);
    tol += std::fabs(static_cast<double>(coef)) * (elems[j].tol + 1e-16);
  }
  return Character::floating(static_cast<double>(value), tol);
}

}  // namespace

Presentation present(std::span<const Character> generators, const CertifyOptions& options) {
  QBasis basis(options);
  std::vector<QCoords> coords;
  coords.reserve(generators.size());
  for (const auto& g : generators) coords.push_back(basis.add(g));
  const std::size_t k = basis.size();
  for (auto& c : coords) c.irrational.resize(k, Rational(0));

  Scaled scaled = scale_rows(coords, k);
  auto rows = scaled.rows;
  rows.push_back(integer_row(k, scaled.denominator));
  auto hnf = lattice::hermite_form(rows);

  Presentation out;
  out.certification = basis.numerical() ? Certification::numerical : Certification::exact;
  // Prefer an input generator over an echelon row when they differ only by torsion,
  // so that e.g. ⟨α, 1/3⟩ keeps β = α.
  for (std::size_t i = 0; i < hnf.rows.size(); ++i) {
    if (hnf.pivots[i] >= k) continue;
    for (const auto& row : scaled.rows) {
      if (std::equal(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(k), hnf.rows[i].begin())) {
        hnf.rows[i] = row;
        break;
      }
    }
  }
  std::size_t free_rows = 0;
  for (std::size_t i = 0; i < hnf.rows.size(); ++i) {
    if (hnf.pivots[i] < k) {
      out.free_generators.push_back(character_from_row(hnf.rows[i], scaled.denominator, basis));
      ++free_rows;
    } else {
      const Integer& v = hnf.rows[i][k];
      out.torsion_order = (scaled.denominator / v).convert_to<std::int64_t>();
    }
  }
  for (const auto& row : scaled.rows) {
    auto x = lattice::solve_echelon(hnf, row);
    Presentation::Coordinates c;
    c.torus.assign(x->begin(), x->begin() + static_cast<std::ptrdiff_t>(free_rows));
    Integer t = free_rows < x->size() ? (*x)[free_rows] : Integer(0);
    Integer g(out.torsion_order);
    t %= g;
    if (t < 0) t += g;
    c.torsion = t;
    out.generator_coordinates.push_back(std::move(c));
  }
  return out;
}

Compactification::Compactification() = default;

Compactification Compactification::induced(const SpectralSubgroup& gamma, const CertifyOptions& options) {
  auto reduced = gamma.reduced();
  Presentation p = present(reduced.generators, options);
  Compactification c;
  c.shape_.torus_rank = p.rank();
  c.torus_ = p.free_generators;
  if (p.torsion_order > 1) {
    c.shape_.finite_orders = {p.torsion_order};
    c.units_ = {1};
  }
  c.certification_ = p.certification;
  return c;
}

Compactification Compactification::from_embedding(std::vector<Character> torus_generators,
                                                  std::vector<std::int64_t> finite_orders,
                                                  std::vector<std::int64_t> torsion_units,
                                                  const CertifyOptions& options) {
  if (finite_orders.size() != torsion_units.size()) {
    throw std::invalid_argument("one torsion unit per finite factor is required");
  }
  Compactification c;
  c.shape_.torus_rank = static_cast<int>(torus_generators.size());
  c.shape_.finite_orders = std::move(finite_orders);
  c.shape_.validate();
  for (std::size_t i = 0; i < torsion_units.size(); ++i) {
    std::int64_t n = c.shape_.finite_orders[i];
    torsion_units[i] = ((torsion_units[i] % n) + n) % n;
  }
  c.units_ = std::move(torsion_units);
  c.torus_ = std::move(torus_generators);

  Presentation p = present(c.torus_, options);
  c.certification_ = p.certification;
  if (p.rank() != c.shape_.torus_rank) {
    throw std::invalid_argument("torus rotation numbers are not rationally independent together with 1");
  }
  Integer order = 1;
  for (std::size_t i = 0; i < c.units_.size(); ++i) {
    std::int64_t n = c.shape_.finite_orders[i];
    std::int64_t g = std::gcd(c.units_[i], n);
    order = lcm(order, Integer(n / g));
  }
  if (order != Integer(c.shape_.finite_size())) {
    throw std::invalid_argument("torsion units do not generate the finite part");
  }
  return c;
}

std::vector<Character> Compactification::coordinate_characters() const {
  std::vector<Character> out = torus_;
  for (std::size_t i = 0; i < units_.size(); ++i) {
    out.push_back(Character::rational(Rational(units_[i], shape_.finite_orders[i])));
  }
  return out;
}

Point Compactification::embed(std::int64_t n) const {
  Point p;
  p.torus.reserve(torus_.size());
  for (const auto& b : torus_) p.torus.push_back(b.phase(n));
  for (std::size_t i = 0; i < units_.size(); ++i) {
    std::int64_t m = shape_.finite_orders[i];
    Int128 r = (static_cast<Int128>(n) * units_[i]) % m;
    if (r < 0) r += m;
    p.finite.push_back(static_cast<std::int64_t>(r));
  }
  return p;
}

std::optional<ExactPoint> Compactification::embed_exact(std::int64_t n) const {
  if (shape_.torus_rank != 0) return std::nullopt;
  ExactPoint p;
  p.finite = embed(n).finite;
  return p;
}

Character Compactification::character_of(const Frequency& freq) const {
  auto chars = coordinate_characters();
  std::vector<Integer> coeffs;
  for (auto m : freq.torus) coeffs.emplace_back(m);
  for (auto t : freq.finite) coeffs.emplace_back(t);
  if (coeffs.size() != chars.size()) throw std::invalid_argument("frequency does not match the compactification");
  return Character::combination(chars, coeffs);
}

std::vector<std::int64_t> Compactification::invariant_factors() const {
  lattice::IntMatrix m;
  const auto& orders = shape_.finite_orders;
  for (std::size_t i = 0; i < orders.size(); ++i) {
    lattice::IntVector row(orders.size(), Integer(0));
    row[i] = orders[i];
    m.push_back(std::move(row));
  }
  std::vector<std::int64_t> out;
  for (const auto& d : lattice::smith_invariants(m)) {
    if (d != 1) out.push_back(d.convert_to<std::int64_t>());
  }
  return out;
}

std::string Compactification::describe() const {
  std::ostringstream os;
  os << "T^" << shape_.torus_rank;
  for (auto n : shape_.finite_orders) os << " x Z/" << n;
  return os.str();
}

namespace {

struct JointLattice {
  lattice::HermiteForm hnf;
  std::vector<lattice::IntVector> query_rows;
  std::vector<bool> query_outside_span;
  Certification certification = Certification::exact;
};

// Coordinates of `base` and `queries` over a common ℚ-basis; the lattice is
// spanned by `base` and ℤ.
JointLattice build_joint(std::span<const Character> base, std::span<const Character> queries,
                         const CertifyOptions& options) {
  QBasis basis(options);
  std::vector<QCoords> coords;
  for (const auto& c : base) coords.push_back(basis.add(c));
  const std::size_t base_k = basis.size();
  JointLattice out;
  for (const auto& q : queries) {
    std::size_t before = basis.size();
    coords.push_back(basis.add(q));
    out.query_outside_span.push_back(basis.size() > before);
  }
  const std::size_t k = basis.size();
  for (auto& c : coords) c.irrational.resize(k, Rational(0));
  Scaled scaled = scale_rows(coords, k);
  std::vector<lattice::IntVector> rows(scaled.rows.begin(), scaled.rows.begin() + static_cast<std::ptrdiff_t>(base.size()));
  rows.push_back(integer_row(k, scaled.denominator));
  out.hnf = lattice::hermite_form(rows);
  out.query_rows.assign(scaled.rows.begin() + static_cast<std::ptrdiff_t>(base.size()), scaled.rows.end());
  out.certification = basis.numerical() ? Certification::numerical : Certification::exact;
  (void)base_k;
  return out;
}

}  // namespace

CoverResult covers(const Compactification& c1, const Compactification& c2, const CertifyOptions& options) {
  CoverResult result;
  JointLattice joint;
  try {
    joint = build_joint(c2.coordinate_characters(), c1.coordinate_characters(), options);
  } catch (const CannotCertify& e) {
    result.verdict = Verdict::undecided;
    result.certification = Certification::numerical;
    result.detail = e.what();
    return result;
  }
  result.certification = joint.certification;
  for (std::size_t i = 0; i < joint.query_rows.size(); ++i) {
    if (joint.query_outside_span[i] || !lattice::solve_echelon(joint.hnf, joint.query_rows[i])) {
      result.verdict = Verdict::no;
      result.detail = "coordinate character " + std::to_string(i) + " is not in the covering subgroup";
      return result;
    }
  }
  result.verdict = Verdict::yes;
  return result;
}

Location locate(const Compactification& c, const Character& chi, const CertifyOptions& options) {
  Location loc;
  JointLattice joint;
  auto base = c.coordinate_characters();
  try {
    joint = build_joint(base, std::span<const Character>(&chi, 1), options);
  } catch (const CannotCertify&) {
    loc.verdict = Verdict::undecided;
    loc.certification = Certification::numerical;
    return loc;
  }
  loc.certification = joint.certification;
  if (joint.query_outside_span[0]) {
    loc.verdict = Verdict::no;
    return loc;
  }
  auto x = lattice::solve_input(joint.hnf, joint.query_rows[0]);
  if (!x) {
    loc.verdict = Verdict::no;
    return loc;
  }
  Frequency f;
  const int k = c.torus_rank();
  for (int j = 0; j < k; ++j) f.torus.push_back((*x)[static_cast<std::size_t>(j)].convert_to<std::int64_t>());
  for (std::size_t i = 0; i < c.finite_part().size(); ++i) {
    Integer t = (*x)[static_cast<std::size_t>(k) + i];
    Integer n(c.finite_part()[i]);
    t %= n;
    if (t < 0) t += n;
    f.finite.push_back(t.convert_to<std::int64_t>());
  }
  loc.verdict = Verdict::yes;
  loc.frequency = std::move(f);
  return loc;
}

}  // namespace hartman
