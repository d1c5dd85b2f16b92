#include "hartman/step_function.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace hartman {

namespace {

Rational frac_s(const Rational& x) { return frac(x); }
double frac_s(double x) { return x - std::floor(x); }

double as_double(const Rational& x) { return to_double(x); }
double as_double(double x) { return x; }

std::complex<double> as_complex(const ComplexQ& v) { return v.to_complex(); }
std::complex<double> as_complex(const std::complex<double>& v) { return v; }

bool is_zero_value(const ComplexQ& v) { return v.is_zero(); }
bool is_zero_value(const std::complex<double>& v) { return v == std::complex<double>(0.0, 0.0); }

template <class S>
std::size_t cut_position(const std::vector<S>& cuts, const S& x) {
  auto it = std::lower_bound(cuts.begin(), cuts.end(), x);
  if (it == cuts.end() || *it != x) throw std::logic_error("grid does not refine the step function");
  return static_cast<std::size_t>(it - cuts.begin());
}

template <class S>
void check_piece(const GroupShape& shape, const StepPiece<S>& p) {
  if (p.box.size() != static_cast<std::size_t>(shape.torus_rank)) {
    throw std::invalid_argument("piece has the wrong number of arcs");
  }
  for (const auto& a : p.box) {
    if (!(S(0) <= a.lo && a.lo < a.hi && a.hi <= S(1))) throw std::invalid_argument("arc must satisfy 0 <= lo < hi <= 1");
  }
  const std::int64_t size = shape.finite_size();
  for (std::size_t i = 0; i < p.fiber.size(); ++i) {
    if (p.fiber[i] < 0 || p.fiber[i] >= size) throw std::invalid_argument("fiber element out of range");
    if (i > 0 && p.fiber[i] <= p.fiber[i - 1]) throw std::invalid_argument("fiber must be sorted and unique");
  }
}

}  // namespace

template <class S>
BasicStepFunction<S>::BasicStepFunction(GroupShape shape) : shape_(std::move(shape)) {
  shape_.validate();
}

template <class S>
BasicStepFunction<S>::BasicStepFunction(GroupShape shape, std::vector<piece_type> pieces) : shape_(std::move(shape)) {
  shape_.validate();
  for (auto& p : pieces) {
    if (p.fiber.empty()) continue;
    check_piece(shape_, p);
    if (!is_zero_value(p.value)) pieces_.push_back(std::move(p));
  }
  // Overlaps are detected by the coverage count in rasterize.
  rasterize(*this, own_cuts(*this));
  build_cache();
}

template <class S>
BasicStepFunction<S> BasicStepFunction<S>::constant(const GroupShape& shape, const value_type& value) {
  piece_type p;
  p.box.assign(static_cast<std::size_t>(shape.torus_rank), Arc<S>{S(0), S(1)});
  for (std::int64_t z = 0; z < shape.finite_size(); ++z) p.fiber.push_back(z);
  p.value = value;
  return BasicStepFunction(shape, {p});
}

template <class S>
BasicStepFunction<S> BasicStepFunction<S>::box(const GroupShape& shape, const std::vector<std::pair<S, S>>& arcs,
                                               std::vector<std::int64_t> fiber, const value_type& value) {
  if (arcs.size() != static_cast<std::size_t>(shape.torus_rank)) throw std::invalid_argument("one arc per torus coordinate");
  if (fiber.empty()) {
    for (std::int64_t z = 0; z < shape.finite_size(); ++z) fiber.push_back(z);
  }
  std::sort(fiber.begin(), fiber.end());
  fiber.erase(std::unique(fiber.begin(), fiber.end()), fiber.end());
  // Each wrapping arc splits into two; expand the product.
  std::vector<std::vector<Arc<S>>> boxes{{}};
  for (const auto& [a0, b0] : arcs) {
    S a = frac_s(a0);
    S b = b0 == S(1) ? S(1) : frac_s(b0);
    std::vector<Arc<S>> parts;
    if (a == b || (a == S(0) && b == S(1))) {
      parts.push_back({S(0), S(1)});
    } else if (a < b) {
      parts.push_back({a, b});
    } else {
      parts.push_back({a, S(1)});
      if (b > S(0)) parts.push_back({S(0), b});
    }
    std::vector<std::vector<Arc<S>>> next;
    for (const auto& partial : boxes) {
      for (const auto& arc : parts) {
        auto grown = partial;
        grown.push_back(arc);
        next.push_back(std::move(grown));
      }
    }
    boxes = std::move(next);
  }
  std::vector<piece_type> pieces;
  for (auto& b : boxes) pieces.push_back({std::move(b), fiber, value});
  return BasicStepFunction(shape, std::move(pieces));
}

template <class S>
void BasicStepFunction<S>::build_cache() {
  fast_.clear();
  const auto size = static_cast<std::size_t>(shape_.finite_size());
  for (const auto& p : pieces_) {
    FastPiece f;
    for (const auto& a : p.box) {
      f.lo.push_back(as_double(a.lo));
      f.hi.push_back(as_double(a.hi));
    }
    f.fiber_mask.assign(size, false);
    for (auto z : p.fiber) f.fiber_mask[static_cast<std::size_t>(z)] = true;
    f.value = as_complex(p.value);
    fast_.push_back(std::move(f));
  }
}

template <class S>
typename BasicStepFunction<S>::value_type BasicStepFunction<S>::at(const point_type& x) const {
  const std::int64_t z = shape_.flatten(x.finite);
  value_type out{};
  for (const auto& p : pieces_) {
    if (!std::binary_search(p.fiber.begin(), p.fiber.end(), z)) continue;
    bool inside = true;
    for (std::size_t j = 0; j < p.box.size() && inside; ++j) {
      S t = frac_s(x.torus[j]);
      inside = p.box[j].lo <= t && t < p.box[j].hi;
    }
    if (inside) out = out + p.value;
  }
  return out;
}

template <class S>
std::complex<double> BasicStepFunction<S>::evaluate(const double* torus, const std::int64_t* finite) const {
  std::int64_t z = 0;
  for (std::size_t i = 0; i < shape_.finite_orders.size(); ++i) z = z * shape_.finite_orders[i] + finite[i];
  std::complex<double> out{};
  for (const auto& p : fast_) {
    if (!p.fiber_mask[static_cast<std::size_t>(z)]) continue;
    bool inside = true;
    for (std::size_t j = 0; j < p.lo.size() && inside; ++j) {
      double t = torus[j] - std::floor(torus[j]);
      inside = p.lo[j] <= t && t < p.hi[j];
    }
    if (inside) out += p.value;
  }
  return out;
}

template <class S>
double BasicStepFunction<S>::sup_abs() const {
  // Pieces are disjoint, so the supremum is the largest piece value.
  double m = 0.0;
  for (const auto& p : fast_) m = std::max(m, std::abs(p.value));
  return m;
}

template <class S>
bool BasicStepFunction<S>::is_real() const {
  return std::all_of(pieces_.begin(), pieces_.end(), [](const piece_type& p) {
    if constexpr (StepScalar<S>::exact) {
      return p.value.im == 0;
    } else {
      return p.value.imag() == 0.0;
    }
  });
}

template <class S>
std::size_t Raster<S>::torus_cells() const {
  std::size_t n = 1;
  for (const auto& c : cuts) n *= c.size() - 1;
  return n;
}

template <class S>
std::vector<std::size_t> Raster<S>::cell_index(std::size_t torus_cell) const {
  std::vector<std::size_t> idx(cuts.size());
  for (std::size_t j = cuts.size(); j-- > 0;) {
    const std::size_t n = cuts[j].size() - 1;
    idx[j] = torus_cell % n;
    torus_cell /= n;
  }
  return idx;
}

template <class S>
S Raster<S>::cell_measure(std::size_t torus_cell) const {
  auto idx = cell_index(torus_cell);
  S m(1);
  for (std::size_t j = 0; j < cuts.size(); ++j) m *= cell_length(j, idx[j]);
  return m / S(static_cast<double>(shape.finite_size()));
}

template <>
Rational Raster<Rational>::cell_measure(std::size_t torus_cell) const {
  auto idx = cell_index(torus_cell);
  Rational m(1);
  for (std::size_t j = 0; j < cuts.size(); ++j) m *= cell_length(j, idx[j]);
  return m / Rational(shape.finite_size());
}

template <class S>
std::vector<std::vector<S>> own_cuts(const BasicStepFunction<S>& f) {
  std::vector<std::vector<S>> cuts(static_cast<std::size_t>(f.shape().torus_rank), std::vector<S>{S(0), S(1)});
  for (const auto& p : f.pieces()) {
    for (std::size_t j = 0; j < p.box.size(); ++j) {
      cuts[j].push_back(p.box[j].lo);
      cuts[j].push_back(p.box[j].hi);
    }
  }
  for (auto& c : cuts) {
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
  }
  return cuts;
}

template <class S>
std::vector<std::vector<S>> merge_cuts(const std::vector<std::vector<S>>& a, const std::vector<std::vector<S>>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("grids of different rank");
  std::vector<std::vector<S>> out(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) {
    std::set_union(a[j].begin(), a[j].end(), b[j].begin(), b[j].end(), std::back_inserter(out[j]));
    out[j].erase(std::unique(out[j].begin(), out[j].end()), out[j].end());
  }
  return out;
}

template <class S>
Raster<S> rasterize(const BasicStepFunction<S>& f, const std::vector<std::vector<S>>& cuts) {
  Raster<S> r;
  r.shape = f.shape();
  r.cuts = cuts;
  const std::size_t cells = r.torus_cells();
  const auto fsize = static_cast<std::size_t>(r.shape.finite_size());
  r.values.assign(cells * fsize, typename Raster<S>::value_type{});
  std::vector<std::uint8_t> covered(cells * fsize, 0);
  const std::size_t k = cuts.size();
  for (const auto& p : f.pieces()) {
    std::vector<std::size_t> lo(k), hi(k);
    for (std::size_t j = 0; j < k; ++j) {
      lo[j] = cut_position(cuts[j], p.box[j].lo);
      hi[j] = cut_position(cuts[j], p.box[j].hi);
    }
    std::vector<std::size_t> idx = lo;
    while (true) {
      std::size_t cell = 0;
      for (std::size_t j = 0; j < k; ++j) cell = cell * (cuts[j].size() - 1) + idx[j];
      for (auto z : p.fiber) {
        const std::size_t at = cell * fsize + static_cast<std::size_t>(z);
        if (covered[at]) throw std::invalid_argument("step function pieces overlap");
        covered[at] = 1;
        r.values[at] = p.value;
      }
      std::size_t j = k;
      while (j > 0) {
        --j;
        if (++idx[j] < hi[j]) break;
        idx[j] = lo[j];
        if (j == 0) {
          j = k + 1;
          break;
        }
      }
      if (k == 0 || j == k + 1) break;
    }
  }
  return r;
}

template <class S>
BasicStepFunction<S> from_raster(const Raster<S>& r) {
  std::vector<StepPiece<S>> pieces;
  const auto fsize = static_cast<std::size_t>(r.shape.finite_size());
  const std::size_t cells = r.torus_cells();
  for (std::size_t c = 0; c < cells; ++c) {
    auto idx = r.cell_index(c);
    std::vector<Arc<S>> box;
    for (std::size_t j = 0; j < idx.size(); ++j) box.push_back({r.cuts[j][idx[j]], r.cuts[j][idx[j] + 1]});
    std::vector<bool> used(fsize, false);
    for (std::size_t z = 0; z < fsize; ++z) {
      const auto& v = r.values[c * fsize + z];
      if (used[z] || is_zero_value(v)) continue;
      StepPiece<S> p{box, {}, v};
      for (std::size_t w = z; w < fsize; ++w) {
        if (!used[w] && r.values[c * fsize + w] == v) {
          used[w] = true;
          p.fiber.push_back(static_cast<std::int64_t>(w));
        }
      }
      pieces.push_back(std::move(p));
    }
  }
  return BasicStepFunction<S>(r.shape, std::move(pieces));
}

template <class S>
typename StepScalar<S>::value_type haar_integral(const BasicStepFunction<S>& f) {
  typename StepScalar<S>::value_type total{};
  S fsize(static_cast<std::int64_t>(f.shape().finite_size()));
  for (const auto& p : f.pieces()) {
    S m(1);
    for (const auto& a : p.box) m *= a.hi - a.lo;
    m *= S(static_cast<std::int64_t>(p.fiber.size()));
    total = total + p.value * (m / fsize);
  }
  return total;
}

template <class S>
BasicStepFunction<S> translate(const BasicStepFunction<S>& f, const typename StepScalar<S>::point_type& x) {
  const GroupShape& shape = f.shape();
  if (x.torus.size() != static_cast<std::size_t>(shape.torus_rank) || x.finite.size() != shape.finite_orders.size()) {
    throw std::invalid_argument("translation point does not match the domain");
  }
  const std::int64_t shift = shape.flatten(x.finite);
  std::vector<StepPiece<S>> pieces;
  for (const auto& p : f.pieces()) {
    std::vector<std::int64_t> fiber;
    for (auto z : p.fiber) fiber.push_back(shape.combine(z, shift, -1));
    std::sort(fiber.begin(), fiber.end());
    std::vector<std::vector<Arc<S>>> boxes{{}};
    for (std::size_t j = 0; j < p.box.size(); ++j) {
      const auto& a = p.box[j];
      std::vector<Arc<S>> parts;
      S len = a.hi - a.lo;
      if (len == S(1)) {
        parts.push_back(a);
      } else {
        // Map both endpoints by the same rounding so adjacent arcs stay adjacent.
        S lo = frac_s(a.lo - x.torus[j]);
        S hi = frac_s(a.hi - x.torus[j]);
        if (hi == S(0)) hi = S(1);
        if (lo == hi) {
          // collapsed by rounding; no mass
        } else if (lo < hi) {
          parts.push_back({lo, hi});
        } else {
          parts.push_back({lo, S(1)});
          if (hi < S(1)) parts.push_back({S(0), hi});
        }
      }
      std::vector<std::vector<Arc<S>>> next;
      for (const auto& partial : boxes) {
        for (const auto& arc : parts) {
          auto grown = partial;
          grown.push_back(arc);
          next.push_back(std::move(grown));
        }
      }
      boxes = std::move(next);
    }
    for (auto& b : boxes) {
      // Floating shifts can produce slivers of zero width; they carry no mass.
      bool empty = std::any_of(b.begin(), b.end(), [](const Arc<S>& a) { return !(a.lo < a.hi); });
      if (!empty) pieces.push_back({std::move(b), fiber, p.value});
    }
  }
  return BasicStepFunction<S>(shape, std::move(pieces));
}

ApproxStepFunction approximate(const StepFunction& f) {
  std::vector<StepPiece<double>> pieces;
  for (const auto& p : f.pieces()) {
    StepPiece<double> q;
    for (const auto& a : p.box) q.box.push_back({to_double(a.lo), to_double(a.hi)});
    q.fiber = p.fiber;
    q.value = p.value.to_complex();
    pieces.push_back(std::move(q));
  }
  return ApproxStepFunction(f.shape(), std::move(pieces));
}

ApproxStepFunction translate_approx(const StepFunction& f, const Point& x) { return translate(approximate(f), x); }

template <class S>
BasicStepFunction<S> linear_combination(const BasicStepFunction<S>& f, const typename StepScalar<S>::value_type& a,
                                        const BasicStepFunction<S>& g, const typename StepScalar<S>::value_type& b) {
  if (!(f.shape() == g.shape())) throw std::invalid_argument("step functions on different domains");
  auto cuts = merge_cuts(own_cuts(f), own_cuts(g));
  auto rf = rasterize(f, cuts);
  auto rg = rasterize(g, cuts);
  for (std::size_t i = 0; i < rf.values.size(); ++i) rf.values[i] = rf.values[i] * a + rg.values[i] * b;
  return from_raster(rf);
}

template <class S>
BasicStepFunction<S> operator+(const BasicStepFunction<S>& f, const BasicStepFunction<S>& g) {
  using V = typename StepScalar<S>::value_type;
  return linear_combination(f, V(S(1)), g, V(S(1)));
}

template <class S>
BasicStepFunction<S> operator-(const BasicStepFunction<S>& f, const BasicStepFunction<S>& g) {
  using V = typename StepScalar<S>::value_type;
  return linear_combination(f, V(S(1)), g, V(S(-1)));
}

template <class S>
double l1_distance(const BasicStepFunction<S>& f, const BasicStepFunction<S>& g) {
  if (!(f.shape() == g.shape())) throw std::invalid_argument("step functions on different domains");
  auto cuts = merge_cuts(own_cuts(f), own_cuts(g));
  auto rf = rasterize(f, cuts);
  auto rg = rasterize(g, cuts);
  const auto fsize = static_cast<std::size_t>(rf.shape.finite_size());
  double total = 0.0;
  for (std::size_t c = 0; c < rf.torus_cells(); ++c) {
    double diff = 0.0;
    for (std::size_t z = 0; z < fsize; ++z) {
      const std::size_t i = c * fsize + z;
      diff += std::abs(as_complex(rf.values[i]) - as_complex(rg.values[i]));
    }
    if (diff != 0.0) total += diff * as_double(rf.cell_measure(c));
  }
  return total;
}

std::optional<Rational> l1_distance_exact(const StepFunction& f, const StepFunction& g) {
  if (!(f.shape() == g.shape())) throw std::invalid_argument("step functions on different domains");
  auto cuts = merge_cuts(own_cuts(f), own_cuts(g));
  auto rf = rasterize(f, cuts);
  auto rg = rasterize(g, cuts);
  const auto fsize = static_cast<std::size_t>(rf.shape.finite_size());
  Rational total(0);
  for (std::size_t c = 0; c < rf.torus_cells(); ++c) {
    Rational diff(0);
    for (std::size_t z = 0; z < fsize; ++z) {
      const std::size_t i = c * fsize + z;
      ComplexQ d = rf.values[i] - rg.values[i];
      if (d.re != 0 && d.im != 0) return std::nullopt;
      diff += abs(d.re) + abs(d.im);
    }
    if (diff != 0) total += diff * rf.cell_measure(c);
  }
  return total;
}

std::optional<Rational> l1_norm_exact(const StepFunction& f) { return l1_distance_exact(f, StepFunction(f.shape())); }

template <class S>
bool equal_ae(const BasicStepFunction<S>& f, const BasicStepFunction<S>& g) {
  if (!(f.shape() == g.shape())) return false;
  auto cuts = merge_cuts(own_cuts(f), own_cuts(g));
  auto rf = rasterize(f, cuts);
  auto rg = rasterize(g, cuts);
  // Every cell of the merged grid has positive measure.
  return rf.values == rg.values;
}

double ramp_upper_integral(double length, double delta) {
  if (length >= 1.0) return 1.0;
  const double c = 1.0 - length;
  return c >= 2.0 * delta ? length + delta : 1.0 - c * c / (4.0 * delta);
}

double ramp_lower_integral(double length, double delta) {
  if (length >= 1.0) return 1.0;
  return length >= 2.0 * delta ? length - delta : length * length / (4.0 * delta);
}

namespace {

double ramp_upper(double t, double lo, double hi, double delta) {
  if (hi - lo >= 1.0) return 1.0;
  t -= std::floor(t);
  if (lo <= t && t < hi) return 1.0;
  double after = t - hi;
  if (after < 0) after += 1.0;
  double before = lo - t;
  if (before < 0) before += 1.0;
  return std::max(0.0, 1.0 - std::min(after, before) / delta);
}

double ramp_lower(double t, double lo, double hi, double delta) {
  if (hi - lo >= 1.0) return 1.0;
  t -= std::floor(t);
  if (!(lo <= t && t < hi)) return 0.0;
  return std::min(1.0, std::min(t - lo, hi - t) / delta);
}

}  // namespace

Sandwich sandwich(const StepFunction& f, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  Sandwich s;
  s.f_ = approximate(f);
  const double k = std::max(1, f.shape().torus_rank);
  const double pieces = std::max<std::size_t>(1, f.pieces().size());
  const double vmax = std::max(s.f_.sup_abs(), 1e-300);
  s.delta_ = eps / (4.0 * k * pieces * vmax);
  const double fsize = static_cast<double>(f.shape().finite_size());
  double gap = 0.0;
  for (const auto& p : s.f_.pieces()) {
    double up = 1.0, low = 1.0;
    for (const auto& a : p.box) {
      up *= ramp_upper_integral(a.hi - a.lo, s.delta_);
      low *= ramp_lower_integral(a.hi - a.lo, s.delta_);
    }
    gap += (std::abs(p.value.real()) + std::abs(p.value.imag())) * (up - low) * static_cast<double>(p.fiber.size()) / fsize;
  }
  s.gap_ = gap;
  return s;
}

std::complex<double> Sandwich::eval(const Point& x, bool upper) const {
  const std::int64_t z = f_.shape().flatten(x.finite);
  double re = 0.0, im = 0.0;
  for (const auto& p : f_.pieces()) {
    if (!std::binary_search(p.fiber.begin(), p.fiber.end(), z)) continue;
    double u = 1.0, l = 1.0;
    for (std::size_t j = 0; j < p.box.size(); ++j) {
      u *= ramp_upper(x.torus[j], p.box[j].lo, p.box[j].hi, delta_);
      l *= ramp_lower(x.torus[j], p.box[j].lo, p.box[j].hi, delta_);
    }
    const double r = p.value.real(), i = p.value.imag();
    re += r * (((r > 0) == upper) ? u : l);
    im += i * (((i > 0) == upper) ? u : l);
  }
  return {re, im};
}

#define HARTMAN_INSTANTIATE(S)                                                                                    \
  template class BasicStepFunction<S>;                                                                            \
  template struct Raster<S>;                                                                                      \
  template std::vector<std::vector<S>> own_cuts(const BasicStepFunction<S>&);                                     \
  template std::vector<std::vector<S>> merge_cuts(const std::vector<std::vector<S>>&,                             \
                                                  const std::vector<std::vector<S>>&);                            \
  template Raster<S> rasterize(const BasicStepFunction<S>&, const std::vector<std::vector<S>>&);                  \
  template BasicStepFunction<S> from_raster(const Raster<S>&);                                                    \
  template StepScalar<S>::value_type haar_integral(const BasicStepFunction<S>&);                                  \
  template BasicStepFunction<S> translate(const BasicStepFunction<S>&, const StepScalar<S>::point_type&);         \
  template BasicStepFunction<S> linear_combination(const BasicStepFunction<S>&, const StepScalar<S>::value_type&, \
                                                   const BasicStepFunction<S>&, const StepScalar<S>::value_type&); \
  template BasicStepFunction<S> operator+(const BasicStepFunction<S>&, const BasicStepFunction<S>&);              \
  template BasicStepFunction<S> operator-(const BasicStepFunction<S>&, const BasicStepFunction<S>&);              \
  template double l1_distance(const BasicStepFunction<S>&, const BasicStepFunction<S>&);                          \
  template bool equal_ae(const BasicStepFunction<S>&, const BasicStepFunction<S>&);

HARTMAN_INSTANTIATE(Rational)
HARTMAN_INSTANTIATE(double)

#undef HARTMAN_INSTANTIATE

}  // namespace hartman
