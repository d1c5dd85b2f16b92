#include "hartman/fejer_weil.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hartman/parallel.hpp"

namespace hartman {

namespace {

using lattice::IntMatrix;
using lattice::IntVector;

std::complex<double> turn(std::int64_t num, std::int64_t den) {
  const std::int64_t r = ((num % den) + den) % den;
  const double a = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(den);
  return {std::cos(a), std::sin(a)};
}

Integer lcm_denominators(const Integer& acc, const Rational& x) { return lcm(acc, denominator(x)); }

std::int64_t to_i64(const Integer& x) { return x.convert_to<std::int64_t>(); }

Integer mod_floor(const Integer& a, const Integer& n) {
  Integer r = a % n;
  if (r < 0) r += n;
  return r;
}

// Preimage of [lo, hi) under t ↦ (s·t + c) mod 1 on t ∈ [0, 1), s > 0.
std::vector<Arc<Rational>> affine_preimage(const Arc<Rational>& arc, const Rational& s, const Rational& c) {
  std::vector<Arc<Rational>> out;
  const Integer k0 = floor(c - arc.hi);
  const Integer k1 = floor(s + c - arc.lo) + 1;
  for (Integer k = k0; k <= k1; ++k) {
    Rational lo = (arc.lo + Rational(k) - c) / s;
    Rational hi = (arc.hi + Rational(k) - c) / s;
    if (lo < 0) lo = 0;
    if (hi > 1) hi = 1;
    if (lo < hi) out.push_back({lo, hi});
  }
  return out;
}

// All boxes of a product of arc lists.
std::vector<std::vector<Arc<Rational>>> product(const std::vector<std::vector<Arc<Rational>>>& lists) {
  std::vector<std::vector<Arc<Rational>>> out{{}};
  for (const auto& options : lists) {
    std::vector<std::vector<Arc<Rational>>> next;
    for (const auto& prefix : out) {
      for (const auto& a : options) {
        auto box = prefix;
        box.push_back(a);
        next.push_back(std::move(box));
      }
    }
    out = std::move(next);
  }
  return out;
}

// Inverse of an upper triangular rational matrix.
std::vector<std::vector<Rational>> upper_inverse(const std::vector<std::vector<Rational>>& b) {
  const std::size_t n = b.size();
  std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t col = 0; col < n; ++col) {
    for (std::size_t ii = n; ii-- > 0;) {
      Rational rhs = ii == col ? Rational(1) : Rational(0);
      for (std::size_t t = ii + 1; t < n; ++t) rhs -= b[ii][t] * inv[t][col];
      inv[ii][col] = rhs / b[ii][ii];
    }
  }
  return inv;
}

StepFunction scaled(const StepFunction& f, const Rational& s) {
  return linear_combination(f, ComplexQ(s), StepFunction(f.shape()), ComplexQ(Rational(0)));
}

}  // namespace

// ---------------------------------------------------------------------------
// Fejér summation

double fejer_kernel(std::int64_t n, double t) {
  if (n < 1) throw std::invalid_argument("Fejér order must be at least 1");
  t -= std::round(t);
  const double s = std::sin(std::numbers::pi * t);
  if (std::fabs(s) < 1e-6) {
    double sum = 1.0;
    for (std::int64_t m = 1; m < n; ++m) {
      sum += 2.0 * (1.0 - static_cast<double>(m) / static_cast<double>(n)) * std::cos(2.0 * std::numbers::pi * static_cast<double>(m) * t);
    }
    return sum;
  }
  const double r = std::sin(std::numbers::pi * static_cast<double>(n) * t) / s;
  return r * r / static_cast<double>(n);
}

FejerOperator::FejerOperator(std::int64_t order, int torus_rank) : n(order), k(torus_rank) {
  if (n < 1) throw std::invalid_argument("Fejér order must be at least 1");
  if (k < 0) throw std::invalid_argument("negative torus rank");
}

double FejerOperator::damping(const Frequency& m) const {
  double d = 1.0;
  for (auto mj : m.torus) {
    const auto a = static_cast<std::int64_t>(std::llabs(mj));
    if (a >= n) return 0.0;
    d *= 1.0 - static_cast<double>(a) / static_cast<double>(n);
  }
  return d;
}

double FejerOperator::kernel(std::span<const double> t) const {
  if (t.size() != static_cast<std::size_t>(k)) throw std::invalid_argument("kernel point has the wrong dimension");
  double v = 1.0;
  for (double x : t) v *= fejer_kernel(n, x);
  return v;
}

TrigPolynomial fejer_apply(const FejerOperator& op, const TrigPolynomial& f) {
  if (f.shape().torus_rank != op.k) throw std::invalid_argument("Fejér operator and polynomial differ in torus rank");
  TrigPolynomial out(f.shape());
  for (const auto& [m, c] : f.terms()) {
    const double d = op.damping(m);
    if (d > 0.0) out.add_term(m, c * d);
  }
  return out;
}

TrigPolynomial fejer_apply(const FejerOperator& op, const StepFunction& f) {
  const GroupShape& shape = f.shape();
  if (shape.torus_rank != op.k) throw std::invalid_argument("Fejér operator and step function differ in torus rank");
  const std::int64_t width = 2 * op.n - 1;
  std::int64_t torus_count = 1;
  for (int j = 0; j < op.k; ++j) torus_count *= width;
  const std::int64_t fsize = shape.finite_size();

  std::vector<std::pair<Frequency, std::complex<double>>> terms(static_cast<std::size_t>(torus_count * fsize));
  parallel_for(static_cast<std::size_t>(torus_count), [&](std::size_t idx) {
    Frequency m;
    m.torus.resize(static_cast<std::size_t>(op.k));
    auto rest = static_cast<std::int64_t>(idx);
    for (int j = op.k - 1; j >= 0; --j) {
      m.torus[static_cast<std::size_t>(j)] = rest % width - (op.n - 1);
      rest /= width;
    }
    const double d = op.damping(m);
    for (std::int64_t z = 0; z < fsize; ++z) {
      m.finite = shape.unflatten(z);
      const auto c = d > 0.0 ? step_coefficient(f, m) * d : std::complex<double>{};
      terms[idx * static_cast<std::size_t>(fsize) + static_cast<std::size_t>(z)] = {m, c};
    }
  });
  TrigPolynomial out(shape);
  for (auto& [m, c] : terms) {
    if (c != std::complex<double>{}) out.add_term(std::move(m), c);
  }
  return out;
}

std::vector<std::complex<double>> evaluate_on_grid(const TrigPolynomial& p, int grid, bool midpoint) {
  if (grid < 1) throw std::invalid_argument("grid must be positive");
  const GroupShape& shape = p.shape();
  const int k = shape.torus_rank;
  const std::int64_t fsize = shape.finite_size();
  const std::int64_t d = p.degree();
  const std::int64_t width = 2 * d + 1;
  const auto G = static_cast<std::int64_t>(grid);

  // E[x][m] = e^{2πi (m − d)(x + s)/G}, reduced exactly in units of 1/(2G).
  std::vector<std::complex<double>> E(static_cast<std::size_t>(G * width));
  for (std::int64_t x = 0; x < G; ++x) {
    for (std::int64_t m = 0; m < width; ++m) {
      E[static_cast<std::size_t>(x * width + m)] = turn((m - d) * (2 * x + (midpoint ? 1 : 0)), 2 * G);
    }
  }

  std::int64_t torus_points = 1;
  for (int j = 0; j < k; ++j) torus_points *= G;
  std::vector<std::complex<double>> out(static_cast<std::size_t>(torus_points * fsize));

  parallel_for(static_cast<std::size_t>(fsize), [&](std::size_t zi) {
    const auto z = shape.unflatten(static_cast<std::int64_t>(zi));
    std::vector<std::int64_t> dims(static_cast<std::size_t>(k), width);
    std::int64_t total = 1;
    for (int j = 0; j < k; ++j) total *= width;
    std::vector<std::complex<double>> cur(static_cast<std::size_t>(total));
    for (const auto& [m, c] : p.terms()) {
      std::complex<double> v = c;
      for (std::size_t i = 0; i < z.size(); ++i) v *= turn(m.finite[i] * z[i], shape.finite_orders[i]);
      std::int64_t idx = 0;
      for (int j = 0; j < k; ++j) idx = idx * width + (m.torus[static_cast<std::size_t>(j)] + d);
      cur[static_cast<std::size_t>(idx)] += v;
    }
    // Transform one axis at a time: frequency index → grid index.
    for (int a = 0; a < k; ++a) {
      std::int64_t pre = 1, post = 1;
      for (int j = 0; j < a; ++j) pre *= dims[static_cast<std::size_t>(j)];
      for (int j = a + 1; j < k; ++j) post *= dims[static_cast<std::size_t>(j)];
      std::vector<std::complex<double>> next(static_cast<std::size_t>(pre * G * post));
      for (std::int64_t i = 0; i < pre; ++i) {
        for (std::int64_t x = 0; x < G; ++x) {
          auto* dst = next.data() + (i * G + x) * post;
          for (std::int64_t m = 0; m < width; ++m) {
            const auto e = E[static_cast<std::size_t>(x * width + m)];
            const auto* src = cur.data() + (i * width + m) * post;
            for (std::int64_t r = 0; r < post; ++r) dst[r] += e * src[r];
          }
        }
      }
      dims[static_cast<std::size_t>(a)] = G;
      cur = std::move(next);
    }
    for (std::int64_t t = 0; t < torus_points; ++t) {
      out[static_cast<std::size_t>(t * fsize) + zi] = cur[static_cast<std::size_t>(t)];
    }
  });
  return out;
}

FejerNormCertificate certify_fejer_norm(const FejerOperator& op, const StepFunction& f, int grid) {
  FejerNormCertificate cert;
  const GroupShape& shape = f.shape();
  if (grid <= 0) {
    const auto n = static_cast<int>(op.n);
    grid = shape.torus_rank == 0 ? 1 : shape.torus_rank == 1 ? std::max(8 * n, 512) : shape.torus_rank == 2 ? std::max(4 * n, 128) : 2 * n + 2;
  }
  cert.grid = grid;
  cert.tolerance = 1e-9;
  cert.real_input = f.is_real();
  cert.input_l1 = l1_norm_exact(f);

  // f = (Re f)⁺ − (Re f)⁻ + i((Im f)⁺ − (Im f)⁻), each part nonnegative.
  std::vector<StepPiece<Rational>> parts[4];
  double l1_value = 0.0;
  for (const auto& p : f.pieces()) {
    const Rational* v[2] = {&p.value.re, &p.value.im};
    for (int c = 0; c < 2; ++c) {
      if (*v[c] == 0) continue;
      auto q = p;
      q.value = ComplexQ(*v[c] > 0 ? *v[c] : Rational(-*v[c]));
      parts[2 * c + (*v[c] > 0 ? 0 : 1)].push_back(std::move(q));
    }
    Rational measure(1);
    for (const auto& a : p.box) measure *= a.hi - a.lo;
    measure *= static_cast<std::int64_t>(p.fiber.size());
    measure /= shape.finite_size();
    l1_value += std::abs(p.value.to_complex()) * to_double(measure);
  }
  const StepFunction fp(shape, parts[0]), fn(shape, parts[1]);
  cert.positive_mass = haar_integral(fp).re;
  cert.negative_mass = haar_integral(fn).re;
  cert.input_l1_value = cert.input_l1 ? to_double(*cert.input_l1) : l1_value;

  double mn = 0.0;
  for (const auto& part : parts) {
    if (part.empty()) continue;
    for (const auto& v : evaluate_on_grid(fejer_apply(op, StepFunction(shape, part)), grid)) mn = std::min(mn, v.real());
  }
  const auto g = evaluate_on_grid(fejer_apply(op, f), grid);
  double l1 = 0.0;
  for (const auto& v : g) l1 += std::abs(v);
  cert.grid_l1 = l1 / static_cast<double>(g.size());
  cert.grid_min = mn;
  // |σ_n f| ≤ σ_n|f| pointwise and ∫σ_n|f| = ∫|f|; for real f the masses of f^± are
  // preserved exactly.
  const bool masses = !cert.real_input || (cert.input_l1 && *cert.input_l1 == cert.positive_mass + cert.negative_mass);
  cert.passed = masses && cert.grid_min >= -cert.tolerance && cert.grid_l1 <= cert.input_l1_value + cert.tolerance;
  return cert;
}

// ---------------------------------------------------------------------------
// Quotients by H = 𝕋^C × H_fin

QuotientMap QuotientMap::build(const SubgroupH& H) {
  QuotientMap q;
  q.source_ = H.shape();
  const int k = q.source_.torus_rank;
  const auto& C = H.subtorus();
  for (int j = 0; j < k; ++j) {
    if (!std::binary_search(C.begin(), C.end(), j)) q.kept_.push_back(j);
  }
  const std::size_t J = q.kept_.size();
  const std::size_t N = q.source_.finite_orders.size();
  const auto gens = H.generators();

  Integer D = 1;
  for (const auto& g : gens) {
    for (int j : q.kept_) D = lcm_denominators(D, g.torus[static_cast<std::size_t>(j)]);
  }
  q.D_ = D;

  // Lifts of H in the integer coordinates (z | u), u = D·x_J.
  IntMatrix rows;
  for (std::size_t i = 0; i < N; ++i) {
    IntVector r(N + J, Integer(0));
    r[i] = q.source_.finite_orders[i];
    rows.push_back(std::move(r));
  }
  for (std::size_t a = 0; a < J; ++a) {
    IntVector r(N + J, Integer(0));
    r[N + a] = D;
    rows.push_back(std::move(r));
  }
  for (const auto& g : gens) {
    IntVector r(N + J, Integer(0));
    for (std::size_t i = 0; i < N; ++i) r[i] = g.finite[i];
    for (std::size_t a = 0; a < J; ++a) {
      Rational u = g.torus[static_cast<std::size_t>(q.kept_[a])] * Rational(D);
      r[N + a] = numerator(u);
    }
    rows.push_back(std::move(r));
  }
  const auto hnf = lattice::hermite_form(rows);
  if (hnf.rows.size() != N + J) throw std::logic_error("lattice of lifts is not of full rank");
  for (std::size_t r = 0; r < N + J; ++r) {
    if (hnf.pivots[r] != r) throw std::logic_error("unexpected echelon shape for the lattice of lifts");
  }

  // z_p·Q = −t_p for the top rows, so (t_p + z_p·Q, z_p) = (0, z_p).
  q.Q_.assign(N, std::vector<Rational>(J, Rational(0)));
  for (std::size_t a = 0; a < J; ++a) {
    for (std::size_t p = N; p-- > 0;) {
      Rational rhs = -Rational(hnf.rows[p][N + a]);
      for (std::size_t t = p + 1; t < N; ++t) rhs -= Rational(hnf.rows[p][t]) * q.Q_[t][a];
      q.Q_[p][a] = rhs / Rational(hnf.rows[p][p]);
    }
  }
  q.B_.assign(J, std::vector<Rational>(J, Rational(0)));
  for (std::size_t a = 0; a < J; ++a) {
    for (std::size_t b = 0; b < J; ++b) {
      q.B_[a][b] = hnf.rows[N + a][N + b];
      if (a != b && q.B_[a][b] != 0) q.diagonal_ = false;
    }
  }
  q.Binv_ = upper_inverse(q.B_);

  IntMatrix top(N, IntVector(N, Integer(0)));
  for (std::size_t p = 0; p < N; ++p) {
    for (std::size_t i = 0; i < N; ++i) top[p][i] = hnf.rows[p][i];
  }
  if (N > 0) q.smith_ = lattice::diagonal_form(top);
  q.target_.torus_rank = static_cast<int>(J);
  for (std::size_t i = 0; i < N; ++i) {
    if (q.smith_.diagonal[i] > 1) {
      q.kept_factors_.push_back(i);
      q.target_.finite_orders.push_back(to_i64(q.smith_.diagonal[i]));
    }
  }
  return q;
}

std::vector<Rational> QuotientMap::offset(std::span<const Integer> z) const {
  std::vector<Rational> v(kept_.size(), Rational(0));
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (z[i] == 0) continue;
    for (std::size_t a = 0; a < v.size(); ++a) v[a] += Rational(z[i]) * Q_[i][a];
  }
  return v;
}

std::vector<Integer> QuotientMap::fiber_lift(std::int64_t flat) const {
  std::vector<Integer> z;
  for (auto r : source_.unflatten(flat)) z.emplace_back(r);
  return z;
}

std::int64_t QuotientMap::target_fiber(std::span<const Integer> z) const {
  std::vector<std::int64_t> y;
  for (std::size_t t : kept_factors_) {
    Integer s = 0;
    for (std::size_t i = 0; i < z.size(); ++i) s += z[i] * smith_.right[i][t];
    y.push_back(to_i64(mod_floor(s, smith_.diagonal[t])));
  }
  return target_.flatten(y);
}

ExactPoint QuotientMap::operator()(const ExactPoint& x) const {
  if (x.torus.size() != static_cast<std::size_t>(source_.torus_rank) || x.finite.size() != source_.finite_orders.size()) {
    throw std::invalid_argument("point does not match the domain of the quotient map");
  }
  std::vector<Integer> z(x.finite.begin(), x.finite.end());
  auto v = offset(z);
  for (std::size_t a = 0; a < kept_.size(); ++a) v[a] += x.torus[static_cast<std::size_t>(kept_[a])] * Rational(D_);
  ExactPoint y;
  for (std::size_t a = 0; a < kept_.size(); ++a) {
    Rational w(0);
    for (std::size_t b = 0; b < kept_.size(); ++b) w += v[b] * Binv_[b][a];
    y.torus.push_back(frac(w));
  }
  y.finite = target_.unflatten(target_fiber(z));
  return y;
}

ExactPoint QuotientMap::section(const ExactPoint& y) const {
  if (y.torus.size() != kept_.size() || y.finite.size() != kept_factors_.size()) {
    throw std::invalid_argument("point does not match the quotient");
  }
  const std::size_t N = source_.finite_orders.size();
  std::vector<Integer> full(N, Integer(0));
  for (std::size_t t = 0; t < kept_factors_.size(); ++t) full[kept_factors_[t]] = y.finite[t];
  std::vector<Integer> z(N, Integer(0));
  for (std::size_t i = 0; i < N; ++i) {
    Integer s = 0;
    for (std::size_t t = 0; t < N; ++t) s += full[t] * smith_.right_inverse[t][i];
    z[i] = mod_floor(s, Integer(source_.finite_orders[i]));
  }
  const auto q = offset(z);
  ExactPoint x;
  x.torus.assign(static_cast<std::size_t>(source_.torus_rank), Rational(0));
  for (std::size_t a = 0; a < kept_.size(); ++a) {
    Rational v(0);
    for (std::size_t b = 0; b < kept_.size(); ++b) v += y.torus[b] * B_[b][a];
    x.torus[static_cast<std::size_t>(kept_[a])] = frac((v - q[a]) / Rational(D_));
  }
  for (const auto& zi : z) x.finite.push_back(to_i64(zi));
  return x;
}

StepFunction QuotientMap::pullback(const StepFunction& g) const {
  if (!diagonal_) throw std::invalid_argument("pullback needs a diagonal quotient map");
  if (!(g.shape() == target_)) throw std::invalid_argument("function does not live on the quotient");
  const int k = source_.torus_rank;
  std::vector<StepPiece<Rational>> pieces;
  for (std::int64_t zf = 0; zf < source_.finite_size(); ++zf) {
    const auto z = fiber_lift(zf);
    const std::int64_t y = target_fiber(z);
    const auto q = offset(z);
    for (const auto& p : g.pieces()) {
      if (!std::binary_search(p.fiber.begin(), p.fiber.end(), y)) continue;
      // w_a = (D·x + q_a)/b_a mod 1 on the kept coordinates, full circles elsewhere.
      std::vector<std::vector<Arc<Rational>>> lists(static_cast<std::size_t>(k), {Arc<Rational>{Rational(0), Rational(1)}});
      for (std::size_t a = 0; a < kept_.size(); ++a) {
        const Rational& b = B_[a][a];
        lists[static_cast<std::size_t>(kept_[a])] = affine_preimage(p.box[a], Rational(D_) / b, q[a] / b);
      }
      for (auto& box : product(lists)) pieces.push_back({std::move(box), {zf}, p.value});
    }
  }
  return StepFunction(source_, std::move(pieces));
}

StepFunction QuotientMap::push_forward(const StepFunction& f) const {
  if (!diagonal_) throw std::invalid_argument("push_forward needs a diagonal quotient map");
  if (!(f.shape() == source_)) throw std::invalid_argument("function does not live on the source");
  std::vector<StepPiece<Rational>> pieces;
  for (std::int64_t yf = 0; yf < target_.finite_size(); ++yf) {
    ExactPoint y;
    y.torus.assign(kept_.size(), Rational(0));
    y.finite = target_.unflatten(yf);
    const ExactPoint base = section(y);
    const std::int64_t zf = source_.flatten(base.finite);
    std::vector<Integer> z(base.finite.begin(), base.finite.end());
    const auto q = offset(z);
    for (const auto& p : f.pieces()) {
      if (!std::binary_search(p.fiber.begin(), p.fiber.end(), zf)) continue;
      // x_a = (b_a·w − q_a)/D mod 1 along the section.
      std::vector<std::vector<Arc<Rational>>> lists;
      for (std::size_t a = 0; a < kept_.size(); ++a) {
        const Rational& b = B_[a][a];
        lists.push_back(affine_preimage(p.box[static_cast<std::size_t>(kept_[a])], b / Rational(D_), -q[a] / Rational(D_)));
      }
      for (auto& box : product(lists)) pieces.push_back({std::move(box), {yf}, p.value});
    }
  }
  return StepFunction(target_, std::move(pieces));
}

QuotientFunction fiber_average(const StepFunction& f, const SubgroupH& H) {
  const GroupShape& shape = f.shape();
  if (!(H.shape() == shape)) throw std::invalid_argument("subgroup lives on a different domain");

  // Average over the subtorus: collapse its coordinates with arc-length weights.
  StepFunction g = f;
  if (!H.subtorus().empty()) {
    const auto cuts = own_cuts(f);
    const auto r = rasterize(f, cuts);
    Raster<Rational> avg;
    avg.shape = shape;
    avg.cuts = cuts;
    for (int j : H.subtorus()) avg.cuts[static_cast<std::size_t>(j)] = {Rational(0), Rational(1)};
    const auto fsize = static_cast<std::size_t>(shape.finite_size());
    avg.values.assign(avg.torus_cells() * fsize, ComplexQ{});
    for (std::size_t c = 0; c < r.torus_cells(); ++c) {
      auto idx = r.cell_index(c);
      Rational weight(1);
      for (int j : H.subtorus()) {
        weight *= r.cell_length(static_cast<std::size_t>(j), idx[static_cast<std::size_t>(j)]);
        idx[static_cast<std::size_t>(j)] = 0;
      }
      std::size_t target = 0;
      for (std::size_t j = 0; j < idx.size(); ++j) target = target * (avg.cuts[j].size() - 1) + idx[j];
      for (std::size_t z = 0; z < fsize; ++z) avg.values[target * fsize + z] += r.values[c * fsize + z] * weight;
    }
    g = from_raster(avg);
  }

  // Mean over the finite orbit.
  const auto& elems = H.finite_elements();
  StepFunction sum(shape);
  for (const auto& h : elems) sum = sum + translate(g, h);
  StepFunction lifted = scaled(sum, Rational(1, static_cast<long long>(elems.size())));

  QuotientFunction out{H, QuotientMap::build(H), std::move(lifted), std::nullopt};
  if (out.map.is_diagonal()) out.explicit_form = out.map.push_forward(out.lifted);
  return out;
}

Aperiodization aperiodize(const StepFunction& phi_star) {
  SubgroupH H = kernel_subgroup(phi_star);
  Aperiodization out{fiber_average(phi_star, H), {}};
  auto& cert = out.certificate;
  cert.kernel = H;
  cert.lifted_kernel_is_H = kernel_subgroup(out.psi.lifted) == H;

  const StepFunction pulled = out.psi.explicit_form ? out.psi.map.pullback(*out.psi.explicit_form) : out.psi.lifted;
  if (out.psi.explicit_form) cert.explicit_kernel_trivial = kernel_subgroup(*out.psi.explicit_form).is_trivial();
  cert.residual = l1_distance_exact(phi_star, pulled);
  if (!cert.residual && equal_ae(phi_star, pulled)) cert.residual = Rational(0);

  const ComplexQ total = haar_integral(phi_star);
  cert.weil_exact = haar_integral(out.psi.lifted) == total &&
                    (!out.psi.explicit_form || haar_integral(*out.psi.explicit_form) == total);
  cert.passed = cert.lifted_kernel_is_H && cert.explicit_kernel_trivial.value_or(true) && cert.residual &&
                *cert.residual == 0 && cert.weil_exact;
  return out;
}

// ---------------------------------------------------------------------------
// Realization on C_Γ

std::vector<Frequency> annihilator(const SubgroupH& H) {
  const GroupShape& shape = H.shape();
  const int k = shape.torus_rank;
  const std::size_t N = shape.finite_orders.size();
  const auto& C = H.subtorus();
  std::vector<int> kept;
  for (int j = 0; j < k; ++j) {
    if (!std::binary_search(C.begin(), C.end(), j)) kept.push_back(j);
  }
  const auto gens = H.generators();
  const std::size_t r = gens.size();
  const std::size_t vars = kept.size() + N;

  Integer D = 1;
  for (auto n : shape.finite_orders) D = lcm(D, Integer(n));
  for (const auto& g : gens) {
    for (int j : kept) D = lcm_denominators(D, g.torus[static_cast<std::size_t>(j)]);
  }

  // Rows (A_v | e_v) with A_v the pairing of variable v against each generator,
  // times D; rows (D e_l | 0) reduce the pairings mod 1.
  IntMatrix rows;
  for (std::size_t v = 0; v < vars; ++v) {
    IntVector row(r + vars, Integer(0));
    for (std::size_t l = 0; l < r; ++l) {
      if (v < kept.size()) {
        row[l] = numerator(gens[l].torus[static_cast<std::size_t>(kept[v])] * Rational(D));
      } else {
        const std::size_t i = v - kept.size();
        row[l] = Integer(gens[l].finite[i]) * (D / Integer(shape.finite_orders[i]));
      }
    }
    row[r + v] = 1;
    rows.push_back(std::move(row));
  }
  for (std::size_t l = 0; l < r; ++l) {
    IntVector row(r + vars, Integer(0));
    row[l] = D;
    rows.push_back(std::move(row));
  }
  const auto hnf = lattice::hermite_form(rows);
  std::vector<Frequency> out;
  for (std::size_t i = 0; i < hnf.rows.size(); ++i) {
    if (hnf.pivots[i] < r) continue;
    Frequency m;
    m.torus.assign(static_cast<std::size_t>(k), 0);
    for (std::size_t v = 0; v < kept.size(); ++v) m.torus[static_cast<std::size_t>(kept[v])] = to_i64(hnf.rows[i][r + v]);
    for (std::size_t t = 0; t < N; ++t) {
      m.finite.push_back(to_i64(mod_floor(hnf.rows[i][r + kept.size() + t], Integer(shape.finite_orders[t]))));
    }
    if (!m.is_zero()) out.push_back(std::move(m));
  }
  return out;
}

namespace {

Frequency located(const Location& loc) {
  if (loc.verdict != Verdict::yes || !loc.frequency) {
    throw std::runtime_error("a spectral character could not be located in C_Γ");
  }
  return *loc.frequency;
}

int default_grid(int k) { return k == 0 ? 1 : k == 1 ? 4096 : k == 2 ? 256 : 32; }

GammaRealization realize_trig(const HartmanFunction::Realized& re, const TrigPolynomial& p,
                              const GammaRealizationOptions& options) {
  std::vector<std::pair<Character, std::complex<double>>> merged;
  double scale = 0.0;
  for (const auto& [m, c] : p.terms()) {
    Character chi = re.comp.character_of(m);
    const auto v = c * chi.evaluate(re.shift);
    scale += std::abs(c);
    auto it = std::find_if(merged.begin(), merged.end(), [&](const auto& e) { return e.first == chi; });
    if (it == merged.end()) {
      merged.emplace_back(std::move(chi), v);
    } else {
      it->second += v;
    }
  }
  // Terms cancelling on ℤ leave rounding residue; it carries no spectrum.
  std::erase_if(merged, [&](const auto& e) { return std::abs(e.second) <= 1e-14 * scale; });

  GammaRealization out;
  for (const auto& [chi, c] : merged) out.gamma.generators.push_back(chi);
  out.gamma = out.gamma.reduced();
  out.comp = Compactification::induced(out.gamma, options.certify);
  out.order = options.order;
  out.realization = TrigPolynomial(out.comp.shape());
  const FejerOperator op(options.order, out.comp.torus_rank());
  for (const auto& [chi, c] : merged) {
    const Frequency m = located(locate(out.comp, chi, options.certify));
    const double d = op.damping(m);
    out.residual += std::abs(c) * (1.0 - d);
    if (d > 0.0) out.realization.add_term(m, c * d);
  }
  out.residual_is_bound = true;
  return out;
}

GammaRealization realize_step(const HartmanFunction::Realized& re, const StepFunction& f,
                              const GammaRealizationOptions& options) {
  const GroupShape& shape = f.shape();
  const SubgroupH H = kernel_subgroup(f);
  const auto gens = annihilator(H);

  GammaRealization out;
  std::vector<Character> chars;
  for (const auto& m : gens) chars.push_back(re.comp.character_of(m));
  out.gamma.generators = chars;
  out.gamma = out.gamma.reduced();
  out.comp = Compactification::induced(out.gamma, options.certify);
  out.order = options.order;
  out.realization = TrigPolynomial(out.comp.shape());

  const int kc = out.comp.torus_rank();
  const std::int64_t g = out.comp.finite_part().empty() ? 1 : out.comp.finite_part().front();
  const std::size_t cols = static_cast<std::size_t>(kc) + (g > 1 ? 1 : 0);

  // Images of the H^⊥ generators in the frequency lattice ℤ^k' × ℤ/g of C_Γ.
  IntMatrix rows;
  for (const auto& chi : chars) {
    const Frequency m = located(locate(out.comp, chi, options.certify));
    IntVector row;
    for (auto v : m.torus) row.emplace_back(v);
    if (g > 1) row.emplace_back(m.finite.front());
    rows.push_back(std::move(row));
  }
  if (g > 1) {
    IntVector row(cols, Integer(0));
    row.back() = g;
    rows.push_back(std::move(row));
  }
  const auto hnf = lattice::hermite_form(rows);

  const FejerOperator op(options.order, kc);
  const std::int64_t width = 2 * options.order - 1;
  std::int64_t count = g;
  for (int j = 0; j < kc; ++j) count *= width;

  TrigPolynomial on_x(shape);
  std::vector<std::tuple<Frequency, Frequency, std::complex<double>>> terms(static_cast<std::size_t>(count));
  parallel_for(static_cast<std::size_t>(count), [&](std::size_t idx) {
    auto rest = static_cast<std::int64_t>(idx);
    Frequency target;
    target.torus.resize(static_cast<std::size_t>(kc));
    if (g > 1) {
      target.finite = {rest % g};
      rest /= g;
    }
    for (int j = kc - 1; j >= 0; --j) {
      target.torus[static_cast<std::size_t>(j)] = rest % width - (options.order - 1);
      rest /= width;
    }
    IntVector t;
    for (auto v : target.torus) t.emplace_back(v);
    if (g > 1) t.emplace_back(target.finite.front());
    auto lambda = lattice::solve_input(hnf, t);
    if (!lambda) throw std::logic_error("C_Γ frequency outside the image of H^⊥");
    Frequency m;
    m.torus.assign(static_cast<std::size_t>(shape.torus_rank), 0);
    m.finite.assign(shape.finite_orders.size(), 0);
    for (std::size_t l = 0; l < gens.size(); ++l) {
      const Integer& c = (*lambda)[l];
      if (c == 0) continue;
      for (std::size_t j = 0; j < m.torus.size(); ++j) m.torus[j] += to_i64(c * gens[l].torus[j]);
      for (std::size_t i = 0; i < m.finite.size(); ++i) {
        const Integer n(shape.finite_orders[i]);
        m.finite[i] = to_i64(mod_floor(Integer(m.finite[i]) + c * gens[l].finite[i], n));
      }
    }
    terms[idx] = {std::move(target), std::move(m), op.damping(target) * step_coefficient(f, m)};
  });
  for (auto& [target, m, c] : terms) {
    if (c == std::complex<double>{}) continue;
    const auto phase = re.comp.character_of(m).evaluate(re.shift);
    out.realization.add_term(target, c * phase);
    on_x.add_term(m, c);
  }

  // ‖σ_n ψ* − ψ*‖₁ on C_Γ equals ‖σ_n ψ*∘π − f‖₁ on X (π is measure preserving).
  const int grid = options.residual_grid > 0 ? options.residual_grid : default_grid(shape.torus_rank);
  const auto vals = evaluate_on_grid(on_x, grid);
  const std::int64_t fsize = shape.finite_size();
  double sum = 0.0;
  std::vector<double> pt(static_cast<std::size_t>(shape.torus_rank));
  for (std::size_t i = 0; i < vals.size(); ++i) {
    auto t = static_cast<std::int64_t>(i) / fsize;
    const auto z = shape.unflatten(static_cast<std::int64_t>(i) % fsize);
    for (int j = shape.torus_rank - 1; j >= 0; --j) {
      pt[static_cast<std::size_t>(j)] = (static_cast<double>(t % grid) + 0.5) / grid;
      t /= grid;
    }
    sum += std::abs(vals[i] - f.evaluate(pt.data(), z.data()));
  }
  out.residual = sum / static_cast<double>(vals.size());
  out.residual_is_bound = false;
  return out;
}

}  // namespace

GammaRealization realize_on_gamma(const HartmanFunction& phi, const GammaRealizationOptions& options) {
  if (!phi.is_realized()) throw std::invalid_argument("realize_on_gamma needs a realized function");
  if (options.order < 1) throw std::invalid_argument("Fejér order must be at least 1");
  const auto& re = phi.as_realized();
  if (const auto* p = std::get_if<TrigPolynomial>(&re.realization)) return realize_trig(re, *p, options);
  if (const auto* f = std::get_if<StepFunction>(&re.realization)) return realize_step(re, *f, options);
  throw std::invalid_argument("realize_on_gamma needs exact coefficients (a rational step function or a trigonometric polynomial)");
}

}  // namespace hartman
